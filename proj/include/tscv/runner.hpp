#pragma once

#include "tscv/classify.hpp"
#include "tscv/core.hpp"
#include "tscv/features.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace tscv {

/**
 * @brief Everything a scorer may see for one fold.
 *
 * Test labels are deliberately absent: a scorer gets the training block's
 * labels and the test block's observation windows only.
 */
struct FoldInput {
    const Fold& fold;
    SampleWindows train;
    std::span<const std::uint8_t> train_labels;
    SampleWindows test;
    std::uint64_t seed;
};

/// Returns one score in [0, 1] per test sample.
using FoldScorer = std::function<std::vector<double>(const FoldInput&)>;

/**
 * @brief Scorer that fits `kind` on the training block and scores the test block.
 *
 * A training block holding a single class cannot be fit by the discriminative
 * models; those folds fall back to the majority-prior model (a constant score).
 */
[[nodiscard]] FoldScorer classifier_scorer(ClassifierKind kind, ClassifierConfig config);

/// Scores one fold and fills in positive ratio, validity and AUC-PR.
[[nodiscard]] ScoredFold evaluate_fold(const LabeledDataset& dataset, const Fold& fold, const FoldScorer& scorer,
                                       std::uint64_t seed, std::size_t lookback = kDefaultLookback);

/**
 * @brief Stable per-job seed.
 *
 * FNV-1a (64-bit) over "global|dataset|strategy|K|k|classifier" followed by
 * the splitmix64 finalizer.
 */
[[nodiscard]] std::uint64_t job_seed(std::uint64_t global_seed, std::string_view dataset, Strategy strategy,
                                     std::size_t K, std::size_t k, std::string_view classifier);

struct ExperimentGrid {
    std::vector<std::shared_ptr<const LabeledDataset>> datasets;
    std::vector<Strategy> strategies{Strategy::WalkForward, Strategy::SlidingWindow};
    std::vector<std::size_t> k_values{3, 4, 5, 6, 7, 8, 9};
    std::size_t delta = 150;
    std::vector<std::string> classifiers{"rocket", "rf", "logistic", "majority", "residual"};
    std::uint64_t seed = 7;
    ClassifierConfig classifier_config;
    std::size_t lookback = kDefaultLookback;
    std::size_t parallelism = 1;
    /// Extra scorers by id; they take precedence over the built-in classifiers.
    std::map<std::string, FoldScorer> custom_scorers;
};

/**
 * @brief Runs every (dataset, strategy, K, classifier) cell of the grid.
 *
 * Records come back in grid order whatever the worker count. A cell whose
 * fold plan cannot be built, or whose scorer throws, becomes a record with a
 * skip_reason and no folds.
 *
 * @throws ConfigError if the grid is empty in any dimension or names an unknown classifier.
 */
[[nodiscard]] std::vector<ExperimentRecord> run_grid(const ExperimentGrid& grid);

/// Fills median_auc_pr and sensitivity_auc from the valid folds.
void finalize_record(ExperimentRecord& record);

// ---------------------------------------------------------------------------
// Summaries
// ---------------------------------------------------------------------------

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    [[nodiscard]] std::string to_csv() const;
};

struct SummaryTables {
    CsvTable family_tests;           ///< comparison, condition, p_value
    CsvTable classifier_medians;     ///< classifier, M_WF, M_SW, p_value
    CsvTable k_medians;              ///< K, M_WF, M_SW, p_value
    CsvTable classifier_sensitivity; ///< classifier, M_WF, sigma_WF, M_SW, sigma_SW, p_value
    CsvTable k_sensitivity;          ///< K, M_WF, sigma_WF, M_SW, sigma_SW, p_value
};

/// Architecture family used by the family comparison table.
[[nodiscard]] std::string classifier_family(std::string_view classifier_id);

/**
 * @brief Strategy comparison tables over the records.
 *
 * p-values are one-sided Mann-Whitney U with alternative "SW greater than WF".
 * An empty `dataset` pools all datasets; otherwise only that dataset is used.
 */
[[nodiscard]] SummaryTables summarize(const std::vector<ExperimentRecord>& records, const std::string& dataset = {});

/// strategy, classifier, K, fold, auc_pr, positive_ratio: one row per valid fold.
[[nodiscard]] CsvTable emit_plotdata(const std::vector<ExperimentRecord>& records);

[[nodiscard]] std::string format_number(double value);

}  // namespace tscv
