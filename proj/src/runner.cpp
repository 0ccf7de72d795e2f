#include "tscv/runner.hpp"

#include "tscv/folds.hpp"
#include "tscv/metrics.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <optional>
#include <thread>

namespace tscv {

namespace {

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (const unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct Cell {
    std::size_t dataset = 0;
    Strategy strategy = Strategy::WalkForward;
    std::size_t K = 0;
    std::size_t classifier = 0;
    std::optional<FoldPlan> plan;
    std::string plan_error;
};

struct Unit {
    std::size_t cell = 0;
    std::size_t fold = 0;
};

}  // namespace

std::uint64_t job_seed(std::uint64_t global_seed, std::string_view dataset, Strategy strategy, std::size_t K,
                       std::size_t k, std::string_view classifier) {
    std::string key = std::to_string(global_seed);
    key += '|';
    key += dataset;
    key += '|';
    key += to_string(strategy);
    key += '|' + std::to_string(K) + '|' + std::to_string(k) + '|';
    key += classifier;
    return splitmix64(fnv1a(key));
}

FoldScorer classifier_scorer(ClassifierKind kind, ClassifierConfig config) {
    return [kind, config = std::move(config)](const FoldInput& input) {
        std::unique_ptr<const ClassifierModel> model;
        try {
            model = fit(kind, config, input.train, input.train_labels, input.seed);
        } catch (const TrainingError& e) {
            spdlog::debug("fold {}: {}; using the majority prior", input.fold.k, e.what());
            model = fit(ClassifierKind::Majority, config, input.train, input.train_labels, input.seed);
        }
        return model->predict_scores(input.test);
    };
}

ScoredFold evaluate_fold(const LabeledDataset& dataset, const Fold& fold, const FoldScorer& scorer,
                         std::uint64_t seed, std::size_t lookback) {
    const FoldValidity validity = fold_validity(dataset.labels, fold);
    if (fold.train.first < 1 || fold.train.last >= fold.test.first) {
        throw BoundsError("fold " + std::to_string(fold.k) + " trains on or after its test block");
    }
    const std::span<const std::uint8_t> all_labels(dataset.labels.values());
    const FoldInput input{fold, SampleWindows(dataset.series, fold.train, lookback),
                          all_labels.subspan(fold.train.first - 1, fold.train.size()),
                          SampleWindows(dataset.series, fold.test, lookback), seed};

    ScoredFold scored;
    scored.fold = fold;
    scored.scores = scorer(input);
    if (scored.scores.size() != fold.test.size()) {
        throw ShapeError("scorer returned " + std::to_string(scored.scores.size()) + " scores for a test block of " +
                         std::to_string(fold.test.size()));
    }
    for (const double s : scored.scores) {
        if (!(s >= 0.0 && s <= 1.0)) {
            throw ShapeError("score " + std::to_string(s) + " outside [0, 1] in fold " + std::to_string(fold.k));
        }
    }
    scored.positive_ratio = validity.positive_ratio;
    scored.valid = validity.valid;
    if (scored.valid) {
        scored.auc_pr = average_precision(scored.scores,
                                          all_labels.subspan(fold.test.first - 1, fold.test.size()));
    }
    return scored;
}

void finalize_record(ExperimentRecord& record) {
    std::vector<double> values;
    for (const auto& fold : record.scored_folds) {
        if (fold.valid && fold.auc_pr) {
            values.push_back(*fold.auc_pr);
        }
    }
    record.median_auc_pr.reset();
    if (!values.empty()) {
        record.median_auc_pr = median(values);
    }
    record.sensitivity_auc = sensitivity_auc(record.scored_folds);
    if (values.empty() && !record.skip_reason) {
        record.skip_reason = "no valid folds: every test block holds a single class";
    }
}

std::vector<ExperimentRecord> run_grid(const ExperimentGrid& grid) {
    if (grid.datasets.empty() || grid.strategies.empty() || grid.k_values.empty() || grid.classifiers.empty()) {
        throw ConfigError("experiment grid is empty in at least one dimension");
    }
    if (grid.delta < 1) {
        throw ConfigError("delta must be at least 1");
    }
    std::vector<FoldScorer> scorers;
    for (const auto& id : grid.classifiers) {
        if (const auto it = grid.custom_scorers.find(id); it != grid.custom_scorers.end()) {
            scorers.push_back(it->second);
        } else {
            scorers.push_back(classifier_scorer(parse_classifier(id), grid.classifier_config));
        }
    }

    std::vector<Cell> cells;
    for (std::size_t d = 0; d < grid.datasets.size(); ++d) {
        for (const auto strategy : grid.strategies) {
            for (const auto K : grid.k_values) {
                std::optional<FoldPlan> plan;
                std::string error;
                try {
                    plan = make_plan(strategy, grid.datasets[d]->series.length(), K, grid.delta);
                } catch (const Error& e) {
                    error = e.what();
                }
                for (std::size_t c = 0; c < grid.classifiers.size(); ++c) {
                    cells.push_back(Cell{d, strategy, K, c, plan, error});
                }
            }
        }
    }

    std::vector<Unit> units;
    std::vector<std::vector<std::optional<ScoredFold>>> results(cells.size());
    std::vector<std::vector<std::string>> errors(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
        if (!cells[c].plan) {
            continue;
        }
        const std::size_t folds = cells[c].plan->folds.size();
        results[c].resize(folds);
        errors[c].resize(folds);
        for (std::size_t f = 0; f < folds; ++f) {
            units.push_back(Unit{c, f});
        }
    }

    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t u = next.fetch_add(1); u < units.size(); u = next.fetch_add(1)) {
            const Cell& cell = cells[units[u].cell];
            const Fold& fold = cell.plan->folds[units[u].fold];
            const LabeledDataset& dataset = *grid.datasets[cell.dataset];
            const std::string& classifier = grid.classifiers[cell.classifier];
            const std::uint64_t seed = job_seed(grid.seed, dataset.name, cell.strategy, cell.K, fold.k, classifier);
            try {
                results[units[u].cell][units[u].fold] =
                    evaluate_fold(dataset, fold, scorers[cell.classifier], seed, grid.lookback);
            } catch (const std::exception& e) {
                errors[units[u].cell][units[u].fold] = "fold " + std::to_string(fold.k) + ": " + e.what();
            }
        }
    };
    const std::size_t workers = std::clamp<std::size_t>(grid.parallelism, 1, std::max<std::size_t>(1, units.size()));
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 1; w < workers; ++w) {
            pool.emplace_back(worker);
        }
        worker();
    }

    std::vector<ExperimentRecord> records;
    records.reserve(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const Cell& cell = cells[c];
        ExperimentRecord record;
        record.dataset_name = grid.datasets[cell.dataset]->name;
        record.classifier_id = grid.classifiers[cell.classifier];
        record.strategy = cell.strategy;
        record.K = cell.K;
        record.delta = grid.delta;
        record.seed = grid.seed;
        if (!cell.plan) {
            record.skip_reason = "fold plan: " + cell.plan_error;
        } else {
            const auto failed = std::find_if(errors[c].begin(), errors[c].end(),
                                             [](const std::string& e) { return !e.empty(); });
            if (failed != errors[c].end()) {
                record.skip_reason = *failed;
            } else {
                for (auto& fold : results[c]) {
                    record.scored_folds.push_back(std::move(*fold));
                }
            }
        }
        finalize_record(record);
        if (record.skip_reason) {
            spdlog::warn("{} / {} / {} / K={}: {}", record.dataset_name, record.classifier_id,
                         to_string(record.strategy), record.K, *record.skip_reason);
        }
        records.push_back(std::move(record));
    }
    return records;
}

}  // namespace tscv
