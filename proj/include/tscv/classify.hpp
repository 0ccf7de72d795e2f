#pragma once

#include "tscv/core.hpp"
#include "tscv/features.hpp"
#include "tscv/forest.hpp"
#include "tscv/logistic.hpp"
#include "tscv/rocket.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tscv {

enum class ClassifierKind { Majority, Residual, RandomForest, Logistic, Rocket };

/// CLI token: majority, residual, rf, logistic, rocket.
[[nodiscard]] std::string_view classifier_id(ClassifierKind kind) noexcept;
[[nodiscard]] ClassifierKind parse_classifier(std::string_view token);
/// Comma-separated token list, order preserved.
[[nodiscard]] std::vector<ClassifierKind> parse_classifier_list(std::string_view tokens);

struct ClassifierConfig {
    ForestParams forest;
    LogisticParams logistic;
    std::size_t rocket_kernels = 10000;
    /// Training-residual quantile used as the detector's reference threshold.
    double residual_quantile = 0.95;
};

inline constexpr std::size_t kMinTrainingSamples = 10;

/// A fitted scorer. Immutable; predict_scores is deterministic.
class ClassifierModel {
public:
    virtual ~ClassifierModel() = default;

    [[nodiscard]] virtual std::string_view id() const noexcept = 0;
    /// One score in [0, 1] per sample.
    [[nodiscard]] virtual std::vector<double> predict_scores(const SampleWindows& samples) const = 0;

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

protected:
    ClassifierModel(std::uint64_t seed, std::size_t channels, std::size_t lookback)
        : seed_(seed), channels_(channels), lookback_(lookback) {}

    /// Throws ShapeError unless samples have the training channel count and lookback.
    void check_shape(const SampleWindows& samples) const;

private:
    std::uint64_t seed_;
    std::size_t channels_;
    std::size_t lookback_;
};

/**
 * @brief Fits a classifier on a training block.
 *
 * Needs at least kMinTrainingSamples samples. Random forest, logistic and
 * ROCKET also need both classes present; the majority-prior and residual
 * models do not use class balance and accept single-class blocks.
 *
 * @throws TrainingError naming the training block on violation.
 */
[[nodiscard]] std::unique_ptr<const ClassifierModel> fit(ClassifierKind kind, const ClassifierConfig& config,
                                                         const SampleWindows& train,
                                                         std::span<const std::uint8_t> train_labels,
                                                         std::uint64_t seed);

/// Sum over time steps of the Euclidean norm of observed - predicted (m x n each).
[[nodiscard]] double residual_score(const Eigen::Ref<const Eigen::MatrixXd>& observed,
                                    const Eigen::Ref<const Eigen::MatrixXd>& predicted);

/// Cumulative persistence-predictor deviation over one window: x_hat_t = x_{t-1}.
[[nodiscard]] double window_residual(const Eigen::Ref<const Eigen::MatrixXd>& window);

}  // namespace tscv
