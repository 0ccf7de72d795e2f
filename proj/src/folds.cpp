#include "tscv/folds.hpp"

#include <spdlog/spdlog.h>

#include <string>

namespace tscv {

namespace {

void check_grid_parameters(std::size_t K, std::size_t delta) {
    if (K < 2) {
        throw ConfigError("K must be at least 2, got " + std::to_string(K));
    }
    if (delta < 1) {
        throw ConfigError("delta must be at least 1");
    }
}

FoldPlan build_plan(Strategy strategy, std::size_t K, std::size_t delta, std::size_t omega) {
    FoldPlan plan;
    plan.strategy = strategy;
    plan.K = K;
    plan.omega = omega;
    plan.delta = delta;
    plan.folds.reserve(K);
    for (std::size_t k = 1; k <= K; ++k) {
        const std::size_t train_end = omega + (k - 1) * delta;
        const std::size_t train_start =
            strategy == Strategy::WalkForward ? std::size_t{1} : 1 + (k - 1) * delta;
        plan.folds.push_back(Fold{k, IndexRange{train_start, train_end},
                                  IndexRange{train_end + 1, omega + k * delta}});
    }
    return plan;
}

}  // namespace

std::size_t derive_omega(std::size_t series_length, std::size_t K, std::size_t delta) {
    check_grid_parameters(K, delta);
    const std::size_t min_train = 2 * kMinTrainSamples;
    const std::size_t required = K * delta + min_train;
    if (series_length < required) {
        throw ConfigError("series of length " + std::to_string(series_length) + " too short for K=" +
                          std::to_string(K) + ", delta=" + std::to_string(delta) +
                          ": need at least " + std::to_string(required) + " samples");
    }
    return series_length - K * delta;
}

FoldPlan plan_walk_forward(std::size_t series_length, std::size_t K, std::size_t delta) {
    return build_plan(Strategy::WalkForward, K, delta, derive_omega(series_length, K, delta));
}

FoldPlan plan_sliding_window(std::size_t series_length, std::size_t K, std::size_t delta) {
    return build_plan(Strategy::SlidingWindow, K, delta, derive_omega(series_length, K, delta));
}

FoldPlan make_plan(Strategy strategy, std::size_t series_length, std::size_t K, std::size_t delta) {
    return strategy == Strategy::WalkForward ? plan_walk_forward(series_length, K, delta)
                                             : plan_sliding_window(series_length, K, delta);
}

FoldPlan make_plan_with_omega(Strategy strategy, std::size_t series_length, std::size_t K,
                              std::size_t delta, std::size_t omega) {
    check_grid_parameters(K, delta);
    if (omega < 2 * kMinTrainSamples) {
        throw ConfigError("training window omega=" + std::to_string(omega) + " below minimum " +
                          std::to_string(2 * kMinTrainSamples));
    }
    const std::size_t used = omega + K * delta;
    if (used > series_length) {
        throw ConfigError("omega + K*delta = " + std::to_string(used) + " exceeds series length " +
                          std::to_string(series_length));
    }
    if (used < series_length) {
        spdlog::warn("discarding {} trailing samples beyond omega + K*delta = {}", series_length - used, used);
    }
    return build_plan(strategy, K, delta, omega);
}

FoldValidity fold_validity(const LabelTrack& labels, const Fold& fold) {
    if (fold.test.first < 1 || fold.test.last > labels.size() || fold.test.first > fold.test.last) {
        throw BoundsError("fold " + std::to_string(fold.k) + " test block [" +
                          std::to_string(fold.test.first) + ", " + std::to_string(fold.test.last) +
                          "] outside label range [1, " + std::to_string(labels.size()) + "]");
    }
    std::size_t positives = 0;
    for (std::size_t t = fold.test.first; t <= fold.test.last; ++t) {
        positives += labels.values()[t - 1];
    }
    const std::size_t n = fold.test.size();
    FoldValidity result;
    result.positive_ratio = static_cast<double>(positives) / static_cast<double>(n);
    result.valid = positives > 0 && positives < n;
    return result;
}

}  // namespace tscv
