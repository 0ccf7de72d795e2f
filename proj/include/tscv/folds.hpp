#pragma once

#include "tscv/core.hpp"

#include <cstddef>
#include <optional>

namespace tscv {

/// Smallest training window accepted is 2 * kMinTrainSamples.
inline constexpr std::size_t kMinTrainSamples = 10;

/**
 * @brief Training window length omega = N - K * delta.
 *
 * The K-th test block then ends exactly at N. Configurations whose window
 * would fall below 2 * kMinTrainSamples are rejected.
 *
 * @throws ConfigError stating the minimum series length required.
 */
[[nodiscard]] std::size_t derive_omega(std::size_t series_length, std::size_t K, std::size_t delta);

/// Expanding window: fold k trains on [1, omega+(k-1)delta] and tests on the next delta samples.
[[nodiscard]] FoldPlan plan_walk_forward(std::size_t series_length, std::size_t K, std::size_t delta);

/// Fixed-length window of omega samples that advances by delta per fold.
[[nodiscard]] FoldPlan plan_sliding_window(std::size_t series_length, std::size_t K, std::size_t delta);

[[nodiscard]] FoldPlan make_plan(Strategy strategy, std::size_t series_length, std::size_t K,
                                 std::size_t delta);

/**
 * @brief Plan with a caller-supplied omega.
 *
 * Samples past omega + K * delta are discarded (a warning is logged).
 */
[[nodiscard]] FoldPlan make_plan_with_omega(Strategy strategy, std::size_t series_length, std::size_t K,
                                            std::size_t delta, std::size_t omega);

struct FoldValidity {
    double positive_ratio = 0.0;
    bool valid = false;
};

/// Share of positives in the fold's test block; valid iff both classes occur.
[[nodiscard]] FoldValidity fold_validity(const LabelTrack& labels, const Fold& fold);

}  // namespace tscv
