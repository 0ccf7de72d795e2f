#pragma once

#include "tscv/core.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace tscv {

struct PRPoint {
    double threshold = 0.0;
    double precision = 0.0;
    double recall = 0.0;
};

/// Points ordered by strictly decreasing threshold.
struct PRCurve {
    std::vector<PRPoint> points;
};

/**
 * @brief Precision/recall at every distinct score, highest first.
 *
 * Samples sharing a score enter the confusion counts together.
 * @throws UndefinedMetricError unless both classes are present.
 */
[[nodiscard]] PRCurve pr_curve(std::span<const double> scores, std::span<const std::uint8_t> labels);

/// Sum over points of (R_i - R_{i-1}) * P_i with R_0 = 0.
[[nodiscard]] double average_precision(const PRCurve& curve);

/// pr_curve followed by average_precision.
[[nodiscard]] double average_precision(std::span<const double> scores, std::span<const std::uint8_t> labels);

/**
 * @brief Trapezoidal integral of AUC-PR over positive ratio across valid folds.
 *
 * Folds are stably sorted by positive ratio; equal ratios contribute zero
 * width. Returns nullopt with fewer than two valid folds.
 */
[[nodiscard]] std::optional<double> sensitivity_auc(std::span<const ScoredFold> folds);

struct Summary {
    double median = 0.0;
    double sigma = 0.0;  ///< population standard deviation
    std::size_t count = 0;
};

/// Midpoint median and population sigma; nullopt for an empty group.
[[nodiscard]] std::optional<Summary> aggregate(std::span<const double> values);

[[nodiscard]] double median(std::span<const double> values);

}  // namespace tscv
