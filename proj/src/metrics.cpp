#include "tscv/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace tscv {

PRCurve pr_curve(std::span<const double> scores, std::span<const std::uint8_t> labels) {
    if (scores.size() != labels.size()) {
        throw ShapeError("pr_curve got " + std::to_string(scores.size()) + " scores and " +
                         std::to_string(labels.size()) + " labels");
    }
    const auto total_pos = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), std::uint8_t{1}));
    if (total_pos == 0 || total_pos == labels.size()) {
        throw UndefinedMetricError("precision-recall undefined: labels contain a single class");
    }
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    PRCurve curve;
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t i = 0;
    while (i < order.size()) {
        const double threshold = scores[order[i]];
        while (i < order.size() && scores[order[i]] == threshold) {
            (labels[order[i]] == 1 ? tp : fp) += 1;
            ++i;
        }
        curve.points.push_back(PRPoint{threshold, static_cast<double>(tp) / static_cast<double>(tp + fp),
                                       static_cast<double>(tp) / static_cast<double>(total_pos)});
    }
    return curve;
}

double average_precision(const PRCurve& curve) {
    double ap = 0.0;
    double previous_recall = 0.0;
    for (const auto& point : curve.points) {
        ap += (point.recall - previous_recall) * point.precision;
        previous_recall = point.recall;
    }
    return ap;
}

double average_precision(std::span<const double> scores, std::span<const std::uint8_t> labels) {
    return average_precision(pr_curve(scores, labels));
}

std::optional<double> sensitivity_auc(std::span<const ScoredFold> folds) {
    std::vector<std::pair<double, double>> points;
    for (const auto& fold : folds) {
        if (fold.valid && fold.auc_pr) {
            points.emplace_back(fold.positive_ratio, *fold.auc_pr);
        }
    }
    if (points.size() < 2) {
        return std::nullopt;
    }
    std::stable_sort(points.begin(), points.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    double area = 0.0;
    for (std::size_t k = 0; k + 1 < points.size(); ++k) {
        area += 0.5 * (points[k].second + points[k + 1].second) * (points[k + 1].first - points[k].first);
    }
    return area;
}

double median(std::span<const double> values) {
    if (values.empty()) {
        throw InputError("median of an empty sample");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    return n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

std::optional<Summary> aggregate(std::span<const double> values) {
    if (values.empty()) {
        return std::nullopt;
    }
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0.0;
    for (const double v : values) {
        ss += (v - mean) * (v - mean);
    }
    return Summary{median(values), std::sqrt(ss / n), values.size()};
}

}  // namespace tscv
