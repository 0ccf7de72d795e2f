#include "tscv/forest.hpp"

#include "tscv/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace tscv {

namespace {

struct SplitCandidate {
    bool found = false;
    std::int32_t feature = -1;
    double threshold = 0.0;
    double impurity = 0.0;
};

double gini(double positives, double total) {
    if (total <= 0.0) {
        return 0.0;
    }
    const double p = positives / total;
    return 2.0 * p * (1.0 - p);
}

struct Grower {
    const Eigen::MatrixXd& features;
    std::span<const std::uint8_t> labels;
    const ForestParams& params;
    std::size_t features_per_split;
    std::vector<DecisionTree::Node>& nodes;
    std::vector<std::pair<double, std::uint8_t>> sorted;
    std::vector<std::size_t> feature_pool;

    template <typename Rng>
    std::int32_t build(std::vector<std::size_t>& rows, std::size_t begin, std::size_t end, std::size_t depth,
                       Rng& rng) {
        const std::size_t n = end - begin;
        std::size_t positives = 0;
        for (std::size_t i = begin; i < end; ++i) {
            positives += labels[rows[i]];
        }
        const auto index = static_cast<std::int32_t>(nodes.size());
        nodes.push_back(DecisionTree::Node{});
        nodes[index].label = 2 * positives > n ? 1 : 0;

        if (depth >= params.max_depth || n < params.min_samples_split || positives == 0 || positives == n) {
            return index;
        }

        const SplitCandidate split = best_split(rows, begin, end, positives, rng);
        if (!split.found) {
            return index;
        }

        const auto middle = std::partition(rows.begin() + static_cast<std::ptrdiff_t>(begin),
                                           rows.begin() + static_cast<std::ptrdiff_t>(end), [&](std::size_t r) {
                                               return features(static_cast<Eigen::Index>(r), split.feature) <=
                                                      split.threshold;
                                           });
        const auto mid = static_cast<std::size_t>(middle - rows.begin());
        nodes[index].feature = split.feature;
        nodes[index].threshold = split.threshold;
        const std::int32_t left = build(rows, begin, mid, depth + 1, rng);
        const std::int32_t right = build(rows, mid, end, depth + 1, rng);
        nodes[index].left = left;
        nodes[index].right = right;
        return index;
    }

    template <typename Rng>
    SplitCandidate best_split(const std::vector<std::size_t>& rows, std::size_t begin, std::size_t end,
                              std::size_t positives, Rng& rng) {
        const auto total = static_cast<double>(end - begin);
        const auto total_pos = static_cast<double>(positives);

        // Partial Fisher-Yates draw of the candidate features.
        const std::size_t p = feature_pool.size();
        for (std::size_t i = 0; i < features_per_split; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, p - 1);
            std::swap(feature_pool[i], feature_pool[pick(rng)]);
        }

        SplitCandidate best;
        for (std::size_t f = 0; f < features_per_split; ++f) {
            const auto feature = static_cast<Eigen::Index>(feature_pool[f]);
            sorted.clear();
            for (std::size_t i = begin; i < end; ++i) {
                sorted.emplace_back(features(static_cast<Eigen::Index>(rows[i]), feature), labels[rows[i]]);
            }
            std::sort(sorted.begin(), sorted.end());
            double left_pos = 0.0;
            for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
                left_pos += sorted[i].second;
                if (sorted[i].first == sorted[i + 1].first) {
                    continue;
                }
                const auto left_n = static_cast<double>(i + 1);
                const double right_n = total - left_n;
                const double impurity = (left_n * gini(left_pos, left_n) +
                                         right_n * gini(total_pos - left_pos, right_n)) /
                                        total;
                if (!best.found || impurity < best.impurity) {
                    best.found = true;
                    best.feature = static_cast<std::int32_t>(feature);
                    best.impurity = impurity;
                    best.threshold = 0.5 * (sorted[i].first + sorted[i + 1].first);
                }
            }
        }
        return best;
    }
};

}  // namespace

DecisionTree DecisionTree::grow(const Eigen::MatrixXd& features, std::span<const std::uint8_t> labels,
                                std::vector<std::size_t> rows, const ForestParams& params, std::mt19937_64& rng) {
    DecisionTree tree;
    if (rows.empty()) {
        tree.nodes_.push_back(Node{});
        return tree;
    }
    const auto p = static_cast<std::size_t>(features.cols());
    std::size_t mtry = params.features_per_split;
    if (mtry == 0) {
        mtry = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(p))));
    }
    mtry = std::clamp<std::size_t>(mtry, 1, p);

    std::vector<std::size_t> pool(p);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    Grower grower{features, labels, params, mtry, tree.nodes_, {}, std::move(pool)};
    grower.sorted.reserve(rows.size());
    grower.build(rows, 0, rows.size(), 0, rng);
    return tree;
}

std::uint8_t DecisionTree::predict(const Eigen::Ref<const Eigen::RowVectorXd>& sample) const {
    std::int32_t at = 0;
    while (nodes_[static_cast<std::size_t>(at)].feature >= 0) {
        const Node& node = nodes_[static_cast<std::size_t>(at)];
        at = sample(node.feature) <= node.threshold ? node.left : node.right;
    }
    return nodes_[static_cast<std::size_t>(at)].label;
}

std::size_t DecisionTree::depth() const {
    std::size_t deepest = 0;
    std::vector<std::pair<std::int32_t, std::size_t>> stack{{0, 0}};
    while (!stack.empty()) {
        const auto [at, d] = stack.back();
        stack.pop_back();
        const Node& node = nodes_[static_cast<std::size_t>(at)];
        deepest = std::max(deepest, d);
        if (node.feature >= 0) {
            stack.emplace_back(node.left, d + 1);
            stack.emplace_back(node.right, d + 1);
        }
    }
    return deepest;
}

RandomForest RandomForest::fit(const Eigen::MatrixXd& features, std::span<const std::uint8_t> labels,
                               const ForestParams& params, std::uint64_t seed) {
    if (static_cast<std::size_t>(features.rows()) != labels.size()) {
        throw ShapeError("forest got " + std::to_string(features.rows()) + " rows and " +
                         std::to_string(labels.size()) + " labels");
    }
    if (params.num_trees == 0 || features.rows() == 0 || features.cols() == 0) {
        throw ConfigError("forest needs at least one tree, one sample and one feature");
    }
    RandomForest forest;
    forest.num_features_ = features.cols();
    forest.trees_.reserve(params.num_trees);
    std::mt19937_64 rng(seed);
    const auto n = static_cast<std::size_t>(features.rows());
    std::uniform_int_distribution<std::size_t> draw(0, n - 1);
    for (std::size_t b = 0; b < params.num_trees; ++b) {
        std::vector<std::size_t> rows(n);
        if (params.bootstrap) {
            for (auto& r : rows) {
                r = draw(rng);
            }
        } else {
            std::iota(rows.begin(), rows.end(), std::size_t{0});
        }
        forest.trees_.push_back(DecisionTree::grow(features, labels, std::move(rows), params, rng));
    }
    return forest;
}

std::vector<std::uint8_t> RandomForest::votes(const Eigen::Ref<const Eigen::RowVectorXd>& sample) const {
    std::vector<std::uint8_t> out;
    out.reserve(trees_.size());
    for (const auto& tree : trees_) {
        out.push_back(tree.predict(sample));
    }
    return out;
}

double RandomForest::score(const Eigen::Ref<const Eigen::RowVectorXd>& sample) const {
    if (sample.size() != num_features_) {
        throw ShapeError("forest trained on " + std::to_string(num_features_) + " features, sample has " +
                         std::to_string(sample.size()));
    }
    std::size_t positive = 0;
    for (const auto& tree : trees_) {
        positive += tree.predict(sample);
    }
    return static_cast<double>(positive) / static_cast<double>(trees_.size());
}

std::vector<double> RandomForest::scores(const Eigen::MatrixXd& features) const {
    std::vector<double> out(static_cast<std::size_t>(features.rows()));
    for (Eigen::Index i = 0; i < features.rows(); ++i) {
        out[static_cast<std::size_t>(i)] = score(features.row(i));
    }
    return out;
}

}  // namespace tscv
