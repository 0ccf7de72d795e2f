#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace tscv {

struct ForestParams {
    std::size_t num_trees = 100;
    std::size_t max_depth = 8;
    /// Candidate features per split; 0 selects ceil(sqrt(features)).
    std::size_t features_per_split = 0;
    bool bootstrap = true;
    std::size_t min_samples_split = 2;
};

/**
 * @brief Binary CART tree grown on Gini impurity.
 *
 * Splits are `x[feature] <= threshold` to the left with thresholds at the
 * midpoint between consecutive distinct values. Leaves predict their majority
 * class; an even split goes to class 0.
 */
class DecisionTree {
public:
    struct Node {
        std::int32_t feature = -1;  ///< -1 marks a leaf
        double threshold = 0.0;
        std::int32_t left = -1;
        std::int32_t right = -1;
        std::uint8_t label = 0;
    };

    /// Grows a tree on the given rows of `features` (duplicates allowed).
    static DecisionTree grow(const Eigen::MatrixXd& features, std::span<const std::uint8_t> labels,
                             std::vector<std::size_t> rows, const ForestParams& params, std::mt19937_64& rng);

    [[nodiscard]] std::uint8_t predict(const Eigen::Ref<const Eigen::RowVectorXd>& sample) const;
    [[nodiscard]] const std::vector<Node>& nodes() const noexcept { return nodes_; }
    [[nodiscard]] std::size_t depth() const;

private:
    std::vector<Node> nodes_;
};

/// Bagged CART ensemble; the score of a sample is its share of positive votes.
class RandomForest {
public:
    static RandomForest fit(const Eigen::MatrixXd& features, std::span<const std::uint8_t> labels,
                            const ForestParams& params, std::uint64_t seed);

    [[nodiscard]] std::vector<std::uint8_t> votes(const Eigen::Ref<const Eigen::RowVectorXd>& sample) const;
    [[nodiscard]] double score(const Eigen::Ref<const Eigen::RowVectorXd>& sample) const;
    [[nodiscard]] std::vector<double> scores(const Eigen::MatrixXd& features) const;

    [[nodiscard]] const std::vector<DecisionTree>& trees() const noexcept { return trees_; }
    [[nodiscard]] Eigen::Index num_features() const noexcept { return num_features_; }

private:
    std::vector<DecisionTree> trees_;
    Eigen::Index num_features_ = 0;
};

}  // namespace tscv
