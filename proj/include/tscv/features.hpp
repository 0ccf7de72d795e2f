#pragma once

#include "tscv/core.hpp"

#include <cstddef>

namespace tscv {

/// Default lookback of each per-timestamp observation window.
inline constexpr std::size_t kDefaultLookback = 16;

/**
 * @brief Per-timestamp samples over a block of a series.
 *
 * Sample i is the m x lookback window of observations ending at time index
 * block.first + i. Columns that would precede index 1 repeat the first
 * observation. The object only references the series; the series must
 * outlive it.
 */
class SampleWindows {
public:
    SampleWindows(const MultivariateSeries& series, IndexRange block, std::size_t lookback = kDefaultLookback);

    [[nodiscard]] std::size_t size() const noexcept { return block_.size(); }
    [[nodiscard]] std::size_t num_channels() const noexcept { return series_->num_channels(); }
    [[nodiscard]] std::size_t lookback() const noexcept { return lookback_; }
    [[nodiscard]] const IndexRange& block() const noexcept { return block_; }

    /// Copies window i into `out`, which must be m x lookback.
    void window(std::size_t i, Eigen::Ref<Eigen::MatrixXd> out) const;
    [[nodiscard]] Eigen::MatrixXd window(std::size_t i) const;

    /// n x (m * lookback) design matrix, channel-major within each row.
    [[nodiscard]] Eigen::MatrixXd flattened() const;

private:
    const MultivariateSeries* series_;
    IndexRange block_;
    std::size_t lookback_;
};

/// Column means and scales fit on one matrix, applied to others.
class Standardizer {
public:
    Standardizer() = default;
    /// Zero-variance columns get a unit scale.
    explicit Standardizer(const Eigen::MatrixXd& train);

    [[nodiscard]] Eigen::MatrixXd apply(const Eigen::MatrixXd& features) const;
    [[nodiscard]] Eigen::Index dimension() const noexcept { return mean_.size(); }

private:
    Eigen::RowVectorXd mean_;
    Eigen::RowVectorXd inv_scale_;
};

}  // namespace tscv
