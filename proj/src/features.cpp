#include "tscv/features.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tscv {

SampleWindows::SampleWindows(const MultivariateSeries& series, IndexRange block, std::size_t lookback)
    : series_(&series), block_(block), lookback_(lookback) {
    if (lookback_ < 1) {
        throw ConfigError("sample lookback must be at least 1");
    }
    if (block_.first < 1 || block_.first > block_.last || block_.last > series.length()) {
        throw BoundsError("sample block [" + std::to_string(block_.first) + ", " +
                          std::to_string(block_.last) + "] outside [1, " +
                          std::to_string(series.length()) + "]");
    }
}

void SampleWindows::window(std::size_t i, Eigen::Ref<Eigen::MatrixXd> out) const {
    if (i >= size()) {
        throw BoundsError("sample " + std::to_string(i) + " outside block of " + std::to_string(size()));
    }
    const Eigen::MatrixXd& values = series_->values();
    // 0-based column of the window's last observation.
    const auto end = static_cast<std::ptrdiff_t>(block_.first + i - 1);
    const auto w = static_cast<std::ptrdiff_t>(lookback_);
    for (std::ptrdiff_t j = 0; j < w; ++j) {
        const std::ptrdiff_t column = std::max<std::ptrdiff_t>(0, end - (w - 1) + j);
        out.col(j) = values.col(column);
    }
}

Eigen::MatrixXd SampleWindows::window(std::size_t i) const {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(num_channels()), static_cast<Eigen::Index>(lookback_));
    window(i, out);
    return out;
}

Eigen::MatrixXd SampleWindows::flattened() const {
    const auto m = static_cast<Eigen::Index>(num_channels());
    const auto w = static_cast<Eigen::Index>(lookback_);
    Eigen::MatrixXd design(static_cast<Eigen::Index>(size()), m * w);
    Eigen::MatrixXd buffer(m, w);
    for (std::size_t i = 0; i < size(); ++i) {
        window(i, buffer);
        // Row-major flattening keeps each channel's lookback contiguous.
        for (Eigen::Index c = 0; c < m; ++c) {
            design.row(static_cast<Eigen::Index>(i)).segment(c * w, w) = buffer.row(c);
        }
    }
    return design;
}

Standardizer::Standardizer(const Eigen::MatrixXd& train) {
    const double n = static_cast<double>(train.rows());
    mean_ = train.colwise().mean();
    inv_scale_.resize(train.cols());
    for (Eigen::Index j = 0; j < train.cols(); ++j) {
        const double var = (train.col(j).array() - mean_(j)).square().sum() / n;
        inv_scale_(j) = var > 1e-24 ? 1.0 / std::sqrt(var) : 1.0;
    }
}

Eigen::MatrixXd Standardizer::apply(const Eigen::MatrixXd& features) const {
    if (features.cols() != mean_.size()) {
        throw ShapeError("standardizer fit on " + std::to_string(mean_.size()) + " features, got " +
                         std::to_string(features.cols()));
    }
    return (features.rowwise() - mean_).array().rowwise() * inv_scale_.array();
}

}  // namespace tscv
