#include "tscv/core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace tscv {

TimeGrid::TimeGrid(double rate_hz, std::size_t length, double origin_s)
    : rate_hz_(rate_hz), length_(length), origin_s_(origin_s) {
    if (!(rate_hz > 0.0) || !std::isfinite(rate_hz)) {
        throw ConfigError("time grid rate must be positive, got " + std::to_string(rate_hz));
    }
    if (length == 0) {
        throw ConfigError("time grid must contain at least one sample");
    }
}

MultivariateSeries::MultivariateSeries(TimeGrid grid, std::vector<std::string> channels,
                                       Eigen::MatrixXd values)
    : grid_(grid), channels_(std::move(channels)), values_(std::move(values)) {
    if (channels_.empty()) {
        throw ShapeError("multivariate series needs at least one channel");
    }
    if (static_cast<std::size_t>(values_.rows()) != channels_.size()) {
        throw ShapeError("series has " + std::to_string(channels_.size()) + " channel names but " +
                         std::to_string(values_.rows()) + " value rows");
    }
    if (static_cast<std::size_t>(values_.cols()) != grid_.length()) {
        throw ShapeError("series rows have " + std::to_string(values_.cols()) +
                         " values, grid length is " + std::to_string(grid_.length()));
    }
    if (!values_.allFinite()) {
        throw ShapeError("series contains missing or non-finite values");
    }
}

LabelTrack::LabelTrack(std::vector<std::uint8_t> labels) : labels_(std::move(labels)) {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] > 1) {
            throw InputError("label at index " + std::to_string(i + 1) + " is not 0 or 1");
        }
    }
}

std::uint8_t LabelTrack::at(std::size_t index) const {
    if (index < 1 || index > labels_.size()) {
        throw BoundsError("label index " + std::to_string(index) + " outside [1, " +
                          std::to_string(labels_.size()) + "]");
    }
    return labels_[index - 1];
}

LabeledDataset::LabeledDataset(std::string name_, MultivariateSeries series_, LabelTrack labels_)
    : name(std::move(name_)), series(std::move(series_)), labels(std::move(labels_)) {
    if (labels.size() != series.length()) {
        throw ShapeError("dataset '" + name + "' has " + std::to_string(labels.size()) +
                         " labels for " + std::to_string(series.length()) + " timestamps");
    }
}

Eigen::Block<const Eigen::MatrixXd> subsequence_view(const MultivariateSeries& series, std::size_t p,
                                                     std::size_t n) {
    const std::size_t length = series.length();
    if (p < 1 || p > length) {
        throw BoundsError("subsequence start p=" + std::to_string(p) + " outside [1, " +
                          std::to_string(length) + "]");
    }
    if (n < 1 || p + n - 1 > length) {
        throw BoundsError("subsequence end index " + std::to_string(p + n - 1) + " exceeds |T|=" +
                          std::to_string(length));
    }
    const Eigen::MatrixXd& values = series.values();
    return values.block(0, static_cast<Eigen::Index>(p - 1), values.rows(), static_cast<Eigen::Index>(n));
}

std::string_view to_string(Strategy strategy) noexcept {
    return strategy == Strategy::WalkForward ? "WF" : "SW";
}

Strategy parse_strategy(std::string_view text) {
    std::string lowered(text);
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lowered == "wf" || lowered == "walkforward" || lowered == "walk-forward") {
        return Strategy::WalkForward;
    }
    if (lowered == "sw" || lowered == "slidingwindow" || lowered == "sliding-window") {
        return Strategy::SlidingWindow;
    }
    throw ConfigError("unknown strategy '" + std::string(text) + "' (expected wf or sw)");
}

}  // namespace tscv
