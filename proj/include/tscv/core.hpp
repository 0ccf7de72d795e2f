#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tscv {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An index or length outside the valid range of a series.
class BoundsError : public Error {
public:
    using Error::Error;
};

/// Invalid parameters (window too short, rate <= 0, zones that do not fit).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Matrix/vector shapes that do not agree.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// A classifier could not be trained on the supplied data.
class TrainingError : public Error {
public:
    using Error::Error;
};

/// A metric is undefined for the input (e.g. single-class labels for AP).
class UndefinedMetricError : public Error {
public:
    using Error::Error;
};

/// Malformed or unsupported input files.
class IngestionError : public Error {
public:
    using Error::Error;
};

/// Invalid arguments to a statistical routine.
class InputError : public Error {
public:
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Time grid and series
// ---------------------------------------------------------------------------

/**
 * @brief Uniform time grid: timestamp(i) = origin_s + i / rate_hz, i in [0, length).
 */
class TimeGrid {
public:
    TimeGrid(double rate_hz, std::size_t length, double origin_s = 0.0);

    [[nodiscard]] double rate_hz() const noexcept { return rate_hz_; }
    [[nodiscard]] std::size_t length() const noexcept { return length_; }
    [[nodiscard]] double origin_s() const noexcept { return origin_s_; }

    /// Timestamp of the 0-based sample position.
    [[nodiscard]] double timestamp(std::size_t position) const noexcept {
        return origin_s_ + static_cast<double>(position) / rate_hz_;
    }

private:
    double rate_hz_;
    std::size_t length_;
    double origin_s_;
};

/**
 * @brief m-channel real-valued series on a uniform grid.
 *
 * Values are stored as an m x |T| matrix, one row per channel. The object is
 * immutable after construction.
 */
class MultivariateSeries {
public:
    MultivariateSeries(TimeGrid grid, std::vector<std::string> channels, Eigen::MatrixXd values);

    [[nodiscard]] const TimeGrid& grid() const noexcept { return grid_; }
    [[nodiscard]] const std::vector<std::string>& channels() const noexcept { return channels_; }
    [[nodiscard]] const Eigen::MatrixXd& values() const noexcept { return values_; }
    [[nodiscard]] std::size_t num_channels() const noexcept { return channels_.size(); }
    [[nodiscard]] std::size_t length() const noexcept { return grid_.length(); }

private:
    TimeGrid grid_;
    std::vector<std::string> channels_;
    Eigen::MatrixXd values_;
};

/// Binary per-timestamp labels (1 = fault).
class LabelTrack {
public:
    explicit LabelTrack(std::vector<std::uint8_t> labels);

    [[nodiscard]] const std::vector<std::uint8_t>& values() const noexcept { return labels_; }
    [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }
    /// Label at a 1-based time index.
    [[nodiscard]] std::uint8_t at(std::size_t index) const;

private:
    std::vector<std::uint8_t> labels_;
};

struct LabeledDataset {
    LabeledDataset(std::string name, MultivariateSeries series, LabelTrack labels);

    std::string name;
    MultivariateSeries series;
    LabelTrack labels;
};

/**
 * @brief Columns p..p+n-1 (1-based) of the series, without copying.
 * @throws BoundsError naming the offending index when the range leaves the series.
 */
[[nodiscard]] Eigen::Block<const Eigen::MatrixXd> subsequence_view(const MultivariateSeries& series,
                                                                   std::size_t p, std::size_t n);

// ---------------------------------------------------------------------------
// Folds and results
// ---------------------------------------------------------------------------

/// Inclusive 1-based index range [first, last].
struct IndexRange {
    std::size_t first = 1;
    std::size_t last = 1;

    [[nodiscard]] std::size_t size() const noexcept { return last - first + 1; }
    friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

struct Fold {
    std::size_t k = 1;  ///< 1-based fold index
    IndexRange train;
    IndexRange test;

    friend bool operator==(const Fold&, const Fold&) = default;
};

enum class Strategy { WalkForward, SlidingWindow };

[[nodiscard]] std::string_view to_string(Strategy strategy) noexcept;
/// Accepts "WF"/"SW" and the long names, case-insensitive.
[[nodiscard]] Strategy parse_strategy(std::string_view text);

struct FoldPlan {
    Strategy strategy = Strategy::WalkForward;
    std::size_t K = 0;
    std::size_t omega = 0;
    std::size_t delta = 0;
    std::vector<Fold> folds;
};

struct ScoredFold {
    Fold fold;
    std::vector<double> scores;
    double positive_ratio = 0.0;
    bool valid = false;
    std::optional<double> auc_pr;  ///< present only when valid
};

struct ExperimentRecord {
    std::string dataset_name;
    std::string classifier_id;
    Strategy strategy = Strategy::WalkForward;
    std::size_t K = 0;
    std::size_t delta = 0;
    std::uint64_t seed = 0;
    std::vector<ScoredFold> scored_folds;
    std::optional<double> median_auc_pr;
    std::optional<double> sensitivity_auc;
    std::optional<std::string> skip_reason;
};

}  // namespace tscv
