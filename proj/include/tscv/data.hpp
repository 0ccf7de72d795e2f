#pragma once

#include "tscv/core.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tscv {

/// Observations of one signal, in nondecreasing time order.
struct ChannelLog {
    std::string name;
    std::vector<std::pair<double, double>> samples;  ///< (timestamp_s, value)
};

struct FaultEvent {
    double timestamp_s = 0.0;
    std::uint8_t state = 0;
};

/// Irregularly sampled signals plus fault-state change events.
struct RawSignalLog {
    std::vector<ChannelLog> channels;
    std::vector<FaultEvent> fault_events;
};

/**
 * @brief Last-observation-carried-forward resampling onto a uniform grid.
 *
 * The grid runs from the earliest to the latest timestamp of the log at
 * `rate_hz`. Every channel must be observed at the grid origin.
 *
 * @throws ConfigError for a non-positive rate.
 * @throws IngestionError naming a channel that is unordered or starts after the origin.
 */
[[nodiscard]] MultivariateSeries resample_uniform(const RawSignalLog& log, double rate_hz);

/// Per-channel (x - min) / (max - min); constant channels become zeros (logged).
[[nodiscard]] MultivariateSeries minmax_normalize(const MultivariateSeries& series);

/// Zero-order hold of the fault state over the grid; state 0 before the first event.
[[nodiscard]] LabelTrack align_labels(const std::vector<FaultEvent>& events, const TimeGrid& grid);

struct CsvOptions {
    std::string time_column = "time";  ///< empty: rows are consecutive samples
    std::string label_column = "Fault Status";
    /// Target rate. Unset keeps a uniform file's native grid; non-uniform files default to 100 Hz.
    std::optional<double> rate_hz;
};

inline constexpr double kDefaultRateHz = 100.0;
inline constexpr double kGridJitterSeconds = 1e-6;

/**
 * @brief Reads a wide CSV: one time column, one label column, numeric channels.
 *
 * Channels keep header order. Uniform files at the requested rate load
 * directly; anything else (irregular timestamps, empty cells, another rate)
 * goes through resample_uniform and align_labels.
 */
[[nodiscard]] LabeledDataset load_labeled_csv(const std::filesystem::path& path, const CsvOptions& options = {});

/// Writes the dataset back out in the layout load_labeled_csv reads.
void write_labeled_csv(const LabeledDataset& dataset, const std::filesystem::path& path,
                       const CsvOptions& options = {});

struct SynthConfig {
    std::size_t channels = 8;
    std::size_t length = 1500;
    double rate_hz = 100.0;
    double ar_coefficient = 0.9;
    double noise_sigma = 0.1;
    std::size_t n_fault_zones = 5;
    std::size_t zone_min_length = 40;
    std::size_t zone_max_length = 250;
    double affected_channel_fraction = 0.25;
    double shift_magnitude = 1.5;
    std::uint64_t seed = 0;
};

/**
 * @brief AR(1) channels with intermittent mean-shift fault zones.
 *
 * Zones never overlap or touch; inside each, a random ceil(fraction * m)
 * channels are shifted by shift_magnitude and labels are 1.
 *
 * @throws ConfigError for invalid parameters or zones that cannot be placed.
 */
[[nodiscard]] LabeledDataset synthesize(const SynthConfig& config);

/// Parses "key=value,..." overrides (m, T, rate, phi, sigma, zones, min_len, max_len, fraction, shift, seed).
[[nodiscard]] SynthConfig parse_synth_spec(std::string_view spec, SynthConfig base = {});

}  // namespace tscv
