#include "tscv/data.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

namespace tscv {

namespace {

constexpr double kTimeTolerance = 1e-9;

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field.push_back('"');
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field.push_back(c);
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

std::string trim(std::string_view text) {
    const auto first = text.find_first_not_of(" \t");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = text.find_last_not_of(" \t");
    return std::string(text.substr(first, last - first + 1));
}

std::optional<double> parse_number(const std::string& raw, std::size_t line, const std::string& column) {
    const std::string text = trim(raw);
    if (text.empty()) {
        return std::nullopt;
    }
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(value)) {
        throw IngestionError("non-numeric cell '" + text + "' in column '" + column + "' at line " +
                             std::to_string(line));
    }
    return value;
}

std::string quote_if_needed(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) {
        return field;
    }
    std::string out = "\"";
    for (const char c : field) {
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return out + "\"";
}

}  // namespace

MultivariateSeries resample_uniform(const RawSignalLog& log, double rate_hz) {
    if (!(rate_hz > 0.0) || !std::isfinite(rate_hz)) {
        throw ConfigError("resampling rate must be positive, got " + std::to_string(rate_hz));
    }
    if (log.channels.empty()) {
        throw IngestionError("signal log has no channels");
    }
    double origin = INFINITY;
    double end = -INFINITY;
    for (const auto& channel : log.channels) {
        if (channel.samples.empty()) {
            throw IngestionError("channel '" + channel.name + "' has no observations");
        }
        for (std::size_t i = 1; i < channel.samples.size(); ++i) {
            if (channel.samples[i].first < channel.samples[i - 1].first) {
                throw IngestionError("channel '" + channel.name + "' has decreasing timestamps");
            }
        }
        origin = std::min(origin, channel.samples.front().first);
        end = std::max(end, channel.samples.back().first);
    }
    for (const auto& channel : log.channels) {
        if (channel.samples.front().first > origin + kTimeTolerance) {
            throw IngestionError("channel '" + channel.name + "' has no observation at or before grid origin " +
                                 std::to_string(origin) + " s");
        }
    }
    const auto length = static_cast<std::size_t>(std::floor((end - origin) * rate_hz + kTimeTolerance)) + 1;
    const TimeGrid grid(rate_hz, length, origin);

    Eigen::MatrixXd values(static_cast<Eigen::Index>(log.channels.size()), static_cast<Eigen::Index>(length));
    std::vector<std::string> names;
    names.reserve(log.channels.size());
    for (std::size_t c = 0; c < log.channels.size(); ++c) {
        const auto& samples = log.channels[c].samples;
        names.push_back(log.channels[c].name);
        std::size_t next = 0;
        double current = samples.front().second;
        for (std::size_t i = 0; i < length; ++i) {
            const double t = grid.timestamp(i);
            while (next < samples.size() && samples[next].first <= t + kTimeTolerance) {
                current = samples[next].second;
                ++next;
            }
            values(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(i)) = current;
        }
    }
    return MultivariateSeries(grid, std::move(names), std::move(values));
}

MultivariateSeries minmax_normalize(const MultivariateSeries& series) {
    Eigen::MatrixXd values = series.values();
    for (Eigen::Index c = 0; c < values.rows(); ++c) {
        const double lo = values.row(c).minCoeff();
        const double hi = values.row(c).maxCoeff();
        if (hi - lo > 0.0) {
            values.row(c) = (values.row(c).array() - lo) / (hi - lo);
        } else {
            spdlog::warn("channel '{}' is constant; normalized to zeros", series.channels()[static_cast<std::size_t>(c)]);
            values.row(c).setZero();
        }
    }
    return MultivariateSeries(series.grid(), series.channels(), std::move(values));
}

LabelTrack align_labels(const std::vector<FaultEvent>& events, const TimeGrid& grid) {
    for (std::size_t i = 1; i < events.size(); ++i) {
        if (events[i].timestamp_s < events[i - 1].timestamp_s) {
            throw IngestionError("fault events out of time order at event " + std::to_string(i + 1));
        }
    }
    std::vector<std::uint8_t> labels(grid.length(), 0);
    std::size_t next = 0;
    std::uint8_t state = 0;
    for (std::size_t i = 0; i < grid.length(); ++i) {
        const double t = grid.timestamp(i);
        while (next < events.size() && events[next].timestamp_s <= t + kTimeTolerance) {
            state = events[next].state;
            ++next;
        }
        labels[i] = state;
    }
    return LabelTrack(std::move(labels));
}

LabeledDataset load_labeled_csv(const std::filesystem::path& path, const CsvOptions& options) {
    std::ifstream in(path);
    if (!in) {
        throw IngestionError("cannot open '" + path.string() + "'");
    }
    std::string line;
    if (!std::getline(in, line) || trim(line).empty()) {
        throw IngestionError("'" + path.string() + "' is empty");
    }
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
        line.erase(0, 3);
    }
    std::vector<std::string> header = split_csv_line(line);
    for (auto& name : header) {
        name = trim(name);
    }
    const auto find_column = [&](const std::string& name) -> std::optional<std::size_t> {
        const auto it = std::find(header.begin(), header.end(), name);
        return it == header.end() ? std::nullopt : std::optional<std::size_t>(it - header.begin());
    };
    const auto label_index = find_column(options.label_column);
    if (!label_index) {
        throw IngestionError("missing label column \"" + options.label_column + "\" in '" + path.string() + "'");
    }
    std::optional<std::size_t> time_index;
    if (!options.time_column.empty()) {
        time_index = find_column(options.time_column);
        if (!time_index) {
            throw IngestionError("missing time column \"" + options.time_column + "\" in '" + path.string() + "'");
        }
    }
    std::vector<std::size_t> channel_columns;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i != *label_index && (!time_index || i != *time_index)) {
            channel_columns.push_back(i);
        }
    }
    if (channel_columns.empty()) {
        throw IngestionError("'" + path.string() + "' has no signal columns");
    }

    std::vector<double> times;
    std::vector<std::uint8_t> labels;
    std::vector<std::vector<std::optional<double>>> cells(channel_columns.size());
    bool any_missing = false;
    std::size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (trim(line).empty()) {
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw IngestionError("line " + std::to_string(line_number) + " has " + std::to_string(fields.size()) +
                                 " fields, header has " + std::to_string(header.size()));
        }
        const auto label = parse_number(fields[*label_index], line_number, options.label_column);
        if (!label || (*label != 0.0 && *label != 1.0)) {
            throw IngestionError("label at line " + std::to_string(line_number) + " must be 0 or 1");
        }
        labels.push_back(static_cast<std::uint8_t>(*label));
        if (time_index) {
            const auto t = parse_number(fields[*time_index], line_number, options.time_column);
            if (!t) {
                throw IngestionError("empty timestamp at line " + std::to_string(line_number));
            }
            times.push_back(*t);
        }
        for (std::size_t c = 0; c < channel_columns.size(); ++c) {
            auto value = parse_number(fields[channel_columns[c]], line_number, header[channel_columns[c]]);
            any_missing = any_missing || !value;
            cells[c].push_back(value);
        }
    }
    const std::size_t rows = labels.size();
    if (rows == 0) {
        throw IngestionError("'" + path.string() + "' has a header but no data rows");
    }

    std::vector<std::string> names;
    for (const auto column : channel_columns) {
        names.push_back(header[column]);
    }
    const std::string dataset_name = path.stem().string();

    if (!time_index) {
        const double rate = options.rate_hz.value_or(kDefaultRateHz);
        times.resize(rows);
        for (std::size_t i = 0; i < rows; ++i) {
            times[i] = static_cast<double>(i) / rate;
        }
    }

    // Uniform-grid check.
    bool uniform = true;
    double native_rate = options.rate_hz.value_or(kDefaultRateHz);
    if (rows > 1) {
        const double step = (times.back() - times.front()) / static_cast<double>(rows - 1);
        for (std::size_t i = 1; i < rows && uniform; ++i) {
            uniform = std::abs((times[i] - times[i - 1]) - step) <= kGridJitterSeconds;
        }
        uniform = uniform && step > 0.0;
        if (uniform) {
            native_rate = 1.0 / step;
        }
    }
    const bool rate_matches =
        !options.rate_hz || std::abs(native_rate - *options.rate_hz) <= 1e-6 * std::max(1.0, *options.rate_hz);

    if (uniform && rate_matches && !any_missing) {
        Eigen::MatrixXd values(static_cast<Eigen::Index>(names.size()), static_cast<Eigen::Index>(rows));
        for (std::size_t c = 0; c < cells.size(); ++c) {
            for (std::size_t i = 0; i < rows; ++i) {
                values(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(i)) = *cells[c][i];
            }
        }
        MultivariateSeries series(TimeGrid(native_rate, rows, times.front()), std::move(names), std::move(values));
        return LabeledDataset(dataset_name, std::move(series), LabelTrack(std::move(labels)));
    }

    spdlog::info("'{}' is not a uniform grid at the requested rate; resampling", path.string());
    RawSignalLog log;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        ChannelLog channel{names[c], {}};
        for (std::size_t i = 0; i < rows; ++i) {
            if (cells[c][i]) {
                channel.samples.emplace_back(times[i], *cells[c][i]);
            }
        }
        log.channels.push_back(std::move(channel));
    }
    for (std::size_t i = 0; i < rows; ++i) {
        log.fault_events.push_back(FaultEvent{times[i], labels[i]});
    }
    const double rate = options.rate_hz.value_or(kDefaultRateHz);
    MultivariateSeries series = resample_uniform(log, rate);
    LabelTrack track = align_labels(log.fault_events, series.grid());
    return LabeledDataset(dataset_name, std::move(series), std::move(track));
}

void write_labeled_csv(const LabeledDataset& dataset, const std::filesystem::path& path, const CsvOptions& options) {
    std::ofstream out(path);
    if (!out) {
        throw IngestionError("cannot write '" + path.string() + "'");
    }
    const auto& series = dataset.series;
    const std::string time_column = options.time_column.empty() ? "time" : options.time_column;
    out << quote_if_needed(time_column);
    for (const auto& name : series.channels()) {
        out << ',' << quote_if_needed(name);
    }
    out << ',' << quote_if_needed(options.label_column) << '\n';
    char buffer[64];
    const auto write_number = [&](double v) {
        const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v);
        out.write(buffer, end - buffer);
    };
    for (std::size_t i = 0; i < series.length(); ++i) {
        write_number(series.grid().timestamp(i));
        for (Eigen::Index c = 0; c < series.values().rows(); ++c) {
            out << ',';
            write_number(series.values()(c, static_cast<Eigen::Index>(i)));
        }
        out << ',' << static_cast<int>(dataset.labels.values()[i]) << '\n';
    }
}

LabeledDataset synthesize(const SynthConfig& config) {
    if (config.channels < 1 || config.length < 1) {
        throw ConfigError("synthetic dataset needs at least one channel and one sample");
    }
    if (!(std::abs(config.ar_coefficient) < 1.0)) {
        throw ConfigError("AR coefficient must lie in (-1, 1)");
    }
    if (!(config.noise_sigma >= 0.0)) {
        throw ConfigError("noise sigma must be nonnegative");
    }
    if (!(config.affected_channel_fraction > 0.0 && config.affected_channel_fraction <= 1.0)) {
        throw ConfigError("affected channel fraction must lie in (0, 1]");
    }
    if (config.n_fault_zones > 0 &&
        (config.zone_min_length < 1 || config.zone_min_length > config.zone_max_length)) {
        throw ConfigError("zone length range must satisfy 1 <= min <= max");
    }

    std::mt19937_64 rng(config.seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    const auto m = static_cast<Eigen::Index>(config.channels);
    const auto n = static_cast<Eigen::Index>(config.length);
    const double phi = config.ar_coefficient;
    const double sigma = config.noise_sigma;

    Eigen::MatrixXd values(m, n);
    for (Eigen::Index c = 0; c < m; ++c) {
        values(c, 0) = sigma / std::sqrt(1.0 - phi * phi) * noise(rng);
        for (Eigen::Index t = 1; t < n; ++t) {
            values(c, t) = phi * values(c, t - 1) + sigma * noise(rng);
        }
    }

    // Zone lengths, then the leftover slack spread over the n+1 gaps.
    std::uniform_int_distribution<std::size_t> zone_length(config.zone_min_length, config.zone_max_length);
    std::vector<std::size_t> lengths(config.n_fault_zones);
    for (auto& len : lengths) {
        len = zone_length(rng);
    }
    const std::size_t occupied = std::accumulate(lengths.begin(), lengths.end(), std::size_t{0}) +
                                 (config.n_fault_zones > 0 ? config.n_fault_zones - 1 : 0);
    if (occupied > config.length) {
        throw ConfigError("fault zones need " + std::to_string(occupied) + " samples, series has " +
                          std::to_string(config.length));
    }
    const std::size_t slack = config.length - occupied;
    std::uniform_int_distribution<std::size_t> cut(0, slack);
    std::vector<std::size_t> cuts(config.n_fault_zones);
    for (auto& c : cuts) {
        c = cut(rng);
    }
    std::sort(cuts.begin(), cuts.end());

    std::vector<std::uint8_t> labels(config.length, 0);
    const auto affected = static_cast<std::size_t>(
        std::ceil(config.affected_channel_fraction * static_cast<double>(config.channels) - 1e-12));
    std::vector<std::size_t> channel_order(config.channels);
    std::size_t start = 0;
    std::size_t previous_cut = 0;
    for (std::size_t z = 0; z < config.n_fault_zones; ++z) {
        start += cuts[z] - previous_cut + (z > 0 ? 1 : 0);
        previous_cut = cuts[z];
        std::iota(channel_order.begin(), channel_order.end(), std::size_t{0});
        std::shuffle(channel_order.begin(), channel_order.end(), rng);
        for (std::size_t t = start; t < start + lengths[z]; ++t) {
            labels[t] = 1;
            for (std::size_t a = 0; a < std::max<std::size_t>(1, affected); ++a) {
                values(static_cast<Eigen::Index>(channel_order[a]), static_cast<Eigen::Index>(t)) +=
                    config.shift_magnitude;
            }
        }
        start += lengths[z];
    }

    std::vector<std::string> names;
    for (std::size_t c = 0; c < config.channels; ++c) {
        names.push_back("ch" + std::to_string(c));
    }
    MultivariateSeries series(TimeGrid(config.rate_hz, config.length, 0.0), std::move(names), std::move(values));
    return LabeledDataset("synth-" + std::to_string(config.seed), std::move(series), LabelTrack(std::move(labels)));
}

SynthConfig parse_synth_spec(std::string_view spec, SynthConfig base) {
    std::size_t start = 0;
    while (start < spec.size()) {
        const std::size_t comma = std::min(spec.find(',', start), spec.size());
        const std::string item = trim(spec.substr(start, comma - start));
        start = comma + 1;
        if (item.empty()) {
            continue;
        }
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("synthetic spec item '" + item + "' is not key=value");
        }
        const std::string key = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        double number = 0.0;
        const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), number);
        if (ec != std::errc{} || end != value.data() + value.size()) {
            throw ConfigError("synthetic spec value for '" + key + "' is not numeric: " + value);
        }
        const auto as_count = [&] {
            if (number < 0 || number != std::floor(number)) {
                throw ConfigError("synthetic spec '" + key + "' must be a nonnegative integer");
            }
            return static_cast<std::size_t>(number);
        };
        if (key == "m") {
            base.channels = as_count();
        } else if (key == "T") {
            base.length = as_count();
        } else if (key == "rate") {
            base.rate_hz = number;
        } else if (key == "phi") {
            base.ar_coefficient = number;
        } else if (key == "sigma") {
            base.noise_sigma = number;
        } else if (key == "zones") {
            base.n_fault_zones = as_count();
        } else if (key == "min_len") {
            base.zone_min_length = as_count();
        } else if (key == "max_len") {
            base.zone_max_length = as_count();
        } else if (key == "fraction") {
            base.affected_channel_fraction = number;
        } else if (key == "shift") {
            base.shift_magnitude = number;
        } else if (key == "seed") {
            base.seed = as_count();
        } else {
            throw ConfigError("unknown synthetic spec key '" + key + "'");
        }
    }
    return base;
}

}  // namespace tscv
