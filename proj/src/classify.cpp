#include "tscv/classify.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace tscv {

namespace {

std::string block_name(const SampleWindows& samples) {
    return "training block [" + std::to_string(samples.block().first) + ", " +
           std::to_string(samples.block().last) + "]";
}

double positive_share(std::span<const std::uint8_t> labels) {
    std::size_t positives = 0;
    for (const auto y : labels) {
        positives += y;
    }
    return static_cast<double>(positives) / static_cast<double>(labels.size());
}

// Linear-interpolation quantile of unsorted values.
double quantile(std::vector<double> values, double q) {
    std::sort(values.begin(), values.end());
    const double position = q * static_cast<double>(values.size() - 1);
    const auto lower = static_cast<std::size_t>(std::floor(position));
    const std::size_t upper = std::min(lower + 1, values.size() - 1);
    const double fraction = position - static_cast<double>(lower);
    return values[lower] + fraction * (values[upper] - values[lower]);
}

class MajorityModel final : public ClassifierModel {
public:
    MajorityModel(std::uint64_t seed, const SampleWindows& train, double prior)
        : ClassifierModel(seed, train.num_channels(), train.lookback()), prior_(prior) {}

    std::string_view id() const noexcept override { return "majority"; }

    std::vector<double> predict_scores(const SampleWindows& samples) const override {
        check_shape(samples);
        return std::vector<double>(samples.size(), prior_);
    }

private:
    double prior_;
};

std::vector<double> window_residuals(const SampleWindows& samples) {
    std::vector<double> out(samples.size());
    Eigen::MatrixXd buffer(static_cast<Eigen::Index>(samples.num_channels()),
                           static_cast<Eigen::Index>(samples.lookback()));
    for (std::size_t i = 0; i < samples.size(); ++i) {
        samples.window(i, buffer);
        out[i] = window_residual(buffer);
    }
    return out;
}

class ResidualModel final : public ClassifierModel {
public:
    ResidualModel(std::uint64_t seed, const SampleWindows& train, double quantile_level)
        : ClassifierModel(seed, train.num_channels(), train.lookback()),
          reference_(quantile(window_residuals(train), quantile_level)) {}

    std::string_view id() const noexcept override { return "residual"; }

    std::vector<double> predict_scores(const SampleWindows& samples) const override {
        check_shape(samples);
        std::vector<double> scores = window_residuals(samples);
        for (auto& s : scores) {
            if (reference_ > 0.0) {
                s = std::min(1.0, s / reference_);
            } else {
                s = s > 0.0 ? 1.0 : 0.0;
            }
        }
        return scores;
    }

private:
    double reference_;
};

class ForestModel final : public ClassifierModel {
public:
    ForestModel(std::uint64_t seed, const SampleWindows& train, std::span<const std::uint8_t> labels,
                const ForestParams& params)
        : ClassifierModel(seed, train.num_channels(), train.lookback()),
          forest_(RandomForest::fit(train.flattened(), labels, params, seed)) {}

    std::string_view id() const noexcept override { return "rf"; }

    std::vector<double> predict_scores(const SampleWindows& samples) const override {
        check_shape(samples);
        return forest_.scores(samples.flattened());
    }

private:
    RandomForest forest_;
};

/// Standardize on the training block, shrink by 1/sqrt(p), then a logistic head.
class LinearHead {
public:
    LinearHead(const Eigen::MatrixXd& train, std::span<const std::uint8_t> labels, const LogisticParams& params)
        : standardizer_(train), shrink_(1.0 / std::sqrt(static_cast<double>(train.cols()))),
          regression_(LogisticRegression::fit(prepare(train), labels, params)) {}

    [[nodiscard]] std::vector<double> scores(const Eigen::MatrixXd& features) const {
        const Eigen::VectorXd p = regression_.predict_proba(prepare(features));
        return {p.data(), p.data() + p.size()};
    }

private:
    [[nodiscard]] Eigen::MatrixXd prepare(const Eigen::MatrixXd& features) const {
        return standardizer_.apply(features) * shrink_;
    }

    Standardizer standardizer_;
    double shrink_;
    LogisticRegression regression_;
};

class LogisticModel final : public ClassifierModel {
public:
    LogisticModel(std::uint64_t seed, const SampleWindows& train, std::span<const std::uint8_t> labels,
                  const LogisticParams& params)
        : ClassifierModel(seed, train.num_channels(), train.lookback()), head_(train.flattened(), labels, params) {}

    std::string_view id() const noexcept override { return "logistic"; }

    std::vector<double> predict_scores(const SampleWindows& samples) const override {
        check_shape(samples);
        return head_.scores(samples.flattened());
    }

private:
    LinearHead head_;
};

Eigen::MatrixXd rocket_features(const SampleWindows& samples, std::span<const RocketKernel> kernels) {
    Eigen::MatrixXd features(static_cast<Eigen::Index>(samples.size()), 2 * static_cast<Eigen::Index>(kernels.size()));
    Eigen::MatrixXd buffer(static_cast<Eigen::Index>(samples.num_channels()),
                           static_cast<Eigen::Index>(samples.lookback()));
    for (std::size_t i = 0; i < samples.size(); ++i) {
        samples.window(i, buffer);
        features.row(static_cast<Eigen::Index>(i)) = rocket_transform(buffer, kernels);
    }
    return features;
}

class RocketModel final : public ClassifierModel {
public:
    RocketModel(std::uint64_t seed, const SampleWindows& train, std::span<const std::uint8_t> labels,
                const ClassifierConfig& config)
        : ClassifierModel(seed, train.num_channels(), train.lookback()),
          kernels_(rocket_generate(config.rocket_kernels, train.lookback(), seed)),
          head_(rocket_features(train, kernels_), labels, config.logistic) {}

    std::string_view id() const noexcept override { return "rocket"; }

    std::vector<double> predict_scores(const SampleWindows& samples) const override {
        check_shape(samples);
        return head_.scores(rocket_features(samples, kernels_));
    }

private:
    std::vector<RocketKernel> kernels_;
    LinearHead head_;
};

}  // namespace

std::string_view classifier_id(ClassifierKind kind) noexcept {
    switch (kind) {
        case ClassifierKind::Majority:
            return "majority";
        case ClassifierKind::Residual:
            return "residual";
        case ClassifierKind::RandomForest:
            return "rf";
        case ClassifierKind::Logistic:
            return "logistic";
        case ClassifierKind::Rocket:
            return "rocket";
    }
    return "unknown";
}

ClassifierKind parse_classifier(std::string_view token) {
    std::string lowered(token);
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (const auto kind : {ClassifierKind::Majority, ClassifierKind::Residual, ClassifierKind::RandomForest,
                            ClassifierKind::Logistic, ClassifierKind::Rocket}) {
        if (lowered == classifier_id(kind)) {
            return kind;
        }
    }
    throw ConfigError("unknown classifier '" + std::string(token) +
                      "' (expected majority, residual, rf, logistic or rocket)");
}

std::vector<ClassifierKind> parse_classifier_list(std::string_view tokens) {
    std::vector<ClassifierKind> kinds;
    std::size_t start = 0;
    while (start <= tokens.size()) {
        const std::size_t comma = std::min(tokens.find(',', start), tokens.size());
        const auto token = tokens.substr(start, comma - start);
        if (!token.empty()) {
            kinds.push_back(parse_classifier(token));
        }
        start = comma + 1;
    }
    if (kinds.empty()) {
        throw ConfigError("empty classifier list");
    }
    return kinds;
}

void ClassifierModel::check_shape(const SampleWindows& samples) const {
    if (samples.num_channels() != channels_ || samples.lookback() != lookback_) {
        throw ShapeError(std::string(id()) + " trained on " + std::to_string(channels_) + " channels x " +
                         std::to_string(lookback_) + " lookback, got " + std::to_string(samples.num_channels()) +
                         " x " + std::to_string(samples.lookback()));
    }
}

std::unique_ptr<const ClassifierModel> fit(ClassifierKind kind, const ClassifierConfig& config,
                                           const SampleWindows& train, std::span<const std::uint8_t> train_labels,
                                           std::uint64_t seed) {
    if (train_labels.size() != train.size()) {
        throw ShapeError(block_name(train) + " has " + std::to_string(train.size()) + " samples but " +
                         std::to_string(train_labels.size()) + " labels");
    }
    if (train.size() < kMinTrainingSamples) {
        throw TrainingError(block_name(train) + " has fewer than " + std::to_string(kMinTrainingSamples) +
                            " samples");
    }
    const double prior = positive_share(train_labels);
    const bool single_class = prior == 0.0 || prior == 1.0;
    switch (kind) {
        case ClassifierKind::Majority:
            return std::make_unique<MajorityModel>(seed, train, prior);
        case ClassifierKind::Residual:
            return std::make_unique<ResidualModel>(seed, train, config.residual_quantile);
        default:
            break;
    }
    if (single_class) {
        throw TrainingError(std::string(classifier_id(kind)) + ": " + block_name(train) +
                            " contains a single class");
    }
    switch (kind) {
        case ClassifierKind::RandomForest:
            return std::make_unique<ForestModel>(seed, train, train_labels, config.forest);
        case ClassifierKind::Logistic:
            return std::make_unique<LogisticModel>(seed, train, train_labels, config.logistic);
        case ClassifierKind::Rocket:
            return std::make_unique<RocketModel>(seed, train, train_labels, config);
        default:
            break;
    }
    throw ConfigError("unhandled classifier kind");
}

double residual_score(const Eigen::Ref<const Eigen::MatrixXd>& observed,
                      const Eigen::Ref<const Eigen::MatrixXd>& predicted) {
    if (observed.rows() != predicted.rows() || observed.cols() != predicted.cols()) {
        throw ShapeError("residual shapes differ: " + std::to_string(observed.rows()) + "x" +
                         std::to_string(observed.cols()) + " vs " + std::to_string(predicted.rows()) + "x" +
                         std::to_string(predicted.cols()));
    }
    return (observed - predicted).colwise().norm().sum();
}

double window_residual(const Eigen::Ref<const Eigen::MatrixXd>& window) {
    if (window.cols() < 2) {
        return 0.0;
    }
    const Eigen::Index n = window.cols() - 1;
    return residual_score(window.rightCols(n), window.leftCols(n));
}

}  // namespace tscv
