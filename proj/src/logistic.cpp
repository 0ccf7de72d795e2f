#include "tscv/logistic.hpp"

#include "tscv/core.hpp"

#include <cmath>
#include <string>

namespace tscv {

namespace {

void check_shapes(const Eigen::MatrixXd& features, std::span<const std::uint8_t> labels,
                  const Eigen::VectorXd& weights) {
    if (static_cast<std::size_t>(features.rows()) != labels.size()) {
        throw ShapeError("logistic regression got " + std::to_string(features.rows()) + " rows and " +
                         std::to_string(labels.size()) + " labels");
    }
    if (features.cols() != weights.size()) {
        throw ShapeError("logistic regression has " + std::to_string(weights.size()) + " weights for " +
                         std::to_string(features.cols()) + " features");
    }
}

Eigen::VectorXd label_vector(std::span<const std::uint8_t> labels) {
    Eigen::VectorXd y(static_cast<Eigen::Index>(labels.size()));
    for (std::size_t i = 0; i < labels.size(); ++i) {
        y(static_cast<Eigen::Index>(i)) = labels[i];
    }
    return y;
}

// log(1 + exp(z)) without overflow.
double softplus(double z) {
    return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double sigmoid(double z) {
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    const double e = std::exp(z);
    return e / (1.0 + e);
}

}  // namespace

double LogisticRegression::objective(const Eigen::MatrixXd& features, std::span<const std::uint8_t> labels,
                                     const Eigen::VectorXd& weights, double bias, double l2) {
    check_shapes(features, labels, weights);
    const Eigen::VectorXd z = (features * weights).array() + bias;
    double total = 0.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        // -[y log s(z) + (1-y) log(1 - s(z))] = softplus(z) - y z
        total += softplus(z(i)) - labels[static_cast<std::size_t>(i)] * z(i);
    }
    return total / static_cast<double>(z.size()) + 0.5 * l2 * weights.squaredNorm();
}

LogisticRegression::Gradient LogisticRegression::gradient(const Eigen::MatrixXd& features,
                                                          std::span<const std::uint8_t> labels,
                                                          const Eigen::VectorXd& weights, double bias, double l2) {
    check_shapes(features, labels, weights);
    const Eigen::VectorXd z = (features * weights).array() + bias;
    Eigen::VectorXd residual = z.unaryExpr([](double v) { return sigmoid(v); }) - label_vector(labels);
    const double n = static_cast<double>(z.size());
    Gradient g;
    g.weights = features.transpose() * residual / n + l2 * weights;
    g.bias = residual.sum() / n;
    return g;
}

LogisticRegression LogisticRegression::fit(const Eigen::MatrixXd& features, std::span<const std::uint8_t> labels,
                                           const LogisticParams& params, std::vector<double>* loss_history) {
    if (features.rows() == 0) {
        throw TrainingError("logistic regression needs at least one sample");
    }
    Eigen::VectorXd w = Eigen::VectorXd::Zero(features.cols());
    double b = 0.0;
    if (loss_history != nullptr) {
        loss_history->clear();
        loss_history->reserve(params.epochs + 1);
    }
    for (std::size_t epoch = 0; epoch < params.epochs; ++epoch) {
        if (loss_history != nullptr) {
            loss_history->push_back(objective(features, labels, w, b, params.l2));
        }
        const Gradient g = gradient(features, labels, w, b, params.l2);
        w -= params.learning_rate * g.weights;
        b -= params.learning_rate * g.bias;
    }
    if (loss_history != nullptr) {
        loss_history->push_back(objective(features, labels, w, b, params.l2));
    }
    return LogisticRegression(std::move(w), b);
}

Eigen::VectorXd LogisticRegression::predict_proba(const Eigen::MatrixXd& features) const {
    if (features.cols() != weights_.size()) {
        throw ShapeError("logistic regression trained on " + std::to_string(weights_.size()) +
                         " features, got " + std::to_string(features.cols()));
    }
    const Eigen::VectorXd z = (features * weights_).array() + bias_;
    return z.unaryExpr([](double v) { return sigmoid(v); });
}

}  // namespace tscv
