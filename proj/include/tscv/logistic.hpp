#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace tscv {

struct LogisticParams {
    double learning_rate = 0.1;
    std::size_t epochs = 200;
    double l2 = 1e-4;
};

/**
 * @brief L2-regularized logistic regression trained by full-batch gradient descent.
 *
 * Objective: mean binary cross-entropy + (l2 / 2) * ||w||^2. The intercept is
 * not penalized. Weights start at zero, so training is deterministic.
 */
class LogisticRegression {
public:
    struct Gradient {
        Eigen::VectorXd weights;
        double bias = 0.0;
    };

    LogisticRegression() = default;
    LogisticRegression(Eigen::VectorXd weights, double bias) : weights_(std::move(weights)), bias_(bias) {}

    /// Trains from zero; `loss_history` (if given) receives the objective before each update and after the last.
    static LogisticRegression fit(const Eigen::MatrixXd& features, std::span<const std::uint8_t> labels,
                                  const LogisticParams& params, std::vector<double>* loss_history = nullptr);

    static double objective(const Eigen::MatrixXd& features, std::span<const std::uint8_t> labels,
                            const Eigen::VectorXd& weights, double bias, double l2);
    static Gradient gradient(const Eigen::MatrixXd& features, std::span<const std::uint8_t> labels,
                             const Eigen::VectorXd& weights, double bias, double l2);

    [[nodiscard]] Eigen::VectorXd predict_proba(const Eigen::MatrixXd& features) const;
    [[nodiscard]] const Eigen::VectorXd& weights() const noexcept { return weights_; }
    [[nodiscard]] double bias() const noexcept { return bias_; }

private:
    Eigen::VectorXd weights_;
    double bias_ = 0.0;
};

}  // namespace tscv
