#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace tscv {

/// Random dilated convolution kernel.
struct RocketKernel {
    std::vector<double> weights;  ///< mean-centered, length 7, 9 or 11
    double bias = 0.0;
    std::size_t dilation = 1;
    bool padding = false;

    [[nodiscard]] std::size_t length() const noexcept { return weights.size(); }
    /// Number of input samples covered by one application: (length - 1) * dilation + 1.
    [[nodiscard]] std::size_t span() const noexcept { return (length() - 1) * dilation + 1; }
};

inline constexpr std::size_t kMaxRocketKernelLength = 11;

/**
 * @brief Draws `num_kernels` kernels for inputs of `series_length` samples.
 *
 * Length uniform on {7, 9, 11}; weights standard normal then mean-centered;
 * bias uniform on [-1, 1]; dilation floor(2^x) with x uniform on
 * [0, log2((series_length - 1) / (length - 1))]; padding with probability 1/2.
 *
 * @throws ConfigError when the series is shorter than the longest kernel.
 */
[[nodiscard]] std::vector<RocketKernel> rocket_generate(std::size_t num_kernels, std::size_t series_length,
                                                        std::uint64_t seed);

/**
 * @brief Dilated convolution of one kernel over a univariate signal.
 *
 * Output i is sum_j x[i + j*d] * w_j + b; a padded kernel zero-pads
 * ((length-1)*d)/2 samples on both ends.
 */
[[nodiscard]] std::vector<double> rocket_convolve(std::span<const double> signal, const RocketKernel& kernel);

/// (proportion of positive values, maximum) of a convolution output.
[[nodiscard]] std::pair<double, double> ppv_and_max(std::span<const double> output);

/**
 * @brief Feature vector [ppv_0, max_0, ppv_1, max_1, ...] of an m x n window.
 *
 * Per kernel, the channels' convolution outputs are summed position-wise and
 * the bias is added once.
 */
[[nodiscard]] Eigen::RowVectorXd rocket_transform(const Eigen::MatrixXd& window, std::span<const RocketKernel> kernels);

}  // namespace tscv
