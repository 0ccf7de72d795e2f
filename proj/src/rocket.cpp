#include "tscv/rocket.hpp"

#include "tscv/core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

namespace tscv {

std::vector<RocketKernel> rocket_generate(std::size_t num_kernels, std::size_t series_length, std::uint64_t seed) {
    if (num_kernels < 1) {
        throw ConfigError("ROCKET needs at least one kernel");
    }
    if (series_length < kMaxRocketKernelLength) {
        throw ConfigError("ROCKET input length " + std::to_string(series_length) +
                          " shorter than the maximum kernel span " + std::to_string(kMaxRocketKernelLength));
    }
    constexpr std::array<std::size_t, 3> lengths{7, 9, 11};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick_length(0, lengths.size() - 1);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<RocketKernel> kernels;
    kernels.reserve(num_kernels);
    for (std::size_t i = 0; i < num_kernels; ++i) {
        RocketKernel kernel;
        const std::size_t length = lengths[pick_length(rng)];
        kernel.weights.resize(length);
        for (auto& w : kernel.weights) {
            w = normal(rng);
        }
        const double mean = std::accumulate(kernel.weights.begin(), kernel.weights.end(), 0.0) /
                            static_cast<double>(length);
        for (auto& w : kernel.weights) {
            w -= mean;
        }
        kernel.bias = -1.0 + 2.0 * unit(rng);
        const double upper = std::log2(static_cast<double>(series_length - 1) / static_cast<double>(length - 1));
        const double exponent = upper * unit(rng);
        kernel.dilation = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(std::exp2(exponent))));
        // floor(2^x) with x <= upper keeps (length-1)*d <= series_length-1; guard rounding.
        while ((length - 1) * kernel.dilation > series_length - 1) {
            --kernel.dilation;
        }
        kernel.padding = unit(rng) < 0.5;
        kernels.push_back(std::move(kernel));
    }
    return kernels;
}

std::vector<double> rocket_convolve(std::span<const double> signal, const RocketKernel& kernel) {
    const auto n = static_cast<std::ptrdiff_t>(signal.size());
    const auto length = static_cast<std::ptrdiff_t>(kernel.length());
    const auto d = static_cast<std::ptrdiff_t>(kernel.dilation);
    const std::ptrdiff_t reach = (length - 1) * d;
    const std::ptrdiff_t pad = kernel.padding ? reach / 2 : 0;
    const std::ptrdiff_t outputs = n + 2 * pad - reach;
    if (outputs < 1) {
        throw ShapeError("window of " + std::to_string(n) + " samples shorter than kernel span " +
                         std::to_string(kernel.span()));
    }
    std::vector<double> out(static_cast<std::size_t>(outputs));
    for (std::ptrdiff_t o = 0; o < outputs; ++o) {
        const std::ptrdiff_t start = o - pad;
        double sum = kernel.bias;
        for (std::ptrdiff_t j = 0; j < length; ++j) {
            const std::ptrdiff_t at = start + j * d;
            if (at >= 0 && at < n) {
                sum += signal[static_cast<std::size_t>(at)] * kernel.weights[static_cast<std::size_t>(j)];
            }
        }
        out[static_cast<std::size_t>(o)] = sum;
    }
    return out;
}

std::pair<double, double> ppv_and_max(std::span<const double> output) {
    if (output.empty()) {
        throw ShapeError("empty convolution output");
    }
    std::size_t positive = 0;
    double maximum = -std::numeric_limits<double>::infinity();
    for (const double v : output) {
        positive += v > 0.0 ? 1 : 0;
        maximum = std::max(maximum, v);
    }
    return {static_cast<double>(positive) / static_cast<double>(output.size()), maximum};
}

Eigen::RowVectorXd rocket_transform(const Eigen::MatrixXd& window, std::span<const RocketKernel> kernels) {
    if (window.rows() < 1 || window.cols() < 1) {
        throw ShapeError("empty ROCKET input window");
    }
    // The kernel is linear in the input, so summing per-channel outputs equals
    // convolving the channel-summed signal once.
    const Eigen::RowVectorXd summed = window.colwise().sum();
    const std::span<const double> signal(summed.data(), static_cast<std::size_t>(summed.size()));
    Eigen::RowVectorXd features(2 * static_cast<Eigen::Index>(kernels.size()));
    for (std::size_t k = 0; k < kernels.size(); ++k) {
        const auto output = rocket_convolve(signal, kernels[k]);
        const auto [ppv, maximum] = ppv_and_max(output);
        features(2 * static_cast<Eigen::Index>(k)) = ppv;
        features(2 * static_cast<Eigen::Index>(k) + 1) = maximum;
    }
    return features;
}

}  // namespace tscv
