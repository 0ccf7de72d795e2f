#include "tscv/stats.hpp"

#include <spdlog/spdlog.h>

#include <array>
#include <cmath>
#include <utility>

namespace tscv {

namespace {

// 5% critical values of the Dickey-Fuller t statistic, regression with
// intercept, by sample size. The last entry is the asymptotic value.
constexpr std::array<std::pair<double, double>, 6> kAdfConstant5pct{{
    {25.0, -3.00},
    {50.0, -2.93},
    {100.0, -2.89},
    {250.0, -2.88},
    {500.0, -2.87},
    {INFINITY, -2.86},
}};

}  // namespace

std::size_t schwert_lag(std::size_t n) {
    return static_cast<std::size_t>(std::floor(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
}

double adf_critical_value_5pct(std::size_t nobs) {
    const double n = static_cast<double>(nobs);
    if (n <= kAdfConstant5pct.front().first) {
        return kAdfConstant5pct.front().second;
    }
    // Linear in 1/n between table rows.
    for (std::size_t i = 1; i < kAdfConstant5pct.size(); ++i) {
        const auto [n_hi, cv_hi] = kAdfConstant5pct[i];
        if (n <= n_hi) {
            const auto [n_lo, cv_lo] = kAdfConstant5pct[i - 1];
            const double x_lo = 1.0 / n_lo;
            const double x_hi = std::isinf(n_hi) ? 0.0 : 1.0 / n_hi;
            const double x = 1.0 / n;
            return cv_lo + (cv_hi - cv_lo) * (x - x_lo) / (x_hi - x_lo);
        }
    }
    return kAdfConstant5pct.back().second;
}

UnitRootResult adf_test(std::span<const double> values, std::optional<std::size_t> lag) {
    UnitRootResult result;
    const std::size_t n = values.size();
    result.lags = lag.value_or(schwert_lag(n));
    if (n < kMinStationaritySamples) {
        return result;
    }
    const std::size_t p = result.lags;
    if (n < p + 2) {
        return result;
    }
    const std::size_t nobs = n - p - 1;
    const std::size_t k = 2 + p;
    if (nobs <= k) {
        return result;
    }

    // Row r corresponds to time t = p + 1 + r (0-based), dy_t = y_t - y_{t-1}.
    Eigen::MatrixXd design(static_cast<Eigen::Index>(nobs), static_cast<Eigen::Index>(k));
    Eigen::VectorXd target(static_cast<Eigen::Index>(nobs));
    for (std::size_t r = 0; r < nobs; ++r) {
        const std::size_t t = p + 1 + r;
        const auto row = static_cast<Eigen::Index>(r);
        target(row) = values[t] - values[t - 1];
        design(row, 0) = 1.0;
        design(row, 1) = values[t - 1];
        for (std::size_t i = 1; i <= p; ++i) {
            design(row, static_cast<Eigen::Index>(1 + i)) = values[t - i] - values[t - i - 1];
        }
    }

    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < static_cast<Eigen::Index>(k)) {
        return result;
    }
    const Eigen::VectorXd beta = qr.solve(target);
    const Eigen::VectorXd residual = target - design * beta;
    const double s2 = residual.squaredNorm() / static_cast<double>(nobs - k);
    const Eigen::MatrixXd gram = design.transpose() * design;
    const Eigen::VectorXd e1 = Eigen::VectorXd::Unit(static_cast<Eigen::Index>(k), 1);
    const double var_beta = s2 * gram.ldlt().solve(e1)(1);
    if (!(var_beta > 0.0) || !std::isfinite(var_beta)) {
        return result;
    }
    result.statistic = beta(1) / std::sqrt(var_beta);
    result.critical_value = adf_critical_value_5pct(nobs);
    result.reject_5pct = *result.statistic < result.critical_value;
    return result;
}

UnitRootResult kpss_test(std::span<const double> values) {
    UnitRootResult result;
    const std::size_t n = values.size();
    result.lags = schwert_lag(n);
    result.critical_value = kKpssLevelCritical5pct;
    if (n < kMinStationaritySamples) {
        return result;
    }
    const Eigen::Map<const Eigen::VectorXd> y(values.data(), static_cast<Eigen::Index>(n));
    const Eigen::VectorXd e = y.array() - y.mean();
    const double nd = static_cast<double>(n);

    double long_run = e.squaredNorm() / nd;
    const std::size_t bandwidth = std::min(result.lags, n - 1);
    for (std::size_t j = 1; j <= bandwidth; ++j) {
        const auto len = static_cast<Eigen::Index>(n - j);
        const double gamma = e.tail(len).dot(e.head(len)) / nd;
        long_run += 2.0 * (1.0 - static_cast<double>(j) / static_cast<double>(bandwidth + 1)) * gamma;
    }
    const double scale = std::max(1.0, y.cwiseAbs().maxCoeff());
    if (!(long_run > 1e-20 * scale * scale)) {
        return result;
    }
    double partial = 0.0;
    double sum_sq = 0.0;
    for (Eigen::Index t = 0; t < e.size(); ++t) {
        partial += e(t);
        sum_sq += partial * partial;
    }
    result.statistic = sum_sq / (nd * nd * long_run);
    result.reject_5pct = *result.statistic > kKpssLevelCritical5pct;
    return result;
}

StationarityReport dataset_stationarity(const MultivariateSeries& series) {
    StationarityReport report;
    const Eigen::MatrixXd& values = series.values();
    const std::size_t n = series.length();
    std::vector<double> row(n);
    for (std::size_t c = 0; c < series.num_channels(); ++c) {
        for (std::size_t t = 0; t < n; ++t) {
            row[t] = values(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(t));
        }
        ChannelStationarity channel{series.channels()[c], adf_test(row), kpss_test(row)};
        if (!channel.computable()) {
            spdlog::debug("stationarity not computable for channel '{}'", channel.channel);
        }
        report.overall_nonstationary = report.overall_nonstationary || channel.nonstationary();
        report.channels.push_back(std::move(channel));
    }
    return report;
}

}  // namespace tscv
