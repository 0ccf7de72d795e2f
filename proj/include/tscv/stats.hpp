#pragma once

#include "tscv/core.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tscv {

// ---------------------------------------------------------------------------
// Mann-Whitney U
// ---------------------------------------------------------------------------

/**
 * @brief Alternative hypothesis, stated for sample B relative to sample A.
 *
 * Greater: B tends to exceed A. Less: B tends to fall below A.
 */
enum class Alternative { Greater, Less, TwoSided };

enum class UTestMethod { Exact, NormalApprox };

[[nodiscard]] std::string_view to_string(Alternative alternative) noexcept;
[[nodiscard]] Alternative parse_alternative(std::string_view text);
[[nodiscard]] std::string_view to_string(UTestMethod method) noexcept;

struct UTestResult {
    double u_statistic = 0.0;  ///< U of sample A: #(a > b) + 0.5 * #(a == b)
    double p_value = 1.0;
    Alternative alternative = Alternative::TwoSided;
    UTestMethod method = UTestMethod::NormalApprox;
};

/// Both samples at most this size and tie-free selects the exact null distribution.
inline constexpr std::size_t kExactUTestLimit = 12;

/**
 * @brief Mann-Whitney U test on mid-ranks.
 *
 * Exact p-values come from the full permutation distribution of U when both
 * samples have at most kExactUTestLimit values and no ties; otherwise the
 * normal approximation with tie-corrected variance and a 0.5 continuity
 * correction is used.
 *
 * @throws InputError if either sample is empty.
 */
[[nodiscard]] UTestResult mann_whitney_u(std::span<const double> sample_a, std::span<const double> sample_b,
                                         Alternative alternative);

/// Number of size-n_a subsets of ranks 1..n_a+n_b for each U value 0..n_a*n_b.
[[nodiscard]] std::vector<double> exact_u_distribution(std::size_t n_a, std::size_t n_b);

// ---------------------------------------------------------------------------
// Stationarity
// ---------------------------------------------------------------------------

inline constexpr std::size_t kMinStationaritySamples = 20;
inline constexpr double kKpssLevelCritical5pct = 0.463;

/// floor(12 * (n / 100)^(1/4)).
[[nodiscard]] std::size_t schwert_lag(std::size_t n);

/// 5% critical value of the constant-only Dickey-Fuller t statistic for `nobs` regression rows.
[[nodiscard]] double adf_critical_value_5pct(std::size_t nobs);

struct UnitRootResult {
    std::optional<double> statistic;  ///< absent when not computable
    bool reject_5pct = false;
    std::size_t lags = 0;
    double critical_value = 0.0;

    [[nodiscard]] bool computable() const noexcept { return statistic.has_value(); }
};

/**
 * @brief Augmented Dickey-Fuller test with intercept.
 *
 * Regresses dy_t on [1, y_{t-1}, dy_{t-1}, ..., dy_{t-lag}] by OLS; the
 * statistic is the t ratio of the y_{t-1} coefficient. Rejects the unit-root
 * null when the statistic is below the 5% critical value. Without a lag the
 * Schwert rule is used. Short or constant series are not computable.
 */
[[nodiscard]] UnitRootResult adf_test(std::span<const double> values, std::optional<std::size_t> lag = std::nullopt);

/**
 * @brief KPSS level-stationarity test.
 *
 * Newey-West long-run variance with Bartlett weights and bandwidth
 * schwert_lag(n). Rejects stationarity when the statistic exceeds 0.463.
 */
[[nodiscard]] UnitRootResult kpss_test(std::span<const double> values);

struct ChannelStationarity {
    std::string channel;
    UnitRootResult adf;
    UnitRootResult kpss;

    [[nodiscard]] bool computable() const noexcept { return adf.computable() && kpss.computable(); }
    /// Fails if ADF keeps the unit root or KPSS rejects stationarity.
    [[nodiscard]] bool nonstationary() const noexcept { return computable() && (!adf.reject_5pct || kpss.reject_5pct); }
};

struct StationarityReport {
    std::vector<ChannelStationarity> channels;
    bool overall_nonstationary = false;
};

[[nodiscard]] StationarityReport dataset_stationarity(const MultivariateSeries& series);

}  // namespace tscv
