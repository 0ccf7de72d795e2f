#include "tscv/stats.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

namespace tscv {

namespace {

struct RankSummary {
    double rank_sum_a = 0.0;
    double tie_term = 0.0;  ///< sum over tie groups of t^3 - t
    bool has_ties = false;
};

RankSummary rank_samples(std::span<const double> a, std::span<const double> b) {
    struct Entry {
        double value;
        bool from_a;
    };
    std::vector<Entry> pooled;
    pooled.reserve(a.size() + b.size());
    for (const double v : a) {
        pooled.push_back({v, true});
    }
    for (const double v : b) {
        pooled.push_back({v, false});
    }
    std::sort(pooled.begin(), pooled.end(), [](const Entry& x, const Entry& y) { return x.value < y.value; });

    RankSummary summary;
    std::size_t i = 0;
    while (i < pooled.size()) {
        std::size_t j = i;
        while (j < pooled.size() && pooled[j].value == pooled[i].value) {
            ++j;
        }
        const auto t = static_cast<double>(j - i);
        // Ranks i+1..j share the mid-rank.
        const double mid_rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
        for (std::size_t k = i; k < j; ++k) {
            if (pooled[k].from_a) {
                summary.rank_sum_a += mid_rank;
            }
        }
        if (j - i > 1) {
            summary.has_ties = true;
            summary.tie_term += t * t * t - t;
        }
        i = j;
    }
    return summary;
}

double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

}  // namespace

std::string_view to_string(Alternative alternative) noexcept {
    switch (alternative) {
        case Alternative::Greater:
            return "greater";
        case Alternative::Less:
            return "less";
        case Alternative::TwoSided:
            return "two_sided";
    }
    return "two_sided";
}

Alternative parse_alternative(std::string_view text) {
    if (text == "greater") {
        return Alternative::Greater;
    }
    if (text == "less") {
        return Alternative::Less;
    }
    if (text == "two_sided" || text == "two-sided") {
        return Alternative::TwoSided;
    }
    throw InputError("unknown alternative '" + std::string(text) + "' (expected greater, less or two_sided)");
}

std::string_view to_string(UTestMethod method) noexcept {
    return method == UTestMethod::Exact ? "exact" : "normal_approx";
}

std::vector<double> exact_u_distribution(std::size_t n_a, std::size_t n_b) {
    // counts[i][j][u]: arrangements of i A-values and j B-values with U_A = u.
    // Placing the largest value in A adds j to U_A.
    std::vector<std::vector<std::vector<double>>> counts(n_a + 1, std::vector<std::vector<double>>(n_b + 1));
    for (std::size_t i = 0; i <= n_a; ++i) {
        for (std::size_t j = 0; j <= n_b; ++j) {
            auto& cell = counts[i][j];
            cell.assign(i * j + 1, 0.0);
            if (i == 0 || j == 0) {
                cell[0] = 1.0;
                continue;
            }
            const auto& largest_in_a = counts[i - 1][j];
            for (std::size_t u = 0; u < largest_in_a.size(); ++u) {
                cell[u + j] += largest_in_a[u];
            }
            const auto& largest_in_b = counts[i][j - 1];
            for (std::size_t u = 0; u < largest_in_b.size(); ++u) {
                cell[u] += largest_in_b[u];
            }
        }
    }
    return counts[n_a][n_b];
}

UTestResult mann_whitney_u(std::span<const double> sample_a, std::span<const double> sample_b,
                           Alternative alternative) {
    if (sample_a.empty() || sample_b.empty()) {
        throw InputError("Mann-Whitney U needs two nonempty samples");
    }
    const auto n_a = static_cast<double>(sample_a.size());
    const auto n_b = static_cast<double>(sample_b.size());
    const RankSummary ranks = rank_samples(sample_a, sample_b);

    UTestResult result;
    result.alternative = alternative;
    result.u_statistic = ranks.rank_sum_a - n_a * (n_a + 1.0) / 2.0;
    const double u = result.u_statistic;

    if (!ranks.has_ties && sample_a.size() <= kExactUTestLimit && sample_b.size() <= kExactUTestLimit) {
        result.method = UTestMethod::Exact;
        const std::vector<double> counts = exact_u_distribution(sample_a.size(), sample_b.size());
        const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
        const auto u_index = static_cast<std::size_t>(std::llround(u));
        double lower = 0.0;  // P(U <= u)
        double upper = 0.0;  // P(U >= u)
        for (std::size_t v = 0; v < counts.size(); ++v) {
            if (v <= u_index) {
                lower += counts[v];
            }
            if (v >= u_index) {
                upper += counts[v];
            }
        }
        lower /= total;
        upper /= total;
        switch (alternative) {
            case Alternative::Greater:
                result.p_value = lower;
                break;
            case Alternative::Less:
                result.p_value = upper;
                break;
            case Alternative::TwoSided:
                result.p_value = std::min(1.0, 2.0 * std::min(lower, upper));
                break;
        }
        return result;
    }

    result.method = UTestMethod::NormalApprox;
    const double n = n_a + n_b;
    const double mean = n_a * n_b / 2.0;
    const double variance = n_a * n_b / 12.0 * ((n + 1.0) - ranks.tie_term / (n * (n - 1.0)));
    if (!(variance > 0.0)) {
        result.p_value = 1.0;
        return result;
    }
    const double sd = std::sqrt(variance);
    switch (alternative) {
        case Alternative::Greater:
            result.p_value = normal_cdf((u - mean + 0.5) / sd);
            break;
        case Alternative::Less:
            result.p_value = normal_cdf(-(u - mean - 0.5) / sd);
            break;
        case Alternative::TwoSided: {
            const double z = (std::abs(u - mean) - 0.5) / sd;
            result.p_value = std::min(1.0, 2.0 * normal_cdf(-z));
            break;
        }
    }
    result.p_value = std::clamp(result.p_value, 0.0, 1.0);
    return result;
}

}  // namespace tscv
