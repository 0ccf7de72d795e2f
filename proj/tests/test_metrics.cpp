#include "oracles.hpp"
#include "tscv/metrics.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace tscv;

namespace {

ScoredFold point(double r, double s, bool valid = true) {
    ScoredFold fold;
    fold.positive_ratio = r;
    fold.valid = valid;
    if (valid) {
        fold.auc_pr = s;
    }
    return fold;
}

}  // namespace

TEST_CASE("pr_curve on a small hand-checked ranking") {
    const std::vector<double> scores{0.9, 0.8, 0.7, 0.6};
    const std::vector<std::uint8_t> labels{1, 0, 1, 0};
    const auto curve = pr_curve(scores, labels);
    REQUIRE(curve.points.size() == 4);
    const std::vector<double> precision{1.0, 0.5, 2.0 / 3.0, 0.5};
    const std::vector<double> recall{0.5, 0.5, 1.0, 1.0};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(curve.points[i].threshold == scores[i]);
        CHECK(curve.points[i].precision == Catch::Approx(precision[i]));
        CHECK(curve.points[i].recall == Catch::Approx(recall[i]));
    }
    CHECK(average_precision(curve) == Catch::Approx(5.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("pr_curve edge cases") {
    SECTION("perfect ranking starts at precision 1 and ends at prevalence") {
        const std::vector<double> scores{0.9, 0.8, 0.3, 0.2, 0.1};
        const std::vector<std::uint8_t> labels{1, 1, 0, 0, 0};
        const auto curve = pr_curve(scores, labels);
        CHECK(curve.points.front().precision == 1.0);
        CHECK(curve.points.back().precision == Catch::Approx(0.4));
        CHECK(curve.points.back().recall == 1.0);
        CHECK(average_precision(scores, labels) == 1.0);
    }
    SECTION("all scores tied collapse to one point") {
        const std::vector<double> scores(6, 0.5);
        const std::vector<std::uint8_t> labels{1, 0, 0, 1, 0, 0};
        const auto curve = pr_curve(scores, labels);
        REQUIRE(curve.points.size() == 1);
        CHECK(curve.points[0].precision == Catch::Approx(1.0 / 3.0));
        CHECK(curve.points[0].recall == 1.0);
    }
    SECTION("inverted ranking of one positive among two") {
        const std::vector<double> scores{0.0, 1.0};
        const std::vector<std::uint8_t> labels{1, 0};
        CHECK(average_precision(scores, labels) == 0.5);
    }
    SECTION("single-class labels are undefined") {
        const std::vector<double> scores{0.1, 0.2};
        CHECK_THROWS_AS(pr_curve(scores, std::vector<std::uint8_t>{0, 0}), UndefinedMetricError);
        CHECK_THROWS_AS(pr_curve(scores, std::vector<std::uint8_t>{1, 1}), UndefinedMetricError);
    }
    SECTION("length mismatch") {
        const std::vector<double> scores{0.1, 0.2, 0.3};
        CHECK_THROWS(pr_curve(scores, std::vector<std::uint8_t>{0, 1}));
    }
}

TEST_CASE("curve invariants and agreement with a threshold-sweep reference") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + rng() % 63;
        std::vector<double> scores(n);
        std::vector<std::uint8_t> labels(n);
        // Coarse scores force frequent ties.
        const bool coarse = trial % 2 == 0;
        for (std::size_t i = 0; i < n; ++i) {
            scores[i] = coarse ? static_cast<double>(rng() % 8) / 8.0
                               : std::uniform_real_distribution<double>(0, 1)(rng);
            labels[i] = static_cast<std::uint8_t>(rng() % 2);
        }
        labels[0] = 0;
        labels[1] = 1;
        const auto curve = pr_curve(scores, labels);
        for (std::size_t i = 1; i < curve.points.size(); ++i) {
            REQUIRE(curve.points[i].threshold < curve.points[i - 1].threshold);
            REQUIRE(curve.points[i].recall >= curve.points[i - 1].recall);
        }
        const double ap = average_precision(scores, labels);
        REQUIRE(std::abs(ap - oracle::average_precision(scores, labels)) <= 1e-12);

        // Strictly monotone transforms keep AP.
        std::vector<double> transformed(n);
        for (std::size_t i = 0; i < n; ++i) {
            transformed[i] = std::exp(3.0 * scores[i]) - 7.0;
        }
        REQUIRE(std::abs(average_precision(transformed, labels) - ap) <= 1e-12);

        // Oracle scores reach 1.
        std::vector<double> truth(labels.begin(), labels.end());
        REQUIRE(average_precision(truth, labels) == 1.0);
        // Tied anti-oracle scores form one group per class: AP equals prevalence.
        double positives = 0;
        for (const auto y : labels) {
            positives += y;
        }
        std::vector<double> anti(n);
        std::vector<double> strict_anti(n);
        for (std::size_t i = 0; i < n; ++i) {
            anti[i] = 1.0 - truth[i];
            strict_anti[i] = anti[i] + 1e-3 * static_cast<double>(i) / static_cast<double>(n);
        }
        REQUIRE(std::abs(average_precision(anti, labels) - positives / static_cast<double>(n)) <= 1e-12);
        // A strict ordering with every negative first is the minimum over rankings.
        if (!coarse) {
            REQUIRE(average_precision(strict_anti, labels) <= ap + 1e-12);
        }
    }
}

TEST_CASE("random scores give AP near prevalence") {
    std::mt19937_64 rng(99);
    std::vector<double> aps;
    const double prevalence = 0.3;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> scores(200);
        std::vector<std::uint8_t> labels(200);
        for (std::size_t i = 0; i < 200; ++i) {
            scores[i] = std::uniform_real_distribution<double>(0, 1)(rng);
            labels[i] = static_cast<std::uint8_t>(i < 60);
        }
        aps.push_back(average_precision(scores, labels));
    }
    CHECK(std::abs(median(aps) - prevalence) < 0.1);
}

TEST_CASE("sensitivity_auc integrates AUC-PR over positive ratio") {
    SECTION("three-point example") {
        const std::vector<ScoredFold> folds{point(0.2, 0.5), point(0.4, 0.7), point(0.8, 0.9)};
        const auto auc = sensitivity_auc(folds);
        REQUIRE(auc.has_value());
        CHECK(std::abs(*auc - 0.44) < 1e-12);
    }
    SECTION("constant s gives a rectangle") {
        const std::vector<ScoredFold> folds{point(0.1, 0.6), point(0.35, 0.6), point(0.5, 0.6)};
        CHECK(std::abs(*sensitivity_auc(folds) - 0.6 * 0.4) < 1e-12);
    }
    SECTION("fewer than two valid folds") {
        CHECK_FALSE(sensitivity_auc(std::vector<ScoredFold>{point(0.3, 0.5)}).has_value());
        CHECK_FALSE(sensitivity_auc(std::vector<ScoredFold>{point(0.3, 0.5), point(0.0, 0.0, false)}).has_value());
        CHECK_FALSE(sensitivity_auc(std::vector<ScoredFold>{}).has_value());
    }
    SECTION("invalid folds are ignored") {
        const std::vector<ScoredFold> folds{point(0.2, 0.5), point(1.0, 0.0, false), point(0.4, 0.7)};
        CHECK(std::abs(*sensitivity_auc(folds) - 0.12) < 1e-12);
    }
    SECTION("duplicate ratios contribute zero width") {
        const std::vector<ScoredFold> folds{point(0.2, 0.5), point(0.4, 0.1), point(0.4, 0.9), point(0.6, 0.5)};
        const double expected = oracle::trapezoid({{0.2, 0.5}, {0.4, 0.1}, {0.4, 0.9}, {0.6, 0.5}});
        CHECK(std::abs(*sensitivity_auc(folds) - expected) < 1e-12);
        CHECK(std::abs(expected - (0.06 + 0.14)) < 1e-12);
    }
}

TEST_CASE("sensitivity_auc is invariant to fold order") {
    std::mt19937_64 rng(5);
    std::vector<ScoredFold> folds;
    for (int i = 0; i < 9; ++i) {
        folds.push_back(point(std::uniform_real_distribution<double>(0.05, 0.95)(rng),
                              std::uniform_real_distribution<double>(0, 1)(rng)));
    }
    const double reference = *sensitivity_auc(folds);
    for (int shuffle = 0; shuffle < 100; ++shuffle) {
        std::shuffle(folds.begin(), folds.end(), rng);
        CHECK(std::abs(*sensitivity_auc(folds) - reference) < 1e-12);
    }
}

TEST_CASE("aggregate uses the midpoint median and population sigma") {
    CHECK(aggregate(std::vector<double>{0.2, 0.8})->median == Catch::Approx(0.5));
    CHECK(aggregate(std::vector<double>{1, 1, 1})->sigma == 0.0);
    CHECK(aggregate(std::vector<double>{0, 1})->sigma == Catch::Approx(0.5));
    const auto summary = aggregate(std::vector<double>{3, 1, 2});
    CHECK(summary->median == 2.0);
    CHECK(summary->count == 3);
    CHECK_FALSE(aggregate(std::vector<double>{}).has_value());
}
