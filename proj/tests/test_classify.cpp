#include "oracles.hpp"
#include "tscv/classify.hpp"
#include "tscv/features.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace tscv;

namespace {

MultivariateSeries random_series(std::size_t channels, std::size_t length, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    Eigen::MatrixXd values(static_cast<Eigen::Index>(channels), static_cast<Eigen::Index>(length));
    for (Eigen::Index c = 0; c < values.rows(); ++c) {
        for (Eigen::Index t = 0; t < values.cols(); ++t) {
            values(c, t) = normal(rng);
        }
    }
    std::vector<std::string> names;
    for (std::size_t c = 0; c < channels; ++c) {
        names.push_back("ch" + std::to_string(c));
    }
    return MultivariateSeries(TimeGrid(100.0, length), names, values);
}

std::vector<std::uint8_t> alternating_labels(std::size_t n, std::size_t period) {
    std::vector<std::uint8_t> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = static_cast<std::uint8_t>((i / period) % 2);
    }
    return labels;
}

}  // namespace

TEST_CASE("SampleWindows builds lookback windows ending at each index") {
    Eigen::MatrixXd values(2, 6);
    values << 1, 2, 3, 4, 5, 6, 10, 20, 30, 40, 50, 60;
    const MultivariateSeries series(TimeGrid(1.0, 6), {"a", "b"}, values);
    const SampleWindows samples(series, {2, 5}, 3);
    REQUIRE(samples.size() == 4);

    SECTION("early windows repeat the first observation") {
        const auto w = samples.window(0);
        CHECK(w.row(0) == Eigen::RowVector3d(1, 1, 2));
        CHECK(w.row(1) == Eigen::RowVector3d(10, 10, 20));
    }
    SECTION("interior window") {
        const auto w = samples.window(3);
        CHECK(w.row(0) == Eigen::RowVector3d(3, 4, 5));
    }
    SECTION("flattening is channel-major") {
        const auto design = samples.flattened();
        REQUIRE(design.rows() == 4);
        REQUIRE(design.cols() == 6);
        Eigen::RowVectorXd expected(6);
        expected << 2, 3, 4, 20, 30, 40;
        CHECK(design.row(2) == expected);
    }
    SECTION("blocks outside the series are rejected") {
        CHECK_THROWS_AS(SampleWindows(series, {0, 3}, 3), BoundsError);
        CHECK_THROWS_AS(SampleWindows(series, {4, 7}, 3), BoundsError);
        CHECK_THROWS_AS(samples.window(4), BoundsError);
    }
}

TEST_CASE("Standardizer uses training statistics only") {
    Eigen::MatrixXd train(4, 2);
    train << 0, 5, 2, 5, 4, 5, 6, 5;
    const Standardizer standardizer(train);
    const auto z = standardizer.apply(train);
    CHECK(z.col(0).mean() == Catch::Approx(0.0).margin(1e-12));
    CHECK((z.col(0).array().square().mean()) == Catch::Approx(1.0));
    CHECK(z.col(1).isZero());
    Eigen::MatrixXd test(1, 2);
    test << 3, 7;
    const auto zt = standardizer.apply(test);
    CHECK(zt(0, 0) == Catch::Approx(0.0).margin(1e-12));
    CHECK(zt(0, 1) == Catch::Approx(2.0));
}

TEST_CASE("classifier tokens") {
    CHECK(parse_classifier("RF") == ClassifierKind::RandomForest);
    CHECK(classifier_id(ClassifierKind::Rocket) == "rocket");
    const auto list = parse_classifier_list("rocket,rf,logistic,majority,residual");
    CHECK(list.size() == 5);
    CHECK(list.front() == ClassifierKind::Rocket);
    CHECK_THROWS_AS(parse_classifier("svm"), ConfigError);
    CHECK_THROWS_AS(parse_classifier_list(""), ConfigError);
}

TEST_CASE("majority prior scores every sample with the training positive share") {
    const auto series = random_series(2, 40, 1);
    const SampleWindows train(series, {1, 20}, 4);
    std::vector<std::uint8_t> labels(20, 0);
    for (std::size_t i = 0; i < 5; ++i) {
        labels[i] = 1;
    }
    const auto model = fit(ClassifierKind::Majority, {}, train, labels, 3);
    CHECK(model->id() == "majority");
    const auto scores = model->predict_scores(SampleWindows(series, {21, 23}, 4));
    CHECK(scores == std::vector<double>{0.25, 0.25, 0.25});

    SECTION("single-class training is accepted") {
        const std::vector<std::uint8_t> zeros(20, 0);
        const auto prior = fit(ClassifierKind::Majority, {}, train, zeros, 3);
        CHECK(prior->predict_scores(SampleWindows(series, {21, 22}, 4)) == std::vector<double>{0.0, 0.0});
    }
}

TEST_CASE("fit preconditions") {
    const auto series = random_series(2, 40, 2);
    const SampleWindows small(series, {1, 9}, 4);
    CHECK_THROWS_AS(fit(ClassifierKind::Majority, {}, small, alternating_labels(9, 2), 0), TrainingError);

    const SampleWindows train(series, {1, 20}, 4);
    CHECK_THROWS_AS(fit(ClassifierKind::Majority, {}, train, alternating_labels(19, 2), 0), ShapeError);

    const std::vector<std::uint8_t> ones(20, 1);
    for (const auto kind : {ClassifierKind::RandomForest, ClassifierKind::Logistic, ClassifierKind::Rocket}) {
        try {
            (void)fit(kind, {}, train, ones, 0);
            FAIL("expected TrainingError");
        } catch (const TrainingError& e) {
            CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("[1, 20]"));
        }
    }
    CHECK_NOTHROW(fit(ClassifierKind::Residual, {}, train, ones, 0));
}

TEST_CASE("every classifier emits bounded, deterministic scores of the right count") {
    const auto series = random_series(3, 120, 5);
    const SampleWindows train(series, {1, 80}, 16);
    const SampleWindows test(series, {81, 120}, 16);
    const auto labels = alternating_labels(80, 7);
    ClassifierConfig config;
    config.rocket_kernels = 50;
    config.forest.num_trees = 10;
    for (const auto kind : {ClassifierKind::Majority, ClassifierKind::Residual, ClassifierKind::RandomForest,
                            ClassifierKind::Logistic, ClassifierKind::Rocket}) {
        const auto a = fit(kind, config, train, labels, 11)->predict_scores(test);
        const auto b = fit(kind, config, train, labels, 11)->predict_scores(test);
        REQUIRE(a.size() == 40);
        CHECK(a == b);
        for (const double s : a) {
            CHECK(s >= 0.0);
            CHECK(s <= 1.0);
        }
    }
}

TEST_CASE("predicting with a different window shape is a shape error") {
    const auto series = random_series(2, 60, 6);
    const auto other = random_series(3, 60, 6);
    const auto labels = alternating_labels(40, 5);
    ClassifierConfig config;
    config.rocket_kernels = 20;
    config.forest.num_trees = 3;
    for (const auto kind : {ClassifierKind::Majority, ClassifierKind::Residual, ClassifierKind::RandomForest,
                            ClassifierKind::Logistic, ClassifierKind::Rocket}) {
        const auto model = fit(kind, config, SampleWindows(series, {1, 40}, 16), labels, 1);
        CHECK_THROWS_AS(model->predict_scores(SampleWindows(other, {41, 60}, 16)), ShapeError);
        CHECK_THROWS_AS(model->predict_scores(SampleWindows(series, {41, 60}, 12)), ShapeError);
    }
}

TEST_CASE("residual_score sums per-step deviation norms") {
    Eigen::MatrixXd observed = Eigen::MatrixXd::Random(3, 5);
    CHECK(residual_score(observed, observed) == 0.0);

    Eigen::MatrixXd predicted = observed;
    predicted.row(0).array() += 0.6;
    predicted.row(2).array() -= 0.8;
    const double score = residual_score(observed, predicted);
    CHECK(score == Catch::Approx(5.0).epsilon(1e-12));
    const double tau = 4.0;
    CHECK(score > tau);

    CHECK_THROWS_AS(residual_score(observed, Eigen::MatrixXd::Zero(3, 4)), ShapeError);
}

TEST_CASE("window_residual uses the persistence predictor") {
    Eigen::MatrixXd window(1, 4);
    window << 0, 1, 3, 3;
    CHECK(window_residual(window) == Catch::Approx(3.0));
}

TEST_CASE("residual detector scores above the training reference saturate at 1") {
    Eigen::MatrixXd values = Eigen::MatrixXd::Zero(1, 60);
    for (Eigen::Index t = 0; t < 40; ++t) {
        values(0, t) = (t % 2) * 0.1;
    }
    for (Eigen::Index t = 40; t < 60; ++t) {
        values(0, t) = (t % 2) * 5.0;
    }
    const MultivariateSeries series(TimeGrid(1.0, 60), {"x"}, values);
    const std::vector<std::uint8_t> labels(30, 0);
    const auto model = fit(ClassifierKind::Residual, {}, SampleWindows(series, {11, 40}, 4), labels, 0);
    const auto scores = model->predict_scores(SampleWindows(series, {50, 60}, 4));
    for (const double s : scores) {
        CHECK(s == 1.0);
    }
}

TEST_CASE("logistic regression on a separable toy") {
    Eigen::MatrixXd x(4, 1);
    x << 0, 0, 1, 1;
    const std::vector<std::uint8_t> y{0, 0, 1, 1};
    std::vector<double> history;
    const auto model = LogisticRegression::fit(x, y, LogisticParams{}, &history);
    REQUIRE(history.size() == LogisticParams{}.epochs + 1);
    CHECK(history.front() == Catch::Approx(std::log(2.0)));
    for (std::size_t i = 1; i < history.size(); ++i) {
        CHECK(history[i] < history[i - 1]);
    }
    const auto p = model.predict_proba(x);
    CHECK(p(0) < 0.5);
    CHECK(p(3) > 0.5);

    const LogisticRegression zero(Eigen::VectorXd::Zero(1), 0.0);
    CHECK((zero.predict_proba(x).array() == 0.5).all());
}

TEST_CASE("logistic gradient matches central finite differences") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Index n = 12;
        const Eigen::Index p = 4;
        Eigen::MatrixXd x(n, p);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < p; ++j) {
                x(i, j) = normal(rng);
            }
        }
        std::vector<std::uint8_t> y(static_cast<std::size_t>(n));
        for (auto& v : y) {
            v = static_cast<std::uint8_t>(rng() % 2);
        }
        Eigen::VectorXd w(p);
        for (Eigen::Index j = 0; j < p; ++j) {
            w(j) = normal(rng);
        }
        const double b = normal(rng);
        const double l2 = 0.05;
        const auto grad = LogisticRegression::gradient(x, y, w, b, l2);
        const double h = 1e-6;
        const auto relative = [](double analytic, double numeric) {
            return std::abs(analytic - numeric) / std::max(1e-8, std::max(std::abs(analytic), std::abs(numeric)));
        };
        for (Eigen::Index j = 0; j < p; ++j) {
            Eigen::VectorXd up = w;
            Eigen::VectorXd down = w;
            up(j) += h;
            down(j) -= h;
            const double numeric = (LogisticRegression::objective(x, y, up, b, l2) -
                                    LogisticRegression::objective(x, y, down, b, l2)) /
                                   (2 * h);
            CHECK(relative(grad.weights(j), numeric) < 1e-5);
        }
        const double numeric_b = (LogisticRegression::objective(x, y, w, b + h, l2) -
                                  LogisticRegression::objective(x, y, w, b - h, l2)) /
                                 (2 * h);
        CHECK(relative(grad.bias, numeric_b) < 1e-5);
    }
}

TEST_CASE("a one-tree depth-one forest finds the midpoint stump") {
    Eigen::MatrixXd x(4, 1);
    x << 0, 0, 1, 1;
    const std::vector<std::uint8_t> y{0, 0, 1, 1};
    ForestParams params;
    params.num_trees = 1;
    params.max_depth = 1;
    params.bootstrap = false;
    const auto forest = RandomForest::fit(x, y, params, 0);
    REQUIRE(forest.trees().size() == 1);
    const auto& root = forest.trees()[0].nodes()[0];
    CHECK(root.feature == 0);
    CHECK(root.threshold == 0.5);
    CHECK(forest.trees()[0].depth() == 1);
    const auto scores = forest.scores(x);
    CHECK(scores == std::vector<double>{0.0, 0.0, 1.0, 1.0});
}

TEST_CASE("forest score is the share of positive votes") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> normal;
    Eigen::MatrixXd x(60, 5);
    std::vector<std::uint8_t> y(60);
    for (Eigen::Index i = 0; i < 60; ++i) {
        for (Eigen::Index j = 0; j < 5; ++j) {
            x(i, j) = normal(rng);
        }
        y[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(x(i, 0) + 0.5 * normal(rng) > 0);
    }
    ForestParams params;
    params.num_trees = 15;
    const auto forest = RandomForest::fit(x, y, params, 9);
    CHECK(forest.trees().size() == 15);
    bool saw_split_vote = false;
    for (Eigen::Index i = 0; i < 60; ++i) {
        const auto votes = forest.votes(x.row(i));
        double positive = 0;
        for (const auto v : votes) {
            positive += v;
        }
        CHECK(forest.score(x.row(i)) == positive / 15.0);
        saw_split_vote = saw_split_vote || (positive > 0 && positive < 15);
    }
    CHECK(saw_split_vote);
    for (const auto& tree : forest.trees()) {
        CHECK(tree.depth() <= params.max_depth);
    }
    CHECK(RandomForest::fit(x, y, params, 9).scores(x) == forest.scores(x));
}

TEST_CASE("trees grown on a single class always predict it") {
    Eigen::MatrixXd x = Eigen::MatrixXd::Random(20, 3);
    const std::vector<std::uint8_t> ones(20, 1);
    ForestParams params;
    params.num_trees = 7;
    const auto forest = RandomForest::fit(x, ones, params, 1);
    for (Eigen::Index i = 0; i < 20; ++i) {
        CHECK(forest.score(x.row(i)) == 1.0);
    }
}

TEST_CASE("rocket_generate draws valid, reproducible kernels") {
    const auto a = rocket_generate(300, 16, 42);
    const auto b = rocket_generate(300, 16, 42);
    REQUIRE(a.size() == 300);
    std::set<std::size_t> lengths;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& k = a[i];
        CHECK(k.weights == b[i].weights);
        CHECK(k.bias == b[i].bias);
        CHECK(k.dilation == b[i].dilation);
        CHECK(k.padding == b[i].padding);
        lengths.insert(k.length());
        double sum = 0;
        for (const double w : k.weights) {
            sum += w;
        }
        CHECK(std::abs(sum) < 1e-9);
        CHECK(k.bias >= -1.0);
        CHECK(k.bias <= 1.0);
        CHECK(k.dilation >= 1);
        CHECK((k.length() - 1) * k.dilation <= 15);
    }
    CHECK(lengths == std::set<std::size_t>{7, 9, 11});

    const auto long_series = rocket_generate(200, 500, 1);
    std::size_t max_dilation = 1;
    for (const auto& k : long_series) {
        CHECK((k.length() - 1) * k.dilation <= 499);
        max_dilation = std::max(max_dilation, k.dilation);
    }
    CHECK(max_dilation > 8);
    CHECK_THROWS_AS(rocket_generate(0, 16, 1), ConfigError);
    CHECK_THROWS_AS(rocket_generate(5, 10, 1), ConfigError);
}

TEST_CASE("ppv_and_max of a convolution output") {
    const std::vector<double> output{-1.0, 0.5, 2.0, -3.0};
    const auto [ppv, maximum] = ppv_and_max(output);
    CHECK(ppv == 0.5);
    CHECK(maximum == 2.0);
}

TEST_CASE("rocket features of special kernels") {
    RocketKernel zero{std::vector<double>(9, 0.0), 0.0, 1, false};
    const Eigen::MatrixXd window = Eigen::MatrixXd::Random(2, 16);
    const auto features = rocket_transform(window, std::vector<RocketKernel>{zero});
    CHECK(features(0) == 0.0);
    CHECK(features(1) == 0.0);

    RocketKernel positive{{1, -1, 0, 0, 0, 0, 0}, 0.3, 1, true};
    RocketKernel negative{{1, -1, 0, 0, 0, 0, 0}, -0.3, 2, false};
    const auto flat = rocket_transform(Eigen::MatrixXd::Zero(3, 16), std::vector<RocketKernel>{positive, negative});
    CHECK(flat(0) == 1.0);
    CHECK(flat(2) == 0.0);
    for (Eigen::Index i = 0; i < flat.size(); i += 2) {
        CHECK(flat(i) >= 0.0);
        CHECK(flat(i) <= 1.0);
    }

    RocketKernel wide{std::vector<double>(11, 0.1), 0.0, 2, false};
    CHECK_THROWS_AS(rocket_transform(Eigen::MatrixXd::Zero(1, 16), std::vector<RocketKernel>{wide}), ShapeError);
}

TEST_CASE("rocket_transform matches a per-channel reference convolution") {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> normal;
    Eigen::MatrixXd window(4, 40);
    for (Eigen::Index c = 0; c < 4; ++c) {
        for (Eigen::Index t = 0; t < 40; ++t) {
            window(c, t) = normal(rng);
        }
    }
    const auto kernels = rocket_generate(100, 40, 5);
    const auto features = rocket_transform(window, kernels);
    const auto expected = oracle::rocket_features(window, kernels);
    REQUIRE(static_cast<std::size_t>(features.size()) == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(features(static_cast<Eigen::Index>(i)) == Catch::Approx(expected[i]).margin(1e-10));
    }
}
