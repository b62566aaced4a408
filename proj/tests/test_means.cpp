#include <algorithm>
#include <cmath>
#include <limits>

#include <doctest.h>

#include "g3m/means.hpp"
#include "oracles.hpp"

using namespace g3m;
using doctest::Approx;

namespace {
const Weights kHalf({0.5, 0.5});
}

TEST_SUITE_BEGIN("means");

TEST_CASE("weights validate and renormalize") {
    CHECK_THROWS_AS(Weights({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(Weights({0.5, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(Weights({-0.1, 1.1}), std::invalid_argument);
    CHECK_THROWS_AS(Weights({0.5, std::numeric_limits<double>::quiet_NaN()}),
                    std::invalid_argument);

    // decimal round-off within 1e-12 is accepted and divided out
    Weights w({0.3, 0.7 + 5e-13});
    CHECK(w[0] + w[1] == Approx(1.0).epsilon(1e-15));
    CHECK(Weights({0.0, 1.0})[0] == 0.0);  // zero weights are legal
}

TEST_CASE("generalized mean examples") {
    CHECK(generalized_mean(std::vector{2.0, 4.0}, kHalf, 1.0) == Approx(3.0).epsilon(1e-14));
    CHECK(generalized_mean(std::vector{5.0, 5.0, 5.0}, Weights({0.2, 0.3, 0.5}), 0.37) ==
          Approx(5.0).epsilon(1e-13));
    CHECK(generalized_mean(std::vector{1.0, 9.0}, kHalf, 0.5) == Approx(4.0).epsilon(1e-14));
}

TEST_CASE("generalized mean rejects bad input") {
    CHECK_THROWS_AS(generalized_mean(std::vector{1.0, 2.0, 3.0}, kHalf, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(generalized_mean(std::vector{1.0, 0.0}, kHalf, -1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(generalized_mean(std::vector{1.0, 2.0}, kHalf, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        generalized_mean(std::vector{1.0, std::numeric_limits<double>::infinity()}, kHalf, 1.0),
        std::invalid_argument);
    CHECK_THROWS_AS(generalized_mean(std::vector{1.0, -2.0}, kHalf, 1.0),
                    std::invalid_argument);
}

TEST_CASE("geometric mean examples") {
    CHECK(geometric_mean(std::vector{4.0, 9.0}, kHalf) == Approx(6.0).epsilon(1e-14));
    CHECK(geometric_mean(std::vector{7.0, 7.0}, kHalf) == Approx(7.0).epsilon(1e-14));
    const double g = geometric_mean(std::vector{1.0, 9.0}, kHalf);
    CHECK(g == Approx(3.0).epsilon(1e-14));
    // lower-bounds the p = 0.5 value of the same vector (power-mean ordering)
    CHECK(g < generalized_mean(std::vector{1.0, 9.0}, kHalf, 0.5));

    CHECK_THROWS_AS(geometric_mean(std::vector{0.0, 9.0}, kHalf), std::invalid_argument);
    // zero entries under zero weight are fine
    CHECK(geometric_mean(std::vector{0.0, 9.0, 4.0}, Weights({0.0, 0.5, 0.5})) ==
          Approx(6.0).epsilon(1e-14));
}

TEST_CASE("f-mean examples and catalog") {
    CHECK(f_mean(std::vector{4.0, 9.0}, kHalf, LogF{}) == Approx(6.0).epsilon(1e-14));
    CHECK(f_mean(std::vector{1.0, 9.0}, kHalf, PowerF{0.5}) == Approx(4.0).epsilon(1e-14));
    // the catalog accepts exponents outside the pool-valid range
    CHECK(f_mean(std::vector{1.0, 7.0}, kHalf, PowerF{2.0}) == Approx(5.0).epsilon(1e-14));

    CHECK_THROWS_AS(f_mean(std::vector{0.0, 9.0}, kHalf, LogF{}), std::domain_error);
    CHECK_THROWS_AS(f_mean(std::vector{0.0, 9.0}, kHalf, PowerF{-1.0}), std::domain_error);
    CHECK_THROWS_AS(f_mean(std::vector{1.0, 9.0}, kHalf, PowerF{0.0}), std::invalid_argument);
    CHECK_THROWS_AS(f_invert(PowerF{2.0}, -1.0), std::domain_error);
}

TEST_CASE("mean dispatch routes by spec") {
    const std::vector x{4.0, 9.0};
    CHECK(mean_dispatch(x, kHalf, GeometricMean{}) == Approx(6.0).epsilon(1e-14));
    CHECK(mean_dispatch(std::vector{2.0, 4.0}, kHalf, PowerMean{1.0}) ==
          Approx(3.0).epsilon(1e-14));
    CHECK(mean_dispatch(x, kHalf, FMean{LogF{}}) == Approx(6.0).epsilon(1e-14));
}

TEST_CASE("pool validity range") {
    CHECK(pool_valid(PowerMean{0.5}));
    CHECK(pool_valid(PowerMean{1.0}));
    CHECK_FALSE(pool_valid(PowerMean{0.0}));
    CHECK_FALSE(pool_valid(PowerMean{1.5}));
    CHECK_FALSE(pool_valid(PowerMean{-0.5}));
    CHECK(pool_valid(GeometricMean{}));
    CHECK(pool_valid(FMean{LogF{}}));
    CHECK(pool_valid(FMean{PowerF{0.25}}));
    CHECK_FALSE(pool_valid(FMean{PowerF{2.0}}));
}

TEST_CASE("small-p evaluation tracks the geometric limit") {
    const std::vector x{1.0, 9.0};
    const double g = geometric_mean(x, kHalf);
    double previous = std::numeric_limits<double>::infinity();
    for (double p : {1e-2, 1e-3, 1e-4, 1e-6}) {
        const double gap = std::abs(generalized_mean(x, kHalf, p) - g) / g;
        CHECK(gap < previous);
        previous = gap;
    }
    CHECK(previous <= 1e-4);
    // negative small p approaches from below
    CHECK(generalized_mean(x, kHalf, -1e-6) == Approx(g).epsilon(1e-5));
    CHECK(generalized_mean(x, kHalf, -1e-6) < g);
}

TEST_CASE("concavity probe examples") {
    const std::vector x{1.0, 9.0}, y{9.0, 1.0};
    CHECK(concavity_probe(PowerMean{0.5}, kHalf, x, y, 0.0) == 0.0);
    const std::vector point{1.0, 1.0};
    CHECK(concavity_probe(PowerMean{0.5}, kHalf, point, point, 0.5) ==
          Approx(0.0).epsilon(1e-14));
    // mu(5,5) = 5 against the chord value (4+4)/2 = 4
    CHECK(concavity_probe(PowerMean{0.5}, kHalf, x, y, 0.5) == Approx(1.0).epsilon(1e-13));
    CHECK_THROWS_AS(concavity_probe(PowerMean{0.5}, kHalf, x, y, 1.5), std::invalid_argument);
}

TEST_CASE("superadditivity gap examples") {
    CHECK(superadditivity_gap(1.0, std::vector{0.0, 0.0}, std::vector{3.0, 4.0}) ==
          Approx(0.0).epsilon(1e-14));
    CHECK(superadditivity_gap(0.5, std::vector{1.0, 0.0}, std::vector{0.0, 1.0}) ==
          Approx(2.0).epsilon(1e-13));
    CHECK(superadditivity_gap(1.0, std::vector{2.0, 2.0}, std::vector{2.0, 2.0}) ==
          Approx(0.0).epsilon(1e-14));
    CHECK_THROWS_AS(superadditivity_gap(1.5, std::vector{1.0}, std::vector{1.0}),
                    std::invalid_argument);
}

TEST_CASE("homogeneity gap examples") {
    const std::vector x{4.0, 9.0};
    CHECK(homogeneity_gap(GeometricMean{}, kHalf, x, 1.0) == 0.0);
    CHECK(homogeneity_gap(GeometricMean{}, kHalf, x, 2.0) == Approx(0.0).epsilon(1e-13));
    CHECK(homogeneity_gap(PowerMean{0.5}, kHalf, std::vector{1.0, 9.0}, 4.0) ==
          Approx(0.0).epsilon(1e-13));
    CHECK_THROWS_AS(homogeneity_gap(GeometricMean{}, kHalf, x, 0.0), std::invalid_argument);
}

TEST_CASE("randomized mean-family properties") {
    testing::Gen gen(2024);
    const MeanSpec specs[] = {PowerMean{0.5}, PowerMean{1.0}, GeometricMean{}, FMean{LogF{}},
                              FMean{PowerF{0.3}}};
    for (int iter = 0; iter < 2000; ++iter) {
        const std::size_t n = 2 + gen.index(4);
        const auto x = gen.positive(n, 1e-3, 1e3);
        const Weights w = gen.weights(n);
        const MeanSpec& spec = specs[iter % 5];
        const double m = mean_dispatch(x, w, spec);

        double lo = x[0], hi = x[0];
        for (double v : x) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        CHECK(m >= lo * (1.0 - 1e-12));
        CHECK(m <= hi * (1.0 + 1e-12));

        auto bumped = x;
        bumped[gen.index(n)] *= 1.0 + gen.uniform(0.0, 1.0);
        CHECK(mean_dispatch(bumped, w, spec) >= m * (1.0 - 1e-12));

        double p = gen.uniform(-2.0, 2.0), q = gen.uniform(-2.0, 2.0);
        if (p == 0.0 || q == 0.0) continue;
        if (p > q) std::swap(p, q);
        const double mp = generalized_mean(x, w, p), mq = generalized_mean(x, w, q);
        CHECK(mp <= mq + 1e-12 * std::max({1.0, mp, mq}));
    }
}

TEST_CASE("f-mean agrees with the direct power route") {
    testing::Gen gen(77);
    for (int iter = 0; iter < 2000; ++iter) {
        const std::size_t n = 2 + gen.index(4);
        const auto x = gen.positive(n, 1e-2, 1e2);
        const Weights w = gen.weights(n);
        const double p = gen.uniform(0.01, 3.0);
        CHECK(f_mean(x, w, PowerF{p}) ==
              Approx(generalized_mean(x, w, p)).epsilon(1e-12));
        CHECK(f_mean(x, w, LogF{}) == Approx(geometric_mean(x, w)).epsilon(1e-12));
    }
}

TEST_SUITE_END();
