// Copyright 2026 The cilvr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "cilvr/ci_option.hpp"
#include "cilvr/errors.hpp"
#include "oracles.hpp"

using namespace cilvr;

namespace {

double raw_price(const ci::CIPutSolution& s, double x) {
    return s.alpha * x + std::exp(s.log_beta + s.gamma * std::log(x)) - s.fee_rate / s.params.r;
}

double raw_delta(const ci::CIPutSolution& s, double x) {
    return s.alpha + s.gamma * std::exp(s.log_beta + (s.gamma - 1.0) * std::log(x));
}

}  // namespace

TEST(CIOption, SmoothFitAtBothBoundaries) {
    const auto s = ci::solve_ci_put({0.05, 0.5}, {100.0, 40.0});
    EXPECT_NEAR(raw_price(s, s.lower), 100.0 - s.lower, 1e-9 * 100.0);
    EXPECT_NEAR(raw_delta(s, s.lower), -1.0, 1e-9);
    EXPECT_NEAR(raw_price(s, s.upper), 0.0, 1e-9 * 100.0);
    EXPECT_NEAR(raw_delta(s, s.upper), 0.0, 1e-9);
}

TEST(CIOption, BoundariesStraddleStrike) {
    for (double q : {6.0, 10.0, 100.0, 1e4}) {
        const auto s = ci::solve_ci_put({0.05, 0.5}, {100.0, q});
        EXPECT_LT(s.lower, 100.0);
        EXPECT_GT(s.upper, 100.0);
        EXPECT_GT(s.lower, 0.0);
    }
}

TEST(CIOption, MatchesFiniteDifferenceSolve) {
    const MarketParams p{0.05, 0.5};
    const auto s = ci::solve_ci_put(p, {100.0, 40.0});
    const auto fd = oracle::solve_ci_ode(p.r, p.sigma, 40.0, s.lower, s.upper, 100.0 - s.lower, 0.0, 100000);
    double worst = 0.0;
    for (int i = 1; i < 200; ++i) {
        const double x = s.lower + (s.upper - s.lower) * i / 200.0;
        worst = std::max(worst, std::abs(ci::price(s, x) - oracle::interpolate(fd, x)));
    }
    EXPECT_LT(worst, 1e-6 * 100.0);
}

TEST(CIOption, DerivativesMatchFiniteDifferences) {
    const auto s = ci::solve_ci_put({0.03, 0.8}, {50.0, 12.0});
    auto f = [&](double x) { return ci::price(s, x); };
    auto g = [&](double x) { return ci::delta(s, x); };
    for (double t : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const double x = s.lower + t * s.width();
        EXPECT_NEAR(ci::delta(s, x), oracle::central_difference(f, x, 1e-4), 1e-7);
        EXPECT_NEAR(ci::convexity(s, x), oracle::central_difference(g, x, 1e-4), 1e-6);
    }
}

TEST(CIOption, ClipsOutsideContinuation) {
    const auto s = ci::solve_ci_put({0.05, 0.5}, {100.0, 40.0});
    EXPECT_DOUBLE_EQ(ci::price(s, 0.5 * s.lower), 100.0 - 0.5 * s.lower);
    EXPECT_EQ(ci::delta(s, 0.5 * s.lower), -1.0);
    EXPECT_EQ(ci::price(s, 2.0 * s.upper), 0.0);
    EXPECT_EQ(ci::delta(s, 2.0 * s.upper), 0.0);
    EXPECT_EQ(ci::convexity(s, 2.0 * s.upper), 0.0);
}

TEST(CIOption, PriceIsConvexAndDecreasing) {
    const auto s = ci::solve_ci_put({0.02, 0.4}, {100.0, 3.0});
    double prev = ci::price(s, s.lower);
    for (int i = 1; i <= 100; ++i) {
        const double x = s.lower + s.width() * i / 100.0;
        const double v = ci::price(s, x);
        EXPECT_LE(v, prev + 1e-12);
        EXPECT_GE(ci::convexity(s, x), 0.0);
        prev = v;
    }
}

TEST(CIOption, RejectsInadmissibleInputs) {
    EXPECT_THROW((void)ci::solve_ci_put({0.05, 0.5}, {100.0, 5.0}), AdmissibilityError);
    EXPECT_THROW((void)ci::solve_ci_put({0.05, 0.5}, {100.0, 4.0}), AdmissibilityError);
    EXPECT_THROW((void)ci::solve_ci_put({0.0, 0.5}, {100.0, 4.0}), DomainError);
    EXPECT_THROW((void)ci::solve_ci_put({0.05, 0.0}, {100.0, 40.0}), DomainError);
    EXPECT_THROW((void)ci::solve_ci_put({0.05, 0.5}, {-1.0, 40.0}), DomainError);
    const auto s = ci::solve_ci_put({0.05, 0.5}, {100.0, 40.0});
    EXPECT_THROW((void)ci::price(s, 0.0), DomainError);
}

TEST(CIOption, BandCollapsesAtRateOneOverQ) {
    const MarketParams p{0.05, 0.5};
    const std::vector<double> qs{1e2, 1e3, 1e4, 1e5, 1e6};
    const auto qw = ci::band_width_limit(p, 100.0, qs);
    const double limit = ci::band_width_asymptote(p, 100.0);
    EXPECT_NEAR(qw.back(), limit, 1e-4 * limit);
    for (std::size_t i = 1; i < qs.size(); ++i) {
        EXPECT_LT(std::abs(qw[i] - limit), std::abs(qw[i - 1] - limit));
    }
}

TEST(CIOption, ExtremeExponentKeepsLogBetaFinite) {
    // gamma = -2000
    const auto s = ci::solve_ci_put({0.1, 0.01}, {100.0, 11.0});
    EXPECT_TRUE(std::isfinite(s.log_beta));
    EXPECT_TRUE(std::isfinite(ci::price(s, 0.5 * (s.lower + s.upper))));
    EXPECT_LT(s.lower, s.upper);
}
