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

#include <gtest/gtest.h>

#include "cilvr/errors.hpp"
#include "cilvr/horizon.hpp"
#include "oracles.hpp"

using namespace cilvr;
using namespace cilvr::horizon;

namespace {

// m(y) solves sigma^2/2 m'' + a m' = -1; check it with finite differences in log space
double ode_residual(const HorizonInputs& in, double y) {
    auto m = [&](double yy) {
        HorizonInputs c = in;
        c.spot0 = std::exp(yy);
        return mean_exit_time(c);
    };
    const double h = 1e-3;
    const double s2 = in.params.sigma * in.params.sigma;
    return 0.5 * s2 * oracle::second_difference(m, y, h) + in.drift() * oracle::central_difference(m, y, h) + 1.0;
}

}  // namespace

TEST(MeanExitTime, SolvesGeneratorEquation) {
    const HorizonInputs in{{0.05, 0.4}, 100.0, 80.0, 130.0};
    for (double s : {85.0, 100.0, 120.0}) {
        EXPECT_NEAR(ode_residual(in, std::log(s)), 0.0, 1e-5);
    }
}

TEST(MeanExitTime, ZeroDriftIsSymmetricFormula) {
    const double sigma = std::sqrt(0.1);
    const HorizonInputs in{{0.05, sigma}, 100.0, 80.0, 125.0};
    const double u = std::log(100.0 / 80.0);
    const double w = std::log(125.0 / 80.0);
    EXPECT_NEAR(mean_exit_time(in), u * (w - u) / 0.1, 1e-14);
}

TEST(MeanExitTime, ContinuousAcrossDriftSwitch) {
    const double sigma = 0.5;
    const double r0 = 0.5 * sigma * sigma;
    const double at = mean_exit_time({{r0, sigma}, 100.0, 70.0, 150.0});
    for (double off : {1e-12, 1e-10, 1e-9, 2e-9, 1e-8, 1e-7}) {
        const double v = mean_exit_time({{r0 + off, sigma}, 100.0, 70.0, 150.0});
        EXPECT_NEAR(v, at, 1e-7 * at) << off;
    }
}

TEST(MeanExitTime, ZeroOnBarriersAndDomainChecks) {
    EXPECT_EQ(mean_exit_time({{0.05, 0.4}, 80.0, 80.0, 130.0}), 0.0);
    EXPECT_EQ(mean_exit_time({{0.05, 0.4}, 130.0, 80.0, 130.0}), 0.0);
    EXPECT_THROW((void)mean_exit_time({{0.05, 0.4}, 70.0, 80.0, 130.0}), DomainError);
    EXPECT_THROW((void)mean_exit_time({{0.05, 0.4}, 100.0, 130.0, 80.0}), DomainError);
}

TEST(MeanExitTime, DecreasesWithFee) {
    const MarketParams p{0.05, 0.8};
    double prev = 1e300;
    for (double q : {6.0, 20.0, 100.0, 1000.0}) {
        const double t = mean_exit_time(ci::solve_ci_put(p, {100.0, q}), 100.0);
        EXPECT_LT(t, prev);
        prev = t;
    }
}

TEST(Inversion, RoundTrip) {
    const MarketParams p{0.05, 0.8};
    const auto fit = solve_q_for_horizon(p, 100.0, 14.0 / 365.0);
    EXPECT_NEAR(fit.tau, 14.0 / 365.0, 1e-9 * 14.0 / 365.0);
    EXPECT_NEAR(mean_exit_time(ci::solve_ci_put(p, {100.0, fit.fee_rate}), 100.0), 14.0 / 365.0, 1e-9);
    EXPECT_NEAR(fit.fee_rate, 99.0, 0.5);
}

TEST(Inversion, TinyTargetStillConverges) {
    const auto fit = solve_q_for_horizon({0.05, 0.8}, 100.0, 1e-15);
    EXPECT_GT(fit.fee_rate, 1e6);
    EXPECT_NEAR(fit.tau, 1e-15, 1e-3 * 1e-15);
}

TEST(Inversion, UnreachableTargets) {
    const MarketParams p{0.05, 0.8};
    EXPECT_THROW((void)solve_q_for_horizon(p, 100.0, 1e6), NoSolutionError);
    EXPECT_THROW((void)solve_q_for_horizon(p, 100.0, 1e-30), NoSolutionError);
    EXPECT_THROW((void)solve_q_for_horizon(p, 100.0, -1.0), DomainError);
}
