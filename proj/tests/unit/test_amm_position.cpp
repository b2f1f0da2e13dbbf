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

#include "cilvr/amm_position.hpp"
#include "cilvr/errors.hpp"
#include "oracles.hpp"

using namespace cilvr;

TEST(LiquidityBand, NormalizedDeltaRunsFromOneToZero) {
    const auto band = amm::LiquidityBand::normalized(80.0, 125.0);
    EXPECT_NEAR(amm::delta(band, 80.0), 1.0, 1e-14);
    EXPECT_EQ(amm::delta(band, 125.0), 0.0);
    EXPECT_NEAR(amm::delta(band, 10.0), 1.0, 1e-14);
    EXPECT_EQ(amm::delta(band, 500.0), 0.0);
}

TEST(LiquidityBand, DeltaIsDerivativeOfValue) {
    const amm::LiquidityBand band(80.0, 125.0, 7.0);
    auto v = [&](double s) { return amm::value(band, s); };
    for (double s : {81.0, 90.0, 100.0, 110.0, 124.0}) {
        EXPECT_NEAR(amm::delta(band, s), oracle::central_difference(v, s, 1e-4), 1e-7);
    }
}

TEST(LiquidityBand, GammaIsDerivativeOfDelta) {
    const amm::LiquidityBand band(80.0, 125.0, 7.0);
    auto d = [&](double s) { return amm::delta(band, s); };
    for (double s : {81.0, 100.0, 124.0}) {
        EXPECT_NEAR(amm::gamma(band, s), oracle::central_difference(d, s, 1e-4), 1e-9);
    }
    EXPECT_THROW((void)amm::gamma(band, 80.0), DomainError);
    EXPECT_THROW((void)amm::gamma(band, 130.0), DomainError);
}

TEST(LiquidityBand, ValueIsContinuousAcrossBoundaries) {
    const amm::LiquidityBand band(80.0, 125.0, 3.0);
    EXPECT_NEAR(amm::value(band, 80.0 * (1 - 1e-12)), amm::value(band, 80.0 * (1 + 1e-12)), 1e-9);
    EXPECT_NEAR(amm::value(band, 125.0 * (1 - 1e-12)), amm::value(band, 125.0 * (1 + 1e-12)), 1e-9);
    EXPECT_DOUBLE_EQ(amm::value(band, 200.0), 3.0 * (std::sqrt(125.0) - std::sqrt(80.0)));
}

TEST(LiquidityBand, FullRangeIsConstantProduct) {
    const auto band = amm::LiquidityBand::full_range(10.0);
    EXPECT_TRUE(band.is_full_range());
    EXPECT_DOUBLE_EQ(amm::value(band, 400.0), 2.0 * 10.0 * 20.0);
    EXPECT_DOUBLE_EQ(amm::delta(band, 400.0), 10.0 / 20.0);
}

TEST(LiquidityBand, LvrRateMatchesGamma) {
    const amm::LiquidityBand band(80.0, 125.0, 5.0);
    const MarketParams p{0.05, 0.6};
    for (double s : {85.0, 100.0, 120.0}) {
        const double expected = 0.5 * p.sigma * p.sigma * s * s * std::abs(amm::gamma(band, s));
        EXPECT_NEAR(amm::lvr_rate(band, p, s), expected, 1e-12 * expected);
    }
    EXPECT_EQ(amm::lvr_rate(band, p, 50.0), 0.0);
    EXPECT_EQ(amm::lvr_rate(band, p, 200.0), 0.0);
}

TEST(LiquidityBand, RejectsBadBounds) {
    EXPECT_THROW(amm::LiquidityBand(125.0, 80.0, 1.0), DomainError);
    EXPECT_THROW(amm::LiquidityBand(0.0, 80.0, 1.0), DomainError);
    EXPECT_THROW(amm::LiquidityBand(80.0, 125.0, -1.0), DomainError);
    const auto band = amm::LiquidityBand::normalized(80.0, 125.0);
    EXPECT_THROW((void)amm::value(band, -1.0), DomainError);
}
