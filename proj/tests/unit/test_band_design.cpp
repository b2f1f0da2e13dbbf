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

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "cilvr/band_design.hpp"
#include "cilvr/errors.hpp"
#include "cilvr/horizon.hpp"

using namespace cilvr;
using namespace cilvr::design;

TEST(BandDesign, BoundsComeFromCISolution) {
    const auto d = design_band({0.05, 0.8}, 100.0, 99.0);
    const auto s = ci::solve_ci_put({0.05, 0.8}, {100.0, 99.0});
    EXPECT_EQ(d.lower, s.lower);
    EXPECT_EQ(d.upper, s.upper);
    EXPECT_EQ(d.residual_bound, 0.05 * 100.0);
    EXPECT_DOUBLE_EQ(d.width_pct, 100.0 * (s.upper - s.lower) / 100.0);
}

TEST(BandDesign, ResidualEndpointsAndMonotone) {
    const auto d = design_band({0.05, 0.6}, 100.0, 40.0);
    EXPECT_EQ(lvr_residual(d, d.lower), d.residual_bound);
    EXPECT_EQ(lvr_residual(d, d.upper), 0.0);
    double prev = d.residual_bound;
    for (int i = 1; i < 100; ++i) {
        const double s = d.lower + (d.upper - d.lower) * i / 100.0;
        const double e = lvr_residual(d, s);
        EXPECT_LE(e, prev + 1e-12);
        EXPECT_GE(e, -1e-12);
        prev = e;
    }
    EXPECT_THROW((void)lvr_residual(d, d.lower * 0.99), DomainError);
    EXPECT_THROW((void)lvr_residual(d, d.upper * 1.01), DomainError);
}

TEST(BandDesign, LvrRateIsFeePlusResidual) {
    const auto d = design_band({0.05, 1.0}, 100.0, 84.0);
    for (int i = 1; i < 1000; ++i) {
        const double s = d.lower + (d.upper - d.lower) * i / 1000.0;
        const double lhs = d.fee_rate + lvr_residual(d, s);
        EXPECT_NEAR(designed_lvr_rate(d, s), lhs, 1e-8 * lhs);
    }
}

TEST(BandDesign, CollapsesForLargeFee) {
    const auto d = design_band({0.05, 0.5}, 100.0, 1e7);
    EXPECT_LT(d.width_pct, 1e-3);
    EXPECT_LT(d.lower, 100.0);
    EXPECT_GT(d.upper, 100.0);
}

TEST(BandDesign, PathwiseRateWithinResidualBand) {
    const auto d = design_band({0.05, 0.8}, 100.0, 99.0);
    const sim::GBMConfig cfg{{0.05, 0.8}, 100.0, 1e-5, 0.01, 4, 200};
    const auto check = pathwise_residual_check(d, cfg);
    EXPECT_GE(check.analytic_rate, check.fee_rate);
    EXPECT_LE(check.analytic_rate, check.upper_bound);
    EXPECT_NEAR(check.realized_rate, check.analytic_rate, 0.1 * check.fee_rate);
}

TEST(DesignTable, KnownRows) {
    const auto rows = generate_design_table(standard_table_spec());
    ASSERT_EQ(rows.size(), 15u);
    // horizon-major
    EXPECT_EQ(rows[0].horizon_label, "1 d");
    EXPECT_DOUBLE_EQ(rows[0].sigma, 0.6);
    EXPECT_EQ(rows[1].horizon_label, "1 d");
    EXPECT_EQ(rows[0].q_pct_k_rounded, 284);
    EXPECT_EQ(rows[0].lower_pct_k_rounded, 97);
    EXPECT_EQ(rows[14].q_pct_k_rounded, 58);
    EXPECT_EQ(rows[14].upper_pct_k_rounded, 157);
    EXPECT_EQ(rows[14].rk_pct_q_rounded, 9);
}

TEST(DesignTable, Monotonicity) {
    const auto rows = generate_design_table(standard_table_spec());
    for (std::size_t h = 0; h < 5; ++h) {
        for (std::size_t s = 0; s < 3; ++s) {
            const auto& row = rows[h * 3 + s];
            EXPECT_NEAR(row.model_tau, row.tau, 1e-9 * row.tau);
            if (s > 0) {
                EXPECT_GT(row.fee_rate, rows[h * 3 + s - 1].fee_rate);
                EXPECT_GT(row.width_pct_k, rows[h * 3 + s - 1].width_pct_k);
            }
            if (h > 0) {
                EXPECT_LT(row.fee_rate, rows[(h - 1) * 3 + s].fee_rate);
                EXPECT_GT(row.width_pct_k, rows[(h - 1) * 3 + s].width_pct_k);
            }
        }
    }
}

TEST(DesignTable, Renderings) {
    const auto rows = generate_design_table(standard_table_spec());
    const auto csv = design_table_csv(rows);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 16);
    EXPECT_EQ(csv.find('\r'), std::string::npos);
    const auto text = design_table_text(rows, 0.05);
    EXPECT_NE(text.find("2 wk       80%       99%     86%    118%     32%      5%"), std::string::npos);
    const auto share = residual_share_csv(rows);
    EXPECT_EQ(share.substr(0, share.find('\n')), "horizon,tau_years,sigma_eff,q,rK_pct_q,rK_pct_K");
}

TEST(DesignTable, RejectsNonPositiveInputs) {
    auto spec = standard_table_spec();
    spec.sigmas = {0.0};
    EXPECT_THROW((void)generate_design_table(spec), DomainError);
    spec = standard_table_spec();
    spec.horizons = {{"bad", -1.0}};
    EXPECT_THROW((void)generate_design_table(spec), DomainError);
}
