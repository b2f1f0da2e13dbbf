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

#pragma once

#include <string>
#include <vector>

#include "cilvr/ci_option.hpp"
#include "cilvr/market.hpp"
#include "cilvr/pathwise_sim.hpp"

// Liquidity band whose token0 holdings match the delta of one perpetual CI put.
//
// The LP holds X(S) = -P'(S) inside [S_lower, S_upper], so its instantaneous LVR
// rate is 1/2 sigma^2 S^2 P''(S) = q + eps(S) with eps(S) = -r (S P'(S) - P(S)).
// eps falls from rK at S_lower to 0 at S_upper, so the rate stays in [q, q + rK].
namespace cilvr::design {

struct BandDesign {
    MarketParams params;
    double strike = 0.0;  ///< K*
    double fee_rate = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double residual_bound = 0.0;  ///< r K*
    double width_pct = 0.0;       ///< 100 (upper - lower) / K*
    ci::CIPutSolution solution;
};

/// Throws DomainError / AdmissibilityError from the CI solver.
[[nodiscard]] BandDesign design_band(const MarketParams& params, double strike, double fee_rate);

/// eps(S) = -r (S delta - price). Exactly rK at S_lower and 0 at S_upper.
/// Throws DomainError outside [S_lower, S_upper].
[[nodiscard]] double lvr_residual(const BandDesign& design, double spot);

/// 1/2 sigma^2 S^2 P''(S) inside the band, 0 outside.
[[nodiscard]] double designed_lvr_rate(const BandDesign& design, double spot);

/// Value -P, holdings -P', LVR rate as above.
[[nodiscard]] sim::PositionModel designed_position(const BandDesign& design);

struct ResidualCheck {
    double fee_rate = 0.0;
    double upper_bound = 0.0;      ///< q + rK
    double realized_rate = 0.0;    ///< total realized LVR / total time in band
    double analytic_rate = 0.0;    ///< total analytic LVR / total time in band
    double time_in_band = 0.0;     ///< summed over paths, years
    std::size_t n_paths = 0;
};

/// Hedges the designed band along simulated paths and reports its occupancy-weighted
/// mean LVR rate. cfg.spot0 should sit inside the band.
[[nodiscard]] ResidualCheck pathwise_residual_check(const BandDesign& design, const sim::GBMConfig& cfg);

struct Horizon {
    std::string label;
    double years = 0.0;
};

struct DesignTableSpec {
    double r = 0.05;
    double strike = 100.0;
    std::vector<Horizon> horizons;
    std::vector<double> sigmas;
};

/// 1 d, 1 wk, 2 wk, 1 mo, 2 mo with 365-day years and 12-month years.
[[nodiscard]] std::vector<Horizon> standard_horizons();
/// The five standard horizons at sigma 60%, 80% and 100% with r = 5%.
[[nodiscard]] DesignTableSpec standard_table_spec();

struct DesignRow {
    std::string horizon_label;
    double tau = 0.0;
    double sigma = 0.0;
    double fee_rate = 0.0;
    // raw percentages
    double q_pct_k = 0.0;
    double lower_pct_k = 0.0;
    double upper_pct_k = 0.0;
    double width_pct_k = 0.0;
    double rk_pct_q = 0.0;
    double rk_pct_k = 0.0;
    // rounded half away from zero, as printed
    long q_pct_k_rounded = 0;
    long lower_pct_k_rounded = 0;
    long upper_pct_k_rounded = 0;
    long width_pct_k_rounded = 0;
    long rk_pct_q_rounded = 0;
    double model_tau = 0.0;  ///< mean exit time of the fitted band
};

/// Rows ordered horizon-major, sigma-minor. Throws DomainError on non-positive
/// horizons or sigmas; solver errors propagate.
[[nodiscard]] std::vector<DesignRow> generate_design_table(const DesignTableSpec& spec);

[[nodiscard]] std::string design_table_csv(const std::vector<DesignRow>& rows);
[[nodiscard]] std::string design_table_text(const std::vector<DesignRow>& rows, double r);
/// rK as a percentage of q and of K for each row.
[[nodiscard]] std::string residual_share_csv(const std::vector<DesignRow>& rows);

}  // namespace cilvr::design
