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

#include <cstddef>
#include <vector>

#include "cilvr/amm_position.hpp"
#include "cilvr/ci_option.hpp"
#include "cilvr/market.hpp"

// Discrete strips of short CI puts that delta-replicate a liquidity band.
//
// Two constructions:
//  - uniform: strikes a, a + dK, ... with weight w_i = X(K_{i+1}) - X(K_i) on each
//    strike interval (the last interval is truncated at b);
//  - chained: strikes whose continuation bands tile [a, b] end to end,
//    S_lower(K_1) = a and S_lower(K_{i+1}) = S_upper(K_i), with weight
//    w_i = X(S_upper(K_i)) - X(S_lower(K_i)).
// Both weight sets telescope to X(b) - X(a).
namespace cilvr::replication {

struct StrikeStrip {
    double fee_rate = 0.0;
    std::vector<double> strikes;  ///< strictly ascending
    std::vector<double> weights;  ///< each <= 0
    std::vector<ci::CIPutSolution> solutions;

    [[nodiscard]] std::size_t size() const { return strikes.size(); }
    [[nodiscard]] double weight_sum() const;
};

struct ChainedStrip {
    StrikeStrip legs;
    double band_lower = 0.0;  ///< a
    double band_upper = 0.0;  ///< b
    /// S_upper of the last strike minus b; the final band generally cannot end exactly at b.
    double overshoot = 0.0;

    [[nodiscard]] std::size_t size() const { return legs.size(); }
    /// Index of the strike whose continuation band contains spot, or -1 if spot is
    /// outside [a, b]. Throws TilingError if an in-band price finds no strike.
    [[nodiscard]] long activated(double spot) const;
};

/// Throws DomainError if dK <= 0, AdmissibilityError if q <= r*b.
[[nodiscard]] StrikeStrip build_uniform_strip(const amm::LiquidityBand& band, const MarketParams& params,
                                              double fee_rate, double strike_spacing);

/// Throws ConvergenceError if a strike cannot be bracketed or the bisection fails.
[[nodiscard]] ChainedStrip build_chained_strip(const amm::LiquidityBand& band, const MarketParams& params,
                                               double fee_rate);

/// Strike K with S_lower(q; K) == target (S_lower is increasing in K).
[[nodiscard]] double strike_for_lower_boundary(const MarketParams& params, double fee_rate, double target);

/// sum_i w_i X_q(S; K_i), each leg clipped to {-1, 0} outside its band.
[[nodiscard]] double strip_delta(const StrikeStrip& strip, double spot);
[[nodiscard]] double strip_delta(const ChainedStrip& strip, double spot);

/// sum_i w_i P_q(S; K_i)
[[nodiscard]] double strip_value(const StrikeStrip& strip, double spot);
[[nodiscard]] double strip_value(const ChainedStrip& strip, double spot);

struct ErrorMetrics {
    double max_abs = 0.0;
    double rmse = 0.0;
};

/// |X(S_j) - X_strip(S_j)| on n uniform points covering [a, b] endpoints included.
[[nodiscard]] ErrorMetrics replication_error(const amm::LiquidityBand& band, const StrikeStrip& strip,
                                             std::size_t grid_size);

struct SweepConfig {
    amm::LiquidityBand band = amm::LiquidityBand::normalized(80.0, 125.0);
    MarketParams params{0.01, 0.25};
    std::vector<double> fee_rates{8, 16, 32, 64, 125, 250, 500, 1000, 2000, 4000};
    std::vector<double> strike_spacings{0.25, 0.5, 1.0, 2.0, 4.0};
    std::size_t grid_size = 2000;

    /// Throws ConfigError on an empty axis or grid_size < 2; AdmissibilityError if
    /// some q <= r*b.
    void validate() const;
};

struct SweepCell {
    double fee_rate = 0.0;
    double strike_spacing = 0.0;
    ErrorMetrics error;
};

/// One cell per (q, dK), ordered q-major then dK, independent of thread count.
[[nodiscard]] std::vector<SweepCell> replication_error_sweep(const SweepConfig& cfg);

}  // namespace cilvr::replication
