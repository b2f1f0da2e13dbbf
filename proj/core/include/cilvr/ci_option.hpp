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

#include <span>
#include <vector>

#include "cilvr/market.hpp"

// Perpetual American continuous-installment (CI) put.
//
// The holder pays a constant fee q per year while the option is alive. Inside
// the continuation band (S_lower, S_upper) the value solves
//
//   1/2 sigma^2 S^2 P'' + r S P' - r P = q
//
// with value matching and smooth fit at both free boundaries: P = K - S,
// P' = -1 at S_lower (exercise) and P = 0, P' = 0 at S_upper (drop).
// The solution is P(S) = alpha S + beta S^gamma - q/r with gamma = -2r/sigma^2.
namespace cilvr::ci {

struct CIPutSpec {
    double strike = 0.0;    ///< K, token1 per token0
    double fee_rate = 0.0;  ///< q, token1 per year; must exceed r*K
};

struct CIPutSolution {
    MarketParams params;
    double strike = 0.0;
    double fee_rate = 0.0;

    double alpha = 0.0;
    double beta = 0.0;      ///< may overflow to inf for extreme exponents; log_beta stays finite
    double log_beta = 0.0;
    double gamma = 0.0;     ///< -2r/sigma^2
    double g = 0.0;         ///< 1 + rK/q

    double lower = 0.0;     ///< exercise boundary S_lower
    double upper = 0.0;     ///< dropping boundary S_upper

    [[nodiscard]] bool in_continuation(double spot) const { return spot > lower && spot < upper; }
    [[nodiscard]] double width() const { return upper - lower; }
};

/// Closed-form coefficients and free boundaries.
/// Throws DomainError if sigma <= 0, r <= 0 or K <= 0; AdmissibilityError if q <= rK.
[[nodiscard]] CIPutSolution solve_ci_put(const MarketParams& params, const CIPutSpec& spec);

/// Value; clipped to K - S at or below S_lower and to 0 at or above S_upper.
[[nodiscard]] double price(const CIPutSolution& sol, double spot);

/// dP/dS in [-1, 0]; -1 at or below S_lower, 0 at or above S_upper.
[[nodiscard]] double delta(const CIPutSolution& sol, double spot);

/// d2P/dS2 inside the band (>= 0), 0 outside. Undefined jump at the boundaries; the
/// interior limit is returned there.
[[nodiscard]] double convexity(const CIPutSolution& sol, double spot);

/// q * (S_upper - S_lower) for each fee rate. Converges to sigma^2 K^2 / 2 at rate O(1/q).
[[nodiscard]] std::vector<double> band_width_limit(const MarketParams& params, double strike,
                                                   std::span<const double> fee_rates);

/// sigma^2 K^2 / 2
[[nodiscard]] double band_width_asymptote(const MarketParams& params, double strike);

}  // namespace cilvr::ci
