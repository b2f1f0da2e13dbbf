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

#include "cilvr/market.hpp"

// Constant-product liquidity concentrated on a price band [a, b] with invariant
// parameter k. Below a the position holds only token0, above b only token1.
//
// LVR sign convention: the instantaneous LVR rate is reported as a positive cost,
// 1/2 sigma^2 S^2 |Gamma(S)|, since Gamma <= 0 inside the band.
namespace cilvr::amm {

class LiquidityBand {
public:
    /// Throws DomainError unless 0 < lower < upper and liquidity > 0.
    LiquidityBand(double lower, double upper, double liquidity);

    /// Band with k chosen so that delta(lower) == 1 and delta(upper) == 0.
    static LiquidityBand normalized(double lower, double upper);

    /// Full-range CPAMM: a -> 0, b -> inf, value 2k sqrt(S).
    static LiquidityBand full_range(double liquidity);

    [[nodiscard]] double lower() const { return lower_; }
    [[nodiscard]] double upper() const { return upper_; }
    [[nodiscard]] double liquidity() const { return liquidity_; }
    [[nodiscard]] bool is_full_range() const { return full_range_; }
    [[nodiscard]] bool contains(double spot) const { return spot >= lower_ && spot <= upper_; }

private:
    LiquidityBand() = default;

    double lower_ = 0.0;
    double upper_ = 0.0;
    double liquidity_ = 0.0;
    bool full_range_ = false;
};

struct PositionGreeks {
    double value = 0.0;  ///< token1
    double delta = 0.0;  ///< token0 held
    double gamma = 0.0;  ///< per price; zero outside the band
};

/// Reserve value in token1. Outside the band: the all-token0 reserve marked at S
/// below a, the constant all-token1 reserve above b.
[[nodiscard]] double value(const LiquidityBand& band, double spot);

/// k (1/sqrt(S) - 1/sqrt(b)) clipped to [0, delta(a)].
[[nodiscard]] double delta(const LiquidityBand& band, double spot);

/// -k / (2 S^{3/2}). Throws DomainError outside the open band (a, b).
[[nodiscard]] double gamma(const LiquidityBand& band, double spot);

/// value, delta and gamma; gamma is reported as 0 outside the open band.
[[nodiscard]] PositionGreeks greeks(const LiquidityBand& band, double spot);

/// Positive-cost LVR rate 1/2 sigma^2 S^2 |Gamma| = k sigma^2 sqrt(S) / 4 inside the
/// band, 0 outside. Throws DomainError if S <= 0.
[[nodiscard]] double lvr_rate(const LiquidityBand& band, const MarketParams& params, double spot);

}  // namespace cilvr::amm
