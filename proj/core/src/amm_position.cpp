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

#include "cilvr/amm_position.hpp"

#include <cmath>
#include <limits>

#include "cilvr/errors.hpp"

namespace cilvr::amm {

namespace {

void require_positive_spot(double spot) {
    if (!(spot > 0.0) || std::isnan(spot)) {
        throw DomainError("spot price must be positive");
    }
}

// 1/sqrt(b), zero for the unbounded full-range band
double inv_sqrt(double x) { return std::isinf(x) ? 0.0 : 1.0 / std::sqrt(x); }

}  // namespace

LiquidityBand::LiquidityBand(double lower, double upper, double liquidity)
    : lower_(lower), upper_(upper), liquidity_(liquidity) {
    if (!(lower > 0.0) || !(upper > lower) || !std::isfinite(upper)) {
        throw DomainError("liquidity band requires 0 < a < b < inf");
    }
    if (!(liquidity > 0.0) || !std::isfinite(liquidity)) {
        throw DomainError("liquidity k must be positive");
    }
}

LiquidityBand LiquidityBand::normalized(double lower, double upper) {
    if (!(lower > 0.0) || !(upper > lower) || !std::isfinite(upper)) {
        throw DomainError("liquidity band requires 0 < a < b < inf");
    }
    return LiquidityBand(lower, upper, 1.0 / (1.0 / std::sqrt(lower) - 1.0 / std::sqrt(upper)));
}

LiquidityBand LiquidityBand::full_range(double liquidity) {
    if (!(liquidity > 0.0) || !std::isfinite(liquidity)) {
        throw DomainError("liquidity k must be positive");
    }
    LiquidityBand band;
    band.lower_ = 0.0;
    band.upper_ = std::numeric_limits<double>::infinity();
    band.liquidity_ = liquidity;
    band.full_range_ = true;
    return band;
}

double value(const LiquidityBand& band, double spot) {
    require_positive_spot(spot);
    const double k = band.liquidity();
    const double a = band.lower();
    const double b = band.upper();
    if (spot <= a) {
        return k * (inv_sqrt(a) - inv_sqrt(b)) * spot;
    }
    if (spot >= b) {
        return k * (std::sqrt(b) - std::sqrt(a));
    }
    // k(sqrt S - sqrt a) + k S (sqrt b - sqrt S)/sqrt(S b)
    return k * (2.0 * std::sqrt(spot) - std::sqrt(a) - spot * inv_sqrt(b));
}

double delta(const LiquidityBand& band, double spot) {
    require_positive_spot(spot);
    if (spot >= band.upper()) {
        return 0.0;
    }
    const double s = spot <= band.lower() ? band.lower() : spot;
    return band.liquidity() * (1.0 / std::sqrt(s) - inv_sqrt(band.upper()));
}

double gamma(const LiquidityBand& band, double spot) {
    require_positive_spot(spot);
    if (!(spot > band.lower() && spot < band.upper())) {
        throw DomainError("gamma is only defined inside the open band (a, b)");
    }
    return -band.liquidity() / (2.0 * spot * std::sqrt(spot));
}

PositionGreeks greeks(const LiquidityBand& band, double spot) {
    PositionGreeks out;
    out.value = value(band, spot);
    out.delta = delta(band, spot);
    out.gamma = (spot > band.lower() && spot < band.upper()) ? gamma(band, spot) : 0.0;
    return out;
}

double lvr_rate(const LiquidityBand& band, const MarketParams& params, double spot) {
    require_positive_spot(spot);
    if (!(spot > band.lower() && spot < band.upper())) {
        return 0.0;
    }
    return 0.25 * band.liquidity() * params.sigma * params.sigma * std::sqrt(spot);
}

}  // namespace cilvr::amm
