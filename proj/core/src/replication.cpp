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

#include "cilvr/replication.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "cilvr/errors.hpp"
#include "cilvr/parallel.hpp"

namespace cilvr::replication {

double StrikeStrip::weight_sum() const {
    CompensatedSum sum;
    for (double w : weights) {
        sum.add(w);
    }
    return sum.value();
}

long ChainedStrip::activated(double spot) const {
    if (spot < band_lower || spot > band_upper) {
        return -1;
    }
    const auto& sols = legs.solutions;
    const auto it = std::lower_bound(sols.begin(), sols.end(), spot,
                                     [](const ci::CIPutSolution& s, double x) { return s.upper < x; });
    if (it == sols.end()) {
        throw TilingError("no continuation band reaches the spot price");
    }
    // endpoints of adjacent bands agree to root-finding precision
    if (spot < it->lower * (1.0 - 1e-9)) {
        std::ostringstream os;
        os << "gap in chained strip tiling at S=" << spot;
        throw TilingError(os.str());
    }
    return static_cast<long>(it - sols.begin());
}

StrikeStrip build_uniform_strip(const amm::LiquidityBand& band, const MarketParams& params, double fee_rate,
                                double strike_spacing) {
    params.validate();
    if (!(strike_spacing > 0.0) || !std::isfinite(strike_spacing)) {
        throw DomainError("strike spacing must be positive");
    }
    const double a = band.lower();
    const double b = band.upper();
    if (!(fee_rate > params.r * b)) {
        std::ostringstream os;
        os << "fee rate q=" << fee_rate << " must exceed r*b=" << params.r * b;
        throw AdmissibilityError(os.str());
    }

    const auto intervals =
        static_cast<std::size_t>(std::max(1.0, std::ceil((b - a) / strike_spacing - 1e-9)));

    StrikeStrip strip;
    strip.fee_rate = fee_rate;
    strip.strikes.reserve(intervals);
    strip.weights.reserve(intervals);
    strip.solutions.reserve(intervals);
    for (std::size_t i = 0; i < intervals; ++i) {
        const double k_lo = a + static_cast<double>(i) * strike_spacing;
        const double k_hi = (i + 1 < intervals) ? a + static_cast<double>(i + 1) * strike_spacing : b;
        strip.strikes.push_back(k_lo);
        strip.weights.push_back(amm::delta(band, k_hi) - amm::delta(band, k_lo));
        strip.solutions.push_back(ci::solve_ci_put(params, {k_lo, fee_rate}));
    }
    return strip;
}

double strike_for_lower_boundary(const MarketParams& params, double fee_rate, double target) {
    params.validate();
    if (!(params.r > 0.0)) {
        throw DomainError("CI put requires r > 0");
    }
    if (!(target > 0.0)) {
        throw DomainError("target boundary must be positive");
    }
    auto lower_gap = [&](double strike) { return ci::solve_ci_put(params, {strike, fee_rate}).lower - target; };

    const double k_max = fee_rate / params.r * (1.0 - 1e-12);
    if (!(k_max > target)) {
        throw ConvergenceError("no admissible strike has its exercise boundary at the target");
    }
    const double f_hi = lower_gap(k_max);
    if (f_hi < 0.0) {
        std::ostringstream os;
        os << "exercise boundary cannot reach " << target << " at q=" << fee_rate;
        throw ConvergenceError(os.str());
    }
    if (f_hi == 0.0) {
        return k_max;
    }
    // S_lower(K) < K, so K = target brackets from below
    const double f_lo = lower_gap(target);
    if (f_lo == 0.0) {
        return target;
    }

    constexpr std::uintmax_t kMaxIter = 200;
    std::uintmax_t iters = kMaxIter;
    const auto bracket = boost::math::tools::bisect(lower_gap, target, k_max,
                                                    boost::math::tools::eps_tolerance<double>(52), iters);
    if (iters >= kMaxIter) {
        throw ConvergenceError("bisection for chained strike did not converge");
    }
    return 0.5 * (bracket.first + bracket.second);
}

ChainedStrip build_chained_strip(const amm::LiquidityBand& band, const MarketParams& params, double fee_rate) {
    constexpr std::size_t kMaxStrikes = 10'000'000;

    ChainedStrip chain;
    chain.band_lower = band.lower();
    chain.band_upper = band.upper();
    chain.legs.fee_rate = fee_rate;

    double target = band.lower();
    while (true) {
        const double strike = strike_for_lower_boundary(params, fee_rate, target);
        const auto sol = ci::solve_ci_put(params, {strike, fee_rate});
        if (!(sol.upper > target)) {
            throw ConvergenceError("chained strip failed to advance");
        }
        const double end = std::min(sol.upper, band.upper());
        chain.legs.strikes.push_back(strike);
        // weights telescope exactly over the tiling endpoints
        chain.legs.weights.push_back(amm::delta(band, end) - amm::delta(band, target));
        chain.legs.solutions.push_back(sol);
        if (sol.upper >= band.upper()) {
            chain.overshoot = sol.upper - band.upper();
            break;
        }
        if (chain.legs.strikes.size() >= kMaxStrikes) {
            throw ConvergenceError("chained strip exceeded the strike cap");
        }
        target = sol.upper;
    }
    return chain;
}

double strip_delta(const StrikeStrip& strip, double spot) {
    double sum = 0.0;
    for (std::size_t i = 0; i < strip.size(); ++i) {
        sum += strip.weights[i] * ci::delta(strip.solutions[i], spot);
    }
    return sum;
}

double strip_delta(const ChainedStrip& strip, double spot) { return strip_delta(strip.legs, spot); }

double strip_value(const StrikeStrip& strip, double spot) {
    double sum = 0.0;
    for (std::size_t i = 0; i < strip.size(); ++i) {
        sum += strip.weights[i] * ci::price(strip.solutions[i], spot);
    }
    return sum;
}

double strip_value(const ChainedStrip& strip, double spot) { return strip_value(strip.legs, spot); }

ErrorMetrics replication_error(const amm::LiquidityBand& band, const StrikeStrip& strip, std::size_t grid_size) {
    if (grid_size < 2) {
        throw ConfigError("error grid needs at least 2 points");
    }
    const double a = band.lower();
    const double b = band.upper();
    ErrorMetrics out;
    CompensatedSum squares;
    for (std::size_t j = 0; j < grid_size; ++j) {
        const double s = (j + 1 == grid_size)
                             ? b
                             : a + (b - a) * static_cast<double>(j) / static_cast<double>(grid_size - 1);
        const double err = std::abs(amm::delta(band, s) - strip_delta(strip, s));
        out.max_abs = std::max(out.max_abs, err);
        squares.add(err * err);
    }
    out.rmse = std::sqrt(squares.value() / static_cast<double>(grid_size));
    return out;
}

void SweepConfig::validate() const {
    params.validate();
    if (fee_rates.empty() || strike_spacings.empty()) {
        throw ConfigError("sweep needs at least one fee rate and one strike spacing");
    }
    if (grid_size < 2) {
        throw ConfigError("sweep grid size must be at least 2");
    }
    for (double dk : strike_spacings) {
        if (!(dk > 0.0)) {
            throw ConfigError("strike spacings must be positive");
        }
    }
    for (double q : fee_rates) {
        if (!(q > params.r * band.upper())) {
            std::ostringstream os;
            os << "fee rate q=" << q << " must exceed r*b=" << params.r * band.upper();
            throw AdmissibilityError(os.str());
        }
    }
}

std::vector<SweepCell> replication_error_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const std::size_t n_dk = cfg.strike_spacings.size();
    std::vector<SweepCell> cells(cfg.fee_rates.size() * n_dk);
    parallel_for(cells.size(), [&](std::size_t idx) {
        const double q = cfg.fee_rates[idx / n_dk];
        const double dk = cfg.strike_spacings[idx % n_dk];
        const auto strip = build_uniform_strip(cfg.band, cfg.params, q, dk);
        cells[idx] = SweepCell{q, dk, replication_error(cfg.band, strip, cfg.grid_size)};
    });
    return cells;
}

}  // namespace cilvr::replication
