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

#include "cilvr/ci_option.hpp"

#include <cmath>
#include <sstream>

#include "cilvr/errors.hpp"

namespace cilvr {

void MarketParams::validate() const {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw DomainError("sigma must be positive and finite");
    }
    if (!(r >= 0.0) || !std::isfinite(r)) {
        throw DomainError("r must be non-negative and finite");
    }
}

}  // namespace cilvr

namespace cilvr::ci {

CIPutSolution solve_ci_put(const MarketParams& params, const CIPutSpec& spec) {
    params.validate();
    if (!(params.r > 0.0)) {
        // gamma = -2r/sigma^2 degenerates and q/r diverges
        throw DomainError("CI put requires r > 0");
    }
    if (!(spec.strike > 0.0) || !std::isfinite(spec.strike)) {
        throw DomainError("strike must be positive and finite");
    }
    const double r = params.r;
    const double carry = r * spec.strike;
    if (!(spec.fee_rate > carry) || !std::isfinite(spec.fee_rate)) {
        std::ostringstream os;
        os << "fee rate q=" << spec.fee_rate << " must exceed r*K=" << carry;
        throw AdmissibilityError(os.str());
    }

    CIPutSolution sol;
    sol.params = params;
    sol.strike = spec.strike;
    sol.fee_rate = spec.fee_rate;

    const double s2 = params.sigma * params.sigma;
    const double q = spec.fee_rate;
    const double eps = carry / q;
    const double log_g = std::log1p(eps);
    const double gamma = -2.0 * r / s2;
    const double scale = q / (r + 0.5 * s2);

    // g^p - 1 via expm1 keeps the O(1/q) band width accurate for large q.
    const double upper_factor = std::expm1((1.0 - 1.0 / gamma) * log_g);
    const double lower_factor = eps - std::expm1(log_g / gamma);

    sol.gamma = gamma;
    sol.g = 1.0 + eps;
    sol.alpha = 1.0 / upper_factor;
    sol.log_beta = -std::log(-gamma) + (1.0 - gamma) * std::log(scale) + gamma * std::log(sol.alpha);
    sol.beta = std::exp(sol.log_beta);
    sol.lower = scale * lower_factor;
    sol.upper = scale * upper_factor;
    return sol;
}

namespace {

void require_positive_spot(double spot) {
    if (!(spot > 0.0) || std::isnan(spot)) {
        throw DomainError("spot price must be positive");
    }
}

// beta * S^e computed in log space
double beta_power(const CIPutSolution& sol, double exponent, double spot) {
    return std::exp(sol.log_beta + exponent * std::log(spot));
}

}  // namespace

double price(const CIPutSolution& sol, double spot) {
    require_positive_spot(spot);
    if (spot <= sol.lower) {
        return sol.strike - spot;
    }
    if (spot >= sol.upper) {
        return 0.0;
    }
    return sol.alpha * spot + beta_power(sol, sol.gamma, spot) - sol.fee_rate / sol.params.r;
}

double delta(const CIPutSolution& sol, double spot) {
    require_positive_spot(spot);
    if (spot <= sol.lower) {
        return -1.0;
    }
    if (spot >= sol.upper) {
        return 0.0;
    }
    return sol.alpha + sol.gamma * beta_power(sol, sol.gamma - 1.0, spot);
}

double convexity(const CIPutSolution& sol, double spot) {
    require_positive_spot(spot);
    if (spot < sol.lower || spot > sol.upper) {
        return 0.0;
    }
    return sol.gamma * (sol.gamma - 1.0) * beta_power(sol, sol.gamma - 2.0, spot);
}

std::vector<double> band_width_limit(const MarketParams& params, double strike,
                                     std::span<const double> fee_rates) {
    std::vector<double> out;
    out.reserve(fee_rates.size());
    for (double q : fee_rates) {
        const auto sol = solve_ci_put(params, {strike, q});
        out.push_back(q * sol.width());
    }
    return out;
}

double band_width_asymptote(const MarketParams& params, double strike) {
    return 0.5 * params.sigma * params.sigma * strike * strike;
}

}  // namespace cilvr::ci
