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

#include "cilvr/horizon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cilvr/errors.hpp"

namespace cilvr::horizon {

double mean_exit_time(const HorizonInputs& in) {
    in.params.validate();
    if (!(in.lower > 0.0) || !(in.upper > in.lower) || !std::isfinite(in.upper)) {
        throw DomainError("exit band requires 0 < lower < upper < inf");
    }
    if (!(in.spot0 >= in.lower && in.spot0 <= in.upper)) {
        throw DomainError("initial spot must lie inside the exit band");
    }
    if (in.spot0 == in.lower || in.spot0 == in.upper) {
        return 0.0;
    }

    const double s2 = in.params.sigma * in.params.sigma;
    const double u = std::log(in.spot0 / in.lower);  // distance above the lower barrier
    const double w = std::log(in.upper / in.lower);  // log band width
    const double a = in.drift();

    // zero-drift solution plus first-order drift correction
    const double m0 = u * (w - u) / s2;
    if (std::abs(a) < kDriftSwitch * s2) {
        const double m1 = u * (w - u) * (w - 2.0 * u) / (3.0 * s2 * s2);
        return m0 + a * m1;
    }
    const double k = in.kappa();
    // (1/a)[ln(S_l/S0) + ln(S_l/S_u)(S0^k - S_l^k)/(S_l^k - S_u^k)] in expm1 form
    return (-u + w * std::expm1(k * u) / std::expm1(k * w)) / a;
}

double mean_exit_time(const ci::CIPutSolution& sol, double spot0) {
    return mean_exit_time(HorizonInputs{sol.params, spot0, sol.lower, sol.upper});
}

namespace {

double atm_tau(const MarketParams& params, double strike, double log_q) {
    const auto sol = ci::solve_ci_put(params, {strike, std::exp(log_q)});
    return mean_exit_time(sol, strike);
}

}  // namespace

HorizonFit solve_q_for_horizon(const MarketParams& params, double strike, double target_tau,
                               const InversionOptions& options) {
    params.validate();
    if (!(params.r > 0.0)) {
        throw DomainError("CI put requires r > 0");
    }
    if (!(target_tau > 0.0) || !std::isfinite(target_tau)) {
        throw DomainError("target horizon must be positive");
    }
    if (!(strike > 0.0)) {
        throw DomainError("strike must be positive");
    }

    double lo = std::log(params.r * strike * (1.0 + 1e-9));
    double hi = std::log(options.q_max_multiple * strike);
    const double tau_lo = atm_tau(params, strike, lo);  // widest band, longest horizon
    const double tau_hi = atm_tau(params, strike, hi);
    if (!(target_tau <= tau_lo && target_tau >= tau_hi)) {
        std::ostringstream os;
        os << "target horizon " << target_tau << " outside reachable range [" << tau_hi << ", " << tau_lo
           << "]";
        throw NoSolutionError(os.str());
    }

    // bisection on log q; tau decreases in q
    for (int it = 1; it <= options.max_iter; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double tau = atm_tau(params, strike, mid);
        // the bracket can shrink to adjacent doubles before tau meets rel_tol when the band is ulp-thin
        const bool exhausted = hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi));
        if (std::abs(tau - target_tau) <= options.rel_tol * target_tau || exhausted) {
            HorizonFit fit;
            fit.fee_rate = std::exp(mid);
            fit.solution = ci::solve_ci_put(params, {strike, fit.fee_rate});
            fit.tau = tau;
            fit.iterations = it;
            return fit;
        }
        if (tau > target_tau) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    throw ConvergenceError("fee-rate inversion hit the iteration cap");
}

}  // namespace cilvr::horizon
