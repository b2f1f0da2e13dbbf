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

#include "cilvr/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cilvr/errors.hpp"
#include "cilvr/horizon.hpp"
#include "cilvr/parallel.hpp"

namespace cilvr::calib {

IVTermStructure::IVTermStructure(std::vector<Pillar> pillars) : pillars_(std::move(pillars)) {
    if (pillars_.size() < 2) {
        throw DomainError("term structure needs at least 2 pillars");
    }
    for (std::size_t i = 0; i < pillars_.size(); ++i) {
        const auto& p = pillars_[i];
        if (!(p.tenor > 0.0) || !std::isfinite(p.tenor) || !(p.iv > 0.0) || !std::isfinite(p.iv)) {
            throw DomainError("pillar tenors and implied vols must be positive");
        }
        if (i > 0 && !(p.tenor > pillars_[i - 1].tenor)) {
            throw DomainError("pillar tenors must be strictly ascending");
        }
    }
}

std::vector<std::string> IVTermStructure::calendar_arbitrage_warnings() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i + 1 < pillars_.size(); ++i) {
        if (pillar_total_variance(i + 1) < pillar_total_variance(i)) {
            std::ostringstream os;
            os << "total variance decreases between tenors " << pillars_[i].tenor << " and "
               << pillars_[i + 1].tenor;
            out.push_back(os.str());
        }
    }
    return out;
}

double total_variance(const IVTermStructure& ts, double tau) {
    if (!(tau > 0.0) || std::isnan(tau)) {
        throw DomainError("total variance requires tau > 0");
    }
    const auto& p = ts.pillars();
    if (tau <= p.front().tenor) {
        return ts.pillar_variance(0) * tau;
    }
    if (tau >= p.back().tenor) {
        return ts.pillar_variance(p.size() - 1) * tau;
    }
    const auto it = std::upper_bound(p.begin(), p.end(), tau, [](double x, const Pillar& q) { return x < q.tenor; });
    const auto i = static_cast<std::size_t>(it - p.begin()) - 1;
    const double tv0 = ts.pillar_total_variance(i);
    const double tv1 = ts.pillar_total_variance(i + 1);
    return tv0 + (tv1 - tv0) * (tau - p[i].tenor) / (p[i + 1].tenor - p[i].tenor);
}

double implied_variance(const IVTermStructure& ts, double tau) { return total_variance(ts, tau) / tau; }

double lipschitz_bound(const IVTermStructure& ts, std::size_t grid_points) {
    const auto& p = ts.pillars();
    const std::size_t n = std::max<std::size_t>(grid_points, 1);
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        const double t0 = p[i].tenor;
        const double t1 = p[i + 1].tenor;
        const double tv0 = ts.pillar_total_variance(i);
        const double slope = (ts.pillar_total_variance(i + 1) - tv0) / (t1 - t0);
        for (std::size_t j = 0; j <= n; ++j) {
            const double tau = t0 + (t1 - t0) * static_cast<double>(j) / static_cast<double>(n);
            const double tv = tv0 + slope * (tau - t0);
            m = std::max(m, std::abs((slope * tau - tv) / (tau * tau)));
        }
    }
    return m;
}

FixedPointResult solve_variance_fixed_point(const IVTermStructure& ts,
                                            const std::function<double(double)>& tau_of_variance,
                                            const FixedPointOptions& options) {
    FixedPointResult out;
    auto evaluate = [&](double v) {
        const double tau = tau_of_variance(v);
        IterationRecord rec{v, tau, implied_variance(ts, tau)};
        out.trace.push_back(rec);
        return rec;
    };

    double v = ts.pillar_variance(0);
    double best_residual = std::numeric_limits<double>::infinity();
    int stalled = 0;
    for (int it = 1; it <= options.max_iter; ++it) {
        const auto rec = evaluate(v);
        const double residual = std::abs(rec.mapped - v) / v;
        out.iterations = it;
        if (residual < options.rel_tol) {
            out.variance = v;
            out.tau = rec.tau;
            out.residual = residual;
            return out;
        }
        // no progress over a window means the damped map is oscillating or stuck
        if (residual < best_residual * 0.999) {
            best_residual = residual;
            stalled = 0;
        } else if (++stalled >= options.oscillation_window) {
            break;
        }
        v = (1.0 - options.damping) * v + options.damping * rec.mapped;
    }

    // F maps into [min, max] pillar variance, so h(v) = F(v) - v changes sign there
    out.used_bisection = true;
    double lo = ts.pillar_variance(0);
    double hi = lo;
    for (std::size_t i = 1; i < ts.pillars().size(); ++i) {
        lo = std::min(lo, ts.pillar_variance(i));
        hi = std::max(hi, ts.pillar_variance(i));
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const auto rec = evaluate(mid);
        ++out.iterations;
        const double h = rec.mapped - mid;
        const double residual = std::abs(h) / mid;
        if (residual < options.rel_tol || (hi - lo) <= 4e-16 * mid) {
            out.variance = mid;
            out.tau = rec.tau;
            out.residual = residual;
            if (residual >= options.rel_tol) {
                break;
            }
            return out;
        }
        if (h > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    std::ostringstream os;
    os << "effective variance fixed point did not converge (residual " << out.residual << ")";
    throw ConvergenceError(os.str());
}

CalibrationResult calibrate_sigma_eff(const IVTermStructure& ts, double r, double strike, double fee_rate,
                                      const FixedPointOptions& options) {
    if (!(r > 0.0)) {
        throw DomainError("calibration requires r > 0");
    }
    if (!(strike > 0.0)) {
        throw DomainError("strike must be positive");
    }
    if (!(fee_rate > r * strike)) {
        std::ostringstream os;
        os << "fee rate q=" << fee_rate << " must exceed r*K=" << r * strike;
        throw AdmissibilityError(os.str());
    }
    auto tau_of = [&](double variance) {
        const auto sol = ci::solve_ci_put({r, std::sqrt(variance)}, {strike, fee_rate});
        return horizon::mean_exit_time(sol, strike);
    };
    const auto fp = solve_variance_fixed_point(ts, tau_of, options);

    CalibrationResult out;
    out.variance = fp.variance;
    out.sigma_eff = std::sqrt(fp.variance);
    out.tau_bar = fp.tau;
    out.iterations = fp.iterations;
    out.used_bisection = fp.used_bisection;
    out.residual = fp.residual;
    out.trace = fp.trace;
    out.lipschitz = lipschitz_bound(ts);
    out.solution = ci::solve_ci_put({r, out.sigma_eff}, {strike, fee_rate});
    return out;
}

ErrorBounds error_bounds(const IVTermStructure& ts, double tau_bar, const std::vector<double>& exit_times,
                         std::size_t grid_points) {
    if (exit_times.empty()) {
        throw DomainError("error bounds need at least one exit-time sample");
    }
    if (!(tau_bar > 0.0)) {
        throw DomainError("tau_bar must be positive");
    }
    // tau -> 0 limit of tv/tau under flat front extrapolation
    auto f = [&](double tau) { return tau > 0.0 ? implied_variance(ts, tau) : ts.pillar_variance(0); };

    ErrorBounds out;
    out.lipschitz = lipschitz_bound(ts, grid_points);
    out.estimate = f(tau_bar);

    CompensatedSum dev_sq, dev_abs, tau_sq, tau_abs, f_sum, tau_sum;
    for (double tau : exit_times) {
        const double d = f(tau) - out.estimate;
        dev_sq.add(d * d);
        dev_abs.add(std::abs(d));
        tau_sq.add((tau - tau_bar) * (tau - tau_bar));
        tau_abs.add(std::abs(tau - tau_bar));
        f_sum.add(f(tau));
        tau_sum.add(tau);
    }
    const auto n = static_cast<double>(exit_times.size());
    out.empirical_rmse = std::sqrt(dev_sq.value() / n);
    out.empirical_mad = dev_abs.value() / n;
    out.rmse_bound = out.lipschitz * std::sqrt(tau_sq.value() / n);
    out.mad_bound = out.lipschitz * tau_abs.value() / n;
    out.sample_mean_variance = f_sum.value() / n;
    out.sample_tau_mean = tau_sum.value() / n;

    CompensatedSum centered;
    for (double tau : exit_times) {
        centered.add((tau - out.sample_tau_mean) * (tau - out.sample_tau_mean));
    }
    out.sample_tau_sd = exit_times.size() > 1 ? std::sqrt(centered.value() / (n - 1.0)) : 0.0;
    return out;
}

ErrorBounds error_bounds(const IVTermStructure& ts, CalibrationResult& result, const sim::ExitSamples& samples) {
    auto out = error_bounds(ts, result.tau_bar, samples.times);
    result.rmse_bound = out.rmse_bound;
    result.mad_bound = out.mad_bound;
    return out;
}

}  // namespace cilvr::calib
