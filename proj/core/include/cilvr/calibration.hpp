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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cilvr/ci_option.hpp"
#include "cilvr/pathwise_sim.hpp"

// Effective constant volatility of a perpetual CI contract from an ATM implied
// volatility term structure.
//
// Total variance tv(T) = iv(T)^2 T is interpolated linearly between pillars. The
// effective variance v solves the fixed point v = tv(tau(v)) / tau(v), where tau(v)
// is the mean exit time of the contract's continuation band at volatility sqrt(v).
namespace cilvr::calib {

struct Pillar {
    double tenor = 0.0;  ///< years
    double iv = 0.0;     ///< annualized implied volatility
};

class IVTermStructure {
public:
    /// Throws DomainError unless there are >= 2 pillars, tenors strictly ascend and
    /// every tenor and iv is positive.
    explicit IVTermStructure(std::vector<Pillar> pillars);

    [[nodiscard]] const std::vector<Pillar>& pillars() const { return pillars_; }
    [[nodiscard]] double front_tenor() const { return pillars_.front().tenor; }
    [[nodiscard]] double back_tenor() const { return pillars_.back().tenor; }
    [[nodiscard]] double pillar_variance(std::size_t i) const { return pillars_[i].iv * pillars_[i].iv; }
    [[nodiscard]] double pillar_total_variance(std::size_t i) const {
        return pillar_variance(i) * pillars_[i].tenor;
    }

    /// One message per pillar pair whose total variance decreases (calendar arbitrage).
    [[nodiscard]] std::vector<std::string> calendar_arbitrage_warnings() const;

private:
    std::vector<Pillar> pillars_;
};

/// Piecewise-linear total variance. Outside [T_1, T_n] the implied variance
/// tv/tau is held at the nearest pillar. Throws DomainError if tau <= 0.
[[nodiscard]] double total_variance(const IVTermStructure& ts, double tau);

/// tv(tau) / tau
[[nodiscard]] double implied_variance(const IVTermStructure& ts, double tau);

/// M = max over segments of sup |d/dtau (tv(tau)/tau)|, sampled on grid_points
/// per segment plus endpoints. Zero outside the pillar range by construction.
[[nodiscard]] double lipschitz_bound(const IVTermStructure& ts, std::size_t grid_points = 1000);

struct FixedPointOptions {
    double damping = 0.5;         ///< v <- (1 - d) v + d F(v)
    double rel_tol = 1e-12;       ///< on |F(v) - v| / v
    int max_iter = 500;
    int oscillation_window = 8;   ///< residual sign flips without shrinking before bisection
};

struct IterationRecord {
    double variance = 0.0;
    double tau = 0.0;
    double mapped = 0.0;  ///< F(variance)
};

struct FixedPointResult {
    double variance = 0.0;
    double tau = 0.0;
    double residual = 0.0;  ///< |F(v) - v| / v at the returned v
    int iterations = 0;
    bool used_bisection = false;
    std::vector<IterationRecord> trace;
};

/// Solves v = tv(tau(v)) / tau(v) for an arbitrary horizon map, starting from the
/// front pillar's implied variance. Damped iteration with a bisection fallback on
/// [min pillar variance, max pillar variance], where F maps into that interval.
/// Throws ConvergenceError when neither converges.
[[nodiscard]] FixedPointResult solve_variance_fixed_point(const IVTermStructure& ts,
                                                          const std::function<double(double)>& tau_of_variance,
                                                          const FixedPointOptions& options = {});

struct CalibrationResult {
    double sigma_eff = 0.0;
    double variance = 0.0;
    double tau_bar = 0.0;  ///< years, ATM mean exit time at sigma_eff
    int iterations = 0;
    bool used_bisection = false;
    double residual = 0.0;
    double lipschitz = 0.0;  ///< M
    ci::CIPutSolution solution;
    std::vector<IterationRecord> trace;
    std::optional<double> rmse_bound;  ///< filled by error_bounds
    std::optional<double> mad_bound;
};

/// Fixed point with tau(v) = ATM mean exit time of the CI band at sigma = sqrt(v).
/// Throws AdmissibilityError if q <= rK, DomainError if r <= 0.
[[nodiscard]] CalibrationResult calibrate_sigma_eff(const IVTermStructure& ts, double r, double strike,
                                                    double fee_rate, const FixedPointOptions& options = {});

struct ErrorBounds {
    double lipschitz = 0.0;
    double rmse_bound = 0.0;  ///< M sqrt(Var tau)
    double mad_bound = 0.0;   ///< M E|tau - tau_bar|
    double empirical_rmse = 0.0;
    double empirical_mad = 0.0;
    double estimate = 0.0;          ///< tv(tau_bar) / tau_bar
    double sample_mean_variance = 0.0;  ///< mean of tv(tau)/tau over samples
    double sample_tau_mean = 0.0;
    double sample_tau_sd = 0.0;

    [[nodiscard]] bool holds() const {
        const double slack = 1e-12;
        return empirical_rmse <= rmse_bound * (1.0 + slack) + slack &&
               empirical_mad <= mad_bound * (1.0 + slack) + slack;
    }
};

/// Moments are taken about the model mean tau_bar, so Var(tau) is estimated with a
/// known mean. Throws DomainError if there are no samples.
[[nodiscard]] ErrorBounds error_bounds(const IVTermStructure& ts, double tau_bar, const std::vector<double>& exit_times,
                                       std::size_t grid_points = 1000);
[[nodiscard]] ErrorBounds error_bounds(const IVTermStructure& ts, CalibrationResult& result,
                                       const sim::ExitSamples& samples);

}  // namespace cilvr::calib
