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

#include "cilvr/ci_option.hpp"
#include "cilvr/market.hpp"

// Mean first-exit time of a GBM from a price band. In log space Y = ln S is an
// arithmetic Brownian motion with drift a = r - sigma^2/2; the mean exit time m(y)
// solves sigma^2/2 m'' + a m' = -1 with m = 0 on both barriers.
namespace cilvr::horizon {

struct HorizonInputs {
    MarketParams params;
    double spot0 = 0.0;
    double lower = 0.0;
    double upper = 0.0;

    /// a = r - sigma^2 / 2
    [[nodiscard]] double drift() const { return params.r - 0.5 * params.sigma * params.sigma; }
    /// kappa = -2a / sigma^2
    [[nodiscard]] double kappa() const { return -2.0 * drift() / (params.sigma * params.sigma); }
};

/// |a| below this multiple of sigma^2 uses the zero-drift expansion.
inline constexpr double kDriftSwitch = 1e-8;

/// Years. Zero when spot0 sits on either barrier. Throws DomainError unless
/// 0 < lower < upper and lower <= spot0 <= upper.
[[nodiscard]] double mean_exit_time(const HorizonInputs& inputs);

/// Mean exit time from the continuation band of a CI put, starting at spot0.
[[nodiscard]] double mean_exit_time(const ci::CIPutSolution& sol, double spot0);

struct HorizonFit {
    double fee_rate = 0.0;
    double tau = 0.0;
    ci::CIPutSolution solution;
    int iterations = 0;
};

struct InversionOptions {
    double q_max_multiple = 1e9;  ///< upper search bound as a multiple of K
    double rel_tol = 1e-10;       ///< on tau
    int max_iter = 200;
};

/// Fee rate q whose CI band, started at the money (S0 = K), has mean exit time
/// target_tau. tau(q) is strictly decreasing, so the root is unique.
/// Throws NoSolutionError if target_tau is not reachable for q in
/// (rK(1 + 1e-9), q_max); ConvergenceError on hitting the iteration cap.
[[nodiscard]] HorizonFit solve_q_for_horizon(const MarketParams& params, double strike, double target_tau,
                                             const InversionOptions& options = {});

}  // namespace cilvr::horizon
