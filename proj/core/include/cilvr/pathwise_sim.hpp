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
#include <cstdint>
#include <functional>
#include <vector>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_01.hpp>

#include "cilvr/amm_position.hpp"
#include "cilvr/market.hpp"
#include "cilvr/replication.hpp"

// GBM path engine. Simulation uses the pricing-measure drift r throughout.
//
// Every path draws from its own generator seeded from (seed, path index), so a
// path is the same whether it is produced alone, in a batch, or on any thread.
namespace cilvr::sim {

struct GBMConfig {
    MarketParams params;
    double spot0 = 100.0;
    double dt = 1e-5;     ///< years
    double horizon = 1.0; ///< years
    std::uint64_t seed = 0;
    std::size_t n_paths = 1;

    /// Throws ConfigError on dt <= 0, horizon < dt, n_paths == 0, spot0 <= 0;
    /// DomainError on invalid params.
    void validate() const;
    /// round(horizon / dt)
    [[nodiscard]] std::size_t steps() const;
};

/// Independent normal/uniform stream for one path.
class PathRng {
public:
    PathRng(std::uint64_t seed, std::size_t path_index);

    double normal() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }

private:
    boost::random::mt19937_64 engine_;
    boost::random::normal_distribution<double> normal_;
    boost::random::uniform_01<double> uniform_;
};

struct Path {
    MarketParams params;
    double dt = 0.0;
    std::vector<double> prices;  ///< S_0 .. S_n

    [[nodiscard]] std::size_t steps() const { return prices.empty() ? 0 : prices.size() - 1; }
};

/// Exact log-normal steps S_{t+dt} = S_t exp((r - sigma^2/2) dt + sigma sqrt(dt) Z).
[[nodiscard]] Path simulate_path(const GBMConfig& cfg, std::size_t path_index);
[[nodiscard]] std::vector<Path> simulate_paths(const GBMConfig& cfg);

/// Value, delta and positive-cost LVR rate of an LP position.
struct PositionModel {
    std::function<double(double)> value;
    std::function<double(double)> delta;
    std::function<double(double)> lvr_rate;
};

[[nodiscard]] PositionModel band_position(const amm::LiquidityBand& band, const MarketParams& params);

/// Per-step record. lvr = W - V: the hedge minus the position, a positive cost.
struct PathLedger {
    std::vector<double> t;
    std::vector<double> spot;
    std::vector<double> value;
    std::vector<double> hedge;
    std::vector<double> lvr;
    std::vector<double> analytic_lvr;  ///< left-point sum of lvr_rate * dt
    std::vector<double> fee;           ///< zero unless a strip was supplied
    std::vector<long> active;          ///< activated strike, -1 outside the band or without a strip
};

/// Self-financing hedge W_{k+1} = W_k + X(S_k)(S_{k+1} - S_k), W_0 = V(S_0).
[[nodiscard]] PathLedger accumulate_lvr(const PositionModel& position, const Path& path);
[[nodiscard]] PathLedger accumulate_lvr(const amm::LiquidityBand& band, const Path& path);

struct FundingSeries {
    std::vector<double> fee;   ///< cumulative, fee[0] == 0
    std::vector<long> active;  ///< activated strike at each step, -1 outside [a, b]
};

/// Accrues |w_j| q dt for the strike activated at the left end of each step.
[[nodiscard]] FundingSeries accumulate_funding(const replication::ChainedStrip& strip, const Path& path);

/// accumulate_lvr plus the strip's funding series in one ledger.
[[nodiscard]] PathLedger run_ledger(const amm::LiquidityBand& band, const replication::ChainedStrip& strip,
                                    const Path& path);

struct LedgerTotals {
    double lvr = 0.0;
    double analytic_lvr = 0.0;
    double fee = 0.0;
    double time_in_band = 0.0;
};

/// Terminal values only; no per-step storage. strip may be null.
[[nodiscard]] LedgerTotals ledger_totals(const PositionModel& position, const replication::ChainedStrip* strip,
                                         const Path& path);

enum class ExitMonitoring {
    Discrete,        ///< check the band at step ends only; O(sqrt(dt)) upward bias
    BrownianBridge,  ///< also test each step's bridge for an intra-step crossing
};

struct ExitSamples {
    std::vector<double> times;  ///< exited paths only, in path order
    std::size_t n_paths = 0;
    std::size_t censored = 0;   ///< paths still inside the band at the horizon
    double mean = 0.0;
    double variance = 0.0;      ///< unbiased sample variance
    double mad = 0.0;           ///< mean |tau - mean|

    [[nodiscard]] double censored_fraction() const {
        return n_paths == 0 ? 0.0 : static_cast<double>(censored) / static_cast<double>(n_paths);
    }
    [[nodiscard]] double standard_error() const;
};

/// First-exit times from (lower, upper) starting at cfg.spot0. A start on or outside
/// the band exits at time 0. In bridge mode an exit is timestamped mid-step; in
/// discrete mode at the end of the step where it is observed. Censored paths are
/// excluded from the statistics; throws HorizonError if every path is censored.
[[nodiscard]] ExitSamples sample_first_exit(const GBMConfig& cfg, double lower, double upper,
                                            ExitMonitoring monitoring = ExitMonitoring::Discrete);

/// Mean, unbiased variance and MAD of a sample, reduced in index order.
void summarize(ExitSamples& samples);

}  // namespace cilvr::sim
