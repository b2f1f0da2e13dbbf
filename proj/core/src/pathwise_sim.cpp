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

#include "cilvr/pathwise_sim.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include <boost/random/seed_seq.hpp>

#include "cilvr/errors.hpp"
#include "cilvr/parallel.hpp"

namespace cilvr::sim {

void GBMConfig::validate() const {
    params.validate();
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ConfigError("dt must be positive");
    }
    if (!(horizon >= dt) || !std::isfinite(horizon)) {
        throw ConfigError("horizon must be at least one step");
    }
    if (n_paths == 0) {
        throw ConfigError("n_paths must be at least 1");
    }
    if (!(spot0 > 0.0) || !std::isfinite(spot0)) {
        throw ConfigError("initial spot must be positive");
    }
}

std::size_t GBMConfig::steps() const {
    return static_cast<std::size_t>(std::llround(horizon / dt));
}

namespace {

boost::random::mt19937_64 seeded_engine(std::uint64_t seed, std::size_t path_index) {
    const auto idx = static_cast<std::uint64_t>(path_index);
    boost::random::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                                static_cast<std::uint32_t>(idx), static_cast<std::uint32_t>(idx >> 32),
                                0x9e3779b9u};
    return boost::random::mt19937_64(seq);
}

}  // namespace

PathRng::PathRng(std::uint64_t seed, std::size_t path_index) : engine_(seeded_engine(seed, path_index)) {}

Path simulate_path(const GBMConfig& cfg, std::size_t path_index) {
    cfg.validate();
    const std::size_t n = cfg.steps();
    const double s = cfg.params.sigma;
    const double drift = (cfg.params.r - 0.5 * s * s) * cfg.dt;
    const double vol = s * std::sqrt(cfg.dt);

    Path path;
    path.params = cfg.params;
    path.dt = cfg.dt;
    path.prices.resize(n + 1);
    PathRng rng(cfg.seed, path_index);
    double log_spot = std::log(cfg.spot0);
    path.prices[0] = cfg.spot0;
    for (std::size_t k = 1; k <= n; ++k) {
        log_spot += drift + vol * rng.normal();
        path.prices[k] = std::exp(log_spot);
    }
    return path;
}

std::vector<Path> simulate_paths(const GBMConfig& cfg) {
    cfg.validate();
    std::vector<Path> paths(cfg.n_paths);
    parallel_for(cfg.n_paths, [&](std::size_t i) { paths[i] = simulate_path(cfg, i); });
    return paths;
}

PositionModel band_position(const amm::LiquidityBand& band, const MarketParams& params) {
    PositionModel model;
    model.value = [band](double s) { return amm::value(band, s); };
    model.delta = [band](double s) { return amm::delta(band, s); };
    model.lvr_rate = [band, params](double s) { return amm::lvr_rate(band, params, s); };
    return model;
}

PathLedger accumulate_lvr(const PositionModel& position, const Path& path) {
    const std::size_t n = path.prices.size();
    PathLedger ledger;
    ledger.t.resize(n);
    ledger.spot = path.prices;
    ledger.value.resize(n);
    ledger.hedge.resize(n);
    ledger.lvr.resize(n);
    ledger.analytic_lvr.resize(n);
    ledger.fee.assign(n, 0.0);
    ledger.active.assign(n, -1);
    if (n == 0) {
        return ledger;
    }

    double hedge = position.value(path.prices[0]);
    double analytic = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double spot = path.prices[k];
        const double v = position.value(spot);
        ledger.t[k] = static_cast<double>(k) * path.dt;
        ledger.value[k] = v;
        ledger.hedge[k] = hedge;
        ledger.lvr[k] = hedge - v;
        ledger.analytic_lvr[k] = analytic;
        if (k + 1 < n) {
            hedge += position.delta(spot) * (path.prices[k + 1] - spot);
            analytic += position.lvr_rate(spot) * path.dt;
        }
    }
    return ledger;
}

PathLedger accumulate_lvr(const amm::LiquidityBand& band, const Path& path) {
    return accumulate_lvr(band_position(band, path.params), path);
}

FundingSeries accumulate_funding(const replication::ChainedStrip& strip, const Path& path) {
    const std::size_t n = path.prices.size();
    FundingSeries out;
    out.fee.assign(n, 0.0);
    out.active.assign(n, -1);
    const double q = strip.legs.fee_rate;
    double fee = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const long j = strip.activated(path.prices[k]);
        out.active[k] = j;
        out.fee[k] = fee;
        if (j >= 0) {
            fee += std::abs(strip.legs.weights[static_cast<std::size_t>(j)]) * q * path.dt;
        }
    }
    return out;
}

PathLedger run_ledger(const amm::LiquidityBand& band, const replication::ChainedStrip& strip, const Path& path) {
    PathLedger ledger = accumulate_lvr(band, path);
    auto funding = accumulate_funding(strip, path);
    ledger.fee = std::move(funding.fee);
    ledger.active = std::move(funding.active);
    return ledger;
}

LedgerTotals ledger_totals(const PositionModel& position, const replication::ChainedStrip* strip,
                           const Path& path) {
    LedgerTotals totals;
    const std::size_t n = path.prices.size();
    if (n == 0) {
        return totals;
    }
    const double q = strip != nullptr ? strip->legs.fee_rate : 0.0;
    double hedge = position.value(path.prices[0]);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double spot = path.prices[k];
        hedge += position.delta(spot) * (path.prices[k + 1] - spot);
        const double rate = position.lvr_rate(spot);
        totals.analytic_lvr += rate * path.dt;
        if (rate > 0.0) {
            totals.time_in_band += path.dt;
        }
        if (strip != nullptr) {
            const long j = strip->activated(spot);
            if (j >= 0) {
                totals.fee += std::abs(strip->legs.weights[static_cast<std::size_t>(j)]) * q * path.dt;
            }
        }
    }
    totals.lvr = hedge - position.value(path.prices[n - 1]);
    return totals;
}

double ExitSamples::standard_error() const {
    if (times.size() < 2) {
        return std::numeric_limits<double>::infinity();
    }
    return std::sqrt(variance / static_cast<double>(times.size()));
}

void summarize(ExitSamples& samples) {
    const auto n = samples.times.size();
    if (n == 0) {
        samples.mean = samples.variance = samples.mad = 0.0;
        return;
    }
    CompensatedSum sum;
    for (double t : samples.times) {
        sum.add(t);
    }
    const double mean = sum.value() / static_cast<double>(n);
    CompensatedSum sq;
    CompensatedSum abs_dev;
    for (double t : samples.times) {
        sq.add((t - mean) * (t - mean));
        abs_dev.add(std::abs(t - mean));
    }
    samples.mean = mean;
    samples.variance = n > 1 ? sq.value() / static_cast<double>(n - 1) : 0.0;
    samples.mad = abs_dev.value() / static_cast<double>(n);
}

namespace {

// exit time in years, or nullopt if the path survives to the horizon
std::optional<double> first_exit(const GBMConfig& cfg, std::size_t path_index, double log_lower,
                                 double log_upper, ExitMonitoring monitoring) {
    const std::size_t n = cfg.steps();
    const double s = cfg.params.sigma;
    const double drift = (cfg.params.r - 0.5 * s * s) * cfg.dt;
    const double vol = s * std::sqrt(cfg.dt);
    const double bridge_scale = -2.0 / (vol * vol);
    const bool bridge = monitoring == ExitMonitoring::BrownianBridge;
    // beyond ~6 step standard deviations the bridge crossing probability is < 1e-30
    const double near = 6.0 * vol;

    PathRng rng(cfg.seed, path_index);
    double y = std::log(cfg.spot0);
    for (std::size_t k = 0; k < n; ++k) {
        const double next = y + drift + vol * rng.normal();
        const double t0 = static_cast<double>(k) * cfg.dt;
        if (next <= log_lower || next >= log_upper) {
            return bridge ? t0 + 0.5 * cfg.dt : t0 + cfg.dt;
        }
        if (bridge) {
            double p = 0.0;
            if (y - log_lower < near || next - log_lower < near) {
                p += std::exp(bridge_scale * (y - log_lower) * (next - log_lower));
            }
            if (log_upper - y < near || log_upper - next < near) {
                p += std::exp(bridge_scale * (log_upper - y) * (log_upper - next));
            }
            if (p > 0.0 && rng.uniform() < p) {
                return t0 + 0.5 * cfg.dt;
            }
        }
        y = next;
    }
    return std::nullopt;
}

}  // namespace

ExitSamples sample_first_exit(const GBMConfig& cfg, double lower, double upper, ExitMonitoring monitoring) {
    cfg.validate();
    if (!(lower > 0.0) || !(upper > lower)) {
        throw DomainError("exit band requires 0 < lower < upper");
    }

    ExitSamples out;
    out.n_paths = cfg.n_paths;
    if (cfg.spot0 <= lower || cfg.spot0 >= upper) {
        out.times.assign(cfg.n_paths, 0.0);
        summarize(out);
        return out;
    }

    const double log_lower = std::log(lower);
    const double log_upper = std::log(upper);
    std::vector<std::optional<double>> raw(cfg.n_paths);
    parallel_for(cfg.n_paths,
                 [&](std::size_t i) { raw[i] = first_exit(cfg, i, log_lower, log_upper, monitoring); });

    out.times.reserve(cfg.n_paths);
    for (const auto& t : raw) {
        if (t) {
            out.times.push_back(*t);
        } else {
            ++out.censored;
        }
    }
    if (out.times.empty()) {
        throw HorizonError("no path left the band before the horizon");
    }
    summarize(out);
    return out;
}

}  // namespace cilvr::sim
