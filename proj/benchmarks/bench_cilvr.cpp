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

#include <cmath>

#include <benchmark/benchmark.h>

#include "cilvr/band_design.hpp"
#include "cilvr/calibration.hpp"
#include "cilvr/ci_option.hpp"
#include "cilvr/horizon.hpp"
#include "cilvr/pathwise_sim.hpp"
#include "cilvr/replication.hpp"

using namespace cilvr;

static void BM_SolveCIPut(benchmark::State& state) {
    double q = 40.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ci::solve_ci_put({0.05, 0.5}, {100.0, q}));
        q = q == 40.0 ? 41.0 : 40.0;
    }
}
BENCHMARK(BM_SolveCIPut);

static void BM_PriceDelta(benchmark::State& state) {
    const auto s = ci::solve_ci_put({0.05, 0.5}, {100.0, 40.0});
    double x = 90.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ci::price(s, x) + ci::delta(s, x));
        x = x < 110.0 ? x + 0.01 : 90.0;
    }
}
BENCHMARK(BM_PriceDelta);

static void BM_ChainedStrip(benchmark::State& state) {
    const auto band = amm::LiquidityBand::normalized(80.0, 125.0);
    const double q = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(replication::build_chained_strip(band, {0.05, 0.5}, q));
    }
}
BENCHMARK(BM_ChainedStrip)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_ErrorSweep(benchmark::State& state) {
    const replication::SweepConfig cfg;
    for (auto _ : state) {
        benchmark::DoNotOptimize(replication::replication_error_sweep(cfg));
    }
}
BENCHMARK(BM_ErrorSweep)->Unit(benchmark::kMillisecond);

static void BM_LedgerTotals(benchmark::State& state) {
    const MarketParams p{0.05, 0.5};
    const auto band = amm::LiquidityBand::normalized(80.0, 125.0);
    const auto strip = replication::build_chained_strip(band, p, 1e4);
    const auto path = sim::simulate_path({p, 100.0, 1e-5, 0.1, 1, 1}, 0);
    const auto position = sim::band_position(band, p);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sim::ledger_totals(position, &strip, path));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(path.steps()));
}
BENCHMARK(BM_LedgerTotals)->Unit(benchmark::kMillisecond);

static void BM_FirstExit(benchmark::State& state) {
    const MarketParams p{0.05, 0.8};
    const auto s = ci::solve_ci_put(p, {100.0, 99.0});
    const double dt = std::pow(std::log(s.upper / s.lower) / 60.0 / p.sigma, 2);
    const sim::GBMConfig cfg{p, 100.0, dt, 1.0, 3, 10000};
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            sim::sample_first_exit(cfg, s.lower, s.upper, sim::ExitMonitoring::BrownianBridge));
    }
}
BENCHMARK(BM_FirstExit)->Unit(benchmark::kMillisecond);

static void BM_SolveQForHorizon(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(horizon::solve_q_for_horizon({0.05, 0.8}, 100.0, 14.0 / 365.0));
    }
}
BENCHMARK(BM_SolveQForHorizon)->Unit(benchmark::kMicrosecond);

static void BM_Calibrate(benchmark::State& state) {
    const calib::IVTermStructure ts({{2.0 / 365, 0.9}, {14.0 / 365, 0.75}, {60.0 / 365, 0.6}, {0.5, 0.55}});
    for (auto _ : state) {
        benchmark::DoNotOptimize(calib::calibrate_sigma_eff(ts, 0.05, 100.0, 80.0));
    }
}
BENCHMARK(BM_Calibrate)->Unit(benchmark::kMicrosecond);

static void BM_DesignTable(benchmark::State& state) {
    const auto spec = design::standard_table_spec();
    for (auto _ : state) {
        benchmark::DoNotOptimize(design::generate_design_table(spec));
    }
}
BENCHMARK(BM_DesignTable)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
