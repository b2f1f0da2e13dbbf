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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cilvr/amm_position.hpp"
#include "cilvr/band_design.hpp"
#include "cilvr/calibration.hpp"
#include "cilvr/ci_option.hpp"
#include "cilvr/errors.hpp"
#include "cilvr/horizon.hpp"
#include "cilvr/io.hpp"
#include "cilvr/parallel.hpp"
#include "cilvr/pathwise_sim.hpp"
#include "cilvr/replication.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using cilvr::io::format_double;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitConvergence = 3;

// Everything a subcommand produces. Nothing touches the disk until the whole run
// has succeeded.
struct RunOutput {
    std::vector<std::pair<std::string, std::string>> files;
    std::string stdout_text;
    json manifest_extra = json::object();
};

struct Common {
    std::string out_dir = ".";
    std::uint64_t seed = 42;
};

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json solution_json(const cilvr::ci::CIPutSolution& s) {
    return json{{"r", s.params.r},         {"sigma", s.params.sigma}, {"K", s.strike},
                {"q", s.fee_rate},         {"alpha", s.alpha},        {"beta", number(s.beta)},
                {"log_beta", s.log_beta},  {"gamma", s.gamma},        {"S_lower", s.lower},
                {"S_upper", s.upper},      {"width", s.width()}};
}

// -- price ------------------------------------------------------------------

struct PriceArgs {
    double r = 0, sigma = 0, strike = 0;
    std::vector<double> q;
    double s_min = 0, s_max = 0;
    std::size_t points = 501;
};

RunOutput run_price(const PriceArgs& a) {
    std::vector<cilvr::ci::CIPutSolution> sols;
    for (double q : a.q) {
        sols.push_back(cilvr::ci::solve_ci_put({a.r, a.sigma}, {a.strike, q}));
    }
    double lo = a.s_min;
    double hi = a.s_max;
    if (lo <= 0.0) {
        lo = 0.5 * std::min_element(sols.begin(), sols.end(), [](auto& x, auto& y) { return x.lower < y.lower; })->lower;
    }
    if (hi <= 0.0) {
        hi = 1.2 * std::max_element(sols.begin(), sols.end(), [](auto& x, auto& y) { return x.upper < y.upper; })->upper;
    }
    if (!(hi > lo) || a.points < 2) {
        throw cilvr::ConfigError("price grid needs s_max > s_min and at least 2 points");
    }
    std::string csv = cilvr::io::csv_record({"q", "S", "price", "delta"});
    json coeffs = json::array();
    for (const auto& s : sols) {
        for (std::size_t i = 0; i < a.points; ++i) {
            const double spot = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(a.points - 1);
            csv += cilvr::io::csv_record(std::vector<std::string>{format_double(s.fee_rate), format_double(spot),
                                                                  format_double(cilvr::ci::price(s, spot)),
                                                                  format_double(cilvr::ci::delta(s, spot))});
        }
        coeffs.push_back(solution_json(s));
    }
    RunOutput out;
    out.files.emplace_back("price.csv", csv);
    out.stdout_text = coeffs.dump(2) + "\n";
    return out;
}

// -- strip ------------------------------------------------------------------

struct StripArgs {
    double r = 0.01, sigma = 0.25, a = 80, b = 125, q = 0, dk = 0;
    std::size_t grid = 2000;
};

RunOutput run_strip(const StripArgs& s) {
    const cilvr::MarketParams params{s.r, s.sigma};
    const auto band = cilvr::amm::LiquidityBand::normalized(s.a, s.b);
    cilvr::replication::StrikeStrip legs;
    json summary;
    if (s.dk > 0.0) {
        legs = cilvr::replication::build_uniform_strip(band, params, s.q, s.dk);
        summary["construction"] = "uniform";
        summary["dK"] = s.dk;
    } else {
        const auto chain = cilvr::replication::build_chained_strip(band, params, s.q);
        legs = chain.legs;
        summary["construction"] = "chained";
        summary["overshoot"] = chain.overshoot;
    }
    const auto err = cilvr::replication::replication_error(band, legs, s.grid);
    summary["q"] = s.q;
    summary["strikes"] = legs.size();
    summary["weight_sum"] = legs.weight_sum();
    summary["max_abs_err"] = err.max_abs;
    summary["rmse"] = err.rmse;

    std::string strip_csv = cilvr::io::csv_record({"j", "K", "weight", "S_lower", "S_upper"});
    for (std::size_t j = 0; j < legs.size(); ++j) {
        strip_csv += cilvr::io::csv_record(std::vector<std::string>{
            std::to_string(j), format_double(legs.strikes[j]), format_double(legs.weights[j]),
            format_double(legs.solutions[j].lower), format_double(legs.solutions[j].upper)});
    }
    std::string delta_csv = cilvr::io::csv_record({"S", "band_delta", "strip_delta", "abs_err"});
    for (std::size_t i = 0; i < s.grid; ++i) {
        const double spot =
            (i + 1 == s.grid) ? s.b : s.a + (s.b - s.a) * static_cast<double>(i) / static_cast<double>(s.grid - 1);
        const double x = cilvr::amm::delta(band, spot);
        const double y = cilvr::replication::strip_delta(legs, spot);
        delta_csv += cilvr::io::csv_record(std::vector<std::string>{format_double(spot), format_double(x),
                                                                    format_double(y), format_double(std::abs(x - y))});
    }
    RunOutput out;
    out.files.emplace_back("strip.csv", strip_csv);
    out.files.emplace_back("strip_delta.csv", delta_csv);
    out.files.emplace_back("strip_summary.json", summary.dump(2) + "\n");
    out.stdout_text = summary.dump(2) + "\n";
    return out;
}

// -- sweep ------------------------------------------------------------------

struct SweepArgs {
    cilvr::replication::SweepConfig cfg;
    double a = 80, b = 125;
};

RunOutput run_sweep(SweepArgs s) {
    s.cfg.band = cilvr::amm::LiquidityBand::normalized(s.a, s.b);
    const auto cells = cilvr::replication::replication_error_sweep(s.cfg);
    std::string csv = cilvr::io::csv_record({"q", "dK", "max_abs_err", "rmse"});
    double worst = 0.0;
    for (const auto& c : cells) {
        csv += cilvr::io::csv_record(std::vector<std::string>{format_double(c.fee_rate), format_double(c.strike_spacing),
                                                              format_double(c.error.max_abs),
                                                              format_double(c.error.rmse)});
        worst = std::max(worst, c.error.max_abs);
    }
    const auto outside = [](const std::vector<double>& xs, double lo, double hi) {
        return std::any_of(xs.begin(), xs.end(), [&](double x) { return x < lo || x > hi; });
    };
    RunOutput out;
    out.files.emplace_back("sweep.csv", csv);
    out.manifest_extra["out_of_reference_range"] = outside(s.cfg.fee_rates, 8.0, 4000.0) ||
                                               outside(s.cfg.strike_spacings, 0.25, 4.0) || s.a != 80.0 ||
                                               s.b != 125.0;
    out.stdout_text = json{{"cells", cells.size()}, {"max_abs_err", worst}}.dump() + "\n";
    return out;
}

// -- simulate ---------------------------------------------------------------

struct SimulateArgs {
    double r = 0.05, sigma = 0.5, a = 80, b = 125, q = 1e4, spot0 = 100, dt = 1e-5, horizon = 0.1;
    std::size_t paths = 1;
    std::size_t ledger_path = 0;
};

RunOutput run_simulate(const SimulateArgs& s, std::uint64_t seed) {
    if (s.ledger_path >= s.paths) {
        throw cilvr::ConfigError("--ledger-path must index one of the simulated paths");
    }
    const cilvr::MarketParams params{s.r, s.sigma};
    const auto band = cilvr::amm::LiquidityBand::normalized(s.a, s.b);
    const auto strip = cilvr::replication::build_chained_strip(band, params, s.q);
    cilvr::sim::GBMConfig cfg{params, s.spot0, s.dt, s.horizon, seed, s.paths};
    cfg.validate();

    const auto position = cilvr::sim::band_position(band, params);
    std::vector<cilvr::sim::LedgerTotals> totals(s.paths);
    cilvr::parallel_for(s.paths, [&](std::size_t i) {
        totals[i] = cilvr::sim::ledger_totals(position, &strip, cilvr::sim::simulate_path(cfg, i));
    });

    const auto ledger = cilvr::sim::run_ledger(band, strip, cilvr::sim::simulate_path(cfg, s.ledger_path));
    std::string csv = cilvr::io::csv_record({"t", "S", "V", "W", "LVR", "Fee", "j"});
    for (std::size_t k = 0; k < ledger.t.size(); ++k) {
        csv += cilvr::io::csv_record(std::vector<std::string>{
            format_double(ledger.t[k]), format_double(ledger.spot[k]), format_double(ledger.value[k]),
            format_double(ledger.hedge[k]), format_double(ledger.lvr[k]), format_double(ledger.fee[k]),
            std::to_string(ledger.active[k])});
    }

    std::string totals_csv = cilvr::io::csv_record({"path", "LVR", "LVR_analytic", "Fee", "time_in_band"});
    cilvr::CompensatedSum gap_sum, lvr_sum, fee_sum;
    std::size_t gap_count = 0;
    for (std::size_t i = 0; i < totals.size(); ++i) {
        const auto& t = totals[i];
        totals_csv += cilvr::io::csv_record(std::vector<std::string>{std::to_string(i), format_double(t.lvr),
                                                                     format_double(t.analytic_lvr),
                                                                     format_double(t.fee),
                                                                     format_double(t.time_in_band)});
        lvr_sum.add(t.lvr);
        fee_sum.add(t.fee);
        if (t.analytic_lvr > 0.0) {
            gap_sum.add(std::abs(t.fee - t.lvr));
            ++gap_count;
        }
    }
    const double n = static_cast<double>(totals.size());
    json summary{{"q", s.q},
                 {"strikes", strip.size()},
                 {"paths", s.paths},
                 {"steps", cfg.steps()},
                 {"mean_LVR", lvr_sum.value() / n},
                 {"mean_Fee", fee_sum.value() / n},
                 {"paths_in_band", gap_count},
                 {"relative_gap", lvr_sum.value() != 0.0 && gap_count > 0
                                      ? json(gap_sum.value() / std::abs(lvr_sum.value()))
                                      : json(nullptr)}};
    RunOutput out;
    out.files.emplace_back("ledger.csv", csv);
    out.files.emplace_back("totals.csv", totals_csv);
    out.files.emplace_back("simulate_summary.json", summary.dump(2) + "\n");
    out.stdout_text = summary.dump(2) + "\n";
    return out;
}

// -- exit -------------------------------------------------------------------

struct ExitArgs {
    double r = 0, sigma = 0, strike = 0, q = 0;
    double spot0 = 0;    ///< 0 means at the money
    double dt = 0;       ///< 0 means sigma sqrt(dt) = log-width / 60
    double horizon = 0;  ///< 0 means 20 model mean exit times
    std::size_t paths = 10000;
    std::size_t bins = 50;
    std::string monitor = "bridge";
};

// sigma sqrt(dt) at this fraction of the log band width keeps the bridge
// correction small while the walk stays cheap
constexpr double kStepsAcrossBand = 60.0;

RunOutput run_exit(const ExitArgs& e, std::uint64_t seed) {
    const cilvr::MarketParams params{e.r, e.sigma};
    const auto sol = cilvr::ci::solve_ci_put(params, {e.strike, e.q});
    const double spot0 = e.spot0 > 0.0 ? e.spot0 : e.strike;
    const double tau_bar = cilvr::horizon::mean_exit_time(sol, spot0);
    const double log_width = std::log(sol.upper / sol.lower);
    const double dt = e.dt > 0.0 ? e.dt : std::pow(log_width / kStepsAcrossBand / e.sigma, 2);
    const double horizon = e.horizon > 0.0 ? e.horizon : std::max(20.0 * tau_bar, dt);
    if (e.bins == 0) {
        throw cilvr::ConfigError("--bins must be positive");
    }
    cilvr::sim::ExitMonitoring monitoring{};
    if (e.monitor == "bridge") {
        monitoring = cilvr::sim::ExitMonitoring::BrownianBridge;
    } else if (e.monitor == "discrete") {
        monitoring = cilvr::sim::ExitMonitoring::Discrete;
    } else {
        throw cilvr::ConfigError("--monitor must be bridge or discrete");
    }

    cilvr::sim::GBMConfig cfg{params, spot0, dt, horizon, seed, e.paths};
    const auto samples = cilvr::sim::sample_first_exit(cfg, sol.lower, sol.upper, monitoring);

    std::string times_csv = cilvr::io::csv_record({"tau_years"});
    for (double t : samples.times) {
        times_csv += cilvr::io::csv_record(std::vector<std::string>{format_double(t)});
    }
    const double t_max = *std::max_element(samples.times.begin(), samples.times.end());
    const double width = t_max > 0.0 ? t_max / static_cast<double>(e.bins) : 1.0;
    std::vector<std::size_t> counts(e.bins, 0);
    for (double t : samples.times) {
        counts[std::min(e.bins - 1, static_cast<std::size_t>(t / width))]++;
    }
    std::string hist_csv = cilvr::io::csv_record({"bin_lo", "bin_hi", "count", "density"});
    const double total = static_cast<double>(samples.times.size());
    for (std::size_t i = 0; i < e.bins; ++i) {
        hist_csv += cilvr::io::csv_record(std::vector<std::string>{
            format_double(width * static_cast<double>(i)), format_double(width * static_cast<double>(i + 1)),
            std::to_string(counts[i]), format_double(static_cast<double>(counts[i]) / (total * width))});
    }
    const double se = samples.standard_error();
    json summary{{"band", {sol.lower, sol.upper}},
                 {"S0", spot0},
                 {"dt", dt},
                 {"horizon", horizon},
                 {"monitor", e.monitor},
                 {"paths", samples.n_paths},
                 {"censored", samples.censored},
                 {"tau_model_years", tau_bar},
                 {"tau_model_months", 12.0 * tau_bar},
                 {"tau_mc_years", samples.mean},
                 {"tau_mc_months", 12.0 * samples.mean},
                 {"tau_mc_sd_years", std::sqrt(samples.variance)},
                 {"tau_mc_mad_years", samples.mad},
                 {"standard_error_years", number(se)},
                 {"z_score", number((samples.mean - tau_bar) / se)}};
    RunOutput out;
    out.files.emplace_back("exit_times.csv", times_csv);
    out.files.emplace_back("exit_histogram.csv", hist_csv);
    out.files.emplace_back("exit_summary.json", summary.dump(2) + "\n");
    out.stdout_text = summary.dump(2) + "\n";
    return out;
}

// -- calibrate --------------------------------------------------------------

struct CalibrateArgs {
    std::string iv_path;
    double r = 0, strike = 0, q = 0;
    std::size_t paths = 2000;
};

RunOutput run_calibrate(const CalibrateArgs& c, std::uint64_t seed, json& inputs) {
    const auto ts = cilvr::io::read_term_structure(c.iv_path);
    inputs.push_back(fs::path(c.iv_path).filename().string());
    auto result = cilvr::calib::calibrate_sigma_eff(ts, c.r, c.strike, c.q);

    json doc{{"sigma_eff", result.sigma_eff},
             {"variance", result.variance},
             {"tau_bar_years", result.tau_bar},
             {"iterations", result.iterations},
             {"used_bisection", result.used_bisection},
             {"residual", result.residual},
             {"lipschitz", result.lipschitz},
             {"band", {result.solution.lower, result.solution.upper}},
             {"warnings", ts.calendar_arbitrage_warnings()}};
    if (c.paths > 0) {
        const auto& sol = result.solution;
        const double dt = std::pow(std::log(sol.upper / sol.lower) / kStepsAcrossBand / result.sigma_eff, 2);
        cilvr::sim::GBMConfig cfg{{c.r, result.sigma_eff}, c.strike, dt, std::max(20.0 * result.tau_bar, dt), seed,
                                  c.paths};
        const auto samples = cilvr::sim::sample_first_exit(cfg, sol.lower, sol.upper,
                                                           cilvr::sim::ExitMonitoring::BrownianBridge);
        const auto b = cilvr::calib::error_bounds(ts, result, samples);
        doc["bounds"] = json{{"paths", c.paths},
                             {"censored", samples.censored},
                             {"rmse_bound", b.rmse_bound},
                             {"mad_bound", b.mad_bound},
                             {"empirical_rmse", b.empirical_rmse},
                             {"empirical_mad", b.empirical_mad},
                             {"sample_mean_variance", b.sample_mean_variance},
                             {"holds", b.holds()}};
    }
    std::string trace = cilvr::io::csv_record({"iteration", "variance", "tau_years", "mapped_variance"});
    for (std::size_t i = 0; i < result.trace.size(); ++i) {
        const auto& t = result.trace[i];
        trace += cilvr::io::csv_record(std::vector<std::string>{std::to_string(i + 1), format_double(t.variance),
                                                                format_double(t.tau), format_double(t.mapped)});
    }
    RunOutput out;
    out.files.emplace_back("calibration.json", doc.dump(2) + "\n");
    out.files.emplace_back("calibration_trace.csv", trace);
    out.stdout_text = doc.dump(2) + "\n";
    return out;
}

// -- design -----------------------------------------------------------------

struct DesignArgs {
    double r = 0.05, strike = 100;
    std::vector<double> sigmas;
    std::vector<double> horizon_days;
};

RunOutput run_design(const DesignArgs& d) {
    auto spec = cilvr::design::standard_table_spec();
    spec.r = d.r;
    spec.strike = d.strike;
    if (!d.sigmas.empty()) {
        spec.sigmas = d.sigmas;
    }
    if (!d.horizon_days.empty()) {
        spec.horizons.clear();
        for (double days : d.horizon_days) {
            spec.horizons.push_back({format_double(days) + " d", days / 365.0});
        }
    }
    const auto rows = cilvr::design::generate_design_table(spec);
    RunOutput out;
    out.files.emplace_back("table1.csv", cilvr::design::design_table_csv(rows));
    const auto text = cilvr::design::design_table_text(rows, d.r);
    out.files.emplace_back("table1.txt", text);
    out.files.emplace_back("residual_share.csv", cilvr::design::residual_share_csv(rows));
    out.stdout_text = text;
    return out;
}

// ---------------------------------------------------------------------------

void commit(const Common& common, const std::string& subcommand, const json& args, const json& inputs,
            RunOutput& out) {
    const fs::path dir(common.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw cilvr::ConfigError("cannot create output directory " + dir.string());
    }
    json manifest{{"tool", "cilvr"},
                  {"version", std::string(cilvr::io::version())},
                  {"subcommand", subcommand},
                  {"seed", common.seed},
                  {"args", args},
                  {"inputs", inputs}};
    for (auto& [k, v] : out.manifest_extra.items()) {
        manifest[k] = v;
    }
    json outputs = json::array();
    for (const auto& [name, content] : out.files) {
        cilvr::io::write_file_atomic(dir / name, content);
        outputs.push_back(name);
    }
    manifest["outputs"] = outputs;
    cilvr::io::write_file_atomic(dir / "manifest.json", manifest.dump(2) + "\n");
    std::cout << out.stdout_text;
}

json vec_json(const std::vector<double>& xs) { return json(xs); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Perpetual CI options and concentrated-liquidity LVR replication"};
    app.set_version_flag("--version", std::string(cilvr::io::version()));
    app.require_subcommand(1);

    Common common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", common.out_dir, "Output directory")->capture_default_str();
        sub->add_option("--seed", common.seed, "RNG seed")->capture_default_str();
    };

    PriceArgs price;
    auto* price_cmd = app.add_subcommand("price", "CI put price and delta curves");
    price_cmd->add_option("--r", price.r, "Risk-free rate")->required();
    price_cmd->add_option("--sigma", price.sigma, "Volatility")->required();
    price_cmd->add_option("--K", price.strike, "Strike")->required();
    price_cmd->add_option("--q", price.q, "Fee rate per year (repeatable)")->required()->take_all();
    price_cmd->add_option("--s-min", price.s_min, "Grid start (default half the lowest S_lower)");
    price_cmd->add_option("--s-max", price.s_max, "Grid end (default 1.2x the highest S_upper)");
    price_cmd->add_option("--points", price.points, "Grid points")->capture_default_str();
    add_common(price_cmd);

    StripArgs strip;
    auto* strip_cmd = app.add_subcommand("strip", "Strike strip replicating a liquidity band");
    strip_cmd->add_option("--r", strip.r)->capture_default_str();
    strip_cmd->add_option("--sigma", strip.sigma)->capture_default_str();
    strip_cmd->add_option("--a", strip.a, "Band lower price")->capture_default_str();
    strip_cmd->add_option("--b", strip.b, "Band upper price")->capture_default_str();
    strip_cmd->add_option("--q", strip.q, "Fee rate")->required();
    strip_cmd->add_option("--dK", strip.dk, "Uniform strike spacing; omit for the chained strip");
    strip_cmd->add_option("--N", strip.grid, "Error grid size")->capture_default_str();
    add_common(strip_cmd);

    SweepArgs sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "Replication error over fee rates and strike spacings");
    sweep_cmd->add_option("--r", sweep.cfg.params.r)->capture_default_str();
    sweep_cmd->add_option("--sigma", sweep.cfg.params.sigma)->capture_default_str();
    sweep_cmd->add_option("--a", sweep.a)->capture_default_str();
    sweep_cmd->add_option("--b", sweep.b)->capture_default_str();
    sweep_cmd->add_option("--q", sweep.cfg.fee_rates, "Fee rates")->take_all();
    sweep_cmd->add_option("--dK", sweep.cfg.strike_spacings, "Strike spacings")->take_all();
    sweep_cmd->add_option("--N", sweep.cfg.grid_size, "Error grid size")->capture_default_str();
    add_common(sweep_cmd);

    SimulateArgs simulate;
    auto* sim_cmd = app.add_subcommand("simulate", "Pathwise LVR against chained-strip funding");
    sim_cmd->add_option("--r", simulate.r)->capture_default_str();
    sim_cmd->add_option("--sigma", simulate.sigma)->capture_default_str();
    sim_cmd->add_option("--a", simulate.a)->capture_default_str();
    sim_cmd->add_option("--b", simulate.b)->capture_default_str();
    sim_cmd->add_option("--q", simulate.q)->capture_default_str();
    sim_cmd->add_option("--S0", simulate.spot0)->capture_default_str();
    sim_cmd->add_option("--dt", simulate.dt, "Step in years")->capture_default_str();
    sim_cmd->add_option("--T", simulate.horizon, "Horizon in years")->capture_default_str();
    sim_cmd->add_option("--paths", simulate.paths)->capture_default_str();
    sim_cmd->add_option("--ledger-path", simulate.ledger_path, "Path whose ledger is written")->capture_default_str();
    add_common(sim_cmd);

    ExitArgs exit_args;
    auto* exit_cmd = app.add_subcommand("exit", "Monte Carlo first-exit times from the continuation band");
    exit_cmd->add_option("--r", exit_args.r)->required();
    exit_cmd->add_option("--sigma", exit_args.sigma)->required();
    exit_cmd->add_option("--K", exit_args.strike)->required();
    exit_cmd->add_option("--q", exit_args.q)->required();
    exit_cmd->add_option("--S0", exit_args.spot0, "Start price (default K)");
    exit_cmd->add_option("--dt", exit_args.dt, "Step in years (default from band width)");
    exit_cmd->add_option("--T", exit_args.horizon, "Horizon in years (default 20 mean exit times)");
    exit_cmd->add_option("--paths", exit_args.paths)->capture_default_str();
    exit_cmd->add_option("--bins", exit_args.bins)->capture_default_str();
    exit_cmd->add_option("--monitor", exit_args.monitor, "bridge or discrete")->capture_default_str();
    add_common(exit_cmd);

    CalibrateArgs calibrate;
    auto* cal_cmd = app.add_subcommand("calibrate", "Effective volatility from an ATM IV term structure");
    cal_cmd->add_option("--iv", calibrate.iv_path, "CSV (tenor_days,iv) or JSON term structure")
        ->required()
        ->check(CLI::ExistingFile);
    cal_cmd->add_option("--r", calibrate.r)->required();
    cal_cmd->add_option("--K", calibrate.strike)->required();
    cal_cmd->add_option("--q", calibrate.q)->required();
    cal_cmd->add_option("--paths", calibrate.paths, "Exit samples for the error bounds (0 skips)")
        ->capture_default_str();
    add_common(cal_cmd);

    DesignArgs design;
    auto* design_cmd = app.add_subcommand("design", "Band design table");
    design_cmd->add_option("--r", design.r)->capture_default_str();
    design_cmd->add_option("--K", design.strike)->capture_default_str();
    design_cmd->add_option("--sigma", design.sigmas, "Effective volatilities (default 0.6 0.8 1.0)")->take_all();
    design_cmd->add_option("--horizon-days", design.horizon_days, "Mean exit times in days")->take_all();
    add_common(design_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    try {
        json inputs = json::array();
        RunOutput out;
        json args;
        std::string name;
        if (*price_cmd) {
            name = "price";
            args = {{"r", price.r}, {"sigma", price.sigma}, {"K", price.strike}, {"q", vec_json(price.q)},
                    {"s_min", price.s_min}, {"s_max", price.s_max}, {"points", price.points}};
            out = run_price(price);
        } else if (*strip_cmd) {
            name = "strip";
            args = {{"r", strip.r}, {"sigma", strip.sigma}, {"a", strip.a}, {"b", strip.b},
                    {"q", strip.q}, {"dK", strip.dk}, {"N", strip.grid}};
            out = run_strip(strip);
        } else if (*sweep_cmd) {
            name = "sweep";
            args = {{"r", sweep.cfg.params.r}, {"sigma", sweep.cfg.params.sigma}, {"a", sweep.a}, {"b", sweep.b},
                    {"q", vec_json(sweep.cfg.fee_rates)}, {"dK", vec_json(sweep.cfg.strike_spacings)},
                    {"N", sweep.cfg.grid_size}};
            out = run_sweep(sweep);
        } else if (*sim_cmd) {
            name = "simulate";
            args = {{"r", simulate.r}, {"sigma", simulate.sigma}, {"a", simulate.a}, {"b", simulate.b},
                    {"q", simulate.q}, {"S0", simulate.spot0}, {"dt", simulate.dt}, {"T", simulate.horizon},
                    {"paths", simulate.paths}, {"ledger_path", simulate.ledger_path}};
            out = run_simulate(simulate, common.seed);
        } else if (*exit_cmd) {
            name = "exit";
            args = {{"r", exit_args.r}, {"sigma", exit_args.sigma}, {"K", exit_args.strike}, {"q", exit_args.q},
                    {"S0", exit_args.spot0}, {"dt", exit_args.dt}, {"T", exit_args.horizon},
                    {"paths", exit_args.paths}, {"bins", exit_args.bins}, {"monitor", exit_args.monitor}};
            out = run_exit(exit_args, common.seed);
        } else if (*cal_cmd) {
            name = "calibrate";
            args = {{"iv", fs::path(calibrate.iv_path).filename().string()}, {"r", calibrate.r},
                    {"K", calibrate.strike}, {"q", calibrate.q}, {"paths", calibrate.paths}};
            out = run_calibrate(calibrate, common.seed, inputs);
        } else if (*design_cmd) {
            name = "design";
            args = {{"r", design.r}, {"K", design.strike}, {"sigma", vec_json(design.sigmas)},
                    {"horizon_days", vec_json(design.horizon_days)}};
            out = run_design(design);
        }
        commit(common, name, args, inputs, out);
    } catch (const cilvr::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConvergence;
    } catch (const cilvr::NoSolutionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConvergence;
    } catch (const cilvr::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
