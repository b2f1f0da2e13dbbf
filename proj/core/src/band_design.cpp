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

#include "cilvr/band_design.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "cilvr/errors.hpp"
#include "cilvr/horizon.hpp"
#include "cilvr/io.hpp"
#include "cilvr/parallel.hpp"

namespace cilvr::design {

BandDesign design_band(const MarketParams& params, double strike, double fee_rate) {
    BandDesign d;
    d.solution = ci::solve_ci_put(params, {strike, fee_rate});
    d.params = params;
    d.strike = strike;
    d.fee_rate = fee_rate;
    d.lower = d.solution.lower;
    d.upper = d.solution.upper;
    d.residual_bound = params.r * strike;
    d.width_pct = 100.0 * (d.upper - d.lower) / strike;
    return d;
}

double lvr_residual(const BandDesign& design, double spot) {
    if (!(spot >= design.lower && spot <= design.upper)) {
        std::ostringstream os;
        os << "S=" << spot << " outside the designed band [" << design.lower << ", " << design.upper << "]";
        throw DomainError(os.str());
    }
    // closed-form endpoint values; the general expression loses the last bits there
    if (spot == design.lower) {
        return design.residual_bound;
    }
    if (spot == design.upper) {
        return 0.0;
    }
    const auto& sol = design.solution;
    return -design.params.r * (spot * ci::delta(sol, spot) - ci::price(sol, spot));
}

double designed_lvr_rate(const BandDesign& design, double spot) {
    const double s = design.params.sigma;
    return 0.5 * s * s * spot * spot * ci::convexity(design.solution, spot);
}

sim::PositionModel designed_position(const BandDesign& design) {
    sim::PositionModel model;
    const auto sol = design.solution;
    model.value = [sol](double x) { return -ci::price(sol, x); };
    model.delta = [sol](double x) { return -ci::delta(sol, x); };
    model.lvr_rate = [design](double x) { return designed_lvr_rate(design, x); };
    return model;
}

ResidualCheck pathwise_residual_check(const BandDesign& design, const sim::GBMConfig& cfg) {
    cfg.validate();
    const auto position = designed_position(design);
    std::vector<sim::LedgerTotals> totals(cfg.n_paths);
    parallel_for(cfg.n_paths, [&](std::size_t i) {
        totals[i] = sim::ledger_totals(position, nullptr, sim::simulate_path(cfg, i));
    });
    CompensatedSum realized, analytic, occupancy;
    for (const auto& t : totals) {
        realized.add(t.lvr);
        analytic.add(t.analytic_lvr);
        occupancy.add(t.time_in_band);
    }
    ResidualCheck out;
    out.fee_rate = design.fee_rate;
    out.upper_bound = design.fee_rate + design.residual_bound;
    out.time_in_band = occupancy.value();
    out.n_paths = cfg.n_paths;
    if (out.time_in_band > 0.0) {
        out.realized_rate = realized.value() / out.time_in_band;
        out.analytic_rate = analytic.value() / out.time_in_band;
    }
    return out;
}

std::vector<Horizon> standard_horizons() {
    return {{"1 d", 1.0 / 365.0}, {"1 wk", 7.0 / 365.0}, {"2 wk", 14.0 / 365.0}, {"1 mo", 1.0 / 12.0},
            {"2 mo", 2.0 / 12.0}};
}

DesignTableSpec standard_table_spec() {
    DesignTableSpec spec;
    spec.r = 0.05;
    spec.strike = 100.0;
    spec.horizons = standard_horizons();
    spec.sigmas = {0.6, 0.8, 1.0};
    return spec;
}

namespace {

long round_half_away(double x) { return std::lround(x); }

}  // namespace

std::vector<DesignRow> generate_design_table(const DesignTableSpec& spec) {
    for (const auto& h : spec.horizons) {
        if (!(h.years > 0.0)) {
            throw DomainError("table horizons must be positive");
        }
    }
    for (double s : spec.sigmas) {
        if (!(s > 0.0)) {
            throw DomainError("table volatilities must be positive");
        }
    }
    const std::size_t ns = spec.sigmas.size();
    std::vector<DesignRow> rows(spec.horizons.size() * ns);
    parallel_for(rows.size(), [&](std::size_t idx) {
        const auto& h = spec.horizons[idx / ns];
        const double sigma = spec.sigmas[idx % ns];
        const MarketParams params{spec.r, sigma};
        const auto fit = horizon::solve_q_for_horizon(params, spec.strike, h.years);
        const auto d = design_band(params, spec.strike, fit.fee_rate);

        DesignRow row;
        row.horizon_label = h.label;
        row.tau = h.years;
        row.sigma = sigma;
        row.fee_rate = fit.fee_rate;
        row.q_pct_k = 100.0 * fit.fee_rate / spec.strike;
        row.lower_pct_k = 100.0 * d.lower / spec.strike;
        row.upper_pct_k = 100.0 * d.upper / spec.strike;
        row.width_pct_k = d.width_pct;
        row.rk_pct_q = 100.0 * d.residual_bound / fit.fee_rate;
        row.rk_pct_k = 100.0 * spec.r;
        row.q_pct_k_rounded = round_half_away(row.q_pct_k);
        row.lower_pct_k_rounded = round_half_away(row.lower_pct_k);
        row.upper_pct_k_rounded = round_half_away(row.upper_pct_k);
        row.width_pct_k_rounded = round_half_away(row.width_pct_k);
        row.rk_pct_q_rounded = round_half_away(row.rk_pct_q);
        row.model_tau = fit.tau;
        rows[idx] = row;
    });
    return rows;
}

std::string design_table_csv(const std::vector<DesignRow>& rows) {
    std::string out = io::csv_record({"horizon", "tau_years", "sigma_eff", "q", "q_pct_K", "S_lower_pct_K",
                                      "S_upper_pct_K", "width_pct_K", "rK_pct_q", "q_pct_K_rounded",
                                      "S_lower_pct_K_rounded", "S_upper_pct_K_rounded", "width_pct_K_rounded",
                                      "rK_pct_q_rounded"});
    for (const auto& r : rows) {
        out += io::csv_record(std::vector<std::string>{
            r.horizon_label, io::format_double(r.tau), io::format_double(r.sigma), io::format_double(r.fee_rate),
            io::format_double(r.q_pct_k), io::format_double(r.lower_pct_k), io::format_double(r.upper_pct_k),
            io::format_double(r.width_pct_k), io::format_double(r.rk_pct_q), std::to_string(r.q_pct_k_rounded),
            std::to_string(r.lower_pct_k_rounded), std::to_string(r.upper_pct_k_rounded),
            std::to_string(r.width_pct_k_rounded), std::to_string(r.rk_pct_q_rounded)});
    }
    return out;
}

std::string design_table_text(const std::vector<DesignRow>& rows, double r) {
    std::ostringstream os;
    char line[160];
    std::snprintf(line, sizeof line, "Funding fee q, CFAMM band (S_l, S_u) and residual bound rK, r = %g\n", r);
    os << line;
    std::snprintf(line, sizeof line, "%-6s %7s %9s %7s %7s %7s %7s\n", "tau", "sigma", "q", "S_l", "S_u", "width",
                  "rK");
    os << line;
    std::snprintf(line, sizeof line, "%-6s %7s %9s %7s %7s %7s %7s\n", "", "", "%K/yr", "%K", "%K", "%K", "%q");
    os << line;
    for (const auto& row : rows) {
        std::snprintf(line, sizeof line, "%-6s %6ld%% %8ld%% %6ld%% %6ld%% %6ld%% %6ld%%\n",
                      row.horizon_label.c_str(), std::lround(100.0 * row.sigma), row.q_pct_k_rounded,
                      row.lower_pct_k_rounded, row.upper_pct_k_rounded, row.width_pct_k_rounded,
                      row.rk_pct_q_rounded);
        os << line;
    }
    return os.str();
}

std::string residual_share_csv(const std::vector<DesignRow>& rows) {
    std::string out = io::csv_record({"horizon", "tau_years", "sigma_eff", "q", "rK_pct_q", "rK_pct_K"});
    for (const auto& r : rows) {
        out += io::csv_record(std::vector<std::string>{r.horizon_label, io::format_double(r.tau),
                                                       io::format_double(r.sigma), io::format_double(r.fee_rate),
                                                       io::format_double(r.rk_pct_q),
                                                       io::format_double(r.rk_pct_k)});
    }
    return out;
}

}  // namespace cilvr::design
