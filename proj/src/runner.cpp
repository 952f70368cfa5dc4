#include "qklab/runner.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "qklab/catalog.hpp"
#include "qklab/growth_bounds.hpp"
#include "qklab/norms.hpp"
#include "qklab/volterra.hpp"

namespace qklab {

namespace {

struct SolutionCache {
    const EquationSpec& eq;
    const std::vector<Complex>& initial;
    int threads;
    std::map<std::pair<double, double>, std::vector<RaySolution>> fans;  // (nu, r_max) -> fan
    std::vector<double> thetas;
    double tol;

    const std::vector<RaySolution>& fan(double nu, double r_max) {
        auto key = std::make_pair(nu, r_max);
        auto it = fans.find(key);
        if (it != fans.end()) {
            return it->second;
        }
        auto sols = solve_fan(
            eq, thetas, nu, r_max, [&](double) { return initial; }, tol, threads);
        return fans.emplace(key, std::move(sols)).first->second;
    }
};

std::string experiment_name(const Experiment& e) {
    if (std::holds_alternative<SolveExperiment>(e)) return "solve";
    if (std::holds_alternative<NormsExperiment>(e)) return "norms";
    if (std::holds_alternative<BoundsExperiment>(e)) return "bounds";
    if (std::holds_alternative<ConditionsExperiment>(e)) return "conditions";
    if (std::holds_alternative<VolterraExperiment>(e)) return "volterra";
    return "scan";
}

int experiment_rank(const Experiment& e) {
    // Norms and conditions have no solve dependency; everything else does.
    if (std::holds_alternative<NormsExperiment>(e)) return 0;
    if (std::holds_alternative<ConditionsExperiment>(e)) return 0;
    if (std::holds_alternative<SolveExperiment>(e)) return 1;
    return 2;
}

std::vector<double> grid_up_to(const RaySolution& sol, double r_max) {
    std::vector<double> rs;
    for (double r : sol.report_radii) {
        if (r > sol.nu + 1e-14 && r <= r_max + 1e-12) {
            rs.push_back(r);
        }
    }
    return rs;
}

void run_solve(const Scenario::Resolved& res, SolutionCache& cache, double r_max,
               RunBundle& bundle) {
    const auto& fan = cache.fan(res.nu, r_max);
    for (const auto& sol : fan) {
        for (double r : sol.report_radii) {
            auto derivs = sol.derivs_at(r);
            for (std::size_t j = 0; j < derivs.size(); ++j) {
                SolveRow row;
                row.theta = sol.theta;
                row.r = r;
                row.deriv_order = static_cast<int>(j);
                row.value = derivs[j];
                if (res.entry && res.entry->closed_form) {
                    Complex z = r * Complex(std::cos(sol.theta), std::sin(sol.theta));
                    row.has_oracle = true;
                    row.oracle_error =
                        std::abs(derivs[j] - res.entry->closed_form(z, static_cast<int>(j)));
                }
                bundle.solve_rows.push_back(row);
            }
        }
    }
}

void run_norms(const Scenario::Resolved& res, const NormsExperiment& exp, RunBundle& bundle) {
    DiskGrid grid = disk_quadrature(0.999, 96, 64);
    std::vector<double> radii = linspace(0.0, 0.99, 34);
    for (int j = 0; j < res.equation.k; ++j) {
        const PowerSeries& a = res.equation.coefficients[j];
        std::string fn = "A_" + std::to_string(j);
        NormEstimate bloch = bloch_type_norm(a, 1.0, grid);
        bundle.norm_rows.push_back({fn, "bloch", 1.0, 0.0, bloch.value, bloch.sup_residual});
        double s_bers = exp.s > 0.0 ? exp.s : 1.0;
        NormEstimate bers = bers_norm(a, s_bers, grid);
        bundle.norm_rows.push_back({fn, "bers", s_bers, 0.0, bers.value, bers.sup_residual});
        NormEstimate hardy = weighted_hardy_norm(a, exp.s, exp.t, radii, 256);
        bundle.norm_rows.push_back({fn, "hardy", exp.s, exp.t, hardy.value, hardy.sup_residual});
    }
}

void run_bounds(const Scenario::Resolved& res, const BoundsExperiment& exp, SolutionCache& cache,
                double solver_r_max, RunBundle& bundle) {
    bool want_growth = std::count(exp.which.begin(), exp.which.end(), "growth") > 0;
    bool want_deriv = std::count(exp.which.begin(), exp.which.end(), "derivative") > 0;
    bool want_hinf = std::count(exp.which.begin(), exp.which.end(), "hinf") > 0;
    bool want_bloch = std::count(exp.which.begin(), exp.which.end(), "bloch") > 0;
    bool want_comparison = std::count(exp.which.begin(), exp.which.end(), "comparison") > 0;

    const auto& fan = cache.fan(res.nu, solver_r_max);

    std::vector<double> bers_norms;
    std::map<double, std::vector<double>> bers_by_s;
    double bloch_M = 0.0;
    if (want_hinf || want_bloch) {
        DiskGrid grid = disk_quadrature(0.999, 96, 64);
        for (double s : exp.hinf_s) {
            std::vector<double> norms;
            for (const auto& a : res.equation.coefficients) {
                // Bers norm with s = 0 is the plain sup of |A|.
                norms.push_back(s > 0.0 ? bers_norm(a, s, grid).value
                                        : bers_norm(a, 1e-12, grid).value);
            }
            bers_by_s[s] = norms;
        }
        for (const auto& a : res.equation.coefficients) {
            bloch_M = std::max(bloch_M, bloch_type_norm(a, 1.0, grid).value);
        }
        if (res.entry && res.entry->bloch_coefficient_bound > 0.0) {
            // Prefer the exact bound when the catalog states one: the grid
            // sup is a lower estimate and must not shrink the majorant.
            bloch_M = std::max(bloch_M, res.entry->bloch_coefficient_bound);
        }
    }

    auto add = [&](BoundReport rep) {
        rep.scenario_id = bundle.scenario_id;
        bundle.bound_reports.push_back(std::move(rep));
    };

    for (const auto& sol : fan) {
        std::vector<double> rs = grid_up_to(sol, exp.r_max);
        for (double eps : exp.epsilons) {
            if (want_growth) {
                add(growth_bound(res.equation, sol, eps, rs));
            }
            if (want_deriv) {
                for (auto& rep : derivative_growth_bound(res.equation, sol, eps, rs)) {
                    add(std::move(rep));
                }
            }
            if (want_bloch && bloch_M > 0.0) {
                std::vector<double> rs_bloch = grid_up_to(sol, std::min(0.999, solver_r_max));
                auto reps = bloch_growth_bound(res.equation, sol, bloch_M, eps, rs_bloch);
                add(std::move(reps.majorized));
                add(std::move(reps.asymptotic));
            }
        }
        if (want_hinf) {
            for (double s : exp.hinf_s) {
                add(hinf_growth_bound(res.equation, sol, s, bers_by_s[s], exp.epsilons.front(),
                                      rs));
            }
        }
    }

    if (want_comparison) {
        if (res.entry && res.entry->majorant) {
            const MajorantProblem& mp = *res.entry->majorant;
            const RaySolution& v = fan.front();  // theta = 0 carries the real-axis run
            MajorantTrajectory u = herold_majorant(mp, std::min(exp.r_max, v.r_end), v.tol);
            for (auto& rep : comparison_check(res.equation, v, u, mp)) {
                add(std::move(rep));
            }
        } else {
            throw DomainError("bounds: comparison requested but no majorant is paired");
        }
    }
}

void run_conditions(const Scenario::Resolved& res, const ConditionsExperiment& exp,
                    const KernelDescriptor& kernel, RunBundle& bundle) {
    ConditionCheckConfig cfg;
    cfg.mode = exp.mode == "thm_alpha" ? TheoremMode::thm_alpha : TheoremMode::thm_beta;
    cfg.threshold = exp.threshold;
    cfg.kernel = kernel.build();
    cfg.c = exp.c;
    cfg.grid = DiskGridSpec{0.999, 96, 64, std::nullopt};
    HypothesesVerdict verdict = check_hypotheses(res.equation, cfg);
    for (const auto& cv : verdict.coefficients) {
        ConditionRow row;
        row.mode = exp.mode;
        row.item = "A_" + std::to_string(cv.j);
        row.weight_exponent = cv.weight_exponent;
        row.value = cv.sup_value;
        row.threshold = exp.threshold;
        row.unbounded = cv.unbounded;
        row.pass = cv.passes;
        row.overall = verdict.overall;
        bundle.condition_rows.push_back(row);
    }
    ConditionRow kr;
    kr.mode = exp.mode;
    kr.item = "kernel";
    kr.value = verdict.kernel.value;
    kr.divergent = verdict.kernel.divergent;
    kr.heuristic = verdict.kernel.heuristic;
    kr.pass = verdict.kernel.pass;
    kr.overall = verdict.overall;
    bundle.condition_rows.push_back(kr);
}

void run_volterra(const Scenario::Resolved& res, const VolterraExperiment& exp,
                  SolutionCache& cache, double solver_r_max, RunBundle& bundle) {
    double r_top = std::min(solver_r_max, 0.999);
    const auto& fan = cache.fan(res.nu, r_top);
    const RaySolution& sol = fan.front();
    std::vector<double> r_grid;
    for (double r : exp.r_grid) {
        if (r <= sol.r_end + 1e-12) {
            r_grid.push_back(r);
        }
    }
    VolterraOutputs out = volterra_series_bound(res.equation, sol, r_grid, exp.tol, exp.n_max);
    out.kernel_report.scenario_id = bundle.scenario_id;
    out.solution_report.scenario_id = bundle.scenario_id;
    for (std::size_t g = 0; g < out.bound.r_grid.size(); ++g) {
        VolterraRow row;
        row.theta = sol.theta;
        row.r = out.bound.r_grid[g];
        row.partial_sum = out.bound.partial_sum[g];
        row.tail = out.bound.tail[g];
        if (g < out.kernel_report.points.size()) {
            row.kernel_lhs = out.kernel_report.points[g].lhs;
            row.kernel_rhs = out.kernel_report.points[g].rhs;
        }
        if (g < out.solution_report.points.size()) {
            row.solution_lhs = out.solution_report.points[g].lhs;
            row.solution_rhs = out.solution_report.points[g].rhs;
        }
        row.levels = out.bound.levels_used;
        row.converged = out.bound.converged;
        bundle.volterra_rows.push_back(row);
    }
    bundle.bound_reports.push_back(std::move(out.kernel_report));
    bundle.bound_reports.push_back(std::move(out.solution_report));
}

void run_scan(const Scenario::Resolved& res, const ScanExperiment& exp,
              const KernelDescriptor& kernel, const Scenario& scenario, int threads,
              RunBundle& bundle) {
    ScanSettings settings;
    settings.rays = scenario.solver.rays;
    settings.tol = std::max(scenario.solver.tol, 1e-10);
    settings.form = exp.form == "green" ? QkKernelForm::green : QkKernelForm::one_minus_phi_sq;
    settings.threads = threads;
    auto a_grid = default_a_grid();
    MembershipScan scan = membership_scan(res.equation, kernel.build(), a_grid, exp.r_values,
                                          res.initial, settings);
    for (std::size_t i = 0; i < scan.qk_values.size(); ++i) {
        ScanRow row;
        row.r_max = scan.r_values[i];
        row.value = scan.qk_values[i];
        row.slope = scan.slope;
        row.trend = to_string(scan.trend);
        row.truncated = scan.truncated;
        bundle.scan_rows.push_back(row);
    }
}

}  // namespace

RunBundle run_scenario(const Scenario& scenario, int threads) {
    self_validate_catalog();
    RunBundle bundle;
    bundle.scenario_id = scenario.id;

    Scenario::Resolved res;
    try {
        res = scenario.resolve();
    } catch (const std::exception& e) {
        bundle.errors.push_back({"resolve", e.what()});
        return bundle;
    }

    // Stable sort by dependency rank keeps declaration order within a rank.
    std::vector<const Experiment*> ordered;
    for (const auto& e : scenario.experiments) {
        ordered.push_back(&e);
    }
    std::stable_sort(ordered.begin(), ordered.end(), [](const Experiment* a, const Experiment* b) {
        return experiment_rank(*a) < experiment_rank(*b);
    });

    SolutionCache cache{res.equation, res.initial, threads, {}, {}, scenario.solver.tol};
    cache.thetas.resize(scenario.solver.rays);
    for (int i = 0; i < scenario.solver.rays; ++i) {
        cache.thetas[i] = kTwoPi * i / scenario.solver.rays;
    }

    for (const Experiment* e : ordered) {
        try {
            if (std::holds_alternative<SolveExperiment>(*e)) {
                run_solve(res, cache, scenario.solver.r_max, bundle);
            } else if (const auto* n = std::get_if<NormsExperiment>(e)) {
                run_norms(res, *n, bundle);
            } else if (const auto* b = std::get_if<BoundsExperiment>(e)) {
                run_bounds(res, *b, cache, scenario.solver.r_max, bundle);
            } else if (const auto* c = std::get_if<ConditionsExperiment>(e)) {
                run_conditions(res, *c, scenario.kernel, bundle);
            } else if (const auto* v = std::get_if<VolterraExperiment>(e)) {
                run_volterra(res, *v, cache, scenario.solver.r_max, bundle);
            } else if (const auto* sc = std::get_if<ScanExperiment>(e)) {
                run_scan(res, *sc, scenario.kernel, scenario, threads, bundle);
            }
        } catch (const std::exception& ex) {
            bundle.errors.push_back({experiment_name(*e), ex.what()});
        }
    }
    return bundle;
}

}  // namespace qklab
