// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Each criterion pins its tolerance in code; oracles are closed forms or
// independent quadrature computed on the spot.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qklab/catalog.hpp"
#include "qklab/conditions.hpp"
#include "qklab/growth_bounds.hpp"
#include "qklab/norms.hpp"
#include "qklab/report.hpp"
#include "qklab/runner.hpp"
#include "qklab/volterra.hpp"

using namespace qklab;

namespace {

int failures = 0;
std::vector<std::string> details;

void report(int criterion, const std::string& label, bool pass) {
    std::printf("[%d] %-58s %s\n", criterion, label.c_str(), pass ? "PASS" : "FAIL");
    if (!pass) {
        ++failures;
    }
}

void detail(const std::string& line) { details.push_back(line); }

bool close(double got, double expect, double tol) { return std::abs(got - expect) <= tol; }

// ---------------------------------------------------------------- criterion 1

void criterion_1_oracle_solves() {
    bool pass = true;
    for (const char* name : {"cos_linear", "exp_nonlinear"}) {
        const CatalogEntry& e = *find_catalog_entry(name);
        for (int t = 0; t < 8; ++t) {
            double theta = kTwoPi * t / 8.0;
            RaySolution sol = solve_ray(e.equation, theta, 0.0, 0.95, e.initial, 1e-10);
            for (double r : linspace(0.05, 0.9, 18)) {
                Complex z = r * Complex(std::cos(theta), std::sin(theta));
                double err = std::abs(sol.deriv_at(r, 0) - e.closed_form(z, 0));
                if (err > 1e-8) {
                    pass = false;
                    detail("criterion 1: " + std::string(name) + " theta=" + fmt17(theta) +
                           " r=" + fmt17(r) + " err=" + fmt17(err));
                }
            }
        }
    }
    report(1, "oracle solves: cos and exp on 8 rays within 1e-8", pass);
}

// ---------------------------------------------------------------- criterion 2

void criterion_2_norm_closed_forms() {
    DiskGrid grid = disk_quadrature(1.0 - 1e-4, 96, 32);

    NormEstimate bloch = bloch_type_norm(PowerSeries::log_reciprocal(32768), 1.0, grid);
    bool ok_bloch = close(bloch.value, 2.0, 1e-3);

    NormEstimate bers = bers_norm(PowerSeries::monomial(1, 1.0, 1.0), 1.0, grid);
    bool ok_bers = close(bers.value, 2.0 / (3.0 * std::sqrt(3.0)), 1e-6);

    std::vector<Complex> origin = {Complex(0.0)};
    PowerSeries z = PowerSeries::monomial(1, 1.0, 1.0);
    DiskGrid green_grid = disk_quadrature(1.0 - 1e-4, 128, 32);
    NormEstimate qk_green =
        qk_seminorm(z, KernelWeight::power(1.0), origin, green_grid, QkKernelForm::green, 1);
    bool ok_green = close(qk_green.value, 0.5, 1e-4);

    DiskGrid tight = disk_quadrature(1.0 - 2e-7, 64, 16);
    NormEstimate qk_const = qk_seminorm(z, KernelWeight::constant(1.0), origin, tight,
                                        QkKernelForm::one_minus_phi_sq, 1);
    bool ok_const = close(qk_const.value, 1.0, 1e-6);

    if (!ok_bloch) detail("criterion 2: bloch " + fmt17(bloch.value));
    if (!ok_bers) detail("criterion 2: bers " + fmt17(bers.value));
    if (!ok_green) detail("criterion 2: qk green " + fmt17(qk_green.value));
    if (!ok_const) detail("criterion 2: qk const " + fmt17(qk_const.value));
    report(2, "norm closed forms: bloch 2.0, bers 2/(3*sqrt3), Q_K 0.5 / 1.0",
           ok_bloch && ok_bers && ok_green && ok_const);
}

// ---------------------------------------------------------------- criterion 3

void criterion_3_kernel_conditions() {
    bool pass = true;

    for (double p : {0.3, 0.5, 1.0, 2.0}) {
        for (double s : {0.1, 0.7, 1.0, 3.0, 9.5}) {
            if (std::abs(phi_k(KernelWeight::power(p), s) - std::pow(s, p)) > 1e-12) {
                pass = false;
                detail("criterion 3: phi_k(" + fmt17(p) + ", " + fmt17(s) + ")");
            }
        }
    }

    ConditionVerdict c22 = condition_22(KernelWeight::power(0.5), 1.4);
    if (!c22.pass || !close(c22.value, 10.0 / 3.0, 1e-4)) {
        pass = false;
        detail("criterion 3: condition_22(0.5, 1.4) = " + fmt17(c22.value));
    }
    for (double p : {0.5, 2.0}) {
        ConditionVerdict c43 = condition_43(KernelWeight::power(p));
        if (!c43.pass || !close(c43.value, 1.0 / p, 1e-6)) {
            pass = false;
            detail("criterion 3: condition_43(" + fmt17(p) + ") = " + fmt17(c43.value));
        }
    }

    // 20-case divergence sweep against the closed-form exponent rule.
    const double ps[] = {0.05, 0.15, 0.4, 0.5, 0.6, 0.75, 0.79, 0.81, 1.2, 2.5};
    int cases = 0;
    for (double c : {1.1, 1.4}) {
        for (double p : ps) {
            ConditionVerdict v = condition_22(KernelWeight::power(p), c);
            bool expect = p < 2.0 * c - 2.0;
            if (v.pass != expect || v.divergent == expect) {
                pass = false;
                detail("criterion 3: sweep p=" + fmt17(p) + " c=" + fmt17(c));
            }
            ++cases;
        }
    }
    pass = pass && cases == 20;
    report(3, "kernel conditions: phi_K identity, values, divergence sweep", pass);
}

// ---------------------------------------------------------------- criterion 4

void criterion_4_comparison_lemma() {
    const CatalogEntry& e = *find_catalog_entry("herold_pair");
    RaySolution v = solve_ray(e.equation, 0.0, 0.0, 0.992, e.initial, 1e-10);
    MajorantTrajectory u = herold_majorant(*e.majorant, 0.992, 1e-10);
    auto reports = comparison_check(e.equation, v, u, *e.majorant);

    bool pass = reports.size() == 2;
    for (const auto& rep : reports) {
        pass = pass && rep.hypotheses_met && rep.pass;
        bool covers = false;
        for (const auto& p : rep.points) {
            if (p.r >= 0.99) {
                covers = true;
            }
        }
        pass = pass && covers;
    }

    // Spot values at x = 0.9: |v|^2 = e^{sqrt(2) * 0.9} <= 2 e^{0.9}.
    double lhs = std::pow(std::abs(v.deriv_at(0.9, 0)), 2.0);
    double rhs = 2.0 * u.at(0.9, 0);
    pass = pass && close(lhs, std::exp(std::sqrt(2.0) * 0.9), 1e-6) &&
           close(rhs, 2.0 * std::exp(0.9), 1e-6) && lhs <= rhs;
    if (!pass) {
        detail("criterion 4: lhs=" + fmt17(lhs) + " rhs=" + fmt17(rhs));
    }
    report(4, "comparison lemma: herold_pair j=0,1 on [0, 0.99], spot values", pass);
}

// ---------------------------------------------------------------- criterion 5

void criterion_5_growth_bounds() {
    bool pass = true;
    for (const auto& e : catalog()) {
        if (!e.equation.equal_exponents_above_one()) {
            continue;
        }
        for (int t = 0; t < 4; ++t) {
            double theta = kTwoPi * t / 4.0;
            RaySolution sol = solve_ray(e.equation, theta, e.nu, 0.95, e.initial, 1e-10);
            for (double eps : {0.1, 0.5}) {
                BoundReport base = growth_bound(e.equation, sol, eps);
                if (!base.pass) {
                    pass = false;
                    detail("criterion 5: growth bound fails for " + e.name + " eps=" + fmt17(eps) +
                           " theta=" + fmt17(theta) + " margin=" + fmt17(base.min_margin));
                }
                for (const auto& rep : derivative_growth_bound(e.equation, sol, eps)) {
                    if (!rep.pass) {
                        pass = false;
                        detail("criterion 5: " + rep.bound_id + " fails for " + e.name);
                    }
                }
            }
        }
    }
    report(5, "growth bounds, base and per-derivative, for all instances", pass);
}

// ---------------------------------------------------------------- criterion 6

void criterion_6_volterra() {
    const CatalogEntry& e = *find_catalog_entry("volterra_k1");
    RaySolution sol = solve_ray(e.equation, 0.0, 0.0, 0.95, e.initial, 1e-10);
    std::vector<double> r_grid = linspace(0.05, 0.9, 18);
    VolterraOutputs out = volterra_series_bound(e.equation, sol, r_grid, 1e-10, 60);

    // r = 0.5 sits at index 9.
    std::size_t at05 = 9;
    bool pass = std::abs(r_grid[at05] - 0.5) < 1e-12 && out.bound.levels.size() >= 3;
    pass = pass && close(out.bound.levels[0][at05], 1.5, 1e-8);
    pass = pass && close(out.bound.levels[1][at05], 0.1875, 1e-8);
    pass = pass && close(out.bound.levels[2][at05], 0.0078125, 1e-8);

    // Tail strictly decreasing from ceil(T) onward.
    double T = out.bound.T_top, M = out.bound.M_top;
    double prev = 1e300;
    for (int n = static_cast<int>(std::ceil(T)); n < 40; ++n) {
        double tail = std::pow(T, n + 1) * M / std::tgamma(n + 1.0);
        if (tail >= prev) {
            pass = false;
            detail("criterion 6: tail not decreasing at n=" + std::to_string(n));
        }
        prev = tail;
    }

    pass = pass && out.bound.converged && out.kernel_report.pass && out.solution_report.pass;
    if (!pass) {
        detail("criterion 6: H levels " + fmt17(out.bound.levels[0][at05]) + ", " +
               fmt17(out.bound.levels[1][at05]) + ", " + fmt17(out.bound.levels[2][at05]));
    }
    report(6, "volterra: H_i values, decreasing tail, kernel and |f| bounds", pass);
}

// ---------------------------------------------------------------- criterion 7

void criterion_7_coefficient_space_bounds() {
    // Inner integral of the Bloch majorant, against the antiderivative
    // (1+t)ln(1+t) + (1-t)ln(1-t) evaluated at 0.5.
    double integral = bloch_majorant_integral(0.0, 0.5, 2.0);
    double expect = 1.5 * std::log(1.5) + 0.5 * std::log(0.5);
    bool ok_integral = close(integral, expect, 1e-8);
    if (!ok_integral) {
        detail("criterion 7: bloch integral " + fmt17(integral) + " vs " + fmt17(expect));
    }

    const CatalogEntry& bl = *find_catalog_entry("bloch_coeff");
    RaySolution sol = solve_ray(bl.equation, 0.0, bl.nu, 0.999, bl.initial, 1e-9);
    bool ok_majorized = false, ok_asymptotic = false;
    if (!sol.truncated()) {
        auto reports = bloch_growth_bound(bl.equation, sol, bl.bloch_coefficient_bound, 0.1);
        ok_majorized = reports.majorized.pass;
        ok_asymptotic = reports.asymptotic.pass && !reports.asymptotic.points.empty();
        double r_last = reports.asymptotic.points.empty() ? 0.0
                                                          : reports.asymptotic.points.back().r;
        ok_asymptotic = ok_asymptotic && r_last >= 0.999 - 1e-9;
        if (!ok_majorized || !ok_asymptotic) {
            detail("criterion 7: bloch majorized pass=" + std::string(ok_majorized ? "y" : "n") +
                   " log-asymptotic pass=" + std::string(ok_asymptotic ? "y" : "n"));
        }
    } else {
        detail("criterion 7: bloch_coeff ray truncated at " + fmt17(sol.r_end));
    }

    // hinf for rot_nonlinear at s = 0 and s = 0.5.
    const CatalogEntry& rot = *find_catalog_entry("rot_nonlinear");
    RaySolution rsol = solve_ray(rot.equation, 0.0, 0.0, 0.95, rot.initial, 1e-10);
    DiskGrid grid = disk_quadrature(0.999, 96, 64);
    bool ok_hinf = true;
    for (double s : {0.0, 0.5}) {
        std::vector<double> norms;
        for (const auto& a : rot.equation.coefficients) {
            norms.push_back(s > 0.0 ? bers_norm(a, s, grid).value
                                    : bers_norm(a, 1e-12, grid).value);
        }
        BoundReport rep = hinf_growth_bound(rot.equation, rsol, s, norms, 0.1);
        ok_hinf = ok_hinf && rep.pass;
        if (!rep.pass) {
            detail("criterion 7: hinf fails at s=" + fmt17(s));
        }
    }
    report(7, "coefficient-space bounds: log integral, asymptotic, hinf",
           ok_integral && ok_majorized && ok_asymptotic && ok_hinf);
}

// ---------------------------------------------------------------- criterion 8

void criterion_8_membership_scan() {
    const CatalogEntry& e = *find_catalog_entry("small_norm_qk");
    ScanSettings settings;
    settings.rays = 16;
    settings.tol = 1e-9;
    std::vector<double> r_seq = {0.9, 0.99, 0.999};
    auto a_grid = default_a_grid();
    MembershipScan scan = membership_scan(e.equation, KernelWeight::power(0.5), a_grid, r_seq,
                                          e.initial, settings);
    bool pass = !scan.truncated && scan.qk_values.size() == 3;
    pass = pass && scan.trend == ScanTrend::bounded_looking && scan.slope < 0.05;
    for (std::size_t i = 1; i < scan.qk_values.size(); ++i) {
        pass = pass && scan.qk_values[i] + 1e-15 >= scan.qk_values[i - 1];
    }
    if (!pass) {
        detail("criterion 8: slope=" + fmt17(scan.slope) + " trend=" +
               to_string(scan.trend));
    }
    report(8, "membership scan: small_norm_qk bounded-looking, nondecreasing", pass);
}

// ---------------------------------------------------------------- criterion 9

void criterion_9_structural_invariants() {
    bool pass = true;

    // Residual invariant at every accepted step, residual_tol = 100 tol.
    for (const char* name : {"cos_linear", "exp_nonlinear", "rot_nonlinear", "volterra_k1"}) {
        const CatalogEntry& e = *find_catalog_entry(name);
        double tol = 1e-10;
        RaySolution sol = solve_ray(e.equation, 0.4, e.nu, 0.95, e.initial, tol);
        for (const auto& sample : sol.samples) {
            double res = equation_residual(e.equation, sol.theta, sample);
            if (res > 100.0 * tol * residual_scale(e.equation, sol.theta, sample)) {
                pass = false;
                detail("criterion 9: residual " + fmt17(res) + " for " + std::string(name) +
                       " at r=" + fmt17(sample.r));
            }
        }
    }

    // Step-halving convergence.
    for (const char* name : {"cos_linear", "exp_nonlinear"}) {
        const CatalogEntry& e = *find_catalog_entry(name);
        double tol = 1e-8;
        RaySolution coarse = solve_ray(e.equation, 1.3, 0.0, 0.9, e.initial, tol);
        RaySolution fine = solve_ray(e.equation, 1.3, 0.0, 0.9, e.initial, tol / 2.0);
        for (double r : {0.3, 0.6, 0.9}) {
            double moved = std::abs(coarse.deriv_at(r, 0) - fine.deriv_at(r, 0));
            if (moved > tol) {
                pass = false;
                detail("criterion 9: step-halving moved " + fmt17(moved));
            }
        }
    }

    // Quadrature exactness for radial polynomials up to the Gauss order.
    DiskGrid g = disk_quadrature(0.95, 12, 16);
    for (int m = 0; m < 12; ++m) {
        double expect = std::pow(0.95, 2 * m + 2) / (m + 1);
        double got = g.integrate([m](Complex z) { return std::pow(std::norm(z), m); });
        if (std::abs(got - expect) > 1e-10) {
            pass = false;
            detail("criterion 9: quadrature m=" + std::to_string(m));
        }
    }

    // Determinism: two runs, byte-identical reports, thread count irrelevant.
    {
        Scenario s;
        s.id = "det";
        s.equation.catalog_name = "rot_nonlinear";
        s.solver.rays = 4;
        s.solver.r_max = 0.9;
        s.experiments.push_back(SolveExperiment{});
        s.experiments.push_back(BoundsExperiment{{"growth"}, {0.1}, {}, 0.85});
        auto dir1 = std::filesystem::temp_directory_path() / "qklab_acc_det1";
        auto dir2 = std::filesystem::temp_directory_path() / "qklab_acc_det2";
        std::filesystem::remove_all(dir1);
        std::filesystem::remove_all(dir2);
        emit_report(run_scenario(s, 1), ReportFormat::json, dir1.string());
        emit_report(run_scenario(s, 2), ReportFormat::json, dir2.string());
        auto slurp = [](const std::filesystem::path& p) {
            std::ifstream in(p, std::ios::binary);
            std::stringstream ss;
            ss << in.rdbuf();
            return ss.str();
        };
        std::string a = slurp(dir1 / "report.json");
        if (a.empty() || a != slurp(dir2 / "report.json")) {
            pass = false;
            detail("criterion 9: reruns differ");
        }
    }

    // Threshold monotonicity of the hypothesis checker.
    {
        const EquationSpec& eq = find_catalog_entry("small_norm_qk")->equation;
        ConditionCheckConfig cfg;
        cfg.mode = TheoremMode::thm_beta;
        cfg.kernel = KernelWeight::power(2.0);
        cfg.grid = DiskGridSpec{0.99, 48, 32, std::nullopt};
        bool passed_before = false;
        for (double tau : {1e-5, 1e-3, 1e-1}) {
            cfg.threshold = tau;
            HypothesesVerdict v = check_hypotheses(eq, cfg);
            bool coeffs_pass = true;
            for (const auto& cv : v.coefficients) {
                coeffs_pass = coeffs_pass && cv.passes;
            }
            if (passed_before && !coeffs_pass) {
                pass = false;
                detail("criterion 9: threshold monotonicity broken at tau=" + fmt17(tau));
            }
            passed_before = passed_before || coeffs_pass;
        }
    }

    // r_max monotonicity of norm values.
    {
        PowerSeries f = PowerSeries::exponential(40);
        double prev = 0.0;
        for (double r_max : {0.5, 0.8, 0.95}) {
            DiskGrid grid = disk_quadrature(r_max, 48, 24);
            double v = bers_norm(f, 1.0, grid).value;
            if (v + 1e-9 < prev) {
                pass = false;
                detail("criterion 9: bers not monotone in r_max");
            }
            prev = v;
        }
    }

    report(9, "structural invariants: residuals, halving, quadrature, determinism", pass);
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    self_validate_catalog();
    criterion_1_oracle_solves();
    criterion_2_norm_closed_forms();
    criterion_3_kernel_conditions();
    criterion_4_comparison_lemma();
    criterion_5_growth_bounds();
    criterion_6_volterra();
    criterion_7_coefficient_space_bounds();
    criterion_8_membership_scan();
    criterion_9_structural_invariants();
    for (const auto& d : details) {
        std::printf("    %s\n", d.c_str());
    }
    std::printf("%s\n", failures == 0 ? "all criteria passed" : "FAILURES PRESENT");
    return failures == 0 ? 0 : 1;
}
