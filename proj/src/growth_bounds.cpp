#include "qklab/growth_bounds.hpp"

#include <algorithm>
#include <cmath>

namespace qklab {

namespace {

// Default LHS grid: the solution's exact landing radii strictly above nu.
std::vector<double> effective_grid(const RaySolution& sol, std::span<const double> r_grid) {
    std::vector<double> rs(r_grid.begin(), r_grid.end());
    if (rs.empty()) {
        for (double r : sol.report_radii) {
            if (r > sol.nu + 1e-14) {
                rs.push_back(r);
            }
        }
    }
    std::sort(rs.begin(), rs.end());
    return rs;
}

void require_growth_hypotheses(const EquationSpec& eq, const RaySolution& sol) {
    eq.validate();
    if (!eq.equal_exponents_above_one()) {
        throw HypothesisError("growth bound: requires n_j = n_0 > 1 for all j");
    }
    Complex z_nu = sol.nu * Complex(std::cos(sol.theta), std::sin(sol.theta));
    bool any_nonzero = false;
    for (int j = 0; j < eq.k; ++j) {
        if (std::abs(eq.coefficient_at(j, z_nu)) > 0.0) {
            any_nonzero = true;
        }
    }
    if (!any_nonzero) {
        throw DomainError("growth bound: every coefficient vanishes at the ray start");
    }
}

// Exponent integral accumulated over consecutive grid radii.
std::vector<double> cumulative_exponent(const EquationSpec& eq, double theta, double nu,
                                        const std::vector<double>& rs) {
    std::vector<double> acc(rs.size(), 0.0);
    double total = 0.0;
    double lo = nu;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        total += adaptive_simpson([&](double t) { return growth_integrand(eq, theta, t); }, lo,
                                  rs[i], 1e-12);
        acc[i] = total;
        lo = rs[i];
    }
    return acc;
}

// sup of the growth integrand over [nu, x_hi] on a refinement grid.
double integrand_sup(const EquationSpec& eq, double theta, double nu, double x_hi) {
    double sup = 0.0;
    double best = nu;
    constexpr int kCoarse = 512;
    for (int i = 0; i <= kCoarse; ++i) {
        double x = nu + (x_hi - nu) * i / kCoarse;
        double v = growth_integrand(eq, theta, x);
        if (v > sup) {
            sup = v;
            best = x;
        }
    }
    double half = (x_hi - nu) / kCoarse;
    for (int iter = 0; iter < 8; ++iter) {
        for (int i = -4; i <= 4; ++i) {
            double x = std::clamp(best + half * i / 4.0, nu, x_hi);
            double v = growth_integrand(eq, theta, x);
            if (v > sup) {
                sup = v;
                best = x;
            }
        }
        half /= 3.0;
    }
    return sup;
}

}  // namespace

double bloch_asymptotic_onset() { return (std::exp(1.0) - 1.0) / (std::exp(1.0) + 1.0); }

double growth_integrand(const EquationSpec& eq, double theta, double t) {
    Complex z = t * Complex(std::cos(theta), std::sin(theta));
    double n0 = eq.n0();
    double best = 0.0;
    for (int j = 0; j < eq.k; ++j) {
        double aj = std::abs(eq.coefficient_at(j, z));
        best = std::max(best, n0 * std::pow(aj, 1.0 / (eq.k - j)));
    }
    return best;
}

double growth_constant(const EquationSpec& eq, double theta, double nu,
                       std::span<const Complex> init_derivs, double epsilon, int deriv_order) {
    Complex z_nu = nu * Complex(std::cos(theta), std::sin(theta));
    double n0 = eq.n0();
    double nc = eq.nonzero_coefficient_count();

    double best = 0.0;
    for (int i = 0; i < eq.k; ++i) {
        double numer = std::pow(std::abs(init_derivs[i]), n0);
        double denom;
        if (i == 0) {
            denom = 1.0;
        } else {
            double amax = 0.0;
            for (int n = 0; n < eq.k; ++n) {
                double an = std::abs(eq.coefficient_at(n, z_nu));
                if (an > 0.0) {
                    amax = std::max(amax, std::pow(an, static_cast<double>(i) / (eq.k - n)));
                }
            }
            denom = std::pow(nc, i) * std::pow(n0, i) * amax;
        }
        if (denom > 0.0) {
            best = std::max(best, numer / denom);
        }
    }
    return (1.0 + epsilon) * std::pow(nc, deriv_order) *
           std::pow(n0, static_cast<double>(eq.k - deriv_order)) * best;
}

BoundReport growth_bound(const EquationSpec& eq, const RaySolution& sol, double epsilon,
                         std::span<const double> r_grid) {
    require_growth_hypotheses(eq, sol);
    std::vector<double> rs = effective_grid(sol, r_grid);

    BoundReport report;
    report.bound_id = "growth";
    report.theta = sol.theta;
    report.truncated = sol.truncated();
    double C = growth_constant(eq, sol.theta, sol.nu, sol.samples.front().derivs, epsilon, 0);
    report.metadata["C"] = C;
    report.metadata["epsilon"] = epsilon;
    report.metadata["n_c"] = eq.nonzero_coefficient_count();

    double n0 = eq.n0();
    double nc = eq.nonzero_coefficient_count();
    std::vector<double> expo = cumulative_exponent(eq, sol.theta, sol.nu, rs);
    for (std::size_t i = 0; i < rs.size(); ++i) {
        if (rs[i] > sol.r_end + 1e-14) {
            break;
        }
        BoundPoint p;
        p.r = rs[i];
        p.lhs = std::pow(std::abs(sol.deriv_at(rs[i], 0)), n0);
        p.rhs = C * std::exp(nc * expo[i]);
        report.points.push_back(p);
    }
    report.finalize();
    return report;
}

std::vector<BoundReport> derivative_growth_bound(const EquationSpec& eq, const RaySolution& sol,
                                                 double epsilon, std::span<const double> r_grid) {
    require_growth_hypotheses(eq, sol);
    std::vector<double> rs = effective_grid(sol, r_grid);
    double n0 = eq.n0();
    double nc = eq.nonzero_coefficient_count();
    std::vector<double> expo = cumulative_exponent(eq, sol.theta, sol.nu, rs);

    std::vector<BoundReport> out;
    for (int j = 0; j <= eq.k; ++j) {
        BoundReport report;
        report.bound_id = "growth_deriv_j" + std::to_string(j);
        report.theta = sol.theta;
        report.truncated = sol.truncated();
        double C = growth_constant(eq, sol.theta, sol.nu, sol.samples.front().derivs, epsilon, j);
        report.metadata["C"] = C;
        report.metadata["epsilon"] = epsilon;
        for (std::size_t i = 0; i < rs.size(); ++i) {
            if (rs[i] > sol.r_end + 1e-14) {
                break;
            }
            double sup = (j == 0) ? 1.0
                                  : std::pow(integrand_sup(eq, sol.theta, sol.nu,
                                                           0.5 * (1.0 + rs[i])),
                                             static_cast<double>(j));
            BoundPoint p;
            p.r = rs[i];
            p.lhs = std::pow(std::abs(sol.deriv_at(rs[i], j)), n0);
            p.rhs = C * sup * std::exp(nc * expo[i]);
            report.points.push_back(p);
        }
        report.finalize();
        out.push_back(std::move(report));
    }
    return out;
}

BoundReport hinf_growth_bound(const EquationSpec& eq, const RaySolution& sol, double s,
                              std::span<const double> coefficient_norms, double epsilon,
                              std::span<const double> r_grid) {
    require_growth_hypotheses(eq, sol);
    if (s < 0.0 || s >= 1.0) {
        throw DomainError("hinf_growth_bound: weight s must lie in [0, 1)");
    }
    if (static_cast<int>(coefficient_norms.size()) != eq.k) {
        throw DomainError("hinf_growth_bound: need one Bers norm per coefficient");
    }
    double L = 0.0;
    for (double norm : coefficient_norms) {
        L = std::max(L, norm);
    }
    double lambda = std::max(L, 1.0);

    std::vector<double> rs = effective_grid(sol, r_grid);
    BoundReport report;
    report.bound_id = "hinf";
    report.theta = sol.theta;
    report.truncated = sol.truncated();
    double C = growth_constant(eq, sol.theta, sol.nu, sol.samples.front().derivs, epsilon, 0);
    report.metadata["C"] = C;
    report.metadata["epsilon"] = epsilon;
    report.metadata["s"] = s;
    report.metadata["L"] = L;
    report.metadata["L_scale"] = lambda;
    report.note = "coefficient scale max(L,1) applied to the exponent";

    double n0 = eq.n0();
    double nc = eq.nonzero_coefficient_count();
    double total = 0.0;
    double lo = sol.nu;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        if (rs[i] > sol.r_end + 1e-14) {
            break;
        }
        total += adaptive_simpson([&](double t) { return std::pow(1.0 - t * t, -s); }, lo, rs[i],
                                  1e-12);
        lo = rs[i];
        BoundPoint p;
        p.r = rs[i];
        p.lhs = std::pow(std::abs(sol.deriv_at(rs[i], 0)), n0);
        p.rhs = C * std::exp(nc * n0 * lambda * total);
        report.points.push_back(p);
    }
    report.finalize();
    return report;
}

double bloch_majorant_integral(double nu, double r, double M) {
    return adaptive_simpson(
        [&](double t) { return 0.5 * M * std::log((1.0 + t) / (1.0 - t)); }, nu, r, 1e-12);
}

BlochBoundReports bloch_growth_bound(const EquationSpec& eq, const RaySolution& sol, double M,
                                     double epsilon, std::span<const double> r_grid) {
    require_growth_hypotheses(eq, sol);
    if (!(M > 0.0)) {
        throw DomainError("bloch_growth_bound: Bloch bound M must be > 0");
    }
    std::vector<double> rs = effective_grid(sol, r_grid);
    double n0 = eq.n0();
    double nc = eq.nonzero_coefficient_count();
    double C = growth_constant(eq, sol.theta, sol.nu, sol.samples.front().derivs, epsilon, 1);

    auto majorant_piece = [&](double t) {
        double logm = 0.5 * M * std::log((1.0 + t) / (1.0 - t));
        double best = 0.0;
        for (int j = 0; j < eq.k; ++j) {
            best = std::max(best, n0 * std::pow(logm, 1.0 / (eq.k - j)));
        }
        return best;
    };

    BlochBoundReports out;
    out.majorized.bound_id = "bloch_majorized";
    out.majorized.theta = sol.theta;
    out.majorized.truncated = sol.truncated();
    out.majorized.metadata["C"] = C;
    out.majorized.metadata["epsilon"] = epsilon;
    out.majorized.metadata["M"] = M;
    out.majorized.metadata["log_integral"] =
        bloch_majorant_integral(sol.nu, rs.empty() ? sol.nu : rs.back(), M);

    std::vector<double> rhs83(rs.size(), 0.0);
    double total = 0.0;
    double lo = sol.nu;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        if (rs[i] > sol.r_end + 1e-14) {
            rs.resize(i);
            rhs83.resize(i);
            break;
        }
        total += adaptive_simpson(majorant_piece, lo, rs[i], 1e-12);
        lo = rs[i];
        // The majorant grows in t, so its sup over [nu, (1+r)/2] sits at the
        // right endpoint.
        double sup = majorant_piece(0.5 * (1.0 + rs[i]));
        rhs83[i] = C * sup * std::exp(nc * total);
        BoundPoint p;
        p.r = rs[i];
        p.lhs = std::pow(std::abs(sol.deriv_at(rs[i], 1)), n0);
        p.rhs = rhs83[i];
        out.majorized.points.push_back(p);
    }
    out.majorized.finalize();

    out.asymptotic.bound_id = "bloch_log_asymptotic";
    out.asymptotic.theta = sol.theta;
    out.asymptotic.truncated = sol.truncated();
    double c0 = bloch_asymptotic_onset();
    double c_fit = 0.0;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        if (rs[i] >= c0) {
            c_fit = std::max(c_fit, rhs83[i] / std::log(1.0 / (1.0 - rs[i])));
        }
    }
    out.asymptotic.metadata["C_fit"] = c_fit;
    out.asymptotic.metadata["c0"] = c0;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        if (rs[i] < c0) {
            continue;
        }
        BoundPoint p;
        p.r = rs[i];
        p.lhs = std::pow(std::abs(sol.deriv_at(rs[i], 1)), n0);
        p.rhs = c_fit * std::log(1.0 / (1.0 - rs[i]));
        out.asymptotic.points.push_back(p);
    }
    if (out.asymptotic.points.empty()) {
        out.asymptotic.hypotheses_met = false;
        out.asymptotic.note = "no grid radii above the onset radius";
    }
    out.asymptotic.finalize();
    return out;
}

}  // namespace qklab
