#include "qklab/volterra.hpp"

#include <algorithm>
#include <cmath>

namespace qklab {

namespace {

constexpr int kDenseIntervals = 1024;
constexpr double kExponentEq = 1e-12;  // n_{k-j} == n_k within this

void require_volterra_hypotheses(const EquationSpec& eq) {
    eq.validate();
    if (!eq.top_exponent_dominates()) {
        throw HypothesisError("volterra bound: requires n_k >= n_j for all j and n_k >= 1");
    }
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) {
        f *= i;
    }
    return f;
}

// Composite Simpson over the first m intervals of uniform samples with
// spacing h (3/8 rule absorbs an odd remainder).
double simpson_prefix(const std::vector<double>& y, int m, double h) {
    if (m <= 0) {
        return 0.0;
    }
    if (m == 1) {
        return 0.5 * h * (y[0] + y[1]);
    }
    KahanSum s;
    int start = 0;
    if (m % 2 == 1) {
        s.add(3.0 * h / 8.0 * (y[0] + 3.0 * y[1] + 3.0 * y[2] + y[3]));
        start = 3;
    }
    for (int i = start; i + 2 <= m; i += 2) {
        s.add(h / 3.0 * (y[i] + 4.0 * y[i + 1] + y[i + 2]));
    }
    return s.value();
}

// Cubic interpolation of uniform samples (finite-difference slopes).
double interp_dense(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (x <= xs.front()) {
        return ys.front();
    }
    if (x >= xs.back()) {
        return ys.back();
    }
    double h = xs[1] - xs[0];
    std::size_t i = std::min(static_cast<std::size_t>((x - xs.front()) / h),
                             xs.size() - 2);
    auto slope = [&](std::size_t idx) {
        if (idx == 0) {
            return (ys[1] - ys[0]) / h;
        }
        if (idx + 1 == ys.size()) {
            return (ys[idx] - ys[idx - 1]) / h;
        }
        return (ys[idx + 1] - ys[idx - 1]) / (2.0 * h);
    };
    return hermite(x, xs[i], xs[i + 1], ys[i], ys[i + 1], slope(i), slope(i + 1));
}

}  // namespace

double volterra_H(const EquationSpec& eq, double theta, std::span<const Complex> init_derivs,
                  double r) {
    require_volterra_hypotheses(eq);
    if (static_cast<int>(init_derivs.size()) < eq.k) {
        throw DomainError("volterra_H: need k initial derivatives at the origin");
    }
    Complex z = r * Complex(std::cos(theta), std::sin(theta));
    double nk = eq.nk();
    KahanSum H;
    for (int j = 1; j <= eq.k; ++j) {
        double nkj = eq.exponents[eq.k - j];
        double amod = std::abs(eq.coefficient_at(eq.k - j, z));
        double front = std::pow(nkj, j) * amod;

        KahanSum data;
        for (int m = 1; m <= j; ++m) {
            double fmod = std::abs(init_derivs[eq.k - m]);
            data.add(std::pow(fmod, nkj) *
                     std::pow(std::pow(r, j - m) / factorial(j - m), nkj));
        }
        H.add(front * data.value());

        if (nk - nkj > kExponentEq) {
            // Young split remainder; degenerate orders keep the product in
            // the kernel instead.
            H.add((nk - nkj) / nk * std::pow(front, nk / (nk - nkj)));
        }
    }
    return H.value();
}

double volterra_L(const EquationSpec& eq, double theta, double r, double s) {
    require_volterra_hypotheses(eq);
    if (s < 0.0 || s > r) {
        throw DomainError("volterra_L: need 0 <= s <= r");
    }
    Complex z = r * Complex(std::cos(theta), std::sin(theta));
    double nk = eq.nk();
    KahanSum L;
    for (int j = 1; j <= eq.k; ++j) {
        double nkj = eq.exponents[eq.k - j];
        double shape = std::pow(r - s, nk * (j - 1)) * std::pow(r, nk - 1.0) /
                       std::pow(factorial(j - 1), nk);
        double coef;
        if (nk - nkj > kExponentEq) {
            coef = nkj / nk;
        } else {
            coef = std::pow(nkj, j) * std::abs(eq.coefficient_at(eq.k - j, z));
        }
        L.add(coef * shape);
    }
    return L.value();
}

VolterraOutputs volterra_series_bound(const EquationSpec& eq, const RaySolution& sol,
                                      std::span<const double> r_grid, double tol, int n_max) {
    require_volterra_hypotheses(eq);
    if (sol.nu != 0.0) {
        throw DomainError("volterra_series_bound: integration path starts at the origin");
    }
    if (r_grid.empty()) {
        throw DomainError("volterra_series_bound: empty r grid");
    }
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        if (r_grid[i] >= 1.0 || (i > 0 && r_grid[i] <= r_grid[i - 1])) {
            throw DomainError("volterra_series_bound: r grid must increase and stay below 1");
        }
    }

    const double theta = sol.theta;
    const double r_top = r_grid.back();
    const auto& init = sol.samples.front().derivs;
    const double nk = eq.nk();

    // Dense uniform grid carrying every level.
    std::vector<double> xs = linspace(0.0, r_top, kDenseIntervals + 1);
    double h = xs[1] - xs[0];

    std::vector<double> H0(xs.size());
    for (std::size_t m = 0; m < xs.size(); ++m) {
        H0[m] = volterra_H(eq, theta, init, xs[m]);
    }

    // Remainder constants with 4x oversampling relative to the dense grid.
    auto running_max = [&](const std::function<double(double)>& f) {
        std::vector<double> out(xs.size(), 0.0);
        double acc = 0.0;
        for (std::size_t m = 0; m < xs.size(); ++m) {
            double lo = (m == 0) ? 0.0 : xs[m - 1];
            for (int q = 1; q <= 4; ++q) {
                acc = std::max(acc, f(lo + (xs[m] - lo) * q / 4.0));
            }
            if (m == 0) {
                acc = std::max(acc, f(0.0));
            }
            out[m] = acc;
        }
        return out;
    };
    std::vector<double> T = running_max([&](double r) { return volterra_L(eq, theta, r, 0.0); });
    std::vector<double> S = running_max([&](double r) { return volterra_H(eq, theta, init, r); });
    std::vector<double> M = running_max(
        [&](double r) { return std::pow(std::abs(sol.deriv_at(r, eq.k)), nk); });

    VolterraOutputs out;
    out.bound.r_grid.assign(r_grid.begin(), r_grid.end());
    out.bound.T_top = T.back();
    out.bound.S_top = S.back();
    out.bound.M_top = M.back();

    std::vector<std::vector<double>> dense_levels;
    dense_levels.push_back(H0);
    std::vector<double> dense_sum = H0;

    // With levels H_0..H_L summed, the remainder is T^{L+1} M / L!.
    int L = 0;
    double tail_top = T.back() * M.back();
    while (tail_top >= tol && L < n_max) {
        const auto& prev = dense_levels.back();
        std::vector<double> next(xs.size(), 0.0);
        std::vector<double> integrand(xs.size(), 0.0);
        for (std::size_t m = 1; m < xs.size(); ++m) {
            for (std::size_t l = 0; l <= m; ++l) {
                integrand[l] = volterra_L(eq, theta, xs[m], xs[l]) * prev[l];
            }
            next[m] = simpson_prefix(integrand, static_cast<int>(m), h);
        }
        for (std::size_t m = 0; m < xs.size(); ++m) {
            dense_sum[m] += next[m];
        }
        dense_levels.push_back(std::move(next));
        ++L;
        tail_top *= T.back() / L;
    }
    out.bound.levels_used = L;
    out.bound.converged = tail_top < tol;

    for (double r : r_grid) {
        std::vector<double> at_r;
        at_r.reserve(dense_levels.size());
        double tail_r = std::pow(interp_dense(xs, T, r), L + 1) *
                        interp_dense(xs, M, r) / factorial(L);
        double sum_r = interp_dense(xs, dense_sum, r);
        for (const auto& lvl : dense_levels) {
            at_r.push_back(interp_dense(xs, lvl, r));
        }
        out.bound.levels.push_back(std::move(at_r));
        out.bound.partial_sum.push_back(sum_r);
        out.bound.tail.push_back(tail_r);
    }
    // levels is stored per grid point above; transpose to per level.
    {
        std::vector<std::vector<double>> per_level(dense_levels.size(),
                                                   std::vector<double>(r_grid.size()));
        for (std::size_t g = 0; g < r_grid.size(); ++g) {
            for (std::size_t i = 0; i < dense_levels.size(); ++i) {
                per_level[i][g] = out.bound.levels[g][i];
            }
        }
        out.bound.levels = std::move(per_level);
    }

    out.kernel_report.bound_id = "volterra_kernel";
    out.kernel_report.theta = theta;
    out.kernel_report.truncated = sol.truncated();
    out.kernel_report.metadata["levels"] = out.bound.levels_used;
    if (!out.bound.converged) {
        out.kernel_report.hypotheses_met = false;
        out.kernel_report.note = "series not converged";
    }
    for (std::size_t g = 0; g < r_grid.size(); ++g) {
        if (r_grid[g] > sol.r_end + 1e-14) {
            out.kernel_report.truncated = true;
            break;
        }
        BoundPoint p;
        p.r = r_grid[g];
        p.lhs = std::pow(std::abs(sol.deriv_at(r_grid[g], eq.k)), nk);
        p.rhs = out.bound.partial_sum[g] + out.bound.tail[g];
        out.kernel_report.points.push_back(p);
    }
    out.kernel_report.finalize();

    // Final solution bound: Taylor data plus the integrated root of the sum.
    out.solution_report.bound_id = "volterra_f";
    out.solution_report.theta = theta;
    out.solution_report.truncated = out.kernel_report.truncated;
    if (!out.bound.converged) {
        out.solution_report.hypotheses_met = false;
        out.solution_report.note = "series not converged";
    }
    std::vector<double> root_sum(xs.size());
    for (std::size_t m = 0; m < xs.size(); ++m) {
        root_sum[m] = std::pow(dense_sum[m], 1.0 / nk);
    }
    for (std::size_t g = 0; g < r_grid.size(); ++g) {
        double r = r_grid[g];
        if (r > sol.r_end + 1e-14) {
            break;
        }
        double taylor = 0.0;
        for (int m = 1; m <= eq.k; ++m) {
            taylor += std::abs(init[eq.k - m]) * std::pow(r, eq.k - m) / factorial(eq.k - m);
        }
        int cells = std::max(2, static_cast<int>(std::round(r / h)));
        std::vector<double> integrand(cells + 1);
        double hp = r / cells;
        for (int i = 0; i <= cells; ++i) {
            double s = hp * i;
            integrand[i] = std::pow(r - s, eq.k - 1) / factorial(eq.k - 1) *
                           interp_dense(xs, root_sum, s);
        }
        BoundPoint p;
        p.r = r;
        p.lhs = std::abs(sol.deriv_at(r, 0));
        p.rhs = taylor + simpson_prefix(integrand, cells, hp);
        out.solution_report.points.push_back(p);
    }
    out.solution_report.finalize();
    return out;
}

}  // namespace qklab
