#include "qklab/majorant.hpp"

#include <algorithm>
#include <cmath>

namespace qklab {

namespace {

constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

std::vector<double> rhs(const MajorantProblem& mp, double x, const std::vector<double>& u) {
    std::vector<double> du(mp.k);
    for (int j = 0; j + 1 < mp.k; ++j) {
        du[j] = u[j + 1];
    }
    double top = 0.0;
    for (int i = 0; i < mp.k; ++i) {
        double b = mp.majorants[i](x);
        if (b < 0.0) {
            throw DomainError("herold_majorant: negative majorant coefficient sample");
        }
        top += b * u[i];
    }
    du[mp.k - 1] = top;
    return du;
}

double top_value(const MajorantProblem& mp, double x, const std::vector<double>& u) {
    double top = 0.0;
    for (int i = 0; i < mp.k; ++i) {
        top += mp.majorants[i](x) * u[i];
    }
    return top;
}

}  // namespace

MajorantTrajectory herold_majorant(const MajorantProblem& mp, double x_max, double tol) {
    if (static_cast<int>(mp.majorants.size()) != mp.k ||
        static_cast<int>(mp.initial.size()) != mp.k) {
        throw DomainError("herold_majorant: majorants and initial data must have k entries");
    }
    if (!(x_max < 1.0) || !(x_max > mp.a)) {
        throw DomainError("herold_majorant: need a < x_max < 1");
    }
    for (double u0 : mp.initial) {
        if (u0 < 0.0) {
            throw DomainError("herold_majorant: initial data must be nonnegative");
        }
    }

    MajorantTrajectory traj;
    traj.a = mp.a;
    std::vector<double> u = mp.initial;
    double x = mp.a;
    double span = x_max - mp.a;
    double h = span / 256.0;
    const double tol_per_unit = tol / (20.0 * span);

    auto push = [&](double xv, const std::vector<double>& uv) {
        traj.xs.push_back(xv);
        std::vector<double> row = uv;
        row.push_back(top_value(mp, xv, uv));
        traj.derivs.push_back(std::move(row));
    };
    push(x, u);

    auto k1 = rhs(mp, x, u);
    while (x < x_max - 1e-15) {
        h = std::min(h, x_max - x);
        std::vector<double> ut(mp.k);
        auto stage = [&](double frac, const std::vector<double>& uu) {
            return rhs(mp, x + frac * h, uu);
        };
        for (int j = 0; j < mp.k; ++j) ut[j] = u[j] + h * a21 * k1[j];
        auto k2 = stage(c2, ut);
        for (int j = 0; j < mp.k; ++j) ut[j] = u[j] + h * (a31 * k1[j] + a32 * k2[j]);
        auto k3 = stage(c3, ut);
        for (int j = 0; j < mp.k; ++j) ut[j] = u[j] + h * (a41 * k1[j] + a42 * k2[j] + a43 * k3[j]);
        auto k4 = stage(c4, ut);
        for (int j = 0; j < mp.k; ++j)
            ut[j] = u[j] + h * (a51 * k1[j] + a52 * k2[j] + a53 * k3[j] + a54 * k4[j]);
        auto k5 = stage(c5, ut);
        for (int j = 0; j < mp.k; ++j)
            ut[j] = u[j] + h * (a61 * k1[j] + a62 * k2[j] + a63 * k3[j] + a64 * k4[j] + a65 * k5[j]);
        auto k6 = stage(1.0, ut);
        std::vector<double> u5(mp.k);
        for (int j = 0; j < mp.k; ++j) {
            u5[j] = u[j] + h * (b1 * k1[j] + b3 * k3[j] + b4 * k4[j] + b5 * k5[j] + b6 * k6[j]);
        }
        auto k7 = stage(1.0, u5);

        double err_norm = 0.0;
        for (int j = 0; j < mp.k; ++j) {
            double err = h * (e1 * k1[j] + e3 * k3[j] + e4 * k4[j] + e5 * k5[j] + e6 * k6[j] +
                              e7 * k7[j]);
            double sc = tol_per_unit * h * (1.0 + std::max(std::abs(u[j]), std::abs(u5[j])));
            err_norm = std::max(err_norm, std::abs(err) / sc);
        }
        if (err_norm <= 1.0) {
            x += h;
            u = u5;
            push(x, u);
            k1 = k7;
            double grow = (err_norm > 0.0) ? 0.9 * std::pow(err_norm, -0.2) : 5.0;
            h *= std::clamp(grow, 0.2, 5.0);
            h = std::min(h, span / 8.0);
        } else {
            h *= std::clamp(0.9 * std::pow(err_norm, -0.2), 0.1, 0.9);
            if (h < 1e-14 * span) {
                throw DomainError("herold_majorant: step underflow");
            }
        }
    }
    traj.x_end = traj.xs.back();
    return traj;
}

double MajorantTrajectory::at(double x, int j) const {
    if (xs.size() == 1 || x <= xs.front()) {
        return derivs.front()[j];
    }
    if (x >= xs.back()) {
        return derivs.back()[j];
    }
    auto it = std::lower_bound(xs.begin(), xs.end(), x);
    std::size_t i = static_cast<std::size_t>(it - xs.begin());
    if (std::abs(xs[i] - x) < 1e-14) {
        return derivs[i][j];
    }
    const int k = static_cast<int>(derivs.front().size()) - 1;
    double x0 = xs[i - 1], x1 = xs[i];
    double y0 = derivs[i - 1][j], y1 = derivs[i][j];
    if (j < k) {
        return hermite(x, x0, x1, y0, y1, derivs[i - 1][j + 1], derivs[i][j + 1]);
    }
    double u = (x - x0) / (x1 - x0);
    return (1.0 - u) * y0 + u * y1;
}

std::vector<BoundReport> comparison_check(const EquationSpec& eq, const RaySolution& v,
                                          const MajorantTrajectory& u,
                                          const MajorantProblem& mp) {
    eq.validate();
    BoundReport report;
    report.bound_id = "comparison";
    report.theta = v.theta;
    report.metadata["n0"] = mp.n0;

    auto in_exceptional = [&](double x) {
        for (double e : mp.exceptional) {
            if (std::abs(x - e) < 1e-12) {
                return true;
            }
        }
        return false;
    };

    // Hypothesis 1: |A_{k-j}(x)| <= n_0^{-j} B_{k-j}(x) off E. In the
    // equation's indexing that is |A_i| <= n_0^{i-k} B_i for i = 0..k-1.
    constexpr int kHypSamples = 257;
    double x_hi = std::min(v.r_end, u.x_end);
    for (int s = 0; s < kHypSamples && report.hypotheses_met; ++s) {
        double x = mp.a + (x_hi - mp.a) * s / (kHypSamples - 1);
        if (in_exceptional(x)) {
            continue;
        }
        for (int i = 0; i < eq.k; ++i) {
            double lhs = std::abs(eq.coefficient_at(i, Complex(x, 0.0)));
            double rhs = std::pow(mp.n0, static_cast<double>(i - eq.k)) * mp.majorants[i](x);
            if (lhs > rhs * (1.0 + 1e-12) + 1e-15) {
                report.hypotheses_met = false;
                report.note = "coefficient domination fails at x=" + fmt17(x) +
                              " (j=" + std::to_string(eq.k - i) + ")";
            }
        }
    }
    // Hypothesis 2: |v^(k-j)(a)|^{n_0} <= u^(k-j)(a).
    const auto& first = v.samples.front();
    for (int j = 0; j < eq.k && report.hypotheses_met; ++j) {
        double lhs = std::pow(std::abs(first.derivs[j]), mp.n0);
        if (lhs > mp.initial[j] * (1.0 + 1e-12) + 1e-15) {
            report.hypotheses_met = false;
            report.note = "initial-value domination fails at derivative " + std::to_string(j);
        }
    }
    if (!report.hypotheses_met) {
        report.finalize();
        return {report};
    }

    std::vector<BoundReport> out;
    for (int j = 0; j <= eq.k; ++j) {
        BoundReport rj = report;
        rj.bound_id = "comparison_j" + std::to_string(j);
        double scale = std::pow(mp.n0, static_cast<double>(eq.k - j));
        for (double x : v.report_radii) {
            if (x < mp.a || x > x_hi + 1e-14 || in_exceptional(x)) {
                continue;
            }
            BoundPoint p;
            p.r = x;
            p.lhs = std::pow(std::abs(v.deriv_at(x, j)), mp.n0);
            p.rhs = scale * u.at(x, j);
            rj.points.push_back(p);
        }
        rj.finalize();
        out.push_back(std::move(rj));
    }
    return out;
}

}  // namespace qklab
