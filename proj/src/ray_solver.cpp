#include "qklab/ray_solver.hpp"

#include <algorithm>
#include <cmath>

namespace qklab {

namespace {

constexpr double kBlowupLimit = 1e12;
constexpr double kMaxPhaseStep = 0.5 * kPi;  // per-step cap on any tracked argument jump

// Dormand-Prince 5(4) tableau.
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

struct BranchState {
    std::vector<double> phases;  // unwrapped args of f^(0)..f^(k-1)
    double radicand_phase = 0.0;
    bool radicand_valid = false;
};

// Raises base^{exponent} with the argument unwrapped against `anchor`.
// Integer exponents take the exact single-valued route.
Complex tracked_power(Complex base, double exponent, double anchor) {
    if (exponent == 1.0) {
        return base;
    }
    if (nearly_integer(exponent) && std::abs(exponent) < 64.0) {
        long n = std::lround(exponent);
        Complex acc(1.0);
        Complex b = base;
        for (long i = 0; i < n; ++i) {
            acc *= b;
        }
        return acc;
    }
    if (base == Complex(0.0)) {
        return Complex(0.0);
    }
    return complex_power(base, exponent, unwrap_near(std::arg(base), anchor));
}

struct RhsEval {
    std::vector<Complex> dy;
    Complex w{0.0};
    Complex top{0.0};
    bool w_zero = false;
};

// Right-hand side of the first-order system in the ray parameter r:
//   d/dr f^(j) = e^{i theta} f^(j+1),   f^(k) = w^{1/n_k}.
RhsEval eval_rhs(const EquationSpec& eq, double theta, double r,
                 const std::vector<Complex>& y, const BranchState& anchor) {
    RhsEval out;
    Complex dir(std::cos(theta), std::sin(theta));
    Complex z = r * dir;

    Complex w(0.0);
    for (int j = 0; j < eq.k; ++j) {
        Complex a = eq.coefficient_at(j, z);
        if (a == Complex(0.0)) {
            continue;
        }
        w -= a * tracked_power(y[j], eq.exponents[j], anchor.phases[j]);
    }
    out.w = w;
    if (w == Complex(0.0)) {
        out.w_zero = true;
        out.top = Complex(0.0);
    } else if (eq.nk() == 1.0) {
        out.top = w;
    } else {
        double arg = anchor.radicand_valid ? unwrap_near(std::arg(w), anchor.radicand_phase)
                                           : std::arg(w);
        out.top = complex_power(w, 1.0 / eq.nk(), arg);
    }

    out.dy.resize(eq.k);
    for (int j = 0; j + 1 < eq.k; ++j) {
        out.dy[j] = dir * y[j + 1];
    }
    out.dy[eq.k - 1] = dir * out.top;
    return out;
}

// Phases of a state vector unwrapped against the previous accumulator.
void advance_phases(BranchState& state, const std::vector<Complex>& y, const RhsEval& rhs,
                    bool reset_radicand) {
    for (std::size_t j = 0; j < y.size(); ++j) {
        if (y[j] != Complex(0.0)) {
            state.phases[j] = unwrap_near(std::arg(y[j]), state.phases[j]);
        }
    }
    if (rhs.w_zero || reset_radicand) {
        state.radicand_valid = false;  // branch reset: next nonzero radicand restarts principal
    } else {
        state.radicand_phase = state.radicand_valid
                                   ? unwrap_near(std::arg(rhs.w), state.radicand_phase)
                                   : std::arg(rhs.w);
        state.radicand_valid = true;
    }
}

// Radicand-argument jump of the proposed step. The root is single-valued
// when n_k = 1, so only genuine fractional roots are guarded; component
// phases may jump across zeros and are never grounds for rejection.
double radicand_jump(const EquationSpec& eq, const BranchState& state, const RhsEval& rhs_new) {
    if (eq.nk() == 1.0 || !state.radicand_valid || rhs_new.w_zero) {
        return 0.0;
    }
    return std::abs(unwrap_near(std::arg(rhs_new.w), state.radicand_phase) -
                    state.radicand_phase);
}

RaySample make_sample(double r, const std::vector<Complex>& y, Complex top,
                      const BranchState& state, bool report) {
    RaySample s;
    s.r = r;
    s.derivs = y;
    s.derivs.push_back(top);
    s.phases = state.phases;
    s.radicand_phase = state.radicand_phase;
    s.radicand_valid = state.radicand_valid;
    s.report_point = report;
    return s;
}

}  // namespace

Complex extract_top_derivative(const EquationSpec& eq, Complex z,
                               std::span<const Complex> lower_derivs,
                               std::optional<Complex> prev_top, bool* branch_reset) {
    eq.validate();
    if (std::abs(z) >= 1.0) {
        throw DomainError("extract_top_derivative: |z| must be < 1");
    }
    if (static_cast<int>(lower_derivs.size()) != eq.k) {
        throw DomainError("extract_top_derivative: need k lower derivatives");
    }
    if (branch_reset) {
        *branch_reset = false;
    }

    Complex w(0.0);
    for (int j = 0; j < eq.k; ++j) {
        Complex a = eq.coefficient_at(j, z);
        if (a == Complex(0.0) || lower_derivs[j] == Complex(0.0)) {
            continue;
        }
        w -= a * tracked_power(lower_derivs[j], eq.exponents[j], std::arg(lower_derivs[j]));
    }
    if (w == Complex(0.0)) {
        if (eq.nk() < 1.0) {
            throw SingularPowerError(
                "extract_top_derivative: zero radicand with n_k < 1 has a singular root");
        }
        if (branch_reset) {
            *branch_reset = true;
        }
        return Complex(0.0);
    }
    if (eq.nk() == 1.0) {
        return w;
    }
    double base_arg = std::arg(w);
    if (!prev_top) {
        return complex_power(w, 1.0 / eq.nk(), base_arg);
    }
    // Pick the argument sheet closest to the previous top derivative.
    int sheets = static_cast<int>(std::ceil(eq.nk())) + 2;
    Complex best = complex_power(w, 1.0 / eq.nk(), base_arg);
    double best_d = std::abs(best - *prev_top);
    for (int m = -sheets; m <= sheets; ++m) {
        Complex cand = complex_power(w, 1.0 / eq.nk(), base_arg + kTwoPi * m);
        double d = std::abs(cand - *prev_top);
        if (d < best_d) {
            best_d = d;
            best = cand;
        }
    }
    return best;
}

RaySolution solve_ray(const EquationSpec& eq, double theta, double nu, double r_max,
                      std::span<const Complex> init, double tol,
                      std::span<const double> report_radii) {
    eq.validate();
    if (!(nu >= 0.0) || !(nu < r_max) || !(r_max < 1.0)) {
        throw DomainError("solve_ray: need 0 <= nu < r_max < 1");
    }
    if (!(tol > 0.0)) {
        throw DomainError("solve_ray: tol must be > 0");
    }
    if (static_cast<int>(init.size()) != eq.k) {
        throw DomainError("solve_ray: need k initial values f^(0)..f^(k-1)");
    }

    // Report radii: caller-provided points merged with a uniform grid.
    std::vector<double> reports = linspace(nu, r_max, 121);
    reports.insert(reports.end(), report_radii.begin(), report_radii.end());
    std::sort(reports.begin(), reports.end());
    reports.erase(std::unique(reports.begin(), reports.end(),
                              [](double a, double b) { return std::abs(a - b) < 1e-14; }),
                  reports.end());
    while (!reports.empty() && reports.front() <= nu + 1e-14) {
        reports.erase(reports.begin());
    }

    RaySolution sol;
    sol.theta = theta;
    sol.nu = nu;
    sol.tol = tol;

    std::vector<Complex> y(init.begin(), init.end());
    BranchState state;
    state.phases.resize(eq.k, 0.0);
    for (int j = 0; j < eq.k; ++j) {
        state.phases[j] = (y[j] == Complex(0.0)) ? 0.0 : std::arg(y[j]);
    }
    RhsEval rhs0 = eval_rhs(eq, theta, nu, y, state);
    if (!rhs0.w_zero) {
        state.radicand_phase = std::arg(rhs0.w);
        state.radicand_valid = true;
    } else {
        sol.branch_reset = true;
    }
    sol.samples.push_back(make_sample(nu, y, rhs0.top, state, true));

    double span = r_max - nu;
    double r = nu;
    double h = span / 256.0;
    std::size_t next_report = 0;
    // Error-per-unit-step control with a 20x safety factor keeps the global
    // error comfortably below tol, which the step-halving and oracle-accuracy
    // properties rely on.
    const double tol_per_unit = tol / (20.0 * span);

    auto k1 = rhs0;
    while (r < r_max - 1e-15) {
        if (next_report < reports.size() && reports[next_report] <= r + 1e-15) {
            ++next_report;
            continue;
        }
        bool clamped = false;
        if (next_report < reports.size() && r + h >= reports[next_report] - 1e-15) {
            h = reports[next_report] - r;
            clamped = true;
        }
        if (h < 1e-13 * span) {
            sol.status = RayStatus::truncated_stepsize;
            break;
        }

        auto stage = [&](double frac, const std::vector<Complex>& yy) {
            return eval_rhs(eq, theta, r + frac * h, yy, state);
        };
        std::vector<Complex> yt(eq.k);

        for (int j = 0; j < eq.k; ++j) yt[j] = y[j] + h * (a21 * k1.dy[j]);
        RhsEval k2 = stage(c2, yt);
        for (int j = 0; j < eq.k; ++j) yt[j] = y[j] + h * (a31 * k1.dy[j] + a32 * k2.dy[j]);
        RhsEval k3 = stage(c3, yt);
        for (int j = 0; j < eq.k; ++j)
            yt[j] = y[j] + h * (a41 * k1.dy[j] + a42 * k2.dy[j] + a43 * k3.dy[j]);
        RhsEval k4 = stage(c4, yt);
        for (int j = 0; j < eq.k; ++j)
            yt[j] = y[j] + h * (a51 * k1.dy[j] + a52 * k2.dy[j] + a53 * k3.dy[j] + a54 * k4.dy[j]);
        RhsEval k5 = stage(c5, yt);
        for (int j = 0; j < eq.k; ++j)
            yt[j] = y[j] + h * (a61 * k1.dy[j] + a62 * k2.dy[j] + a63 * k3.dy[j] +
                                a64 * k4.dy[j] + a65 * k5.dy[j]);
        RhsEval k6 = stage(1.0, yt);

        std::vector<Complex> y5(eq.k);
        for (int j = 0; j < eq.k; ++j) {
            y5[j] = y[j] + h * (b1 * k1.dy[j] + b3 * k3.dy[j] + b4 * k4.dy[j] + b5 * k5.dy[j] +
                                b6 * k6.dy[j]);
        }
        RhsEval k7 = stage(1.0, y5);

        double err_norm = 0.0;
        for (int j = 0; j < eq.k; ++j) {
            Complex err = h * (e1 * k1.dy[j] + e3 * k3.dy[j] + e4 * k4.dy[j] + e5 * k5.dy[j] +
                               e6 * k6.dy[j] + e7 * k7.dy[j]);
            double sc = tol_per_unit * h * (1.0 + std::max(std::abs(y[j]), std::abs(y5[j])));
            err_norm = std::max(err_norm, std::abs(err) / sc);
        }

        double rjump = radicand_jump(eq, state, k7);
        // A radicand collapsing toward zero is a crossing, not fast winding:
        // accept and restart the sheet from principal afterwards.
        bool collapse = !k7.w_zero && std::abs(k7.w) < 1e-3 * std::abs(k1.w);
        bool phase_ok = rjump <= kMaxPhaseStep || collapse;
        if (err_norm <= 1.0 && phase_ok) {
            r += h;
            y = y5;
            bool reset = collapse && rjump > kMaxPhaseStep;
            if (k7.w_zero || reset) {
                sol.branch_reset = true;
            }
            advance_phases(state, y, k7, reset);
            bool is_report = clamped && next_report < reports.size() &&
                             std::abs(r - reports[next_report]) <= 1e-12;
            if (is_report) {
                ++next_report;
            }
            sol.samples.push_back(make_sample(r, y, k7.top, state, is_report));
            ++sol.steps_accepted;
            k1 = k7;  // FSAL
            if (std::abs(y[eq.k - 1]) > kBlowupLimit) {
                sol.status = RayStatus::truncated_blowup;
                break;
            }
            double grow = (err_norm > 0.0) ? 0.9 * std::pow(err_norm, -0.2) : 5.0;
            h *= std::clamp(grow, 0.2, 5.0);
            h = std::min(h, span / 8.0);
        } else {
            ++sol.steps_rejected;
            h *= phase_ok ? std::clamp(0.9 * std::pow(err_norm, -0.2), 0.1, 0.9) : 0.5;
            if (h < 1e-13 * span) {
                sol.status = RayStatus::truncated_stepsize;
                break;
            }
        }
    }

    sol.r_end = sol.samples.back().r;
    sol.report_radii.push_back(nu);
    for (double rr : reports) {
        if (rr <= sol.r_end + 1e-14) {
            sol.report_radii.push_back(rr);
        }
    }
    return sol;
}

std::vector<RaySolution> solve_fan(const EquationSpec& eq, std::span<const double> thetas,
                                   double nu, double r_max, const InitProvider& init,
                                   double tol, int threads,
                                   std::span<const double> report_radii) {
    std::vector<RaySolution> out(thetas.size());
    std::vector<std::string> failures(thetas.size());
    parallel_for(static_cast<int>(thetas.size()), threads, [&](int i) {
        try {
            auto iv = init(thetas[i]);
            out[i] = solve_ray(eq, thetas[i], nu, r_max, iv, tol, report_radii);
        } catch (const std::exception& e) {
            failures[i] = e.what();
        }
    });
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        if (!failures[i].empty()) {
            throw DomainError("solve_fan: ray " + std::to_string(i) + " failed: " + failures[i]);
        }
    }
    return out;
}

Complex RaySolution::deriv_at(double r, int j) const {
    const int k = static_cast<int>(samples.front().derivs.size()) - 1;
    if (samples.size() == 1 || r <= samples.front().r) {
        return samples.front().derivs[j];
    }
    if (r >= samples.back().r) {
        return samples.back().derivs[j];
    }
    auto it = std::lower_bound(samples.begin(), samples.end(), r,
                               [](const RaySample& s, double rv) { return s.r < rv; });
    const RaySample& s1 = *it;
    const RaySample& s0 = *(it - 1);
    if (std::abs(s1.r - r) < 1e-14) {
        return s1.derivs[j];
    }
    Complex dir(std::cos(theta), std::sin(theta));
    if (j < k) {
        return hermite(r, s0.r, s1.r, s0.derivs[j], s1.derivs[j], dir * s0.derivs[j + 1],
                       dir * s1.derivs[j + 1]);
    }
    // Top derivative: no stored slope; blend the two endpoint values.
    double u = (r - s0.r) / (s1.r - s0.r);
    return (1.0 - u) * s0.derivs[k] + u * s1.derivs[k];
}

std::vector<Complex> RaySolution::derivs_at(double r) const {
    std::vector<Complex> out(samples.front().derivs.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] = deriv_at(r, static_cast<int>(j));
    }
    return out;
}

double equation_residual(const EquationSpec& eq, double theta, const RaySample& sample) {
    Complex z = sample.r * Complex(std::cos(theta), std::sin(theta));
    const int k = eq.k;
    Complex top = sample.derivs[k];
    Complex lhs;
    if (eq.nk() == 1.0) {
        lhs = top;
    } else if (top == Complex(0.0)) {
        lhs = Complex(0.0);
    } else if (sample.radicand_valid) {
        lhs = complex_power(top, eq.nk(), sample.radicand_phase / eq.nk());
    } else {
        lhs = tracked_power(top, eq.nk(), std::arg(top));
    }
    for (int j = 0; j < k; ++j) {
        Complex a = eq.coefficient_at(j, z);
        if (a == Complex(0.0) || sample.derivs[j] == Complex(0.0)) {
            continue;
        }
        lhs += a * complex_power(sample.derivs[j], eq.exponents[j],
                                 unwrap_near(std::arg(sample.derivs[j]), sample.phases[j]));
    }
    return std::abs(lhs);
}

double residual_scale(const EquationSpec& eq, double theta, const RaySample& sample) {
    Complex z = sample.r * Complex(std::cos(theta), std::sin(theta));
    double s = 1.0;
    for (int j = 0; j < eq.k; ++j) {
        s += std::abs(eq.coefficient_at(j, z)) *
             std::pow(std::abs(sample.derivs[j]), eq.exponents[j]);
    }
    return s;
}

}  // namespace qklab
