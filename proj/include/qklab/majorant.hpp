#pragma once

#include <functional>
#include <span>

#include "qklab/bound_report.hpp"
#include "qklab/equation.hpp"
#include "qklab/ray_solver.hpp"

namespace qklab {

using RealFn = std::function<double(double)>;

/// Data of the real-variable comparison on [a, 1): nonnegative majorant
/// coefficients B_j dominating n_0^j |A_{k-j}| off a finite exceptional set,
/// and dominating initial data for the linear majorant equation
///   u^(k) = sum_j B_{k-j}(x) u^(k-j).
struct MajorantProblem {
    int k = 1;
    double n0 = 2.0;
    std::vector<RealFn> majorants;       // B_0 .. B_{k-1}
    std::vector<double> exceptional;     // finite set E
    std::vector<double> initial;         // u^(0)(a) .. u^(k-1)(a), all >= 0
    double a = 0.0;
};

/// Majorant solution sampled on accepted steps of a real adaptive 5(4) run.
struct MajorantTrajectory {
    double a = 0.0;
    double x_end = 0.0;
    std::vector<double> xs;
    std::vector<std::vector<double>> derivs;  // per sample: u^(0) .. u^(k)

    double at(double x, int j) const;
};

/// Integrates the linear majorant equation with the given nonnegative data.
/// All derivatives stay nonnegative. Throws DomainError when a majorant
/// coefficient evaluates negative on the integration grid.
MajorantTrajectory herold_majorant(const MajorantProblem& mp, double x_max, double tol);

/// Checks |v^(j)(x)|^{n_0} <= n_0^{k-j} u^(j)(x) on the common grid,
/// excluding the exceptional set; one report per derivative order j = 0..k.
/// Hypotheses (coefficient domination and initial-value domination against
/// the paired equation) are verified first; when they fail a single report
/// marked "hypotheses unmet" is returned and no pass/fail claim is made.
std::vector<BoundReport> comparison_check(const EquationSpec& eq, const RaySolution& v,
                                          const MajorantTrajectory& u,
                                          const MajorantProblem& mp);

}  // namespace qklab
