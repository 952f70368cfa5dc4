#pragma once

#include <span>

#include "qklab/bound_report.hpp"
#include "qklab/equation.hpp"
#include "qklab/ray_solver.hpp"

namespace qklab {

/// Free term of the iterated-kernel inequality for |f^(k)|^{n_k}: coefficient
/// moduli against the Taylor data at the origin, plus the Young-split
/// remainder for every order whose exponent stays below n_k. Requires
/// n_k >= n_j and n_k >= 1.
double volterra_H(const EquationSpec& eq, double theta, std::span<const Complex> init_derivs,
                  double r);

/// Iteration kernel L(r, s). Orders with n_{k-j} < n_k contribute
/// (n_{k-j}/n_k) (r-s)^{n_k (j-1)} r^{n_k - 1} / ((j-1)!)^{n_k}; orders with
/// n_{k-j} = n_k skip the Young split, so their kernel term keeps the factor
/// n_{k-j}^j |A_{k-j}(r e^{i theta})| in place of the ratio.
double volterra_L(const EquationSpec& eq, double theta, double r, double s);

struct VolterraBound {
    std::vector<double> r_grid;
    std::vector<std::vector<double>> levels;  // levels[i][g] = H_i at r_grid[g]
    std::vector<double> partial_sum;          // sum of levels at r_grid
    std::vector<double> tail;                 // T(r)^{n+1} M(r) / n! at r_grid
    int levels_used = 0;
    bool converged = false;
    double T_top = 0.0, S_top = 0.0, M_top = 0.0;
};

struct VolterraOutputs {
    VolterraBound bound;
    BoundReport kernel_report;    // |f^(k)|^{n_k} <= sum H_i + tail
    BoundReport solution_report;  // |f| <= Taylor data + int (sum H_i)^{1/n_k}
};

/// Runs the iteration H_{i+1}(r) = int_0^r L(r,s) H_i(s) ds on a dense grid
/// until the remainder T^{n+1} M / n! drops below tol (or n_max levels),
/// then checks the kernel bound and the solution bound against the ray.
/// The integration path starts at the origin, so sol.nu must be 0.
VolterraOutputs volterra_series_bound(const EquationSpec& eq, const RaySolution& sol,
                                      std::span<const double> r_grid, double tol, int n_max);

}  // namespace qklab
