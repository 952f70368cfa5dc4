#pragma once

#include <span>

#include "qklab/bound_report.hpp"
#include "qklab/equation.hpp"
#include "qklab/ray_solver.hpp"

namespace qklab {

/// Onset radius (e-1)/(e+1) above which the logarithmic asymptotic report is
/// evaluated.
double bloch_asymptotic_onset();

/// Integrand of the growth exponent: max_j n_0 |A_j(t e^{i theta})|^{1/(k-j)}.
double growth_integrand(const EquationSpec& eq, double theta, double t);

/// The constant in front of the growth estimates for the report of
/// derivative order j:
///   (1+eps) n_c^j n_0^{k-j} max_i |f^(i)(z_nu)|^{n_0} / D_i,
/// with D_0 = 1 and D_i = n_c^i n_0^i max_n |A_n(z_nu)|^{i/(k-n)}.
/// The base estimate corresponds to j = 0 (prefactor (1+eps) n_0^k).
double growth_constant(const EquationSpec& eq, double theta, double nu,
                       std::span<const Complex> init_derivs, double epsilon, int deriv_order);

/// |f|^{n_0} <= C exp(n_c int_nu^r max_j n_0 |A_j|^{1/(k-j)} dt).
/// Requires n_j = n_0 > 1 for all j and some A_j nonzero at the ray start.
BoundReport growth_bound(const EquationSpec& eq, const RaySolution& sol, double epsilon,
                         std::span<const double> r_grid = {});

/// Same estimate per derivative order j = 0..k, with the extra factor
/// (sup_{nu <= x <= (1+r)/2} max_j n_0 |A_j|^{1/(k-j)})^j on the right.
std::vector<BoundReport> derivative_growth_bound(const EquationSpec& eq, const RaySolution& sol,
                                                 double epsilon,
                                                 std::span<const double> r_grid = {});

/// Bounded-solution estimate when every coefficient has finite Bers norm at
/// weight s in [0, 1): RHS = C exp(n_c n_0 max(L,1) int_nu^r (1-t^2)^{-s} dt)
/// with L the largest coefficient norm. The max(L,1) factor dominates the
/// L = 1 normalization the estimate is stated with.
BoundReport hinf_growth_bound(const EquationSpec& eq, const RaySolution& sol, double s,
                              std::span<const double> coefficient_norms, double epsilon,
                              std::span<const double> r_grid = {});

struct BlochBoundReports {
    BoundReport majorized;   // coefficient moduli replaced by (M/2) log((1+x)/(1-x))
    BoundReport asymptotic;  // C log(1/(1-r)) form on r >= (e-1)/(e+1)
};

/// Growth of |f'|^{n_0} when every coefficient has Bloch norm at most M.
/// The asymptotic report fits its constant as the largest ratio of the
/// majorized RHS to log(1/(1-r)) over the grid above the onset radius.
BlochBoundReports bloch_growth_bound(const EquationSpec& eq, const RaySolution& sol, double M,
                                     double epsilon, std::span<const double> r_grid = {});

/// int_nu^r (M/2) log((1+t)/(1-t)) dt, the inner integral of the Bloch
/// majorant (closed form (M/2)[(1+t)ln(1+t) + (1-t)ln(1-t)] evaluated by
/// quadrature here so the report exercises the same code path as the rest).
double bloch_majorant_integral(double nu, double r, double M);

}  // namespace qklab
