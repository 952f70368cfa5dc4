#pragma once

#include <span>
#include <string>
#include <vector>

#include "qklab/disk_grid.hpp"
#include "qklab/kernel_weight.hpp"
#include "qklab/power_series.hpp"

namespace qklab {

enum class SpaceTag { bloch_s, bers_s, hardy_s_t, qk };

enum class QkKernelForm { green, one_minus_phi_sq };

/// One computed norm/seminorm value. Values are suprema over finite node
/// sets, hence lower bounds for the true supremum over the disk; the
/// residual records the gain of the final local-refinement pass (for sup
/// searches) or the gap to a half-resolution candidate set (for hardy/qk).
struct NormEstimate {
    SpaceTag space = SpaceTag::bloch_s;
    double s = 0.0;
    double t = 0.0;
    int derivative_order = 1;
    QkKernelForm form = QkKernelForm::one_minus_phi_sq;
    std::string kernel_desc;
    double value = 0.0;
    std::string grid_desc;
    double sup_residual = 0.0;
};

/// |f(0)| + sup |f'(z)| (1-|z|^2)^s over the grid nodes (plus the origin),
/// polished by local refinement around the best node.
NormEstimate bloch_type_norm(const PowerSeries& f, double s, const DiskGrid& grid);

/// sup (1-|z|^2)^s |f(z)|, same search strategy.
NormEstimate bers_norm(const PowerSeries& f, double s, const DiskGrid& grid);

/// sup over the given radii of (1-r^2)^s M_t(f, r) with the angular mean
/// computed by the periodic trapezoid rule.
NormEstimate weighted_hardy_norm(const PowerSeries& f, double s, double t,
                                 std::span<const double> radii, int angular_n);

/// sup over the base points of
///   int |f^(d)(z)|^2 (1-|z|^2)^{2d-2} K(arg) dsigma(z),
/// where arg is the Green function g(a,z) or 1-|phi_a(z)|^2. The green form
/// rebuilds the grid with singular refinement at each base point.
NormEstimate qk_seminorm(const PowerSeries& f, const KernelWeight& kernel,
                         std::span<const Complex> a_grid, const DiskGrid& grid,
                         QkKernelForm form, int derivative_order);

/// Default base-point set: 5 radii x 16 angles plus the origin.
std::vector<Complex> default_a_grid();

/// Shared sup search used by the bloch/bers paths (same code path makes the
/// Bers/Bloch derivative-term identity exact).
struct SupSearch {
    double value = 0.0;
    Complex argmax;
    double last_increase = 0.0;
};
SupSearch sup_weighted_modulus(const PowerSeries& f, double weight_exponent,
                               const DiskGrid& grid);

}  // namespace qklab
