#pragma once

#include <functional>
#include <optional>
#include <span>

#include "qklab/equation.hpp"

namespace qklab {

/// One accepted integration point on a ray. `derivs` holds f^(0)..f^(k);
/// `phases` the unwrapped arguments of f^(0)..f^(k-1); `radicand_phase` the
/// unwrapped argument of w = -sum A_j (f^(j))^{n_j}, whose n_k-th root is the
/// top derivative.
struct RaySample {
    double r = 0.0;
    std::vector<Complex> derivs;
    std::vector<double> phases;
    double radicand_phase = 0.0;
    bool radicand_valid = false;
    bool report_point = false;
};

enum class RayStatus { complete, truncated_blowup, truncated_stepsize };

struct RaySolution {
    double theta = 0.0;
    double nu = 0.0;
    double r_end = 0.0;
    RayStatus status = RayStatus::complete;
    bool truncated() const { return status != RayStatus::complete; }
    bool branch_reset = false;
    long steps_accepted = 0;
    long steps_rejected = 0;
    double tol = 0.0;
    std::vector<RaySample> samples;       // strictly increasing in r
    std::vector<double> report_radii;     // radii the integrator landed on exactly

    /// f^(j) at radius r by cubic Hermite interpolation between the
    /// bracketing accepted steps (j <= k-1 uses stored slopes; j = k falls
    /// back to the slope-free interpolant of the stored top values).
    Complex deriv_at(double r, int j) const;
    std::vector<Complex> derivs_at(double r) const;
};

/// Rearranged equation: given the lower derivatives at z, form the radicand
/// w = -sum_j A_j(z) (f^(j))^{n_j} with principal-argument powers and return
/// w^{1/n_k}. When prev_top is given, the root picks the argument sheet whose
/// value lies closest to it; otherwise the principal sheet. A zero radicand
/// returns 0 and raises the branch-reset flag (or throws SingularPowerError
/// when n_k < 1, where the root has unbounded derivative).
Complex extract_top_derivative(const EquationSpec& eq, Complex z,
                               std::span<const Complex> lower_derivs,
                               std::optional<Complex> prev_top,
                               bool* branch_reset = nullptr);

/// Integrates the first-order system for (f, ..., f^(k-1)) along the ray
/// r -> r e^{i theta}, r in [nu, r_max], with the top derivative recovered by
/// branch-continued root extraction. Adaptive embedded 5(4) pair; steps are
/// clamped to land exactly on every requested report radius, so all reported
/// samples are accepted integration points. On blow-up or step underflow a
/// partial solution is returned with the truncation status set.
RaySolution solve_ray(const EquationSpec& eq, double theta, double nu, double r_max,
                      std::span<const Complex> init, double tol,
                      std::span<const double> report_radii = {});

using InitProvider = std::function<std::vector<Complex>(double theta)>;

/// Independent per-ray solves; identical to sequential solve_ray calls
/// regardless of the thread count.
std::vector<RaySolution> solve_fan(const EquationSpec& eq, std::span<const double> thetas,
                                   double nu, double r_max, const InitProvider& init,
                                   double tol, int threads = 1,
                                   std::span<const double> report_radii = {});

/// Defining-equation residual |(f^(k))^{n_k} + sum A_j (f^(j))^{n_j}| at a
/// stored sample, recomputed with the sample's unwrapped phases.
double equation_residual(const EquationSpec& eq, double theta, const RaySample& sample);

/// Scale 1 + sum |A_j| |f^(j)|^{n_j} used to normalize the residual.
double residual_scale(const EquationSpec& eq, double theta, const RaySample& sample);

}  // namespace qklab
