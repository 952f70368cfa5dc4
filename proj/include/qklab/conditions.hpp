#pragma once

#include <optional>
#include <span>

#include "qklab/disk_grid.hpp"
#include "qklab/equation.hpp"
#include "qklab/kernel_weight.hpp"
#include "qklab/norms.hpp"
#include "qklab/ray_solver.hpp"

namespace qklab {

enum class TheoremMode { thm_alpha, thm_beta };

struct ConditionCheckConfig {
    TheoremMode mode = TheoremMode::thm_beta;
    double threshold = 0.1;          // the alpha or beta being probed
    KernelWeight kernel = KernelWeight::power(1.0);
    std::optional<double> c;         // required for thm_alpha, in (1, 3/2)
    DiskGridSpec grid;
};

struct CoefficientVerdict {
    int j = 0;
    double weight_exponent = 0.0;
    double sup_value = 0.0;   // sup over the grid (a lower bound when unbounded)
    bool unbounded = false;   // negative weight exponent against a nonzero coefficient
    bool passes = false;
};

struct HypothesesVerdict {
    std::vector<CoefficientVerdict> coefficients;
    ConditionVerdict kernel;
    bool overall = false;
};

/// Weighted coefficient sups |A_j(z)| (1-|z|^2)^{n_k (k-j)} (the A_0 weight
/// uses exponent n_k (k-c) in alpha mode, n_k (k-1) in beta mode) against the
/// threshold, plus the kernel integrability gate. Requires n_k >= n_j > 1 for
/// j < k.
HypothesesVerdict check_hypotheses(const EquationSpec& eq, const ConditionCheckConfig& cfg);

struct ScanSettings {
    int rays = 16;
    double tol = 1e-9;
    int radial_block_n = 24;         // Gauss nodes per nested radial block
    QkKernelForm form = QkKernelForm::one_minus_phi_sq;
    int derivative_order = 0;        // 0 = per form (k for the area form, 1 for green)
    int threads = 1;
};

enum class ScanTrend { bounded_looking, growing, inconclusive };

struct MembershipScan {
    std::vector<double> r_values;
    std::vector<double> qk_values;   // nondecreasing (nested domains, nonneg integrand)
    double slope = 0.0;              // fitted d log(value) / d log(1/(1-r))
    ScanTrend trend = ScanTrend::inconclusive;
    bool truncated = false;
};

/// Empirical scan: solve a ray fan once out to the largest radius, then sum
/// the Q_K integrand of the solution over nested subdisks and fit the growth
/// rate against log(1/(1-r_max)). Trends only; never a membership claim.
MembershipScan membership_scan(const EquationSpec& eq, const KernelWeight& kernel,
                               std::span<const Complex> a_grid,
                               std::span<const double> r_max_seq,
                               std::span<const Complex> init, const ScanSettings& settings);

const char* to_string(ScanTrend trend);

}  // namespace qklab
