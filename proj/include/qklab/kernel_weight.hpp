#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qklab/errors.hpp"

namespace qklab {

enum class KernelFamily { power, constant, tabulated };

/// Nondecreasing weight K on [0, infinity). The power family K(t) = t^p is
/// the canonical one (it recovers the Q_p scale); constant and tabulated
/// kernels are supported for exploration.
class KernelWeight {
public:
    static KernelWeight power(double p);
    static KernelWeight constant(double value);
    /// Monotone samples with linear interpolation; constant continuation
    /// beyond the last sample.
    static KernelWeight tabulated(std::vector<double> t, std::vector<double> k);

    double operator()(double t) const;
    KernelFamily family() const { return family_; }
    double exponent() const { return param_; }       // power family
    double constant_value() const { return param_; } // constant family
    bool vanishes_on_unit_interval() const;
    std::string describe() const;

private:
    KernelWeight(KernelFamily f, double param) : family_(f), param_(param) {}
    KernelWeight(std::vector<double> t, std::vector<double> k)
        : family_(KernelFamily::tabulated), ts_(std::move(t)), ks_(std::move(k)) {}

    KernelFamily family_;
    double param_ = 0.0;
    std::vector<double> ts_, ks_;
};

/// Outcome of one of the kernel integrability gates. `heuristic` marks
/// verdicts decided by the Cauchy-criterion fallback rather than the
/// closed-form exponent rule.
struct ConditionVerdict {
    int condition_id = 0;  // 22 or 43
    double value = 0.0;    // integral value when finite
    bool divergent = false;
    bool pass = false;
    std::optional<double> c;  // only set for condition 22
    bool heuristic = false;
};

/// Dilation envelope phi_K(s) = sup_{0 <= t <= 1} K(st)/K(t). Exact s^p for
/// the power family; a 512-point grid supremum for tabulated kernels.
double phi_k(const KernelWeight& kernel, double s);

/// Integral gate over (1, infinity): int phi_K(s) / s^{2c-1} ds for 1<c<3/2.
/// Evaluated by the substitution s = 1/u onto (0, 1] with a power-law tail
/// estimate; divergence is declared when the tail exponent reaches -1.
ConditionVerdict condition_22(const KernelWeight& kernel, double c);

/// Integral gate near the origin: int_0^1 phi_K(s)/s ds.
ConditionVerdict condition_43(const KernelWeight& kernel);

}  // namespace qklab
