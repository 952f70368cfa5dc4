#include "qklab/norms.hpp"

#include <algorithm>
#include <cmath>

#include "qklab/errors.hpp"
#include "qklab/mobius.hpp"

namespace qklab {

namespace {

double weighted_modulus(const PowerSeries& f, double weight_exponent, double r, double theta) {
    Complex z = r * Complex(std::cos(theta), std::sin(theta));
    return std::pow(1.0 - r * r, weight_exponent) * std::abs(f.eval(z));
}

std::string describe_grid(const DiskGrid& grid) {
    const auto& s = grid.spec();
    std::string d = "polar(r_max=" + fmt17(s.r_max) + ", radial=" + std::to_string(s.radial_n) +
                    ", angular=" + std::to_string(s.angular_n) + ")";
    if (s.singular_center) {
        d += "+refined";
    }
    return d;
}

}  // namespace

SupSearch sup_weighted_modulus(const PowerSeries& f, double weight_exponent,
                               const DiskGrid& grid) {
    SupSearch out;
    double best_r = 0.0, best_th = 0.0;
    out.value = weighted_modulus(f, weight_exponent, 0.0, 0.0);  // origin is not a grid node
    for (const auto& node : grid.nodes()) {
        double v = std::pow(1.0 - std::norm(node.z), weight_exponent) * std::abs(f.eval(node.z));
        if (v > out.value) {
            out.value = v;
            best_r = std::abs(node.z);
            best_th = std::arg(node.z);
        }
    }

    // Local polar patch around the winner, shrinking by 1/3 per pass. The sup
    // never decreases, so grid refinement keeps the reported value monotone.
    double r_max = grid.r_max();
    double dr = r_max / grid.spec().radial_n;
    double dth = kTwoPi / grid.spec().angular_n;
    constexpr int kIters = 18;
    for (int iter = 0; iter < kIters; ++iter) {
        double before = out.value;
        for (int i = -4; i <= 4; ++i) {
            for (int j = -4; j <= 4; ++j) {
                double r = std::clamp(best_r + dr * i / 4.0, 0.0, r_max);
                double th = best_th + dth * j / 4.0;
                double v = weighted_modulus(f, weight_exponent, r, th);
                if (v > out.value) {
                    out.value = v;
                    best_r = r;
                    best_th = th;
                }
            }
        }
        dr /= 3.0;
        dth /= 3.0;
        if (iter == kIters - 1) {
            out.last_increase = out.value - before;
        }
    }
    out.argmax = best_r * Complex(std::cos(best_th), std::sin(best_th));
    return out;
}

NormEstimate bloch_type_norm(const PowerSeries& f, double s, const DiskGrid& grid) {
    if (!(s > 0.0)) {
        throw DomainError("bloch_type_norm: s must be > 0");
    }
    SupSearch sup = sup_weighted_modulus(f.derivative(), s, grid);
    NormEstimate est;
    est.space = SpaceTag::bloch_s;
    est.s = s;
    est.value = std::abs(f.coefficients()[0]) + sup.value;
    est.grid_desc = describe_grid(grid);
    est.sup_residual = sup.last_increase;
    return est;
}

NormEstimate bers_norm(const PowerSeries& f, double s, const DiskGrid& grid) {
    if (!(s > 0.0)) {
        throw DomainError("bers_norm: s must be > 0");
    }
    SupSearch sup = sup_weighted_modulus(f, s, grid);
    NormEstimate est;
    est.space = SpaceTag::bers_s;
    est.s = s;
    est.value = sup.value;
    est.grid_desc = describe_grid(grid);
    est.sup_residual = sup.last_increase;
    return est;
}

NormEstimate weighted_hardy_norm(const PowerSeries& f, double s, double t,
                                 std::span<const double> radii, int angular_n) {
    if (s < 0.0) {
        throw DomainError("weighted_hardy_norm: s must be >= 0");
    }
    if (!(t > 0.0)) {
        throw DomainError("weighted_hardy_norm: t must be > 0");
    }
    if (angular_n < 4) {
        throw DomainError("weighted_hardy_norm: angular_n must be >= 4");
    }
    std::vector<double> values(radii.size(), 0.0);
    for (std::size_t i = 0; i < radii.size(); ++i) {
        double r = radii[i];
        KahanSum mean;
        for (int j = 0; j < angular_n; ++j) {
            double phi = kTwoPi * j / angular_n;
            Complex z = r * Complex(std::cos(phi), std::sin(phi));
            mean.add(std::pow(std::abs(f.eval(z)), t));
        }
        values[i] = std::pow(1.0 - r * r, s) * std::pow(mean.value() / angular_n, 1.0 / t);
    }
    double sup = 0.0, sup_coarse = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        sup = std::max(sup, values[i]);
        if (i % 2 == 0) {
            sup_coarse = std::max(sup_coarse, values[i]);
        }
    }
    NormEstimate est;
    est.space = SpaceTag::hardy_s_t;
    est.s = s;
    est.t = t;
    est.value = sup;
    est.grid_desc = "radii(" + std::to_string(radii.size()) + ") x angular(" +
                    std::to_string(angular_n) + ")";
    est.sup_residual = sup - sup_coarse;
    return est;
}

NormEstimate qk_seminorm(const PowerSeries& f, const KernelWeight& kernel,
                         std::span<const Complex> a_grid, const DiskGrid& grid,
                         QkKernelForm form, int derivative_order) {
    if (derivative_order < 1) {
        throw DomainError("qk_seminorm: derivative_order must be >= 1");
    }
    for (const auto& a : a_grid) {
        if (std::abs(a) >= 1.0) {
            throw DomainError("qk_seminorm: base points must satisfy |a| < 1");
        }
    }
    if (kernel.vanishes_on_unit_interval()) {
        throw UndefinedKernelError("qk_seminorm: kernel vanishes on (0,1]");
    }
    PowerSeries fd = f.derivative(derivative_order);
    double weight_exp = 2.0 * derivative_order - 2.0;

    std::vector<double> per_a(a_grid.size(), 0.0);
    for (std::size_t i = 0; i < a_grid.size(); ++i) {
        Complex a = a_grid[i];
        // The Green kernel blows up logarithmically at the base point, so
        // that form integrates on a grid refined there.
        const DiskGrid* g = &grid;
        std::optional<DiskGrid> refined;
        if (form == QkKernelForm::green) {
            auto spec = grid.spec();
            spec.singular_center = a;
            refined.emplace(spec);
            g = &*refined;
        }
        per_a[i] = g->integrate([&](Complex z) {
            MobiusGreen mg = mobius_and_green(a, z);
            if (mg.singular) {
                return 0.0;  // measure-zero node exactly at the base point
            }
            double fz = std::abs(fd.eval(z));
            double w = (weight_exp == 0.0) ? 1.0 : std::pow(1.0 - std::norm(z), weight_exp);
            double arg = (form == QkKernelForm::green) ? mg.green : 1.0 - std::norm(mg.phi);
            return fz * fz * w * kernel(arg);
        });
    }

    double sup = 0.0, sup_coarse = 0.0;
    for (std::size_t i = 0; i < per_a.size(); ++i) {
        sup = std::max(sup, per_a[i]);
        if (i % 2 == 0) {
            sup_coarse = std::max(sup_coarse, per_a[i]);
        }
    }
    NormEstimate est;
    est.space = SpaceTag::qk;
    est.derivative_order = derivative_order;
    est.form = form;
    est.kernel_desc = kernel.describe();
    est.value = sup;
    est.grid_desc = describe_grid(grid) + " x " + std::to_string(a_grid.size()) + " base points";
    est.sup_residual = sup - sup_coarse;
    return est;
}

std::vector<Complex> default_a_grid() {
    std::vector<Complex> a;
    a.push_back(Complex(0.0));
    for (int i = 1; i <= 5; ++i) {
        double r = i / 6.0;
        for (int j = 0; j < 16; ++j) {
            double th = kTwoPi * j / 16.0;
            a.push_back(r * Complex(std::cos(th), std::sin(th)));
        }
    }
    return a;
}

}  // namespace qklab
