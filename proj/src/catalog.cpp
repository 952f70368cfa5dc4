#include "qklab/catalog.hpp"

#include <cmath>

namespace qklab {

namespace {

constexpr double kRoot2Inv = 0.70710678118654752440;

EquationSpec make_equation(int k, std::vector<double> exponents,
                           std::vector<PowerSeries> coefficients) {
    EquationSpec eq;
    eq.k = k;
    eq.exponents = std::move(exponents);
    eq.coefficients = std::move(coefficients);
    eq.validate();
    return eq;
}

std::vector<CatalogEntry> build_catalog() {
    std::vector<CatalogEntry> entries;

    {
        CatalogEntry e;
        e.name = "cos_linear";
        e.description = "f'' + f = 0, f(0)=1, f'(0)=0; solution cos z";
        e.equation = make_equation(2, {1.0, 1.0, 1.0},
                                   {PowerSeries::constant(1.0), PowerSeries::constant(0.0)});
        e.initial = {Complex(1.0), Complex(0.0)};
        e.closed_form = [](Complex z, int j) {
            switch (j % 4) {
                case 0: return std::cos(z);
                case 1: return -std::sin(z);
                case 2: return -std::cos(z);
                default: return std::sin(z);
            }
        };
        entries.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.name = "exp_nonlinear";
        e.description = "(f')^2 - f^2 = 0, f(0)=1; principal branch gives e^z";
        e.equation = make_equation(1, {2.0, 2.0}, {PowerSeries::constant(-1.0)});
        e.initial = {Complex(1.0)};
        e.closed_form = [](Complex z, int) { return std::exp(z); };
        entries.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.name = "rot_nonlinear";
        e.description = "(f')^2 + (1/2) f^2 = 0, f(0)=1; principal branch e^{iz/sqrt(2)}";
        e.equation = make_equation(1, {2.0, 2.0}, {PowerSeries::constant(0.5)});
        e.initial = {Complex(1.0)};
        e.closed_form = [](Complex z, int j) {
            Complex lambda(0.0, kRoot2Inv);
            Complex scale(1.0);
            for (int i = 0; i < j; ++i) {
                scale *= lambda;
            }
            return scale * std::exp(lambda * z);
        };
        entries.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.name = "volterra_k1";
        e.description = "(f')^2 + f = 0, f(0)=1; principal branch (1 + iz/2)^2";
        e.equation = make_equation(1, {1.0, 2.0}, {PowerSeries::constant(1.0)});
        e.initial = {Complex(1.0)};
        e.closed_form = [](Complex z, int j) {
            Complex g = 1.0 + Complex(0.0, 0.5) * z;
            switch (j) {
                case 0: return g * g;
                case 1: return Complex(0.0, 1.0) * g;
                case 2: return Complex(-0.5, 0.0);
                default: return Complex(0.0, 0.0);
            }
        };
        entries.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.name = "herold_pair";
        e.description =
            "(v')^2 - (1/2) v^2 = 0 against the majorant u' = u; v = e^{x/sqrt(2)} on the real axis";
        e.equation = make_equation(1, {2.0, 2.0}, {PowerSeries::constant(-0.5)});
        e.initial = {Complex(1.0)};
        e.closed_form = [](Complex z, int j) {
            Complex scale(1.0);
            for (int i = 0; i < j; ++i) {
                scale *= kRoot2Inv;
            }
            return scale * std::exp(kRoot2Inv * z);
        };
        MajorantProblem mp;
        mp.k = 1;
        mp.n0 = 2.0;
        mp.majorants = {[](double) { return 1.0; }};
        mp.initial = {1.0};
        mp.a = 0.0;
        e.majorant = mp;
        entries.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.name = "bloch_coeff";
        e.description =
            "(f')^2 + log(1/(1-z)) f^2 = 0 from nu = 0.1; coefficient has Bloch norm exactly 2";
        e.equation =
            make_equation(1, {2.0, 2.0}, {PowerSeries::log_reciprocal(4096)});
        e.nu = 0.1;
        e.initial = {Complex(1.0)};
        e.bloch_coefficient_bound = 2.0;
        entries.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.name = "frac_power";
        e.description =
            "(f')^2 - f^{5/2} = 0, f(0)=1; branch-continued solution (1 - z/4)^{-4}";
        e.equation = make_equation(1, {2.5, 2.0}, {PowerSeries::constant(-1.0)});
        e.initial = {Complex(1.0)};
        e.closed_form = [](Complex z, int j) {
            Complex g = 1.0 - 0.25 * z;
            // f^{(j)} = (-1/4)^j (-4)(-5)...(-4-j+1) g^{-4-j}
            Complex scale(1.0);
            for (int i = 0; i < j; ++i) {
                scale *= 0.25 * (4.0 + i);
            }
            return scale * std::pow(g, -4.0 - j);
        };
        entries.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.name = "small_norm_qk";
        e.description = "(f'')^2 + 1e-3 (f')^2 + 1e-3 f^2 = 0, f(0)=1, f'(0)=0";
        e.equation = make_equation(
            2, {2.0, 2.0, 2.0},
            {PowerSeries::constant(1e-3), PowerSeries::constant(1e-3)});
        e.initial = {Complex(1.0), Complex(0.0)};
        entries.push_back(std::move(e));
    }
    return entries;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = build_catalog();
    return entries;
}

const CatalogEntry* find_catalog_entry(const std::string& name) {
    for (const auto& e : catalog()) {
        if (e.name == name) {
            return &e;
        }
    }
    return nullptr;
}

std::vector<std::string> catalog_names() {
    std::vector<std::string> names;
    for (const auto& e : catalog()) {
        names.push_back(e.name);
    }
    return names;
}

void self_validate_catalog() {
    for (const auto& e : catalog()) {
        if (!e.closed_form) {
            continue;
        }
        const auto& eq = e.equation;
        for (double r : {0.0, 0.3, 0.6, 0.9}) {
            for (int t = 0; t < 8; ++t) {
                double th = kTwoPi * t / 8.0;
                Complex z = r * Complex(std::cos(th), std::sin(th));
                // Integer exponents are exact products; for the fractional
                // entries the principal power suffices because their closed
                // forms keep arguments inside (-pi, pi) on the disk.
                Complex acc(0.0);
                auto cpow = [](Complex base, double n) {
                    if (nearly_integer(n)) {
                        Complex out(1.0);
                        for (long i = 0; i < std::lround(n); ++i) {
                            out *= base;
                        }
                        return out;
                    }
                    return std::pow(base, Complex(n));
                };
                acc += cpow(e.closed_form(z, eq.k), eq.nk());
                for (int j = 0; j < eq.k; ++j) {
                    acc += eq.coefficient_at(j, z) * cpow(e.closed_form(z, j), eq.exponents[j]);
                }
                if (std::abs(acc) > 1e-9) {
                    throw DomainError("catalog self-validation failed for " + e.name +
                                      " at r=" + fmt17(r) + ": residual " + fmt17(std::abs(acc)));
                }
            }
        }
    }
}

}  // namespace qklab
