#include <doctest.h>

#include <cmath>

#include "qklab/norms.hpp"

using namespace qklab;

namespace {

const DiskGrid& norm_grid() {
    static DiskGrid g = disk_quadrature(1.0 - 1e-4, 96, 32);
    return g;
}

}  // namespace

TEST_CASE("bloch norm basics") {
    // f(z) = z: |f(0)| = 0, sup (1-|z|^2) = 1 at the origin.
    NormEstimate linear = bloch_type_norm(PowerSeries::monomial(1, 1.0, 1.0), 1.0, norm_grid());
    CHECK(linear.value == doctest::Approx(1.0).epsilon(1e-12));

    NormEstimate constant = bloch_type_norm(PowerSeries::constant(Complex(3.0, -4.0)), 0.7,
                                            norm_grid());
    CHECK(constant.value == doctest::Approx(5.0).epsilon(1e-13));
}

TEST_CASE("bloch norm of log(1/(1-z)) approaches 2") {
    // The truncated series peaks at (1+r)(1 - r^{N}); degree 32768 brings the
    // peak within 4e-4 of the limit 2.
    PowerSeries f = PowerSeries::log_reciprocal(32768);
    NormEstimate est = bloch_type_norm(f, 1.0, norm_grid());
    CHECK(est.value == doctest::Approx(2.0).epsilon(5e-4));
    CHECK(est.value < 2.0 + 1e-12);
}

TEST_CASE("bers norm closed forms") {
    NormEstimate constant = bers_norm(PowerSeries::constant(Complex(0.0, 2.5)), 1.3, norm_grid());
    CHECK(constant.value == doctest::Approx(2.5).epsilon(1e-13));

    // max r (1 - r^2) = 2 / (3 sqrt 3) at r = 1/sqrt(3)
    NormEstimate linear = bers_norm(PowerSeries::monomial(1, 1.0, 1.0), 1.0, norm_grid());
    CHECK(linear.value == doctest::Approx(2.0 / (3.0 * std::sqrt(3.0))).epsilon(1e-9));

    NormEstimate geom = bers_norm(PowerSeries::geometric(16384), 1.0, norm_grid());
    CHECK(geom.value == doctest::Approx(2.0).epsilon(5e-4));
}

TEST_CASE("weighted hardy norm") {
    std::vector<double> radii = linspace(0.0, 0.999, 100);
    NormEstimate constant =
        weighted_hardy_norm(PowerSeries::constant(Complex(-1.5, 2.0)), 0.5, 2.0, radii, 64);
    CHECK(constant.value == doctest::Approx(2.5).epsilon(1e-12));

    // f(z) = z at s = 0: the mean modulus on the circle of radius r is r.
    std::vector<double> coarse = linspace(0.0, 0.999, 1000);
    NormEstimate linear = weighted_hardy_norm(PowerSeries::monomial(1, 1.0, 1.0), 0.0, 2.0,
                                              coarse, 64);
    CHECK(linear.value == doctest::Approx(0.999).epsilon(1e-12));

    // Parseval at r = 0.9 for the geometric series.
    std::vector<double> at09 = {0.9};
    NormEstimate geom = weighted_hardy_norm(PowerSeries::geometric(400), 0.0, 2.0, at09, 2048);
    CHECK(geom.value == doctest::Approx(std::sqrt(1.0 / 0.19)).epsilon(1e-9));
}

TEST_CASE("qk seminorm closed forms") {
    std::vector<Complex> origin = {Complex(0.0)};
    PowerSeries z = PowerSeries::monomial(1, 1.0, 1.0);

    // Constant derivative, constant kernel: the integral is sigma of the disk.
    double r_near_one = 1.0 - 2e-7;
    DiskGrid tight = disk_quadrature(r_near_one, 64, 16);
    for (QkKernelForm form : {QkKernelForm::green, QkKernelForm::one_minus_phi_sq}) {
        NormEstimate est = qk_seminorm(z, KernelWeight::constant(1.0), origin, tight, form, 1);
        CHECK(est.value == doctest::Approx(1.0).epsilon(1e-6));
    }

    // K(t) = t, green form, a = 0: int -log|z| dsigma = 1/2.
    DiskGrid grid = disk_quadrature(1.0 - 1e-4, 128, 32);
    NormEstimate green = qk_seminorm(z, KernelWeight::power(1.0), origin, grid,
                                     QkKernelForm::green, 1);
    CHECK(green.value == doctest::Approx(0.5).epsilon(2e-4));

    // Constant functions have vanishing derivative.
    NormEstimate zero = qk_seminorm(PowerSeries::constant(7.0), KernelWeight::power(1.0), origin,
                                    grid, QkKernelForm::one_minus_phi_sq, 1);
    CHECK(zero.value == 0.0);
}

TEST_CASE("norms are absolutely homogeneous") {
    unsigned state = 99;
    auto next = [&]() {
        state = state * 1664525u + 1013904223u;
        return (state >> 8) * (1.0 / 16777216.0) - 0.5;
    };
    DiskGrid grid = disk_quadrature(0.95, 32, 16);
    std::vector<double> radii = linspace(0.0, 0.9, 19);
    std::vector<Complex> a_pts = {Complex(0.0), Complex(0.3, 0.2)};
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<Complex> coeffs(9);
        for (auto& c : coeffs) {
            c = Complex(next(), next());
        }
        PowerSeries f{coeffs};
        Complex lambda(next() * 3.0, next() * 3.0);
        PowerSeries lf = lambda * f;
        double mag = std::abs(lambda);

        CHECK(bers_norm(lf, 1.0, grid).value ==
              doctest::Approx(mag * bers_norm(f, 1.0, grid).value).epsilon(1e-10));
        CHECK(bloch_type_norm(lf, 0.5, grid).value ==
              doctest::Approx(mag * bloch_type_norm(f, 0.5, grid).value).epsilon(1e-10));
        CHECK(weighted_hardy_norm(lf, 0.5, 2.0, radii, 64).value ==
              doctest::Approx(mag * weighted_hardy_norm(f, 0.5, 2.0, radii, 64).value)
                  .epsilon(1e-10));
        // The Q_K integral scales quadratically; its square root is 1-homogeneous.
        double qf = qk_seminorm(f, KernelWeight::power(1.0), a_pts, grid,
                                QkKernelForm::one_minus_phi_sq, 1)
                        .value;
        double qlf = qk_seminorm(lf, KernelWeight::power(1.0), a_pts, grid,
                                 QkKernelForm::one_minus_phi_sq, 1)
                         .value;
        CHECK(std::sqrt(qlf) == doctest::Approx(mag * std::sqrt(qf)).epsilon(1e-10));
    }
}

TEST_CASE("values are nondecreasing in r_max") {
    PowerSeries f = PowerSeries::exponential(40);
    std::vector<Complex> origin = {Complex(0.0)};
    double prev_bloch = 0.0, prev_bers = 0.0, prev_qk = 0.0;
    for (double r_max : {0.5, 0.7, 0.9, 0.99}) {
        DiskGrid grid = disk_quadrature(r_max, 48, 24);
        double b = bloch_type_norm(f, 1.0, grid).value;
        double e = bers_norm(f, 1.0, grid).value;
        double q = qk_seminorm(f, KernelWeight::power(1.0), origin, grid,
                               QkKernelForm::one_minus_phi_sq, 1)
                       .value;
        CHECK(b >= prev_bloch - 1e-9);
        CHECK(e >= prev_bers - 1e-9);
        CHECK(q >= prev_qk - 1e-9);
        prev_bloch = b;
        prev_bers = e;
        prev_qk = q;
    }
}

TEST_CASE("pointwise weight inclusion between bloch exponents") {
    // (1-|z|^2)^{s2} <= (1-|z|^2)^{s1} for s1 < s2 on every node.
    double s1 = 0.5, s2 = 1.5;
    for (const auto& node : norm_grid().nodes()) {
        double base = 1.0 - std::norm(node.z);
        CHECK(std::pow(base, s2) <= std::pow(base, s1) + 1e-15);
    }
}

TEST_CASE("bers of f' matches the derivative term of bloch") {
    PowerSeries f = PowerSeries::exponential(40);
    double s = 0.5;
    DiskGrid grid = disk_quadrature(0.99, 48, 24);
    NormEstimate bloch = bloch_type_norm(f, s + 1.0, grid);
    NormEstimate bers = bers_norm(f.derivative(), s + 1.0, grid);
    // Same code path, same grid: exact identity.
    CHECK(bloch.value - std::abs(f.coefficients()[0]) == bers.value);
}

TEST_CASE("norm precondition errors") {
    DiskGrid grid = disk_quadrature(0.9, 16, 16);
    PowerSeries z = PowerSeries::monomial(1, 1.0, 1.0);
    CHECK_THROWS_AS(bloch_type_norm(z, 0.0, grid), DomainError);
    CHECK_THROWS_AS(bers_norm(z, -1.0, grid), DomainError);
    std::vector<double> radii = {0.5};
    CHECK_THROWS_AS(weighted_hardy_norm(z, -0.1, 2.0, radii, 64), DomainError);
    CHECK_THROWS_AS(weighted_hardy_norm(z, 0.0, 0.0, radii, 64), DomainError);
    CHECK_THROWS_AS(weighted_hardy_norm(z, 0.0, 2.0, radii, 3), DomainError);
    std::vector<Complex> outside = {Complex(1.5, 0.0)};
    CHECK_THROWS_AS(qk_seminorm(z, KernelWeight::power(1.0), outside, grid,
                                QkKernelForm::green, 1),
                    DomainError);
    std::vector<Complex> origin = {Complex(0.0)};
    CHECK_THROWS_AS(qk_seminorm(z, KernelWeight::power(1.0), origin, grid,
                                QkKernelForm::green, 0),
                    DomainError);
    CHECK_THROWS_AS(phi_k(KernelWeight::power(1.0), 0.0), DomainError);
}

TEST_CASE("grid refinement does not decrease reported sup values") {
    PowerSeries f = PowerSeries::exponential(40);
    DiskGrid coarse = disk_quadrature(0.95, 16, 8);
    DiskGrid fine = disk_quadrature(0.95, 64, 32);
    CHECK(bers_norm(f, 1.0, fine).value >= bers_norm(f, 1.0, coarse).value - 1e-10);
}
