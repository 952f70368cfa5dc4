#include <doctest.h>

#include <cmath>

#include "qklab/mobius.hpp"
#include "qklab/power_series.hpp"

using namespace qklab;

TEST_CASE("geometric partial sum at 0.5") {
    PowerSeries ps = PowerSeries::geometric(51);
    // sum_{n<=51} 0.5^n = 2 (1 - 0.5^52)
    double expected = 2.0 * (1.0 - std::pow(0.5, 52));
    CHECK(std::abs(ps.eval(0.5) - expected) < 1e-14);
}

TEST_CASE("evaluation at the origin returns the constant term exactly") {
    PowerSeries ps(std::vector<Complex>{Complex(3.25, -1.5), Complex(7.0), Complex(-2.0)});
    CHECK(ps.eval(Complex(0.0)) == Complex(3.25, -1.5));
}

TEST_CASE("exp series matches the library exponential") {
    PowerSeries ps = PowerSeries::exponential(30);
    CHECK(std::abs(ps.eval(0.5) - std::exp(0.5)) < 1e-12);
}

TEST_CASE("evaluation outside the declared radius is a domain error") {
    PowerSeries ps = PowerSeries::geometric(10, 0.5);
    CHECK_THROWS_AS(ps.eval(Complex(0.6)), DomainError);
}

TEST_CASE("derivative basics") {
    PowerSeries z2 = PowerSeries::monomial(2);
    PowerSeries d = z2.derivative();
    REQUIRE(d.truncation_degree() == 1);
    CHECK(d.coefficients()[0] == Complex(0.0));
    CHECK(d.coefficients()[1] == Complex(2.0));

    CHECK(z2.derivative(0).coefficients() == z2.coefficients());

    // Orders past the degree collapse to the zero series of degree 0.
    PowerSeries over = z2.derivative(5);
    CHECK(over.truncation_degree() == 0);
    CHECK(over.coefficients()[0] == Complex(0.0));
}

TEST_CASE("second derivative of the exp series") {
    PowerSeries ps = PowerSeries::exponential(30);
    PowerSeries d2 = ps.derivative(2);
    CHECK(d2.truncation_degree() == 28);
    CHECK(std::abs(d2.eval(0.3) - std::exp(0.3)) < 1e-10);
}

TEST_CASE("evaluation is linear in the coefficients") {
    // Deterministic pseudo-random draws.
    unsigned state = 12345;
    auto next = [&]() {
        state = state * 1664525u + 1013904223u;
        return (state >> 8) * (1.0 / 16777216.0) - 0.5;
    };
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Complex> ca(12), cb(12);
        for (int i = 0; i < 12; ++i) {
            ca[i] = Complex(next(), next());
            cb[i] = Complex(next(), next());
        }
        PowerSeries f{ca}, g{cb};
        Complex alpha(next(), next()), beta(next(), next());
        Complex z(0.4 * next(), 0.4 * next());
        Complex combined = (alpha * f + beta * g).eval(z);
        Complex split = alpha * f.eval(z) + beta * g.eval(z);
        CHECK(std::abs(combined - split) < 1e-12);
    }
}

TEST_CASE("mobius map fixed values and green function") {
    MobiusGreen at0 = mobius_and_green(Complex(0.5), Complex(0.0));
    CHECK(std::abs(at0.phi - Complex(0.5)) < 1e-15);
    CHECK(std::abs(at0.green - std::log(2.0)) < 1e-14);

    MobiusGreen sing = mobius_and_green(Complex(0.5), Complex(0.5));
    CHECK(sing.singular);
    CHECK(std::isinf(sing.green));

    // a = 0 gives phi = -z; |0.3 + 0.4i| = 0.5 so g = ln 2.
    MobiusGreen neg = mobius_and_green(Complex(0.0), Complex(0.3, 0.4));
    CHECK(std::abs(neg.phi + Complex(0.3, 0.4)) < 1e-15);
    CHECK(std::abs(neg.green - std::log(2.0)) < 1e-14);

    CHECK_THROWS_AS(mobius_and_green(Complex(1.0), Complex(0.0)), DomainError);
    CHECK_THROWS_AS(mobius_and_green(Complex(0.0), Complex(1.0)), DomainError);
}

TEST_CASE("mobius involution on a node sample") {
    Complex a(0.3, -0.55);
    MobiusMap phi{a};
    CHECK(std::abs(phi(a)) < 1e-15);
    CHECK(std::abs(phi(Complex(0.0)) - a) < 1e-15);
    for (int i = 0; i < 32; ++i) {
        double r = 0.93 * (i % 8 + 1) / 8.0;
        double th = kTwoPi * i / 32.0;
        Complex z = r * Complex(std::cos(th), std::sin(th));
        CHECK(std::abs(phi(phi(z)) - z) < 1e-12);
    }
}
