#include <doctest.h>

#include <cmath>

#include "qklab/kernel_weight.hpp"

using namespace qklab;

TEST_CASE("phi_K closed forms") {
    CHECK(phi_k(KernelWeight::power(0.5), 4.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(phi_k(KernelWeight::power(2.0), 0.5) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(phi_k(KernelWeight::constant(3.7), 17.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("phi_K(1) = 1 and monotonicity on the power family") {
    for (double p : {0.25, 0.5, 1.0, 2.0}) {
        KernelWeight k = KernelWeight::power(p);
        CHECK(std::abs(phi_k(k, 1.0) - 1.0) < 1e-12);
        double prev = 0.0;
        for (double s = 0.1; s < 8.0; s += 0.173) {
            double v = phi_k(k, s);
            CHECK(v >= prev - 1e-12);
            prev = v;
        }
    }
    KernelWeight tab = KernelWeight::tabulated({0.0, 0.5, 1.0, 2.0}, {0.0, 0.3, 0.8, 1.0});
    CHECK(std::abs(phi_k(tab, 1.0) - 1.0) < 1e-12);
}

TEST_CASE("undefined kernel rejected") {
    KernelWeight zero = KernelWeight::tabulated({0.0, 1.0, 2.0}, {0.0, 0.0, 0.0});
    CHECK(zero.vanishes_on_unit_interval());
    CHECK_THROWS_AS(phi_k(zero, 2.0), UndefinedKernelError);
}

TEST_CASE("condition 22 values") {
    // int_1^inf s^{0.5 - 1.8} ds = 1/0.3
    ConditionVerdict v = condition_22(KernelWeight::power(0.5), 1.4);
    CHECK(v.pass);
    CHECK(v.value == doctest::Approx(10.0 / 3.0).epsilon(1e-4));

    ConditionVerdict d = condition_22(KernelWeight::power(2.0), 1.4);
    CHECK(d.divergent);
    CHECK_FALSE(d.pass);

    ConditionVerdict c = condition_22(KernelWeight::constant(1.0), 1.25);
    CHECK(c.pass);
    CHECK(c.value == doctest::Approx(2.0).epsilon(1e-4));

    CHECK_THROWS_AS(condition_22(KernelWeight::power(1.0), 1.0), DomainError);
    CHECK_THROWS_AS(condition_22(KernelWeight::power(1.0), 1.5), DomainError);
}

TEST_CASE("condition 43 values") {
    CHECK(condition_43(KernelWeight::power(2.0)).value == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(condition_43(KernelWeight::power(0.5)).value == doctest::Approx(2.0).epsilon(1e-6));
    ConditionVerdict c = condition_43(KernelWeight::constant(2.0));
    CHECK(c.divergent);
    CHECK_FALSE(c.pass);
}

TEST_CASE("closed-form exponent rule sweep") {
    // condition 22 on the power family passes exactly when p < 2c - 2.
    const double ps[] = {0.05, 0.15, 0.4, 0.5, 0.6, 0.75, 0.79, 0.81, 1.2, 2.5};
    const double cs[] = {1.1, 1.4};
    int cases = 0;
    for (double c : cs) {
        for (double p : ps) {
            ConditionVerdict v = condition_22(KernelWeight::power(p), c);
            bool expect_pass = p < 2.0 * c - 2.0;
            CHECK(v.pass == expect_pass);
            CHECK(v.divergent == !expect_pass);
            if (expect_pass) {
                CHECK(v.value == doctest::Approx(1.0 / (2.0 * c - 2.0 - p)).epsilon(1e-6));
            }
            // condition 43 on the power family always has the closed form 1/p.
            ConditionVerdict w = condition_43(KernelWeight::power(p));
            CHECK(w.pass);
            CHECK(w.value == doctest::Approx(1.0 / p).epsilon(1e-9));
            ++cases;
        }
    }
    CHECK(cases == 20);
}

TEST_CASE("tabulated kernel integrability is flagged heuristic") {
    KernelWeight tab = KernelWeight::tabulated({0.0, 0.25, 0.5, 1.0}, {0.0, 0.25, 0.5, 1.0});
    ConditionVerdict v = condition_43(tab);
    CHECK(v.heuristic);
    CHECK(v.pass);  // behaves like K(t) = t near 0
    CHECK(v.value == doctest::Approx(1.0).epsilon(0.05));
}
