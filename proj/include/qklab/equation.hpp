#pragma once

#include <vector>

#include "qklab/power_series.hpp"

namespace qklab {

/// The equation under study:
///   (f^(k))^{n_k} + A_{k-1}(z) (f^(k-1))^{n_{k-1}} + ... + A_0(z) f^{n_0} = 0
/// with analytic coefficients on the disk and positive real exponents.
struct EquationSpec {
    int k = 1;
    std::vector<double> exponents;         // n_0 ... n_k
    std::vector<PowerSeries> coefficients; // A_0 ... A_{k-1}

    void validate() const {
        if (k < 1) {
            throw DomainError("EquationSpec: order k must be >= 1");
        }
        if (static_cast<int>(exponents.size()) != k + 1) {
            throw DomainError("EquationSpec: need k+1 exponents n_0..n_k");
        }
        for (double n : exponents) {
            if (!(n > 0.0)) {
                throw DomainError("EquationSpec: exponents must be > 0");
            }
        }
        if (static_cast<int>(coefficients.size()) != k) {
            throw DomainError("EquationSpec: need k coefficients A_0..A_{k-1}");
        }
    }

    double n0() const { return exponents.front(); }
    double nk() const { return exponents.back(); }

    /// Count of coefficients that are not identically zero.
    int nonzero_coefficient_count() const {
        int n = 0;
        for (const auto& a : coefficients) {
            if (!a.is_identically_zero()) {
                ++n;
            }
        }
        return n;
    }

    Complex coefficient_at(int j, Complex z) const { return coefficients[j].eval(z); }

    bool all_exponents_one() const {
        for (double n : exponents) {
            if (n != 1.0) {
                return false;
            }
        }
        return true;
    }

    /// n_j = n_0 > 1 for every j (the growth-theorem pattern).
    bool equal_exponents_above_one() const {
        if (!(exponents[0] > 1.0)) {
            return false;
        }
        for (double n : exponents) {
            if (n != exponents[0]) {
                return false;
            }
        }
        return true;
    }

    /// n_k >= n_j for all j and n_k >= 1 (the iterated-kernel pattern).
    bool top_exponent_dominates() const {
        if (!(nk() >= 1.0)) {
            return false;
        }
        for (double n : exponents) {
            if (n > nk()) {
                return false;
            }
        }
        return true;
    }

    /// n_k >= n_j > 1 for all j < k (the membership-theorem pattern).
    bool membership_pattern() const {
        for (int j = 0; j <= k; ++j) {
            if (j < k && !(exponents[j] > 1.0)) {
                return false;
            }
            if (exponents[j] > nk()) {
                return false;
            }
        }
        return true;
    }
};

}  // namespace qklab
