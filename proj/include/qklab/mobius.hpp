#pragma once

#include <cmath>
#include <limits>

#include "qklab/errors.hpp"
#include "qklab/numeric.hpp"

namespace qklab {

/// Disk automorphism phi_a(z) = (a - z)/(1 - conj(a) z), the involution
/// swapping 0 and the base point a.
struct MobiusMap {
    Complex a;

    Complex operator()(Complex z) const { return (a - z) / (1.0 - std::conj(a) * z); }
};

struct MobiusGreen {
    Complex phi;
    double green = 0.0;   // +infinity when z coincides with the base point
    bool singular = false;
};

/// phi_a(z) together with the Green function g(a,z) = -log|phi_a(z)|.
inline MobiusGreen mobius_and_green(Complex a, Complex z) {
    if (std::abs(a) >= 1.0) {
        throw DomainError("mobius_and_green: base point must satisfy |a| < 1");
    }
    if (std::abs(z) >= 1.0) {
        throw DomainError("mobius_and_green: point must satisfy |z| < 1");
    }
    MobiusGreen out;
    out.phi = MobiusMap{a}(z);
    double mod = std::abs(out.phi);
    if (mod == 0.0) {
        out.green = std::numeric_limits<double>::infinity();
        out.singular = true;
    } else {
        out.green = -std::log(mod);
    }
    return out;
}

}  // namespace qklab
