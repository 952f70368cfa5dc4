#pragma once

#include <vector>

#include "qklab/errors.hpp"
#include "qklab/numeric.hpp"

namespace qklab {

/// Truncated Taylor expansion at the origin, trusted for |z| <= declared
/// radius. All analytic data in the library (test functions and equation
/// coefficients alike) is carried in this form.
class PowerSeries {
public:
    static constexpr double kDefaultRadius = 1.0 - 1e-6;
    static constexpr int kDefaultDegree = 64;

    PowerSeries() : coeffs_(1, Complex(0.0)), radius_(kDefaultRadius) {}

    explicit PowerSeries(std::vector<Complex> coeffs, double declared_radius = kDefaultRadius)
        : coeffs_(std::move(coeffs)), radius_(declared_radius) {
        if (coeffs_.empty()) {
            coeffs_.push_back(Complex(0.0));
        }
        if (!(radius_ > 0.0) || radius_ > 1.0) {
            throw DomainError("PowerSeries: declared_radius must lie in (0, 1]");
        }
    }

    int truncation_degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    double declared_radius() const { return radius_; }
    const std::vector<Complex>& coefficients() const { return coeffs_; }

    /// Horner evaluation; throws DomainError when |z| exceeds the declared radius.
    Complex eval(Complex z) const {
        if (std::abs(z) > radius_) {
            throw DomainError("PowerSeries::eval: |z| exceeds declared radius");
        }
        Complex acc = coeffs_.back();
        for (int n = truncation_degree() - 1; n >= 0; --n) {
            acc = acc * z + coeffs_[n];
        }
        return acc;
    }

    /// Formal derivative of the given order. Orders past the truncation
    /// degree collapse to the zero series of degree 0 (not an error).
    PowerSeries derivative(int order = 1) const {
        if (order < 0) {
            throw DomainError("PowerSeries::derivative: order must be >= 0");
        }
        if (order == 0) {
            return *this;
        }
        if (order > truncation_degree()) {
            return PowerSeries(std::vector<Complex>{Complex(0.0)}, radius_);
        }
        std::vector<Complex> cur = coeffs_;
        for (int pass = 0; pass < order; ++pass) {
            std::vector<Complex> next(cur.size() - 1);
            for (std::size_t n = 1; n < cur.size(); ++n) {
                next[n - 1] = static_cast<double>(n) * cur[n];
            }
            if (next.empty()) {
                next.push_back(Complex(0.0));
            }
            cur = std::move(next);
        }
        return PowerSeries(std::move(cur), radius_);
    }

    bool is_identically_zero() const {
        for (const auto& c : coeffs_) {
            if (c != Complex(0.0)) {
                return false;
            }
        }
        return true;
    }

    static PowerSeries constant(Complex c, double radius = kDefaultRadius) {
        return PowerSeries(std::vector<Complex>{c}, radius);
    }

    static PowerSeries monomial(int n, Complex c = Complex(1.0), double radius = kDefaultRadius) {
        std::vector<Complex> coeffs(n + 1, Complex(0.0));
        coeffs[n] = c;
        return PowerSeries(std::move(coeffs), radius);
    }

    /// Partial sum of 1/(1-z): all coefficients 1.
    static PowerSeries geometric(int degree, double radius = kDefaultRadius) {
        return PowerSeries(std::vector<Complex>(degree + 1, Complex(1.0)), radius);
    }

    /// Partial sum of exp(z): c_n = 1/n!.
    static PowerSeries exponential(int degree, double radius = kDefaultRadius) {
        std::vector<Complex> coeffs(degree + 1);
        double f = 1.0;
        coeffs[0] = Complex(1.0);
        for (int n = 1; n <= degree; ++n) {
            f /= n;
            coeffs[n] = Complex(f);
        }
        return PowerSeries(std::move(coeffs), radius);
    }

    /// Partial sum of log(1/(1-z)): c_0 = 0, c_n = 1/n.
    static PowerSeries log_reciprocal(int degree, double radius = kDefaultRadius) {
        std::vector<Complex> coeffs(degree + 1, Complex(0.0));
        for (int n = 1; n <= degree; ++n) {
            coeffs[n] = Complex(1.0 / n);
        }
        return PowerSeries(std::move(coeffs), radius);
    }

    friend PowerSeries operator*(Complex a, const PowerSeries& p) {
        std::vector<Complex> c = p.coeffs_;
        for (auto& ci : c) {
            ci *= a;
        }
        return PowerSeries(std::move(c), p.radius_);
    }

    friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
        std::vector<Complex> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Complex(0.0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            c[i] += a.coeffs_[i];
        }
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) {
            c[i] += b.coeffs_[i];
        }
        return PowerSeries(std::move(c), std::min(a.radius_, b.radius_));
    }

private:
    std::vector<Complex> coeffs_;
    double radius_;
};

}  // namespace qklab
