#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace qklab {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Compensated (Kahan) accumulator. Used for all quadrature reductions so
/// results do not depend on how work was partitioned across threads.
class KahanSum {
public:
    void add(double x) {
        double y = x - carry_;
        double t = sum_ + y;
        carry_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

std::vector<double> linspace(double a, double b, int n);

/// Gauss-Legendre rule mapped to [a, b].
struct Quadrature {
    std::vector<double> x;
    std::vector<double> w;
};
Quadrature gauss_legendre(int n, double a, double b);

/// Adaptive Simpson integration with absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12, int max_depth = 48);

/// Cubic Hermite interpolation of (y0, m0) at x0 and (y1, m1) at x1.
template <typename T>
T hermite(double x, double x0, double x1, T y0, T y1, T m0, T m1) {
    double h = x1 - x0;
    double u = (x - x0) / h;
    double u2 = u * u;
    double u3 = u2 * u;
    double h00 = 2 * u3 - 3 * u2 + 1;
    double h10 = u3 - 2 * u2 + u;
    double h01 = -2 * u3 + 3 * u2;
    double h11 = u3 - u2;
    return h00 * y0 + (h10 * h) * m0 + h01 * y1 + (h11 * h) * m1;
}

/// Principal-value argument shifted by a multiple of 2*pi to land nearest
/// `anchor`. This is the unwrap step of continuous branch tracking.
double unwrap_near(double principal_arg, double anchor);

/// |base|^p * exp(i * p * phase) with a caller-supplied continuous phase.
Complex complex_power(Complex base, double exponent, double unwrapped_arg);

/// True when x is within eps of an integer.
bool nearly_integer(double x, double eps = 1e-12);

/// Fixed 17-significant-digit decimal rendering shared by the CSV and JSON
/// writers so both emit bit-identical number strings.
std::string fmt17(double x);

/// Runs body(i) for i in [0, n). With threads > 1 the indices are
/// partitioned round-robin; each index writes only its own output slot, so
/// results are independent of the thread count.
void parallel_for(int n, int threads, const std::function<void(int)>& body);

}  // namespace qklab
