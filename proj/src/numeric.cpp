#include "qklab/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

namespace qklab {

std::vector<double> linspace(double a, double b, int n) {
    if (n < 2) {
        return {a};
    }
    std::vector<double> out(n);
    double h = (b - a) / (n - 1);
    for (int i = 0; i < n; ++i) {
        out[i] = a + h * i;
    }
    out.back() = b;
    return out;
}

Quadrature gauss_legendre(int n, double a, double b) {
    if (n < 1) {
        throw std::invalid_argument("gauss_legendre: n must be >= 1");
    }
    Quadrature q;
    q.x.resize(n);
    q.w.resize(n);
    // Roots of P_n by Newton iteration from the Chebyshev-like initial guess.
    int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                break;
            }
        }
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        q.x[i] = -x;
        q.x[n - 1 - i] = x;
        q.w[i] = w;
        q.w[n - 1 - i] = w;
    }
    double mid = 0.5 * (a + b);
    double half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        q.x[i] = mid + half * q.x[i];
        q.w[i] *= half;
    }
    return q;
}

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double fa,
                            double b, double fb, double fm, double whole, double tol,
                            int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m);
    double rm = 0.5 * (m + b);
    double flm = f(lm);
    double frm = f(rm);
    double left = simpson(a, fa, m, fm, flm);
    double right = simpson(m, fm, b, fb, frm);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson_rec(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
    if (a == b) {
        return 0.0;
    }
    double fa = f(a);
    double fb = f(b);
    double fm = f(0.5 * (a + b));
    double whole = simpson(a, fa, b, fb, fm);
    return adaptive_simpson_rec(f, a, fa, b, fb, fm, whole, tol, max_depth);
}

double unwrap_near(double principal_arg, double anchor) {
    double d = principal_arg - anchor;
    double k = std::round(d / kTwoPi);
    return principal_arg - k * kTwoPi;
}

Complex complex_power(Complex base, double exponent, double unwrapped_arg) {
    double mag = std::abs(base);
    if (mag == 0.0) {
        return Complex(0.0, 0.0);
    }
    double lm = exponent * std::log(mag);
    double ph = exponent * unwrapped_arg;
    return std::exp(lm) * Complex(std::cos(ph), std::sin(ph));
}

bool nearly_integer(double x, double eps) {
    return std::abs(x - std::round(x)) <= eps;
}

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return std::string(buf);
}

void parallel_for(int n, int threads, const std::function<void(int)>& body) {
    if (n <= 0) {
        return;
    }
    int t = std::max(1, std::min(threads, n));
    if (t == 1) {
        for (int i = 0; i < n; ++i) {
            body(i);
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (int w = 0; w < t; ++w) {
        pool.emplace_back([&, w]() {
            for (int i = w; i < n; i += t) {
                body(i);
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
}

}  // namespace qklab
