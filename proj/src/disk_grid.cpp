#include "qklab/disk_grid.hpp"

#include <cmath>

#include "qklab/errors.hpp"

namespace qklab {

namespace {

constexpr double kLocalRadius = 0.05;   // nodes closer than this to a singular center get refined
constexpr double kGradeFactor = 0.25;   // geometric grading ratio toward the singularity
constexpr double kGradeFloor = 1e-13;   // innermost breakpoint scale
constexpr int kGradeNodes = 12;         // Gauss nodes per graded level
constexpr int kLocalAngular = 32;

// Breakpoints rho_max * g^m, ..., rho_max, plus the closing 0.
std::vector<double> graded_breaks(double rho_max) {
    std::vector<double> rev;
    double b = rho_max;
    while (b > kGradeFloor) {
        rev.push_back(b);
        b *= kGradeFactor;
    }
    rev.push_back(0.0);
    return {rev.rbegin(), rev.rend()};
}

// Gauss-Legendre nodes/weights for integrating f(r) r dr over a union of
// radial intervals. Exactness on r means the weights of any partition sum to
// (b^2 - a^2)/2 exactly, which keeps the grid's total weight at r_max^2.
void append_radial(std::vector<double>& rs, std::vector<double>& ws, double a, double b, int n) {
    Quadrature q = gauss_legendre(n, a, b);
    rs.insert(rs.end(), q.x.begin(), q.x.end());
    ws.insert(ws.end(), q.w.begin(), q.w.end());
}

}  // namespace

DiskGrid::DiskGrid(const DiskGridSpec& spec) : spec_(spec) {
    if (!(spec_.r_max > 0.0) || spec_.r_max >= 1.0) {
        throw DomainError("DiskGrid: r_max must lie in (0, 1)");
    }
    if (spec_.radial_n < 4 || spec_.angular_n < 4) {
        throw DomainError("DiskGrid: radial_n and angular_n must be >= 4");
    }

    double dth = kTwoPi / spec_.angular_n;
    bool centered = spec_.singular_center && std::abs(*spec_.singular_center) < 1e-12 &&
                    spec_.r_max > kLocalRadius;

    std::vector<double> rs, ws;
    if (centered) {
        // Exact partition at the local radius; graded stack below it.
        auto breaks = graded_breaks(kLocalRadius);
        for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
            append_radial(rs, ws, breaks[i], breaks[i + 1], kGradeNodes);
        }
        append_radial(rs, ws, kLocalRadius, spec_.r_max, spec_.radial_n);
    } else {
        append_radial(rs, ws, 0.0, spec_.r_max, spec_.radial_n);
    }

    nodes_.reserve(rs.size() * spec_.angular_n);
    for (std::size_t i = 0; i < rs.size(); ++i) {
        double base_w = (1.0 / kPi) * ws[i] * rs[i] * dth;
        for (int j = 0; j < spec_.angular_n; ++j) {
            double th = dth * j;
            nodes_.push_back({rs[i] * Complex(std::cos(th), std::sin(th)), base_w});
        }
    }

    if (spec_.singular_center && !centered) {
        // Off-center singularity: swap the nodes near it for a graded local
        // polar patch, rescaled to carry exactly the weight that was removed.
        Complex c = *spec_.singular_center;
        double removed = 0.0;
        std::vector<GridNode> kept;
        kept.reserve(nodes_.size());
        for (const auto& node : nodes_) {
            if (std::abs(node.z - c) < kLocalRadius) {
                removed += node.w;
            } else {
                kept.push_back(node);
            }
        }
        if (removed > 0.0) {
            std::vector<double> lrs, lws;
            auto breaks = graded_breaks(kLocalRadius);
            for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
                append_radial(lrs, lws, breaks[i], breaks[i + 1], kGradeNodes);
            }
            double ldth = kTwoPi / kLocalAngular;
            std::vector<GridNode> local;
            double local_weight = 0.0;
            for (std::size_t i = 0; i < lrs.size(); ++i) {
                double base_w = (1.0 / kPi) * lws[i] * lrs[i] * ldth;
                for (int j = 0; j < kLocalAngular; ++j) {
                    double th = ldth * j;
                    Complex z = c + lrs[i] * Complex(std::cos(th), std::sin(th));
                    if (std::abs(z) <= spec_.r_max) {
                        local.push_back({z, base_w});
                        local_weight += base_w;
                    }
                }
            }
            if (local_weight > 0.0) {
                double scale = removed / local_weight;
                for (auto& node : local) {
                    node.w *= scale;
                    kept.push_back(node);
                }
            }
            nodes_ = std::move(kept);
        }
    }
}

double DiskGrid::weight_sum() const {
    KahanSum s;
    for (const auto& node : nodes_) {
        s.add(node.w);
    }
    return s.value();
}

double DiskGrid::integrate(const std::function<double(Complex)>& f) const {
    KahanSum s;
    for (const auto& node : nodes_) {
        s.add(node.w * f(node.z));
    }
    return s.value();
}

DiskGrid disk_quadrature(double r_max, int radial_n, int angular_n,
                         std::optional<Complex> singular_center) {
    DiskGridSpec spec;
    spec.r_max = r_max;
    spec.radial_n = radial_n;
    spec.angular_n = angular_n;
    spec.singular_center = singular_center;
    return DiskGrid(spec);
}

}  // namespace qklab
