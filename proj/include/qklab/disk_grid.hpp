#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "qklab/numeric.hpp"

namespace qklab {

struct GridNode {
    Complex z;
    double w;
};

struct DiskGridSpec {
    double r_max = 0.999;
    int radial_n = 64;
    int angular_n = 64;
    std::optional<Complex> singular_center;
};

/// Quadrature grid for the normalized area measure d(sigma) = (1/pi) dA on
/// the disk of radius r_max. Radial rule is Gauss-Legendre, angular rule is
/// the periodic trapezoid. Weights sum to r_max^2 (= sigma of the subdisk).
///
/// With a singular center the grid is locally refined there: a geometrically
/// graded radial stack resolves integrable log-type singularities, so that
/// integrands like K(g(a, z)) are handled without special casing. No node is
/// ever placed exactly at the singular point.
class DiskGrid {
public:
    explicit DiskGrid(const DiskGridSpec& spec);

    const std::vector<GridNode>& nodes() const { return nodes_; }
    const DiskGridSpec& spec() const { return spec_; }
    double r_max() const { return spec_.r_max; }

    double weight_sum() const;

    /// Kahan-compensated sum of w * f(z) over the nodes, in storage order.
    double integrate(const std::function<double(Complex)>& f) const;

private:
    DiskGridSpec spec_;
    std::vector<GridNode> nodes_;
};

DiskGrid disk_quadrature(double r_max, int radial_n, int angular_n,
                         std::optional<Complex> singular_center = std::nullopt);

}  // namespace qklab
