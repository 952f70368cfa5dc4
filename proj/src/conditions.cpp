#include "qklab/conditions.hpp"

#include <algorithm>
#include <cmath>

#include "qklab/mobius.hpp"

namespace qklab {

namespace {

// sup over the grid of |A(z)| (1-|z|^2)^e for a real exponent e (possibly
// negative), with the same local polish as the norm searches.
double weighted_sup(const PowerSeries& a, double e, const DiskGrid& grid) {
    auto value = [&](double r, double th) {
        Complex z = r * Complex(std::cos(th), std::sin(th));
        return std::abs(a.eval(z)) * std::pow(1.0 - r * r, e);
    };
    double best = value(0.0, 0.0);
    double br = 0.0, bth = 0.0;
    for (const auto& node : grid.nodes()) {
        double r = std::abs(node.z);
        double v = std::abs(a.eval(node.z)) * std::pow(1.0 - r * r, e);
        if (v > best) {
            best = v;
            br = r;
            bth = std::arg(node.z);
        }
    }
    double dr = grid.r_max() / grid.spec().radial_n;
    double dth = kTwoPi / grid.spec().angular_n;
    for (int iter = 0; iter < 14; ++iter) {
        for (int i = -4; i <= 4; ++i) {
            for (int j = -4; j <= 4; ++j) {
                double r = std::clamp(br + dr * i / 4.0, 0.0, grid.r_max());
                double th = bth + dth * j / 4.0;
                double v = value(r, th);
                if (v > best) {
                    best = v;
                    br = r;
                    bth = th;
                }
            }
        }
        dr /= 3.0;
        dth /= 3.0;
    }
    return best;
}

}  // namespace

HypothesesVerdict check_hypotheses(const EquationSpec& eq, const ConditionCheckConfig& cfg) {
    eq.validate();
    if (!eq.membership_pattern()) {
        throw HypothesisError("check_hypotheses: requires n_k >= n_j > 1 for all j < k");
    }
    if (cfg.mode == TheoremMode::thm_alpha) {
        if (!cfg.c) {
            throw DomainError("check_hypotheses: thm_alpha mode requires c");
        }
        if (!(*cfg.c > 1.0) || !(*cfg.c < 1.5)) {
            throw DomainError("check_hypotheses: c must lie in (1, 3/2)");
        }
    }
    if (!(cfg.threshold > 0.0)) {
        throw DomainError("check_hypotheses: threshold must be > 0");
    }

    DiskGrid grid(cfg.grid);
    double nk = eq.nk();
    HypothesesVerdict verdict;
    bool all_pass = true;
    for (int j = 0; j < eq.k; ++j) {
        CoefficientVerdict cv;
        cv.j = j;
        if (j == 0) {
            cv.weight_exponent = (cfg.mode == TheoremMode::thm_alpha) ? nk * (eq.k - *cfg.c)
                                                                      : nk * (eq.k - 1.0);
        } else {
            cv.weight_exponent = nk * (eq.k - j);
        }
        const PowerSeries& a = eq.coefficients[j];
        if (a.is_identically_zero()) {
            cv.sup_value = 0.0;
            cv.passes = true;
        } else if (cv.weight_exponent < 0.0) {
            // Negative weight exponent against a nonzero analytic coefficient:
            // the sup grows without bound as the grid radius approaches 1.
            cv.unbounded = true;
            cv.sup_value = weighted_sup(a, cv.weight_exponent, grid);
            cv.passes = false;
        } else {
            cv.sup_value = weighted_sup(a, cv.weight_exponent, grid);
            cv.passes = cv.sup_value <= cfg.threshold;
        }
        all_pass = all_pass && cv.passes;
        verdict.coefficients.push_back(cv);
    }

    verdict.kernel = (cfg.mode == TheoremMode::thm_alpha) ? condition_22(cfg.kernel, *cfg.c)
                                                          : condition_43(cfg.kernel);
    verdict.overall = all_pass && verdict.kernel.pass;
    return verdict;
}

MembershipScan membership_scan(const EquationSpec& eq, const KernelWeight& kernel,
                               std::span<const Complex> a_grid,
                               std::span<const double> r_max_seq,
                               std::span<const Complex> init, const ScanSettings& settings) {
    eq.validate();
    if (r_max_seq.empty()) {
        throw DomainError("membership_scan: empty r_max sequence");
    }
    for (std::size_t i = 0; i < r_max_seq.size(); ++i) {
        if (r_max_seq[i] >= 1.0 || (i > 0 && r_max_seq[i] <= r_max_seq[i - 1])) {
            throw DomainError("membership_scan: r_max values must increase toward 1");
        }
    }
    int d = settings.derivative_order;
    if (d <= 0) {
        d = (settings.form == QkKernelForm::green) ? 1 : eq.k;
    }

    MembershipScan scan;
    scan.r_values.assign(r_max_seq.begin(), r_max_seq.end());

    // One fan to the largest radius; nested radial blocks keep the subdisk
    // sums exactly cumulative (hence monotone).
    double r_top = r_max_seq.back();
    std::vector<double> thetas(settings.rays);
    for (int i = 0; i < settings.rays; ++i) {
        thetas[i] = kTwoPi * i / settings.rays;
    }
    struct RadialNode {
        double r, w;
        std::size_t block;
    };
    std::vector<RadialNode> radial;
    double lo = 0.0;
    for (std::size_t b = 0; b < r_max_seq.size(); ++b) {
        Quadrature q = gauss_legendre(settings.radial_block_n, lo, r_max_seq[b]);
        for (int i = 0; i < settings.radial_block_n; ++i) {
            radial.push_back({q.x[i], q.w[i], b});
        }
        lo = r_max_seq[b];
    }
    std::vector<double> node_radii;
    node_radii.reserve(radial.size());
    for (const auto& rn : radial) {
        node_radii.push_back(rn.r);
    }

    std::vector<Complex> iv(init.begin(), init.end());
    auto fan = solve_fan(
        eq, thetas, 0.0, r_top, [&](double) { return iv; }, settings.tol, settings.threads,
        node_radii);
    double covered = r_top;
    for (const auto& ray : fan) {
        if (ray.truncated()) {
            scan.truncated = true;
            covered = std::min(covered, ray.r_end);
        }
    }

    double dth = kTwoPi / settings.rays;
    double weight_exp = 2.0 * d - 2.0;
    std::size_t usable_blocks = 0;
    for (std::size_t b = 0; b < r_max_seq.size(); ++b) {
        if (r_max_seq[b] <= covered + 1e-12) {
            usable_blocks = b + 1;
        }
    }

    // Per-base-point cumulative block sums, then sup over base points.
    std::vector<double> values(usable_blocks, 0.0);
    std::vector<double> per_a(usable_blocks, 0.0);
    for (const auto& a : a_grid) {
        std::fill(per_a.begin(), per_a.end(), 0.0);
        std::size_t block = 0;
        KahanSum acc;
        for (const auto& rn : radial) {
            if (rn.block >= usable_blocks) {
                break;
            }
            if (rn.block != block) {
                per_a[block] = acc.value();
                block = rn.block;
            }
            for (int t = 0; t < settings.rays; ++t) {
                Complex z = rn.r * Complex(std::cos(thetas[t]), std::sin(thetas[t]));
                Complex fd = fan[t].deriv_at(rn.r, d);
                MobiusGreen mg = mobius_and_green(a, z);
                if (mg.singular) {
                    continue;
                }
                double arg = (settings.form == QkKernelForm::green) ? mg.green
                                                                    : 1.0 - std::norm(mg.phi);
                double w = (1.0 / kPi) * rn.w * rn.r * dth;
                double wt = (weight_exp == 0.0) ? 1.0 : std::pow(1.0 - rn.r * rn.r, weight_exp);
                acc.add(w * std::norm(fd) * wt * kernel(arg));
            }
        }
        if (usable_blocks > 0) {
            per_a[block] = acc.value();
        }
        for (std::size_t b = 0; b < usable_blocks; ++b) {
            values[b] = std::max(values[b], per_a[b]);
        }
    }
    scan.qk_values = values;

    // log(value) against log(1/(1-r)) by least squares.
    std::vector<double> xs, ys;
    for (std::size_t b = 0; b < values.size(); ++b) {
        if (values[b] > 1e-300) {
            xs.push_back(std::log(1.0 / (1.0 - scan.r_values[b])));
            ys.push_back(std::log(values[b]));
        }
    }
    if (xs.size() >= 2) {
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            mx += xs[i];
            my += ys[i];
        }
        mx /= xs.size();
        my /= ys.size();
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            num += (xs[i] - mx) * (ys[i] - my);
            den += (xs[i] - mx) * (xs[i] - mx);
        }
        scan.slope = (den > 0.0) ? num / den : 0.0;
    } else {
        scan.slope = 0.0;  // all-zero scans count as flat
    }
    scan.trend = (scan.slope < 0.05)  ? ScanTrend::bounded_looking
                 : (scan.slope > 0.5) ? ScanTrend::growing
                                      : ScanTrend::inconclusive;
    return scan;
}

const char* to_string(ScanTrend trend) {
    switch (trend) {
        case ScanTrend::bounded_looking:
            return "bounded-looking";
        case ScanTrend::growing:
            return "growing";
        case ScanTrend::inconclusive:
            return "inconclusive";
    }
    return "?";
}

}  // namespace qklab
