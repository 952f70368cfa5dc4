#pragma once

#include <map>
#include <string>
#include <vector>

namespace qklab {

struct BoundPoint {
    double r = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
};

/// One evaluated estimate: computed solution quantity (LHS) against the
/// theorem's right-hand side over a radial grid. The pass rule allows a
/// relative slack of 1e-6 plus an absolute 1e-9 for floating-point noise.
struct BoundReport {
    static constexpr double kRelSlack = 1e-6;
    static constexpr double kAbsSlack = 1e-9;

    std::string bound_id;
    std::string scenario_id;
    double theta = 0.0;
    std::vector<BoundPoint> points;
    double min_margin = 0.0;  // min over the grid of rhs - lhs
    bool pass = false;
    bool hypotheses_met = true;  // false => no pass/fail claim
    bool truncated = false;      // solution ended before the requested grid
    std::string note;
    std::map<std::string, double> metadata;

    void finalize() {
        pass = hypotheses_met;
        bool first = true;
        for (const auto& p : points) {
            double margin = p.rhs - p.lhs;
            if (first || margin < min_margin) {
                min_margin = margin;
                first = false;
            }
            if (!(p.lhs <= p.rhs * (1.0 + kRelSlack) + kAbsSlack)) {
                pass = false;
            }
        }
        if (!hypotheses_met) {
            pass = false;
        }
    }
};

}  // namespace qklab
