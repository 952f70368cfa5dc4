#pragma once

#include "qklab/bound_report.hpp"
#include "qklab/scenario.hpp"

namespace qklab {

struct SolveRow {
    double theta = 0.0;
    double r = 0.0;
    int deriv_order = 0;
    Complex value;
    bool has_oracle = false;
    double oracle_error = 0.0;
};

struct NormRow {
    std::string function;  // which coefficient
    std::string space;     // bloch | bers | hardy
    double s = 0.0;
    double t = 0.0;
    double value = 0.0;
    double residual = 0.0;
};

struct ConditionRow {
    std::string mode;
    std::string item;  // A_j or "kernel"
    double weight_exponent = 0.0;
    double value = 0.0;
    double threshold = 0.0;
    bool unbounded = false;
    bool divergent = false;
    bool heuristic = false;
    bool pass = false;
    bool overall = false;
};

struct VolterraRow {
    double theta = 0.0;
    double r = 0.0;
    double partial_sum = 0.0;
    double tail = 0.0;
    double kernel_lhs = 0.0;
    double kernel_rhs = 0.0;
    double solution_lhs = 0.0;
    double solution_rhs = 0.0;
    int levels = 0;
    bool converged = false;
};

struct ScanRow {
    double r_max = 0.0;
    double value = 0.0;
    double slope = 0.0;
    std::string trend;
    bool truncated = false;
};

struct ExperimentError {
    std::string experiment;
    std::string message;
};

struct RunBundle {
    std::string scenario_id;
    std::vector<SolveRow> solve_rows;
    std::vector<NormRow> norm_rows;
    std::vector<BoundReport> bound_reports;
    std::vector<ConditionRow> condition_rows;
    std::vector<VolterraRow> volterra_rows;
    std::vector<ScanRow> scan_rows;
    std::vector<ExperimentError> errors;

    bool ok() const { return errors.empty(); }
};

/// Executes the scenario's experiments in dependency order (solves are
/// cached and always precede the experiments consuming them). Per-experiment
/// failures are recorded in the bundle rather than aborting the run.
RunBundle run_scenario(const Scenario& scenario, int threads = 1);

}  // namespace qklab
