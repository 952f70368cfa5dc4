#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qklab/conditions.hpp"
#include "qklab/equation.hpp"
#include "qklab/kernel_weight.hpp"

namespace qklab {

struct InlineEquation {
    int k = 1;
    std::vector<double> exponents;
    std::vector<std::vector<Complex>> coefficients;  // Taylor coefficients per A_j
    double nu = 0.0;
    std::vector<Complex> initial;

    bool operator==(const InlineEquation&) const = default;
};

struct ScenarioEquation {
    std::string catalog_name;                 // empty when inline
    std::optional<InlineEquation> inline_eq;

    bool operator==(const ScenarioEquation&) const = default;
};

struct KernelDescriptor {
    std::string family = "power";  // power | constant | tabulated
    double p = 1.0;
    double value = 1.0;
    std::vector<double> t, k;

    KernelWeight build() const;
    bool operator==(const KernelDescriptor&) const = default;
};

struct SolverSettings {
    double tol = 1e-10;
    double r_max = 0.999;
    int rays = 8;
    std::optional<double> nu;  // default: the catalog entry's start radius

    bool operator==(const SolverSettings&) const = default;
};

struct SolveExperiment {
    bool operator==(const SolveExperiment&) const = default;
};

struct NormsExperiment {
    double s = 1.0;
    double t = 2.0;

    bool operator==(const NormsExperiment&) const = default;
};

struct BoundsExperiment {
    std::vector<std::string> which = {"growth", "derivative", "hinf", "bloch", "comparison"};
    std::vector<double> epsilons = {0.1, 0.5};
    std::vector<double> hinf_s = {0.0, 0.5};
    double r_max = 0.9;

    bool operator==(const BoundsExperiment&) const = default;
};

struct ConditionsExperiment {
    std::string mode = "thm_beta";  // thm_alpha | thm_beta
    double threshold = 0.1;
    std::optional<double> c;

    bool operator==(const ConditionsExperiment&) const = default;
};

struct VolterraExperiment {
    std::vector<double> r_grid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    double tol = 1e-10;
    int n_max = 60;

    bool operator==(const VolterraExperiment&) const = default;
};

struct ScanExperiment {
    std::vector<double> r_values = {0.9, 0.99, 0.999};
    std::string form = "area";  // area (derivative characterization) | green

    bool operator==(const ScanExperiment&) const = default;
};

using Experiment = std::variant<SolveExperiment, NormsExperiment, BoundsExperiment,
                                ConditionsExperiment, VolterraExperiment, ScanExperiment>;

struct Scenario {
    int schema_version = 1;
    std::string id;
    ScenarioEquation equation;
    KernelDescriptor kernel;
    SolverSettings solver;
    std::vector<Experiment> experiments;
    std::string out_dir = ".";
    std::string format = "csv";

    bool operator==(const Scenario&) const = default;

    /// Resolves to the concrete equation + start data (catalog or inline).
    struct Resolved {
        EquationSpec equation;
        double nu = 0.0;
        std::vector<Complex> initial;
        const struct CatalogEntry* entry = nullptr;  // null for inline equations
    };
    Resolved resolve() const;
};

/// Parses and validates; throws ScenarioError carrying one message per
/// offending field (unknown catalog names are listed with the known ones).
Scenario load_scenario(const std::string& path);
Scenario parse_scenario_text(const std::string& text);
std::string scenario_to_json_text(const Scenario& s);

}  // namespace qklab
