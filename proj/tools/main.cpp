#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "qklab/catalog.hpp"
#include "qklab/report.hpp"
#include "qklab/runner.hpp"

using namespace qklab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitExperimentFailure = 1;
constexpr int kExitInvalidInput = 2;

struct GlobalOpts {
    std::string out_dir = ".";
    std::string format = "csv";
    double tol = 1e-10;
    int threads = 1;
};

int run_bundle(const Scenario& scenario, const GlobalOpts& g) {
    RunBundle bundle = run_scenario(scenario, g.threads);
    auto paths = emit_report(bundle, parse_format(g.format), g.out_dir);
    for (const auto& p : paths) {
        std::cout << "wrote " << p << "\n";
    }
    for (const auto& err : bundle.errors) {
        std::cerr << "experiment '" << err.experiment << "' failed: " << err.message << "\n";
    }
    return bundle.ok() ? kExitOk : kExitExperimentFailure;
}

Scenario catalog_scenario(const std::string& name, const GlobalOpts& g, Experiment experiment) {
    Scenario s;
    s.id = name;
    s.equation.catalog_name = name;
    s.solver.tol = g.tol;
    s.out_dir = g.out_dir;
    s.format = g.format;
    s.experiments.push_back(std::move(experiment));
    if (!find_catalog_entry(name)) {
        std::string known;
        for (const auto& n : catalog_names()) {
            known += (known.empty() ? "" : ", ") + n;
        }
        throw ScenarioError({"catalog: unknown entry '" + name + "' (known: " + known + ")"});
    }
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical verification lab for nonlinear complex ODEs on the unit disk"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--out", g.out_dir, "Output directory for reports");
    app.add_option("--format", g.format, "Report format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--tol", g.tol, "Solver tolerance");
    app.add_option("--threads", g.threads, "Worker threads (affects speed only, never results)");

    std::string catalog_name = "exp_nonlinear";
    double kernel_p = 1.0;

    auto* solve = app.add_subcommand("solve", "Solve a catalog equation along a ray fan");
    solve->add_option("--catalog", catalog_name, "Catalog entry name");
    int rays = 8;
    double r_max = 0.999;
    solve->add_option("--rays", rays, "Number of rays");
    solve->add_option("--r-max", r_max, "Largest radius");

    auto* norms = app.add_subcommand("norms", "Coefficient norms of a catalog equation");
    norms->add_option("--catalog", catalog_name, "Catalog entry name");
    double norm_s = 1.0, norm_t = 2.0;
    norms->add_option("--s", norm_s, "Weight exponent s");
    norms->add_option("--t", norm_t, "Hardy integrability exponent t");

    auto* bounds = app.add_subcommand("bounds", "Evaluate the growth estimates");
    bounds->add_option("--catalog", catalog_name, "Catalog entry name");
    std::vector<std::string> which = {"growth", "derivative", "hinf", "bloch", "comparison"};
    bounds->add_option("--which", which, "Subset: growth derivative hinf bloch comparison");
    double bounds_r_max = 0.9;
    bounds->add_option("--r-max", bounds_r_max, "LHS grid extent");

    auto* conditions = app.add_subcommand("conditions", "Membership-theorem hypothesis checks");
    conditions->add_option("--catalog", catalog_name, "Catalog entry name");
    std::string mode = "thm_beta";
    double threshold = 0.1, cond_c = 1.25;
    conditions->add_option("--mode", mode, "thm_alpha or thm_beta")
        ->check(CLI::IsMember({"thm_alpha", "thm_beta"}));
    conditions->add_option("--threshold", threshold, "Coefficient sup threshold");
    conditions->add_option("--c", cond_c, "Exponent parameter for thm_alpha, in (1, 3/2)");
    conditions->add_option("--kernel-p", kernel_p, "Power kernel exponent");

    auto* volterra = app.add_subcommand("volterra", "Iterated-kernel solution bound");
    volterra->add_option("--catalog", catalog_name, "Catalog entry name");

    auto* scan = app.add_subcommand("scan", "Empirical Q_K membership scan");
    scan->add_option("--catalog", catalog_name, "Catalog entry name");
    scan->add_option("--kernel-p", kernel_p, "Power kernel exponent");
    std::vector<double> scan_r = {0.9, 0.99, 0.999};
    scan->add_option("--r-values", scan_r, "Increasing scan radii");

    auto* run = app.add_subcommand("run", "Run a scenario file");
    std::string scenario_path;
    run->add_option("scenario", scenario_path, "Scenario JSON path")->required();

    auto* validate = app.add_subcommand("validate", "Validate a scenario file and echo it back");
    validate->add_option("scenario", scenario_path, "Scenario JSON path")->required();

    auto* cat = app.add_subcommand("catalog", "Catalog inspection");
    auto* cat_list = cat->add_subcommand("list", "List catalog entries");

    for (auto* sub : app.get_subcommands({})) {
        sub->fallthrough();  // allow global flags after the subcommand
    }
    cat_list->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalidInput;
    }

    try {
        if (cat_list->parsed() || cat->parsed()) {
            for (const auto& e : catalog()) {
                std::printf("%-16s %s\n", e.name.c_str(), e.description.c_str());
            }
            return kExitOk;
        }
        if (validate->parsed()) {
            Scenario s = load_scenario(scenario_path);
            std::cout << scenario_to_json_text(s) << "\n";
            return kExitOk;
        }
        if (run->parsed()) {
            Scenario s = load_scenario(scenario_path);
            if (s.out_dir == ".") {
                s.out_dir = g.out_dir;
            }
            GlobalOpts local = g;
            local.out_dir = s.out_dir;
            local.format = s.format;
            return run_bundle(s, local);
        }
        if (solve->parsed()) {
            Scenario s = catalog_scenario(catalog_name, g, SolveExperiment{});
            s.solver.rays = rays;
            s.solver.r_max = r_max;
            return run_bundle(s, g);
        }
        if (norms->parsed()) {
            NormsExperiment e;
            e.s = norm_s;
            e.t = norm_t;
            return run_bundle(catalog_scenario(catalog_name, g, e), g);
        }
        if (bounds->parsed()) {
            BoundsExperiment e;
            e.which = which;
            if (bounds->count("--which") == 0) {
                // Default set: include the comparison check only when the
                // entry pairs a majorant problem.
                const CatalogEntry* entry = find_catalog_entry(catalog_name);
                if (entry && !entry->majorant) {
                    e.which = {"growth", "derivative", "hinf", "bloch"};
                }
            }
            e.r_max = bounds_r_max;
            return run_bundle(catalog_scenario(catalog_name, g, e), g);
        }
        if (conditions->parsed()) {
            ConditionsExperiment e;
            e.mode = mode;
            e.threshold = threshold;
            if (mode == "thm_alpha") {
                e.c = cond_c;
            }
            Scenario s = catalog_scenario(catalog_name, g, e);
            s.kernel.family = "power";
            s.kernel.p = kernel_p;
            return run_bundle(s, g);
        }
        if (volterra->parsed()) {
            return run_bundle(catalog_scenario(catalog_name, g, VolterraExperiment{}), g);
        }
        if (scan->parsed()) {
            ScanExperiment e;
            e.r_values = scan_r;
            Scenario s = catalog_scenario(catalog_name, g, e);
            s.kernel.family = "power";
            s.kernel.p = kernel_p;
            return run_bundle(s, g);
        }
    } catch (const ScenarioError& e) {
        std::cerr << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitExperimentFailure;
    }
    return kExitOk;
}
