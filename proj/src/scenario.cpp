#include "qklab/scenario.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qklab/catalog.hpp"

namespace qklab {

using nlohmann::json;

KernelWeight KernelDescriptor::build() const {
    if (family == "power") {
        return KernelWeight::power(p);
    }
    if (family == "constant") {
        return KernelWeight::constant(value);
    }
    if (family == "tabulated") {
        return KernelWeight::tabulated(t, k);
    }
    throw DomainError("KernelDescriptor: unknown family '" + family + "'");
}

Scenario::Resolved Scenario::resolve() const {
    Resolved out;
    if (!equation.catalog_name.empty()) {
        const CatalogEntry* entry = find_catalog_entry(equation.catalog_name);
        if (!entry) {
            throw ScenarioError({"equation.catalog: unknown entry '" + equation.catalog_name + "'"});
        }
        out.equation = entry->equation;
        out.nu = solver.nu.value_or(entry->nu);
        out.initial = entry->initial;
        out.entry = entry;
    } else {
        const InlineEquation& ie = *equation.inline_eq;
        out.equation.k = ie.k;
        out.equation.exponents = ie.exponents;
        for (const auto& c : ie.coefficients) {
            out.equation.coefficients.emplace_back(c);
        }
        out.equation.validate();
        out.nu = solver.nu.value_or(ie.nu);
        out.initial = ie.initial;
    }
    return out;
}

namespace {

struct Issues {
    std::vector<std::string> list;
    void add(const std::string& path, const std::string& msg) { list.push_back(path + ": " + msg); }
    void require(bool ok, const std::string& path, const std::string& msg) {
        if (!ok) {
            add(path, msg);
        }
    }
};

std::vector<Complex> parse_complex_array(const json& j, const std::string& path, Issues& issues) {
    std::vector<Complex> out;
    if (!j.is_array()) {
        issues.add(path, "expected an array of [re, im] pairs");
        return out;
    }
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& e = j[i];
        if (e.is_number()) {
            out.emplace_back(e.get<double>(), 0.0);
        } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
            out.emplace_back(e[0].get<double>(), e[1].get<double>());
        } else {
            issues.add(path + "[" + std::to_string(i) + "]", "expected [re, im] or a number");
        }
    }
    return out;
}

json complex_array_to_json(const std::vector<Complex>& v) {
    json out = json::array();
    for (const auto& c : v) {
        out.push_back(json::array({c.real(), c.imag()}));
    }
    return out;
}

Experiment parse_experiment(const json& j, const std::string& path, Issues& issues) {
    std::string type = j.value("type", "");
    if (type == "solve") {
        return SolveExperiment{};
    }
    if (type == "norms") {
        NormsExperiment e;
        e.s = j.value("s", e.s);
        e.t = j.value("t", e.t);
        issues.require(e.s >= 0.0, path + ".s", "must be >= 0");
        issues.require(e.t > 0.0, path + ".t", "must be > 0");
        return e;
    }
    if (type == "bounds") {
        BoundsExperiment e;
        if (j.contains("which")) {
            e.which = j["which"].get<std::vector<std::string>>();
            for (const auto& w : e.which) {
                issues.require(w == "growth" || w == "derivative" || w == "hinf" ||
                                   w == "bloch" || w == "comparison",
                               path + ".which", "unknown bound '" + w + "'");
            }
        }
        if (j.contains("epsilons")) {
            e.epsilons = j["epsilons"].get<std::vector<double>>();
            issues.require(!e.epsilons.empty(), path + ".epsilons", "must not be empty");
            for (double eps : e.epsilons) {
                issues.require(eps > 0.0, path + ".epsilons", "entries must be > 0");
            }
        }
        if (j.contains("hinf_s")) {
            e.hinf_s = j["hinf_s"].get<std::vector<double>>();
            for (double s : e.hinf_s) {
                issues.require(s >= 0.0 && s < 1.0, path + ".hinf_s", "entries must lie in [0,1)");
            }
        }
        e.r_max = j.value("r_max", e.r_max);
        issues.require(e.r_max > 0.0 && e.r_max < 1.0, path + ".r_max", "must lie in (0,1)");
        return e;
    }
    if (type == "conditions") {
        ConditionsExperiment e;
        e.mode = j.value("mode", e.mode);
        issues.require(e.mode == "thm_alpha" || e.mode == "thm_beta", path + ".mode",
                       "must be thm_alpha or thm_beta");
        e.threshold = j.value("threshold", e.threshold);
        issues.require(e.threshold > 0.0, path + ".threshold", "must be > 0");
        if (j.contains("c")) {
            e.c = j["c"].get<double>();
            issues.require(*e.c > 1.0 && *e.c < 1.5, path + ".c", "outside (1, 3/2)");
        }
        if (e.mode == "thm_alpha") {
            issues.require(e.c.has_value(), path + ".c", "required in thm_alpha mode");
        }
        return e;
    }
    if (type == "volterra") {
        VolterraExperiment e;
        if (j.contains("r_grid")) {
            e.r_grid = j["r_grid"].get<std::vector<double>>();
        }
        issues.require(!e.r_grid.empty(), path + ".r_grid", "must not be empty");
        for (std::size_t i = 0; i < e.r_grid.size(); ++i) {
            issues.require(e.r_grid[i] > 0.0 && e.r_grid[i] < 1.0 &&
                               (i == 0 || e.r_grid[i] > e.r_grid[i - 1]),
                           path + ".r_grid", "must be strictly increasing in (0, 1)");
        }
        e.tol = j.value("tol", e.tol);
        e.n_max = j.value("n_max", e.n_max);
        issues.require(e.tol > 0.0, path + ".tol", "must be > 0");
        issues.require(e.n_max >= 1, path + ".n_max", "must be >= 1");
        return e;
    }
    if (type == "scan") {
        ScanExperiment e;
        if (j.contains("r_values")) {
            e.r_values = j["r_values"].get<std::vector<double>>();
        }
        issues.require(!e.r_values.empty(), path + ".r_values", "must not be empty");
        for (std::size_t i = 0; i < e.r_values.size(); ++i) {
            issues.require(e.r_values[i] > 0.0 && e.r_values[i] < 1.0 &&
                               (i == 0 || e.r_values[i] > e.r_values[i - 1]),
                           path + ".r_values", "must be strictly increasing in (0, 1)");
        }
        e.form = j.value("form", e.form);
        issues.require(e.form == "area" || e.form == "green", path + ".form",
                       "must be area or green");
        return e;
    }
    issues.add(path + ".type", "unknown experiment type '" + type + "'");
    return SolveExperiment{};
}

json experiment_to_json(const Experiment& e) {
    json j;
    if (std::holds_alternative<SolveExperiment>(e)) {
        j["type"] = "solve";
    } else if (const auto* n = std::get_if<NormsExperiment>(&e)) {
        j["type"] = "norms";
        j["s"] = n->s;
        j["t"] = n->t;
    } else if (const auto* b = std::get_if<BoundsExperiment>(&e)) {
        j["type"] = "bounds";
        j["which"] = b->which;
        j["epsilons"] = b->epsilons;
        j["hinf_s"] = b->hinf_s;
        j["r_max"] = b->r_max;
    } else if (const auto* c = std::get_if<ConditionsExperiment>(&e)) {
        j["type"] = "conditions";
        j["mode"] = c->mode;
        j["threshold"] = c->threshold;
        if (c->c) {
            j["c"] = *c->c;
        }
    } else if (const auto* v = std::get_if<VolterraExperiment>(&e)) {
        j["type"] = "volterra";
        j["r_grid"] = v->r_grid;
        j["tol"] = v->tol;
        j["n_max"] = v->n_max;
    } else if (const auto* s = std::get_if<ScanExperiment>(&e)) {
        j["type"] = "scan";
        j["r_values"] = s->r_values;
        j["form"] = s->form;
    }
    return j;
}

}  // namespace

Scenario parse_scenario_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ScenarioError({std::string("json: ") + e.what()});
    }

    Issues issues;
    Scenario s;
    s.schema_version = j.value("schema_version", 1);
    issues.require(s.schema_version == 1, "schema_version", "only version 1 is supported");
    s.id = j.value("id", "");
    issues.require(!s.id.empty(), "id", "required");

    if (!j.contains("equation")) {
        issues.add("equation", "required");
    } else {
        const json& je = j["equation"];
        if (je.contains("catalog")) {
            s.equation.catalog_name = je["catalog"].get<std::string>();
            if (!find_catalog_entry(s.equation.catalog_name)) {
                std::string known;
                for (const auto& n : catalog_names()) {
                    known += (known.empty() ? "" : ", ") + n;
                }
                issues.add("equation.catalog",
                           "unknown entry '" + s.equation.catalog_name + "' (known: " + known + ")");
            }
        } else {
            InlineEquation ie;
            ie.k = je.value("k", 0);
            issues.require(ie.k >= 1, "equation.k", "must be >= 1");
            if (je.contains("exponents")) {
                ie.exponents = je["exponents"].get<std::vector<double>>();
            }
            issues.require(static_cast<int>(ie.exponents.size()) == ie.k + 1,
                           "equation.exponents", "need k+1 entries n_0..n_k");
            for (double n : ie.exponents) {
                issues.require(n > 0.0, "equation.exponents", "entries must be > 0");
            }
            if (je.contains("coefficients") && je["coefficients"].is_array()) {
                for (std::size_t i = 0; i < je["coefficients"].size(); ++i) {
                    ie.coefficients.push_back(parse_complex_array(
                        je["coefficients"][i], "equation.coefficients[" + std::to_string(i) + "]",
                        issues));
                }
            }
            issues.require(static_cast<int>(ie.coefficients.size()) == ie.k,
                           "equation.coefficients", "need k coefficient series A_0..A_{k-1}");
            ie.nu = je.value("nu", 0.0);
            issues.require(ie.nu >= 0.0 && ie.nu < 1.0, "equation.nu", "must lie in [0, 1)");
            if (je.contains("initial")) {
                ie.initial = parse_complex_array(je["initial"], "equation.initial", issues);
            }
            issues.require(static_cast<int>(ie.initial.size()) == ie.k, "equation.initial",
                           "need k initial values f^(0)..f^(k-1)");
            s.equation.inline_eq = std::move(ie);
        }
    }

    if (j.contains("kernel")) {
        const json& jk = j["kernel"];
        s.kernel.family = jk.value("family", "power");
        issues.require(s.kernel.family == "power" || s.kernel.family == "constant" ||
                           s.kernel.family == "tabulated",
                       "kernel.family", "must be power, constant or tabulated");
        s.kernel.p = jk.value("p", 1.0);
        s.kernel.value = jk.value("value", 1.0);
        if (s.kernel.family == "power") {
            issues.require(s.kernel.p > 0.0, "kernel.p", "must be > 0");
        }
        if (s.kernel.family == "constant") {
            issues.require(s.kernel.value > 0.0, "kernel.value", "must be > 0");
        }
        if (s.kernel.family == "tabulated") {
            if (jk.contains("t")) {
                s.kernel.t = jk["t"].get<std::vector<double>>();
            }
            if (jk.contains("K")) {
                s.kernel.k = jk["K"].get<std::vector<double>>();
            }
            issues.require(s.kernel.t.size() == s.kernel.k.size() && s.kernel.t.size() >= 2,
                           "kernel.t", "need matching t/K sample arrays of length >= 2");
        }
    }

    if (j.contains("solver")) {
        const json& js = j["solver"];
        s.solver.tol = js.value("tol", s.solver.tol);
        s.solver.r_max = js.value("r_max", s.solver.r_max);
        s.solver.rays = js.value("rays", s.solver.rays);
        if (js.contains("nu")) {
            s.solver.nu = js["nu"].get<double>();
        }
        issues.require(s.solver.tol > 0.0, "solver.tol", "must be > 0");
        issues.require(s.solver.r_max > 0.0 && s.solver.r_max < 1.0, "solver.r_max",
                       "must lie in (0, 1)");
        issues.require(s.solver.rays >= 1, "solver.rays", "must be >= 1");
        if (s.solver.nu) {
            issues.require(*s.solver.nu >= 0.0 && *s.solver.nu < s.solver.r_max, "solver.nu",
                           "must lie in [0, r_max)");
        }
    }

    if (j.contains("experiments")) {
        issues.require(j["experiments"].is_array(), "experiments", "must be an array");
        if (j["experiments"].is_array()) {
            for (std::size_t i = 0; i < j["experiments"].size(); ++i) {
                s.experiments.push_back(parse_experiment(
                    j["experiments"][i], "experiments[" + std::to_string(i) + "]", issues));
            }
        }
    }

    if (j.contains("output")) {
        s.out_dir = j["output"].value("dir", s.out_dir);
        s.format = j["output"].value("format", s.format);
        issues.require(s.format == "csv" || s.format == "json", "output.format",
                       "must be csv or json");
    }

    if (!issues.list.empty()) {
        throw ScenarioError(issues.list);
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ScenarioError({"file: cannot open '" + path + "'"});
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario_text(ss.str());
}

std::string scenario_to_json_text(const Scenario& s) {
    json j;
    j["schema_version"] = s.schema_version;
    j["id"] = s.id;
    if (!s.equation.catalog_name.empty()) {
        j["equation"] = {{"catalog", s.equation.catalog_name}};
    } else {
        const InlineEquation& ie = *s.equation.inline_eq;
        json je;
        je["k"] = ie.k;
        je["exponents"] = ie.exponents;
        json coeffs = json::array();
        for (const auto& c : ie.coefficients) {
            coeffs.push_back(complex_array_to_json(c));
        }
        je["coefficients"] = coeffs;
        je["nu"] = ie.nu;
        je["initial"] = complex_array_to_json(ie.initial);
        j["equation"] = je;
    }
    json jk;
    jk["family"] = s.kernel.family;
    if (s.kernel.family == "power") {
        jk["p"] = s.kernel.p;
    } else if (s.kernel.family == "constant") {
        jk["value"] = s.kernel.value;
    } else {
        jk["t"] = s.kernel.t;
        jk["K"] = s.kernel.k;
    }
    j["kernel"] = jk;
    json js;
    js["tol"] = s.solver.tol;
    js["r_max"] = s.solver.r_max;
    js["rays"] = s.solver.rays;
    if (s.solver.nu) {
        js["nu"] = *s.solver.nu;
    }
    j["solver"] = js;
    json exps = json::array();
    for (const auto& e : s.experiments) {
        exps.push_back(experiment_to_json(e));
    }
    j["experiments"] = exps;
    j["output"] = {{"dir", s.out_dir}, {"format", s.format}};
    return j.dump(2);
}

}  // namespace qklab
