#include "qklab/report.hpp"

#include <filesystem>
#include <fstream>

namespace qklab {

namespace {

const char* bool_str(bool b) { return b ? "true" : "false"; }

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

// Minimal ordered JSON emitter; numbers go through fmt17 so the JSON and CSV
// renderings carry identical decimal strings.
class JsonWriter {
public:
    void begin_object() { token("{"); pushed_ = false; }
    void end_object() { raw_ += "}"; pushed_ = true; }
    void begin_array() { token("["); pushed_ = false; }
    void end_array() { raw_ += "]"; pushed_ = true; }
    void key(const std::string& k) {
        token("\"" + json_escape(k) + "\":");
        pushed_ = false;
    }
    void value(double v) { token(fmt17(v)); }
    void value(int v) { token(std::to_string(v)); }
    void value(bool v) { token(bool_str(v)); }
    void value(const std::string& v) { token("\"" + json_escape(v) + "\""); }
    const std::string& str() const { return raw_; }

private:
    void token(const std::string& t) {
        if (pushed_) {
            raw_ += ",";
        }
        raw_ += t;
        pushed_ = true;
    }
    std::string raw_;
    bool pushed_ = false;
};

std::string csv_field(const std::string& s) {
    if (s.find(',') == std::string::npos && s.find('"') == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += "\"\"";
        }
        out += c;
    }
    out += "\"";
    return out;
}

std::string write_file(const std::string& dir, const std::string& name,
                       const std::string& content) {
    std::filesystem::create_directories(dir);
    std::string path = dir + "/" + name;
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("emit_report: cannot write " + path);
    }
    out << content;
    return path;
}

}  // namespace

ReportFormat parse_format(const std::string& name) {
    if (name == "csv") {
        return ReportFormat::csv;
    }
    if (name == "json") {
        return ReportFormat::json;
    }
    throw DomainError("format must be csv or json");
}

std::vector<std::string> emit_report(const RunBundle& b, ReportFormat format,
                                     const std::string& out_dir) {
    std::vector<std::string> paths;
    if (format == ReportFormat::csv) {
        {
            std::string csv = "scenario_id,theta,r,deriv_order,re,im,abs,has_oracle,oracle_error\n";
            for (const auto& r : b.solve_rows) {
                csv += csv_field(b.scenario_id) + "," + fmt17(r.theta) + "," + fmt17(r.r) + "," +
                       std::to_string(r.deriv_order) + "," + fmt17(r.value.real()) + "," +
                       fmt17(r.value.imag()) + "," + fmt17(std::abs(r.value)) + "," +
                       bool_str(r.has_oracle) + "," + fmt17(r.oracle_error) + "\n";
            }
            paths.push_back(write_file(out_dir, "solve.csv", csv));
        }
        {
            std::string csv = "scenario_id,function,space,s,t,value,residual\n";
            for (const auto& r : b.norm_rows) {
                csv += csv_field(b.scenario_id) + "," + csv_field(r.function) + "," +
                       csv_field(r.space) + "," + fmt17(r.s) + "," + fmt17(r.t) + "," +
                       fmt17(r.value) + "," + fmt17(r.residual) + "\n";
            }
            paths.push_back(write_file(out_dir, "norms.csv", csv));
        }
        {
            std::string csv = "scenario_id,bound_id,theta,r,lhs,rhs,margin,pass\n";
            for (const auto& rep : b.bound_reports) {
                for (const auto& p : rep.points) {
                    csv += csv_field(b.scenario_id) + "," + csv_field(rep.bound_id) + "," +
                           fmt17(rep.theta) + "," + fmt17(p.r) + "," + fmt17(p.lhs) + "," +
                           fmt17(p.rhs) + "," + fmt17(p.rhs - p.lhs) + "," + bool_str(rep.pass) +
                           "\n";
                }
            }
            paths.push_back(write_file(out_dir, "bounds.csv", csv));
        }
        {
            std::string csv =
                "scenario_id,mode,item,weight_exponent,value,threshold,unbounded,divergent,"
                "heuristic,pass,overall\n";
            for (const auto& r : b.condition_rows) {
                csv += csv_field(b.scenario_id) + "," + csv_field(r.mode) + "," +
                       csv_field(r.item) + "," + fmt17(r.weight_exponent) + "," + fmt17(r.value) +
                       "," + fmt17(r.threshold) + "," + bool_str(r.unbounded) + "," +
                       bool_str(r.divergent) + "," + bool_str(r.heuristic) + "," +
                       bool_str(r.pass) + "," + bool_str(r.overall) + "\n";
            }
            paths.push_back(write_file(out_dir, "conditions.csv", csv));
        }
        {
            std::string csv =
                "scenario_id,theta,r,partial_sum,tail,kernel_lhs,kernel_rhs,solution_lhs,"
                "solution_rhs,levels,converged\n";
            for (const auto& r : b.volterra_rows) {
                csv += csv_field(b.scenario_id) + "," + fmt17(r.theta) + "," + fmt17(r.r) + "," +
                       fmt17(r.partial_sum) + "," + fmt17(r.tail) + "," + fmt17(r.kernel_lhs) +
                       "," + fmt17(r.kernel_rhs) + "," + fmt17(r.solution_lhs) + "," +
                       fmt17(r.solution_rhs) + "," + std::to_string(r.levels) + "," +
                       bool_str(r.converged) + "\n";
            }
            paths.push_back(write_file(out_dir, "volterra.csv", csv));
        }
        {
            std::string csv = "scenario_id,r_max,value,slope,trend,truncated\n";
            for (const auto& r : b.scan_rows) {
                csv += csv_field(b.scenario_id) + "," + fmt17(r.r_max) + "," + fmt17(r.value) +
                       "," + fmt17(r.slope) + "," + csv_field(r.trend) + "," +
                       bool_str(r.truncated) + "\n";
            }
            paths.push_back(write_file(out_dir, "scan.csv", csv));
        }
        {
            std::string csv = "scenario_id,experiment,message\n";
            for (const auto& r : b.errors) {
                csv += csv_field(b.scenario_id) + "," + csv_field(r.experiment) + "," +
                       csv_field(r.message) + "\n";
            }
            paths.push_back(write_file(out_dir, "errors.csv", csv));
        }
        return paths;
    }

    JsonWriter w;
    w.begin_object();
    w.key("scenario_id");
    w.value(b.scenario_id);
    w.key("solve");
    w.begin_array();
    for (const auto& r : b.solve_rows) {
        w.begin_object();
        w.key("theta"); w.value(r.theta);
        w.key("r"); w.value(r.r);
        w.key("deriv_order"); w.value(r.deriv_order);
        w.key("re"); w.value(r.value.real());
        w.key("im"); w.value(r.value.imag());
        w.key("abs"); w.value(std::abs(r.value));
        w.key("has_oracle"); w.value(r.has_oracle);
        w.key("oracle_error"); w.value(r.oracle_error);
        w.end_object();
    }
    w.end_array();
    w.key("norms");
    w.begin_array();
    for (const auto& r : b.norm_rows) {
        w.begin_object();
        w.key("function"); w.value(r.function);
        w.key("space"); w.value(r.space);
        w.key("s"); w.value(r.s);
        w.key("t"); w.value(r.t);
        w.key("value"); w.value(r.value);
        w.key("residual"); w.value(r.residual);
        w.end_object();
    }
    w.end_array();
    w.key("bounds");
    w.begin_array();
    for (const auto& rep : b.bound_reports) {
        for (const auto& p : rep.points) {
            w.begin_object();
            w.key("bound_id"); w.value(rep.bound_id);
            w.key("theta"); w.value(rep.theta);
            w.key("r"); w.value(p.r);
            w.key("lhs"); w.value(p.lhs);
            w.key("rhs"); w.value(p.rhs);
            w.key("margin"); w.value(p.rhs - p.lhs);
            w.key("pass"); w.value(rep.pass);
            w.end_object();
        }
    }
    w.end_array();
    w.key("conditions");
    w.begin_array();
    for (const auto& r : b.condition_rows) {
        w.begin_object();
        w.key("mode"); w.value(r.mode);
        w.key("item"); w.value(r.item);
        w.key("weight_exponent"); w.value(r.weight_exponent);
        w.key("value"); w.value(r.value);
        w.key("threshold"); w.value(r.threshold);
        w.key("unbounded"); w.value(r.unbounded);
        w.key("divergent"); w.value(r.divergent);
        w.key("heuristic"); w.value(r.heuristic);
        w.key("pass"); w.value(r.pass);
        w.key("overall"); w.value(r.overall);
        w.end_object();
    }
    w.end_array();
    w.key("volterra");
    w.begin_array();
    for (const auto& r : b.volterra_rows) {
        w.begin_object();
        w.key("theta"); w.value(r.theta);
        w.key("r"); w.value(r.r);
        w.key("partial_sum"); w.value(r.partial_sum);
        w.key("tail"); w.value(r.tail);
        w.key("kernel_lhs"); w.value(r.kernel_lhs);
        w.key("kernel_rhs"); w.value(r.kernel_rhs);
        w.key("solution_lhs"); w.value(r.solution_lhs);
        w.key("solution_rhs"); w.value(r.solution_rhs);
        w.key("levels"); w.value(r.levels);
        w.key("converged"); w.value(r.converged);
        w.end_object();
    }
    w.end_array();
    w.key("scan");
    w.begin_array();
    for (const auto& r : b.scan_rows) {
        w.begin_object();
        w.key("r_max"); w.value(r.r_max);
        w.key("value"); w.value(r.value);
        w.key("slope"); w.value(r.slope);
        w.key("trend"); w.value(r.trend);
        w.key("truncated"); w.value(r.truncated);
        w.end_object();
    }
    w.end_array();
    w.key("errors");
    w.begin_array();
    for (const auto& r : b.errors) {
        w.begin_object();
        w.key("experiment"); w.value(r.experiment);
        w.key("message"); w.value(r.message);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    paths.push_back(write_file(out_dir, "report.json", w.str() + "\n"));
    return paths;
}

}  // namespace qklab
