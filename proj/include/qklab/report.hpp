#pragma once

#include "qklab/runner.hpp"

namespace qklab {

enum class ReportFormat { csv, json };

/// Writes the bundle under out_dir: one CSV per experiment type (headers are
/// always present, so an empty bundle yields headers-only files) or a single
/// report.json. Both renderings print numbers through the same 17-digit
/// formatter. Returns the paths written.
std::vector<std::string> emit_report(const RunBundle& bundle, ReportFormat format,
                                     const std::string& out_dir);

ReportFormat parse_format(const std::string& name);

}  // namespace qklab
