#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "ppn/outcomes.hpp"

namespace ppn {

using Json = nlohmann::ordered_json;

Json to_json(const CheckOutcome& c);
Json to_json(const PpnOutcome& p);
Json to_json(const StudyReport& r);

CheckOutcome check_from_json(const Json& j);
PpnOutcome ppn_from_json(const Json& j);
StudyReport report_from_json(const Json& j);

/// Serialized report text; identical reports give identical bytes.
std::string dump_report(const StudyReport& r);

/// K x K histogram grid rendered from a parsed report: diagonal cells show
/// the replicate histogram with the observed value marked, off-diagonal
/// cells overlay the two replicate sources, and a footer lists sym-KL.
std::string render_grid_svg(const Json& report);

/// Writes report.json, one CSV per grid cell and grid.svg into out_dir.
/// The SVG is rendered from report.json as read back from disk.
void emit_report(const StudyReport& report, const std::filesystem::path& out_dir);

/// File-system-safe form of a model id.
std::string file_stem(const std::string& id);

}  // namespace ppn
