#include "qcav/report/render.hpp"

#include <sstream>

#include "json.hpp"
#include "qcav/version.hpp"

namespace qcav::report {

std::string render_text(const FileReport &file) {
  std::ostringstream out;
  if (!file.ok) {
    out << file.path << ": error: " << file.error_message << "\n";
    return out.str();
  }
  out << file.path << ": " << scan::verdict_name(file.report.verdict) << "\n";
  for (const scan::MatchRun &run : file.report.runs) {
    out << "  run: " << run.signature_id << "  binding:";
    for (const auto &[var, qubit] : run.binding)
      out << " " << var << "=q[" << qubit << "]";
    out << "  k=" << run.k << "  start_index=" << run.start_instruction_index;
    if (!run.source_locations.empty())
      out << "  first_at=line " << run.source_locations.front().line;
    out << "\n";
  }
  for (const auto &[id, stats] : file.report.per_signature_counts)
    out << "  signature " << id << ": occurrences=" << stats.occurrences
        << " max_k=" << stats.max_k << "\n";
  return out.str();
}

std::string render_json(const std::vector<FileReport> &files) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = report_schema_version;
  doc["tool_version"] = version_string;
  doc["files"] = nlohmann::ordered_json::array();
  for (const FileReport &file : files) {
    nlohmann::ordered_json entry;
    entry["path"] = file.path;
    if (!file.ok) {
      entry["error"] = file.error_message;
      doc["files"].push_back(std::move(entry));
      continue;
    }
    entry["verdict"] = scan::verdict_name(file.report.verdict);
    auto runs = nlohmann::ordered_json::array();
    for (const scan::MatchRun &run : file.report.runs) {
      nlohmann::ordered_json r;
      r["signature_id"] = run.signature_id;
      nlohmann::ordered_json binding;
      for (const auto &[var, qubit] : run.binding)
        binding[var] = qubit;
      r["binding"] = std::move(binding);
      r["start_instruction_index"] = run.start_instruction_index;
      r["k"] = run.k;
      auto locations = nlohmann::ordered_json::array();
      for (const SourceLocation &loc : run.source_locations)
        locations.push_back({{"line", loc.line}, {"column", loc.column}});
      r["source_locations"] = std::move(locations);
      runs.push_back(std::move(r));
    }
    entry["runs"] = std::move(runs);
    nlohmann::ordered_json counts;
    for (const auto &[id, stats] : file.report.per_signature_counts)
      counts[id] = {{"occurrences", stats.occurrences},
                    {"max_k", stats.max_k}};
    entry["per_signature_counts"] = std::move(counts);
    doc["files"].push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

} // namespace qcav::report
