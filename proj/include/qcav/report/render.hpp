#pragma once

#include <string>
#include <vector>

#include "qcav/scan/scanner.hpp"

namespace qcav::report {

// Outcome of scanning one input file. When ok is false the file failed to
// parse or lower and only error_message is meaningful.
struct FileReport {
  std::string path;
  bool ok = false;
  std::string error_message;
  scan::ScanReport report;
};

// Human-readable block for one file, newline terminated.
std::string render_text(const FileReport &file);

// One JSON document covering the whole invocation: schema_version,
// tool_version, then a files array mirroring the ScanReport fields.
// Key order is fixed so consumers can diff outputs.
std::string render_json(const std::vector<FileReport> &files);

} // namespace qcav::report
