#pragma once

namespace qcav {

inline constexpr const char *version_string = "0.1.0";

// Version of the JSON scan-report layout, independent of the tool version.
inline constexpr int report_schema_version = 1;

} // namespace qcav
