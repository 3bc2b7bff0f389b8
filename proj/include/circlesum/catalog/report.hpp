#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace circlesum {

/// Environment variable naming the report output directory.
inline constexpr const char* kReportDirEnv = "CIRCLESUM_REPORT_DIR";

/// Explicit directory if given, else the environment variable, else none
/// (reports then go to stdout only).
std::optional<std::filesystem::path> report_dir(const std::optional<std::string>& explicit_dir);

/// Writes via a temporary file in the same directory and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Stable JSON text: two-space indent, trailing newline.
std::string dump_json(const nlohmann::json& j);

}  // namespace circlesum
