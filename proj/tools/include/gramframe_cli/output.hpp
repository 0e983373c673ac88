#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "gramframe/matrix.hpp"

namespace gramframe::cli {

/// %.17g, which round-trips every double.
std::string format_double(double x);

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<Vector>& rows);
void write_csv(const std::filesystem::path& path, const Matrix& m);

/// Two-space indented JSON with sorted keys and a trailing newline.
void write_report(const std::filesystem::path& path, const nlohmann::json& report);

/// Copy of a report without its wall_time_seconds field.
nlohmann::json strip_wall_time(nlohmann::json report);

}  // namespace gramframe::cli
