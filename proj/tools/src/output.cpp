#include "gramframe_cli/output.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace gramframe::cli {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::ofstream open(const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  return f;
}

}  // namespace

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<Vector>& rows) {
  auto f = open(path);
  for (std::size_t j = 0; j < header.size(); ++j) f << (j ? "," : "") << header[j];
  if (!header.empty()) f << '\n';
  for (const Vector& r : rows) {
    for (std::size_t j = 0; j < r.size(); ++j) f << (j ? "," : "") << format_double(r[j]);
    f << '\n';
  }
}

void write_csv(const std::filesystem::path& path, const Matrix& m) {
  std::vector<Vector> rows;
  rows.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    rows.emplace_back(r.begin(), r.end());
  }
  write_csv(path, {}, rows);
}

void write_report(const std::filesystem::path& path, const nlohmann::json& report) {
  auto f = open(path);
  f << report.dump(2) << '\n';
}

nlohmann::json strip_wall_time(nlohmann::json report) {
  report.erase("wall_time_seconds");
  return report;
}

}  // namespace gramframe::cli
