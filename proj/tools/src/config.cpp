#include "gramframe_cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "gramframe/error.hpp"
#include "gramframe/quadrature.hpp"

namespace gramframe::cli {

using nlohmann::json;

namespace {

std::string join(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

void require_object(const json& j, const std::string& field) {
  if (!j.is_object()) throw ConfigError(field.empty() ? "<root>" : field, "expected an object");
}

void reject_unknown(const json& j, const std::string& field, const std::set<std::string>& allowed) {
  for (const auto& [key, _] : j.items())
    if (!allowed.contains(key)) throw ConfigError(join(field, key), "unknown key");
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) throw ConfigError(field, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw ConfigError(field, "expected a finite number");
  return x;
}

double positive(const json& j, const std::string& field) {
  const double x = number(j, field);
  if (!(x > 0.0)) throw ConfigError(field, "expected a positive number");
  return x;
}

std::size_t count(const json& j, const std::string& field, std::size_t min = 1) {
  if (!j.is_number_integer() || (!j.is_number_unsigned() && j.get<std::int64_t>() < 0))
    throw ConfigError(field, "expected a non-negative integer");
  const auto n = j.get<std::uint64_t>();
  if (n < min) throw ConfigError(field, "must be at least " + std::to_string(min));
  return static_cast<std::size_t>(n);
}

Vector vector_of(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw ConfigError(field, "expected a non-empty array of numbers");
  Vector v;
  v.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(number(j[i], field + "[" + std::to_string(i) + "]"));
  return v;
}

std::vector<std::size_t> counts_of(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw ConfigError(field, "expected a non-empty array of integers");
  std::vector<std::size_t> v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(count(j[i], field + "[" + std::to_string(i) + "]"));
  return v;
}

Matrix matrix_of(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw ConfigError(field, "expected a non-empty array of rows");
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    rows.push_back(vector_of(j[i], field + "[" + std::to_string(i) + "]"));
    if (rows.back().size() != rows.front().size()) throw ConfigError(field, "rows have different lengths");
  }
  return Matrix::from_rows(rows);
}

Matrix square_of(const json& j, const std::string& field) {
  Matrix m = matrix_of(j, field);
  if (m.rows() != m.cols()) throw ConfigError(field, "expected a square matrix");
  return m;
}

const json& required(const json& j, const std::string& key, const std::string& parent) {
  if (!j.contains(key)) throw ConfigError(join(parent, key), "missing");
  return j.at(key);
}

std::string id_of(const json& sys, const std::string& fallback) {
  if (!sys.contains("id")) return fallback;
  if (!sys.at("id").is_string()) throw ConfigError("system.id", "expected a string");
  return sys.at("id").get<std::string>();
}

VectorSystem parse_sampled(const json& sys) {
  reject_unknown(sys, "system", {"kind", "id", "values", "grid", "rule", "weights"});
  Matrix values = matrix_of(required(sys, "values", "system"), "system.values");
  Vector grid = vector_of(required(sys, "grid", "system"), "system.grid");
  if (sys.contains("rule") && !sys.at("rule").is_string()) throw ConfigError("system.rule", "expected a string");
  try {
    if (sys.contains("weights")) {
      const std::string label = sys.contains("rule") ? sys.at("rule").get<std::string>() : "custom";
      return make_sampled(std::move(values), std::move(grid), vector_of(sys.at("weights"), "system.weights"), label);
    }
    const std::string name = required(sys, "rule", "system").get<std::string>();
    if (name == "counting") {
      const std::size_t m = grid.size();
      return make_sampled(std::move(values), std::move(grid), Vector(m, 1.0), "counting");
    }
    const auto kind = parse_quadrature_kind(name);
    if (!kind) throw ConfigError("system.rule", "unknown rule '" + name + "'");
    const QuadratureRule rule(*kind, grid.size(), grid.front(), grid.back());
    return make_sampled(std::move(values), std::move(grid), rule);
  } catch (const Error& e) {
    throw ConfigError("system", e.what());
  }
}

VectorSystem parse_system(const json& sys) {
  require_object(sys, "system");
  const json& kind_j = required(sys, "kind", "system");
  if (!kind_j.is_string()) throw ConfigError("system.kind", "expected a string");
  const std::string kind = kind_j.get<std::string>();
  if (kind == "explicit") {
    reject_unknown(sys, "system", {"kind", "id", "vectors"});
    return VectorSystem::explicit_finite(matrix_of(required(sys, "vectors", "system"), "system.vectors"),
                                         id_of(sys, "explicit"));
  }
  if (kind == "sampled") return parse_sampled(sys);
  if (kind == "kernel") {
    reject_unknown(sys, "system", {"kind", "id", "matrix"});
    const Matrix m = square_of(required(sys, "matrix", "system"), "system.matrix");
    const std::size_t n = m.rows();
    return VectorSystem::kernel_defined([m](std::size_t i, std::size_t j) { return m(i, j); }, n,
                                        id_of(sys, "kernel"));
  }
  if (kind == "hilbert") {
    reject_unknown(sys, "system", {"kind"});
    return VectorSystem::hilbert_monomial();
  }
  if (kind == "covariance") {
    reject_unknown(sys, "system", {"kind", "id", "matrix"});
    const Matrix m = square_of(required(sys, "matrix", "system"), "system.matrix");
    const double scale = std::max(1.0, max_abs(m));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (std::abs(m(i, j) - m(j, i)) > 1e-12 * scale) throw ConfigError("system.matrix", "not symmetric");
    return VectorSystem::covariance_field(SymMatrix(m), id_of(sys, "covariance"));
  }
  throw ConfigError("system.kind", "unknown kind '" + kind + "'");
}

Tolerances parse_tolerances(const json& t) {
  require_object(t, "tolerances");
  reject_unknown(t, "tolerances",
                 {"rank_tol", "verify_tol", "band_eps", "psd_tol", "cauchy_rel_tol", "reproduce_tol"});
  Tolerances out;
  auto set = [&](const char* key, double& dst) {
    if (t.contains(key)) dst = positive(t.at(key), std::string("tolerances.") + key);
  };
  set("rank_tol", out.rank_tol);
  set("verify_tol", out.verify_tol);
  set("band_eps", out.band_eps);
  set("psd_tol", out.psd_tol);
  set("cauchy_rel_tol", out.cauchy_rel_tol);
  set("reproduce_tol", out.reproduce_tol);
  return out;
}

}  // namespace

RunConfig parse_config(const json& doc, const std::string& command) {
  require_object(doc, "");
  reject_unknown(doc, "", {"system", "truncation", "band", "tolerances", "seed", "out", "trials", "points", "sweep",
                           "sample_sizes", "replicates"});
  RunConfig c;
  c.source = doc;
  c.source.erase("out");

  if (doc.contains("system")) c.system = parse_system(doc.at("system"));
  if (doc.contains("tolerances")) c.tolerances = parse_tolerances(doc.at("tolerances"));
  if (doc.contains("seed")) {
    const json& s = doc.at("seed");
    if (!s.is_number_integer() || (!s.is_number_unsigned() && s.get<std::int64_t>() < 0))
      throw ConfigError("seed", "expected an unsigned 64-bit integer");
    c.seed = s.get<std::uint64_t>();
  }
  if (doc.contains("out")) {
    if (!doc.at("out").is_string() || doc.at("out").get<std::string>().empty())
      throw ConfigError("out", "expected a non-empty string");
    c.out = doc.at("out").get<std::string>();
  }
  if (doc.contains("band")) {
    const json& b = doc.at("band");
    if (!b.is_array() || b.size() != 2) throw ConfigError("band", "expected [a, b]");
    const double lo = number(b[0], "band[0]");
    const double hi = number(b[1], "band[1]");
    if (!(lo > 0.0 && lo <= hi)) throw ConfigError("band", "need 0 < a <= b");
    c.band = {lo, hi};
  }
  if (doc.contains("trials")) c.trials = count(doc.at("trials"), "trials");
  if (doc.contains("points")) c.points = count(doc.at("points"), "points");
  if (doc.contains("replicates")) c.replicates = count(doc.at("replicates"), "replicates");
  if (doc.contains("sweep")) c.sweep = counts_of(doc.at("sweep"), "sweep");
  if (doc.contains("sample_sizes")) {
    c.sample_sizes = counts_of(doc.at("sample_sizes"), "sample_sizes");
    for (std::size_t m : c.sample_sizes)
      if (m < 2) throw ConfigError("sample_sizes", "every sample size must be at least 2");
  }

  if (command == "hilbert-demo") {
    if (c.system && c.system->kind() != SystemKind::HilbertMonomial)
      throw ConfigError("system.kind", "hilbert-demo runs on the hilbert system only");
    if (!c.system) c.system = VectorSystem::hilbert_monomial();
    return c;
  }
  if (!c.system) throw ConfigError("system", "missing");
  if (command == "field-demo") {
    if (c.system->kind() != SystemKind::CovarianceField)
      throw ConfigError("system.kind", "field-demo needs a covariance system");
    c.truncation = *c.system->size();
    return c;
  }
  if (command == "band" && !c.band) throw ConfigError("band", "missing");
  if (command == "rkhs" && !c.system->is_pointwise())
    throw ConfigError("system.kind", "rkhs needs a pointwise system (explicit, sampled or hilbert)");

  const auto size = c.system->size();
  if (doc.contains("truncation")) {
    c.truncation = count(doc.at("truncation"), "truncation");
    if (size && c.truncation > *size)
      throw ConfigError("truncation", "exceeds the system size " + std::to_string(*size));
  } else if (size) {
    c.truncation = *size;
  } else {
    throw ConfigError("truncation", "missing (required for infinite systems)");
  }
  return c;
}

RunConfig load_config(const std::string& path, const std::string& command) {
  std::ifstream f(path);
  if (!f) throw ConfigError("--config", "cannot open " + path);
  json doc;
  try {
    doc = json::parse(f);
  } catch (const json::parse_error& e) {
    throw ConfigError("--config", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(doc, command);
}

}  // namespace gramframe::cli
