#include "brex/io.hpp"

#include <fstream>
#include <sstream>

#include "brex/errors.hpp"

namespace brex {

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

double as_number(const Json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
  return j.get<double>();
}

Matrix matrix_from_json(const Json& j) {
  if (j.is_array()) {
    const auto rows = static_cast<Eigen::Index>(j.size());
    if (rows == 0 || !j[0].is_array()) throw ParseError("A must be a non-empty array of rows");
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    Matrix A(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      const Json& row = j[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw ParseError("ragged matrix A");
      for (Eigen::Index k = 0; k < cols; ++k) A(i, k) = as_number(row[static_cast<std::size_t>(k)], "A entry");
    }
    return A;
  }
  if (j.is_object()) {
    const double r = as_number(require(j, "rows"), "rows");
    const double c = as_number(require(j, "cols"), "cols");
    const Json& data = require(j, "data");
    if (r < 1 || c < 1 || !data.is_array() || static_cast<double>(data.size()) != r * c) {
      throw ParseError("A data length does not match rows * cols");
    }
    Matrix A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    std::size_t t = 0;
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      for (Eigen::Index k = 0; k < A.cols(); ++k) A(i, k) = as_number(data[t++], "A entry");
    }
    return A;
  }
  throw ParseError("A must be an array of rows or {rows, cols, data}");
}

}  // namespace

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = as_number(j[i], "vector entry");
  return v;
}

Problem problem_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("problem document must be a JSON object");
  if (j.contains("schema") && (!j["schema"].is_number_integer() || j["schema"].get<int>() != kSchemaVersion)) {
    throw ParseError("unsupported schema version");
  }
  Problem p;
  const Json& fid = require(j, "fidelity");
  const Json& kind = require(fid, "kind");
  if (!kind.is_string()) throw ParseError("fidelity kind must be a string");
  try {
    p.fidelity.kind = fidelity_kind_from_string(kind.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  p.fidelity.y = vector_from_json(require(fid, "y"));
  if (fid.contains("b")) p.fidelity.b = as_number(fid["b"], "b");
  p.A = matrix_from_json(require(j, "A"));
  p.lambda0 = as_number(require(j, "lambda0"), "lambda0");
  p.lambda2 = j.contains("lambda2") ? as_number(j["lambda2"], "lambda2") : 0.0;
  const std::string c = j.contains("constraint") ? j["constraint"].get<std::string>()
                        : p.fidelity.kind == FidelityKind::KL ? "nonneg"
                                                              : "reals";
  if (c == "reals") {
    p.constraint = Constraint::Reals;
  } else if (c == "nonneg") {
    p.constraint = Constraint::NonnegReals;
  } else {
    throw ParseError("constraint must be \"reals\" or \"nonneg\"");
  }
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid problem: ") + e.what());
  }
  return p;
}

Json problem_to_json(const Problem& p) {
  Json fid = {{"kind", to_string(p.fidelity.kind)}, {"y", vector_to_json(p.fidelity.y)}};
  if (p.fidelity.kind == FidelityKind::KL) fid["b"] = p.fidelity.b;
  Json A = Json::array();
  for (Eigen::Index i = 0; i < p.A.rows(); ++i) A.push_back(vector_to_json(p.A.row(i).transpose()));
  return {{"schema", kSchemaVersion}, {"fidelity", fid},          {"A", A},
          {"lambda0", p.lambda0},     {"lambda2", p.lambda2}, {"constraint", to_string(p.constraint)}};
}

Problem read_problem(std::istream& is) {
  Json j;
  try {
    j = Json::parse(is);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  try {
    return problem_from_json(j);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed problem: ") + e.what());
  }
}

Problem read_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_problem(in);
}

void write_problem_file(const std::string& path, const Problem& p) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << problem_to_json(p).dump(2) << '\n';
}

Json to_json(const CalibrationReport& r) {
  Json exact = Json::array();
  for (bool e : r.exact) exact.push_back(e);
  return {{"schema", kSchemaVersion},
          {"generator", r.generator},
          {"mode", r.mode == CalibrationMode::AtThreshold ? "at_threshold" : "strict"},
          {"margin", r.margin},
          {"gamma_thr", vector_to_json(r.gamma_thr)},
          {"gamma", vector_to_json(r.gamma)},
          {"exact", exact},
          {"column_norms", vector_to_json(r.column_norms)}};
}

Json to_json(const CertRecord& c) {
  return {{"support", c.support},
          {"is_critical_JPsi", c.is_critical_JPsi},
          {"is_localmin_JPsi", c.is_localmin_JPsi},
          {"is_localmin_J0", c.is_localmin_J0},
          {"is_strict", c.is_strict},
          {"max_residual", c.max_residual},
          {"interval_violations", c.interval_violations},
          {"boundary_hits", c.boundary_hits}};
}

Json to_json(const Enumeration& e) {
  Json list = Json::array();
  for (const auto& m : e.minimizers) {
    Json item = {{"x", vector_to_json(m.x)}, {"J0", m.J0}, {"cert", to_json(m.cert)}};
    if (m.preserved) item["preserved"] = *m.preserved;
    list.push_back(item);
  }
  return {{"schema", kSchemaVersion},
          {"minimizers", list},
          {"supports_tried", e.supports_tried},
          {"supports_skipped", e.supports_skipped}};
}

}  // namespace brex
