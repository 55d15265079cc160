#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "brex/calibration.hpp"
#include "brex/certify.hpp"
#include "brex/problem.hpp"
#include "brex/solver.hpp"

namespace brex {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Problem documents:
///   {"schema": 1, "fidelity": {"kind": "LS", "y": [...], "b": 0.1},
///    "A": [[...], ...] or {"rows": M, "cols": N, "data": [...] row-major},
///    "lambda0": .., "lambda2": .., "constraint": "reals" | "nonneg"}
/// Throws ParseError on malformed input; the result is validated.
Problem problem_from_json(const Json& j);
Json problem_to_json(const Problem& p);

Problem read_problem(std::istream& is);
Problem read_problem_file(const std::string& path);
void write_problem_file(const std::string& path, const Problem& p);

Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

Json to_json(const CalibrationReport& r);
Json to_json(const CertRecord& c);
Json to_json(const Enumeration& e);

}  // namespace brex
