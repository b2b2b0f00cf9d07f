#pragma once

// JSON and CSV encodings shared by the C API and the command-line tool.
//
//   matrix       {"dim": n, "entries": [[re, im], ...]}          row-major, n*n pairs
//   operator     matrix fields plus "trace_class"
//   state        {"dim": n, "amplitudes": [[re, im], ...]}
//   projectors   {"dim": n, "projectors": [matrix, ...]}
//
// Keys are emitted in a fixed order and doubles in shortest round-trip form,
// so equal inputs give byte-identical output.

#include <string>
#include <string_view>

#include <json.hpp>

#include "eigenschaft/dynamics.hpp"
#include "eigenschaft/holo.hpp"
#include "eigenschaft/ops.hpp"
#include "eigenschaft/states.hpp"

namespace eigenschaft::io {

using Json = nlohmann::ordered_json;

// Parsing throws ParseError on syntax or schema problems. Semantic checks
// (normalization, Hermiticity, ...) raise the usual DomainError.
Json parse(std::string_view text);

Json to_json(const ComplexMatrix& m);
Json to_json(const EigenschaftOp& h);
Json to_json(const StateVector& s);
Json to_json(const ProjectorSet& ps);
Json to_json(const ProjectorDecomposition& pd);
Json to_json(const ValidationReport& r);
Json to_json(const Decomposition& d);
Json to_json(const Classification& c);
Json to_json(const AlgebraTable& t);
Json to_json(const Recovery& r);
Json to_json(const HolographicReport& r);

ComplexMatrix matrix_from_json(const Json& j);
// Accepts a plain matrix; a "trace_class" field, when present, must match.
EigenschaftOp op_from_json(const Json& j, double tol = kTolInv);
StateVector state_from_json(const Json& j);
ProjectorSet projectors_from_json(const Json& j, double tol = kTolInv);

std::string dump(const Json& j);

// "t,delta_phi" header, one row per sample.
std::string beat_trace_csv(const std::vector<BeatSample>& samples);
// "phi,I1,I2" header, one row per sweep point.
std::string fringe_csv(const FringeRecord& fr);

// 17 significant digits.
std::string format_double(double x);

}  // namespace eigenschaft::io
