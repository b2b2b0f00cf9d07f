#include "eigenschaft/io.hpp"

#include <cstdio>
#include <sstream>

namespace eigenschaft::io {

namespace {

// "+ 0.0" maps -0.0 to 0.0.
Json complex_pair(Complex z) { return Json::array({z.real() + 0.0, z.imag() + 0.0}); }

std::vector<Complex> complex_list(const Json& j, const char* key, std::size_t expected) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw ParseError(std::string("missing array field \"") + key + "\"");
  }
  const Json& arr = j.at(key);
  if (arr.size() != expected) {
    throw ParseError(std::string("\"") + key + "\" has " + std::to_string(arr.size()) +
                     " entries, expected " + std::to_string(expected));
  }
  std::vector<Complex> out;
  out.reserve(expected);
  for (const Json& e : arr) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw ParseError(std::string("\"") + key + "\" entries must be [re, im] number pairs");
    }
    out.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return out;
}

std::size_t dim_field(const Json& j) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  if (!j.contains("dim") || !j.at("dim").is_number_integer() || j.at("dim").get<long long>() <= 0) {
    throw ParseError("\"dim\" must be a positive integer");
  }
  return static_cast<std::size_t>(j.at("dim").get<long long>());
}

Json named(const std::vector<NamedResidual>& rs, Json obj, const char* prefix) {
  for (const auto& r : rs) obj[std::string(prefix) + r.name] = r.value;
  return obj;
}

}  // namespace

Json parse(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json to_json(const ComplexMatrix& m) {
  if (!m.is_square()) throw ShapeError("only square matrices have a JSON encoding");
  Json entries = Json::array();
  for (const auto& z : m.entries()) entries.push_back(complex_pair(z));
  Json j;
  j["dim"] = m.rows();
  j["entries"] = std::move(entries);
  return j;
}

Json to_json(const EigenschaftOp& h) {
  Json j = to_json(h.matrix());
  j["trace_class"] = h.trace_class();
  return j;
}

Json to_json(const StateVector& s) {
  Json amps = Json::array();
  for (const auto& z : s.amplitudes()) amps.push_back(complex_pair(z));
  Json j;
  j["dim"] = s.dim();
  j["amplitudes"] = std::move(amps);
  return j;
}

Json to_json(const ProjectorSet& ps) {
  Json list = Json::array();
  for (const auto& p : ps.projectors()) list.push_back(to_json(p));
  Json j;
  j["dim"] = ps.dim();
  j["projectors"] = std::move(list);
  return j;
}

Json to_json(const ProjectorDecomposition& pd) {
  Json j = to_json(pd.projectors);
  j["signs"] = pd.signs;
  return j;
}

Json to_json(const ValidationReport& r) {
  Json j;
  j["dim"] = r.dim;
  j["hermiticity_residual"] = r.hermiticity_residual;
  j["unitarity_residual"] = r.unitarity_residual;
  j["involution_residual"] = r.involution_residual;
  j["trace_re"] = r.trace_re;
  j["trace_im"] = r.trace_im;
  j["trace_class"] = r.trace_class;
  j["trace_class_distance"] = r.trace_class_distance;
  j["trace_class_flag"] = r.trace_class_flag;
  j = named(r.relations, std::move(j), "relation_");
  j = named(r.phase_closures, std::move(j), "phase_closure_");
  return j;
}

Json to_json(const Decomposition& d) {
  Json j;
  j["mean"] = d.mean;
  j["dispersion"] = d.dispersion;
  j["residual_state"] = d.residual_state ? to_json(*d.residual_state) : Json(nullptr);
  return j;
}

Json to_json(const Classification& c) {
  Json j;
  j["kind"] = to_string(c.kind);
  j["purity"] = c.purity;
  j["rho_dispersion"] = c.rho_dispersion;
  return j;
}

Json to_json(const AlgebraTable& t) {
  Json products = Json::array();
  for (const auto& p : t.products) {
    Json coeffs = Json::array();
    for (const auto& z : p.coefficients) coeffs.push_back(complex_pair(z));
    Json e;
    e["left"] = p.left + 1;
    e["right"] = p.right + 1;
    e["expressible"] = p.expressible;
    e["integer"] = p.integer;
    e["coefficients"] = std::move(coeffs);
    e["residual"] = p.residual;
    products.push_back(std::move(e));
  }
  Json comms = Json::array();
  for (const auto& c : t.commutators) {
    Json e;
    e["left"] = c.left + 1;
    e["right"] = c.right + 1;
    e["norm"] = c.norm;
    comms.push_back(std::move(e));
  }
  Json j;
  j["size"] = t.size;
  j["basis"] = "identity, then family members in order";
  j["products"] = std::move(products);
  j["commutators"] = std::move(comms);
  j["max_commutator"] = t.max_commutator;
  return j;
}

Json to_json(const Recovery& r) {
  Json state;
  state["mag1"] = r.state.mag1;
  state["mag2"] = r.state.mag2;
  state["relative_phase"] = r.state.relative_phase;
  const FitDiagnostics& d = r.diagnostics;
  Json diag;
  diag["samples"] = d.samples;
  diag["offset"] = d.offset;
  diag["amplitude"] = d.amplitude;
  diag["visibility"] = d.visibility;
  diag["residual_rms"] = d.residual_rms;
  diag["visibility_uncertainty"] = d.visibility_uncertainty;
  diag["ambiguous"] = d.ambiguous;
  diag["phase_defined"] = d.phase_defined;
  diag["ordering_conventional"] = d.ordering_conventional;
  Json j;
  j["recovered"] = std::move(state);
  j["diagnostics"] = std::move(diag);
  return j;
}

Json to_json(const HolographicReport& r) {
  Json j = to_json(r.recovery);
  Json truth;
  truth["mag1"] = r.truth.mag1;
  truth["mag2"] = r.truth.mag2;
  truth["relative_phase"] = r.truth.relative_phase;
  Json err;
  err["mag1"] = r.truth_error.mag1;
  err["mag2"] = r.truth_error.mag2;
  err["relative_phase"] = r.truth_error.relative_phase;
  j["truth"] = std::move(truth);
  j["truth_error"] = std::move(err);
  return j;
}

ComplexMatrix matrix_from_json(const Json& j) {
  const std::size_t n = dim_field(j);
  return ComplexMatrix(n, n, complex_list(j, "entries", n * n));
}

EigenschaftOp op_from_json(const Json& j, double tol) {
  EigenschaftOp h = EigenschaftOp::from_matrix(matrix_from_json(j), tol);
  if (j.contains("trace_class")) {
    if (!j.at("trace_class").is_number_integer()) throw ParseError("\"trace_class\" must be an integer");
    if (j.at("trace_class").get<int>() != h.trace_class()) {
      throw DomainError("declared trace_class " + std::to_string(j.at("trace_class").get<int>()) +
                        " does not match the matrix trace " + std::to_string(h.trace_class()));
    }
  }
  return h;
}

StateVector state_from_json(const Json& j) {
  const std::size_t n = dim_field(j);
  return StateVector(complex_list(j, "amplitudes", n));
}

ProjectorSet projectors_from_json(const Json& j, double tol) {
  const std::size_t n = dim_field(j);
  if (!j.contains("projectors") || !j.at("projectors").is_array()) {
    throw ParseError("missing array field \"projectors\"");
  }
  std::vector<ComplexMatrix> ps;
  for (const Json& p : j.at("projectors")) {
    ComplexMatrix m = matrix_from_json(p);
    if (m.rows() != n) throw ParseError("projector dimension differs from \"dim\"");
    ps.push_back(std::move(m));
  }
  return ProjectorSet(std::move(ps), tol);
}

std::string beat_trace_csv(const std::vector<BeatSample>& samples) {
  std::ostringstream os;
  os << "t,delta_phi\n";
  for (const auto& s : samples) os << format_double(s.t) << ',' << format_double(s.delta_phi) << '\n';
  return os.str();
}

std::string fringe_csv(const FringeRecord& fr) {
  std::ostringstream os;
  os << "phi,I1,I2\n";
  for (std::size_t k = 0; k < fr.phases.size(); ++k) {
    os << format_double(fr.phases[k]) << ',' << format_double(fr.intensity_port1[k]) << ','
       << format_double(fr.intensity_port2[k]) << '\n';
  }
  return os.str();
}

}  // namespace eigenschaft::io
