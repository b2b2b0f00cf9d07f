// Command-line front end. Talks to the library exclusively through the C API.
//
// Exit codes: 0 success, 1 domain error, 2 usage or malformed input.
// Payloads (JSON, CSV) go to stdout; diagnostics go to stderr.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eigenschaft/eigenschaft.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

// Thrown to unwind out of a command with a given exit code.
struct Failure {
  int code;
  std::string message;
};

double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }

double gate_tolerance() {
  const char* env = std::getenv("EIGENSCHAFT_TOL");
  if (env == nullptr || *env == '\0') return es_default_tolerance();
  char* end = nullptr;
  const double tol = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(tol > 0.0) || !std::isfinite(tol)) {
    throw Failure{kExitUsage, std::string("EIGENSCHAFT_TOL is not a positive number: ") + env};
  }
  return tol;
}

void check(es_status s) {
  if (s == ES_OK) return;
  const int code = (s == ES_ERR_PARSE || s == ES_ERR_INVALID_ARGUMENT) ? kExitUsage : kExitDomain;
  throw Failure{code, std::string(es_status_name(s)) + ": " + es_last_error()};
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitUsage, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// RAII holders for C handles and strings.
struct MatrixDeleter {
  void operator()(es_matrix* m) const { es_matrix_free(m); }
};
struct OpDeleter {
  void operator()(es_op* h) const { es_op_free(h); }
};
struct StateDeleter {
  void operator()(es_state* s) const { es_state_free(s); }
};
struct ProjectorsDeleter {
  void operator()(es_projectors* p) const { es_projectors_free(p); }
};
using Matrix = std::unique_ptr<es_matrix, MatrixDeleter>;
using Op = std::unique_ptr<es_op, OpDeleter>;
using State = std::unique_ptr<es_state, StateDeleter>;
using Projectors = std::unique_ptr<es_projectors, ProjectorsDeleter>;

std::string take(char* s) {
  std::string out(s);
  es_string_free(s);
  return out;
}

Matrix load_matrix(const std::string& path) {
  es_matrix* m = nullptr;
  check(es_matrix_from_json(read_input(path).c_str(), &m));
  return Matrix(m);
}

Op load_op(const std::string& path) {
  es_op* h = nullptr;
  check(es_op_from_json(read_input(path).c_str(), gate_tolerance(), &h));
  return Op(h);
}

State load_state(const std::string& path) {
  es_state* s = nullptr;
  check(es_state_from_json(read_input(path).c_str(), &s));
  return State(s);
}

Projectors load_projectors(const std::string& path) {
  es_projectors* p = nullptr;
  check(es_projectors_from_json(read_input(path).c_str(), gate_tolerance(), &p));
  return Projectors(p);
}

std::string op_json(const es_op* h) {
  char* s = nullptr;
  check(es_op_to_json(h, &s));
  return take(s);
}

Json parse_payload(const std::string& s) { return Json::parse(s); }

void emit(const std::string& payload) { std::cout << payload << std::flush; }
void emit(const Json& j) { std::cout << j.dump(2) << "\n" << std::flush; }

// Constructed operators are re-validated before they are printed.
void emit_validated(const es_op* h) {
  Matrix m;
  {
    es_matrix* raw = nullptr;
    check(es_op_matrix(h, &raw));
    m.reset(raw);
  }
  int passes = 0;
  check(es_validate(m.get(), gate_tolerance(), nullptr, &passes));
  if (!passes) throw Failure{kExitDomain, "constructed operator failed validation"};
  emit(op_json(h));
}

// ---- construct

struct ConstructArgs {
  double gamma_deg = 0.0;
  double dphi_deg = 0.0;
  int dim = 3;
  std::vector<double> alphas;
  std::string sign = "+1";
  std::vector<double> phases_deg;
  std::string file_a, file_b, projectors;
  std::vector<int> signs;
};

int parse_sign(const std::string& s) {
  if (s == "+1" || s == "1" || s == "+") return 1;
  if (s == "-1" || s == "-") return -1;
  throw Failure{kExitUsage, "--sign must be +1 or -1"};
}

void run_h2(const ConstructArgs& a) {
  es_op* h = nullptr;
  check(es_build_h2(deg2rad(a.gamma_deg), deg2rad(a.dphi_deg), &h));
  Op op(h);
  emit_validated(op.get());
}

void run_diag(const ConstructArgs& a) {
  std::vector<double> phases;
  for (double p : a.phases_deg) phases.push_back(deg2rad(p));
  if (a.alphas.size() != static_cast<std::size_t>(a.dim)) {
    throw Failure{kExitUsage, "--alphas needs " + std::to_string(a.dim) + " values"};
  }
  if (phases.size() != static_cast<std::size_t>(a.dim - 1)) {
    throw Failure{kExitUsage, "--phases needs " + std::to_string(a.dim - 1) + " values"};
  }
  es_op* h = nullptr;
  check(es_build_from_diag(a.dim, a.alphas.data(), parse_sign(a.sign), phases.data(), &h));
  Op op(h);
  emit_validated(op.get());
}

void run_kron(const ConstructArgs& a) {
  Op ha = load_op(a.file_a);
  Op hb = load_op(a.file_b);
  es_op* raw[3] = {nullptr, nullptr, nullptr};
  check(es_build_kron_family(ha.get(), hb.get(), raw));
  Op family[3] = {Op(raw[0]), Op(raw[1]), Op(raw[2])};
  Json out;
  out["family"] = Json::array();
  for (auto& h : family) {
    Matrix m;
    es_matrix* mr = nullptr;
    check(es_op_matrix(h.get(), &mr));
    m.reset(mr);
    int passes = 0;
    check(es_validate(m.get(), gate_tolerance(), nullptr, &passes));
    if (!passes) throw Failure{kExitDomain, "constructed operator failed validation"};
    out["family"].push_back(parse_payload(op_json(h.get())));
  }
  emit(out);
}

void run_flip(const ConstructArgs& a) {
  Projectors ps = load_projectors(a.projectors);
  es_op* h = nullptr;
  check(es_from_projector_flip(ps.get(), a.signs.data(), a.signs.size(), &h));
  Op op(h);
  emit_validated(op.get());
}

// ---- validate

int run_validate(const std::string& path, bool strict) {
  Matrix m = load_matrix(path);
  char* report = nullptr;
  int passes = 0;
  check(es_validate(m.get(), gate_tolerance(), &report, &passes));
  emit(take(report));
  if (strict && !passes) {
    std::cerr << "validate: residuals exceed tolerance " << gate_tolerance() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}

// ---- convert

struct ConvertArgs {
  std::string op, projectors, family = "complement";
  bool table = false;
};

void run_convert(const ConvertArgs& a) {
  if (!a.op.empty() == !a.projectors.empty()) {
    throw Failure{kExitUsage, "convert takes exactly one of --op or --projectors"};
  }
  if (!a.op.empty()) {
    Op h = load_op(a.op);
    std::vector<int> signs(es_op_dim(h.get()));
    es_projectors* raw = nullptr;
    check(es_to_projectors(h.get(), &raw, signs.data()));
    Projectors ps(raw);
    char* s = nullptr;
    check(es_projectors_to_json(ps.get(), &s));
    Json out = parse_payload(take(s));
    out["signs"] = signs;
    emit(out);
    return;
  }

  Projectors ps = load_projectors(a.projectors);
  es_family fam;
  if (a.family == "complement") {
    fam = ES_FAMILY_COMPLEMENT;
  } else if (a.family == "trace-zero") {
    fam = ES_FAMILY_TRACE_ZERO;
  } else {
    throw Failure{kExitUsage, "--family must be complement or trace-zero"};
  }
  std::size_t count = 0;
  check(es_complement_family(ps.get(), fam, nullptr, 0, &count));
  std::vector<es_op*> raw(count, nullptr);
  check(es_complement_family(ps.get(), fam, raw.data(), raw.size(), &count));
  std::vector<Op> family;
  for (es_op* h : raw) family.emplace_back(h);

  Json out;
  out["family"] = Json::array();
  for (const auto& h : family) out["family"].push_back(parse_payload(op_json(h.get())));
  if (a.table) {
    char* s = nullptr;
    check(es_algebra_table(raw.data(), raw.size(), &s));
    out["algebra"] = parse_payload(take(s));
  }
  emit(out);
}

// ---- decompose / density / classify

void run_decompose(const std::string& op_path, const std::string& state_path) {
  Matrix a = load_matrix(op_path);
  State psi = load_state(state_path);
  char* s = nullptr;
  check(es_decompose_json(a.get(), psi.get(), &s));
  emit(take(s));
}

void run_density(const std::string& state_path, bool truncate) {
  State psi = load_state(state_path);
  es_matrix* raw = nullptr;
  check(es_density_from_state(psi.get(), truncate ? 1 : 0, &raw));
  Matrix rho(raw);
  char* s = nullptr;
  check(es_matrix_to_json(rho.get(), &s));
  emit(take(s));
}

void run_classify(const std::string& rho_path) {
  Matrix rho = load_matrix(rho_path);
  char* s = nullptr;
  check(es_classify_json(rho.get(), &s));
  emit(take(s));
}

// ---- evolve

struct EvolveArgs {
  std::string op;
  double omega1 = 0.0, omega2 = 0.0;
  double t = 0.0;
  std::vector<double> times;
};

void run_evolve(const EvolveArgs& a, bool have_t) {
  Op h = load_op(a.op);
  if (!a.times.empty()) {
    char* csv = nullptr;
    check(es_beat_trace_csv(h.get(), a.omega1, a.omega2, a.times.data(), a.times.size(), &csv));
    emit(take(csv));
    return;
  }
  if (!have_t) throw Failure{kExitUsage, "evolve needs --t or --times"};
  es_op* raw = nullptr;
  check(es_evolve_h2(h.get(), a.omega1, a.omega2, a.t, &raw));
  Op out(raw);
  emit(op_json(out.get()));
}

// ---- simulate

struct SimulateArgs {
  std::string state, splitter;
  std::size_t phases = 16;
  double noise = 0.0;
  std::uint64_t seed = 1;
  bool fringe = false;
};

void run_simulate(const SimulateArgs& a) {
  State psi = load_state(a.state);
  Op splitter;
  if (!a.splitter.empty()) splitter = load_op(a.splitter);
  std::vector<double> phases(a.phases);
  for (std::size_t k = 0; k < a.phases; ++k) {
    phases[k] = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(a.phases);
  }
  char* s = nullptr;
  if (a.fringe) {
    check(es_run_interferometer_csv(psi.get(), splitter.get(), phases.data(), phases.size(), a.noise,
                                    a.seed, &s));
  } else {
    if (splitter) throw Failure{kExitUsage, "fringe recovery assumes the Hadamard splitter; use --fringe with --splitter"};
    check(es_holographic_report_json(psi.get(), nullptr, phases.data(), phases.size(), a.noise, a.seed, &s));
  }
  emit(take(s));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hermitian involution toolkit: construction, validation, decomposition, "
               "density diagnostics, two-level dynamics and interferometric state recovery."};
  app.require_subcommand(1);

  // construct
  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Build an eigenschaft operator (angles in degrees)");
  construct->require_subcommand(1);
  auto* h2 = construct->add_subcommand("h2", "2x2 operator [[cos g, e^{i dphi} sin g], [c.c., -cos g]]");
  h2->add_option("--gamma", ca.gamma_deg, "Mixing angle (degrees)")->required();
  h2->add_option("--dphi", ca.dphi_deg, "Relative phase (degrees)")->required();
  auto* diag = construct->add_subcommand("diag", "dim 3 (trace +-1) or dim 4 (trace +-2) operator from its diagonal");
  diag->add_option("--dim", ca.dim, "3 or 4")->required()->check(CLI::IsMember({3, 4}));
  diag->add_option("--alphas", ca.alphas, "Diagonal entries a1,...,an")->required()->delimiter(',');
  diag->add_option("--sign", ca.sign, "Trace sign, +1 or -1")->required();
  diag->add_option("--phases", ca.phases_deg, "Independent phases in degrees: phase(1,2),phase(1,3)[,phase(1,4)]")
      ->required()
      ->delimiter(',');
  auto* kron = construct->add_subcommand("kron", "Trace-zero dim-4 family {I x B, A x I, A x B} from two 2x2 operators");
  kron->add_option("--a", ca.file_a, "Operator A (JSON file, - for stdin)")->required();
  kron->add_option("--b", ca.file_b, "Operator B (JSON file)")->required();
  auto* flip = construct->add_subcommand("flip", "Sum of signed projectors");
  flip->add_option("--projectors", ca.projectors, "Projector set JSON file")->required();
  flip->add_option("--signs", ca.signs, "One +1/-1 per projector")->required()->delimiter(',');

  // validate
  std::string validate_file;
  bool strict = false;
  auto* validate = app.add_subcommand("validate", "Residual report for a matrix");
  validate->add_option("file", validate_file, "Matrix JSON file, - for stdin")->required();
  validate->add_flag("--strict", strict, "Exit 1 unless Hermitian and involutive within tolerance");

  // convert
  ConvertArgs cv;
  auto* convert = app.add_subcommand("convert", "Operator -> signed projectors, or projectors -> operator family");
  convert->add_option("--op", cv.op, "Operator JSON file");
  convert->add_option("--projectors", cv.projectors, "Projector set JSON file");
  convert->add_option("--family", cv.family, "complement or trace-zero (with --projectors)");
  convert->add_flag("--table", cv.table, "Append the multiplication/commutator table");

  // decompose
  std::string dec_op, dec_state;
  auto* decompose = app.add_subcommand("decompose", "Split A psi into mean and orthogonal dispersion part");
  decompose->add_option("--op", dec_op, "Hermitian matrix JSON file")->required();
  decompose->add_option("--state", dec_state, "State JSON file")->required();

  // density
  std::string den_state;
  bool truncate = false;
  auto* density = app.add_subcommand("density", "Density matrix of a pure state");
  density->add_option("--state", den_state, "State JSON file")->required();
  density->add_flag("--truncate", truncate, "Keep only the diagonal");

  // classify
  std::string rho_file;
  auto* classify = app.add_subcommand("classify", "Purity and dispersion of a density matrix");
  classify->add_option("--rho", rho_file, "Density matrix JSON file")->required();

  // evolve
  EvolveArgs ev;
  auto* evolve = app.add_subcommand("evolve", "Two-level evolution of a 2x2 operator");
  evolve->add_option("--op", ev.op, "2x2 operator JSON file")->required();
  evolve->add_option("--omega1", ev.omega1, "Level-1 angular frequency")->required();
  evolve->add_option("--omega2", ev.omega2, "Level-2 angular frequency")->required();
  auto* t_opt = evolve->add_option("--t", ev.t, "Time; prints the evolved operator as JSON");
  auto* times_opt = evolve->add_option("--times", ev.times, "Comma-separated times; prints t,delta_phi CSV")
                        ->delimiter(',');
  t_opt->excludes(times_opt);

  // simulate
  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Phase-sweep interferometer and state recovery");
  simulate->add_option("--state", sim.state, "Two-component state JSON file")->required();
  simulate->add_option("--phases", sim.phases, "Number of sweep phases over [0, 2pi)")->check(CLI::Range(1, 1 << 20));
  simulate->add_option("--noise", sim.noise, "Gaussian intensity noise sigma")->check(CLI::NonNegativeNumber);
  simulate->add_option("--seed", sim.seed, "Noise seed");
  simulate->add_option("--splitter", sim.splitter, "2x2 splitter operator (fringe output only)");
  simulate->add_flag("--fringe", sim.fringe, "Print phi,I1,I2 CSV instead of the recovery report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (construct->parsed()) {
      if (h2->parsed()) run_h2(ca);
      else if (diag->parsed()) run_diag(ca);
      else if (kron->parsed()) run_kron(ca);
      else run_flip(ca);
    } else if (validate->parsed()) {
      return run_validate(validate_file, strict);
    } else if (convert->parsed()) {
      run_convert(cv);
    } else if (decompose->parsed()) {
      run_decompose(dec_op, dec_state);
    } else if (density->parsed()) {
      run_density(den_state, truncate);
    } else if (classify->parsed()) {
      run_classify(rho_file);
    } else if (evolve->parsed()) {
      run_evolve(ev, t_opt->count() > 0);
    } else if (simulate->parsed()) {
      run_simulate(sim);
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}
