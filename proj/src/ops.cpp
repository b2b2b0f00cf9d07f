#include "eigenschaft/ops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace eigenschaft {

namespace {

constexpr double kTraceMatchTol = 1e-8;
constexpr double kTraceFlagTol = 1e-6;

// Nearest integer to t with the parity of n, clamped to [-n, n].
int nearest_trace_class(double t, std::size_t n) {
  const double nn = static_cast<double>(n);
  int k = static_cast<int>(std::lround((t - nn) / 2.0)) * 2 + static_cast<int>(n);
  return std::clamp(k, -static_cast<int>(n), static_cast<int>(n));
}

const char* subscript(std::size_t i) {
  static constexpr const char* digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
  return i < 10 ? digits[i] : "?";
}

ComplexMatrix projector_onto(std::span<const Complex> v) {
  const std::size_t n = v.size();
  ComplexMatrix p(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p(i, j) = v[i] * std::conj(v[j]);
  return p;
}

}  // namespace

EigenschaftOp EigenschaftOp::from_matrix(ComplexMatrix m, double tol) {
  if (!m.is_square() || m.empty()) throw DomainError("eigenschaft operator must be a non-empty square matrix");
  const double herm = hermiticity_residual(m);
  if (herm > tol) {
    throw DomainError("operator is not Hermitian (residual " + std::to_string(herm) + ")");
  }
  const double inv = involution_residual(m);
  if (inv > tol) {
    throw DomainError("operator is not an involution (||H^2 - I|| = " + std::to_string(inv) + ")");
  }
  const double t = trace(m).real();
  const int tc = nearest_trace_class(t, m.rows());
  if (std::abs(t - tc) > kTraceMatchTol) {
    throw DomainError("trace " + std::to_string(t) + " is not within 1e-8 of an admissible trace class");
  }
  return EigenschaftOp(std::move(m), tc);
}

ProjectorSet::ProjectorSet(std::vector<ComplexMatrix> projectors, double tol)
    : projectors_(std::move(projectors)) {
  if (projectors_.empty()) throw DomainError("projector set is empty");
  dim_ = projectors_.front().rows();
  if (projectors_.size() != dim_) {
    throw DomainError("projector set of dim " + std::to_string(dim_) + " needs " +
                      std::to_string(dim_) + " rank-1 projectors, got " +
                      std::to_string(projectors_.size()));
  }
  ComplexMatrix sum(dim_, dim_);
  for (std::size_t i = 0; i < projectors_.size(); ++i) {
    const auto& p = projectors_[i];
    const std::string tag = "projector " + std::to_string(i + 1);
    if (p.rows() != dim_ || p.cols() != dim_) throw DomainError(tag + " has the wrong shape");
    if (hermiticity_residual(p) > tol) throw DomainError(tag + " is not Hermitian");
    if (max_abs_diff(mat_mul(p, p), p) > tol) throw DomainError(tag + " is not idempotent");
    if (std::abs(trace(p) - Complex(1.0)) > kTraceMatchTol) throw DomainError(tag + " is not rank 1");
    for (std::size_t j = 0; j < i; ++j) {
      if (max_abs(mat_mul(p, projectors_[j])) > tol) {
        throw DomainError("projectors " + std::to_string(j + 1) + " and " + std::to_string(i + 1) +
                          " are not orthogonal");
      }
    }
    sum += p;
  }
  if (max_abs_diff(sum, ComplexMatrix::identity(dim_)) > tol) {
    throw DomainError("projectors do not resolve the identity");
  }
}

ProjectorSet ProjectorSet::from_unitary_columns(const ComplexMatrix& u, double tol) {
  if (!u.is_square()) throw ShapeError("from_unitary_columns: matrix must be square");
  std::vector<ComplexMatrix> ps;
  ps.reserve(u.cols());
  for (std::size_t k = 0; k < u.cols(); ++k) ps.push_back(projector_onto(u.column_vector(k)));
  return ProjectorSet(std::move(ps), tol);
}

ProjectorSet ProjectorSet::standard_basis(std::size_t dim) {
  return from_unitary_columns(ComplexMatrix::identity(dim));
}

EigenschaftOp build_h2(const H2Params& params) {
  const double c = std::cos(params.gamma_angle);
  const double s = std::sin(params.gamma_angle);
  const Complex off = std::polar(1.0, params.delta_phi) * s;
  ComplexMatrix m(2, 2, {c, off, std::conj(off), -c});
  return EigenschaftOp::from_matrix(std::move(m));
}

H2Elements h2_elements(const EigenschaftOp& h) {
  if (h.dim() != 2) throw ShapeError("h2_elements: operator must be 2x2");
  const auto& m = h.matrix();
  H2Elements e;
  e.alpha = m(0, 0).real();
  e.beta = std::abs(m(0, 1));
  e.delta_phi = e.beta > 1e-14 ? std::arg(m(0, 1)) : 0.0;
  return e;
}

EigenschaftOp build_from_diag(const DiagSpec& spec) {
  if (spec.dim != 3 && spec.dim != 4) {
    throw ConstructionError("closed-form construction supports dim 3 or 4, got " + std::to_string(spec.dim));
  }
  const auto n = static_cast<std::size_t>(spec.dim);
  if (spec.trace_sign != 1 && spec.trace_sign != -1) {
    throw ConstructionError("trace sign must be +1 or -1");
  }
  if (spec.alphas.size() != n) {
    throw ConstructionError("expected " + std::to_string(n) + " diagonal entries, got " +
                            std::to_string(spec.alphas.size()));
  }
  if (spec.phases.size() != n - 1) {
    throw ConstructionError("expected " + std::to_string(n - 1) + " independent phases, got " +
                            std::to_string(spec.phases.size()));
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double a = spec.alphas[i];
    if (!std::isfinite(a) || std::abs(a) > 1.0 + 1e-12) {
      throw ConstructionError(std::string("|α") + subscript(i + 1) + "| ≤ 1 violated (α" +
                              subscript(i + 1) + " = " + std::to_string(a) + ")");
    }
  }
  for (double p : spec.phases) {
    if (!std::isfinite(p)) throw ConstructionError("phases must be finite");
  }

  const double s = spec.trace_sign;
  const double target = s * static_cast<double>(n - 2);
  double sum = 0.0;
  for (double a : spec.alphas) sum += a;
  if (std::abs(sum - target) > 1e-12) {
    throw ConstructionError(std::string("trace relation Σα = ") + (s > 0 ? "+" : "-") +
                            std::to_string(n - 2) + " violated (Σα = " + std::to_string(sum) + ")");
  }

  // H = s (I - 2 c c^+) with |c_i|^2 = (1 - s alpha_i) / 2.
  std::vector<Complex> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double radicand = 1.0 - s * spec.alphas[i];
    if (radicand < -1e-12) {
      throw ConstructionError(std::string("radicand 1 ∓ α") + subscript(i + 1) + " ≥ 0 violated");
    }
    const double mag = std::sqrt(std::max(0.0, radicand) / 2.0);
    const double theta = i == 0 ? 0.0 : -spec.phases[i - 1];
    c[i] = std::polar(mag, theta);
  }

  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = i == j ? Complex(spec.alphas[i]) : -2.0 * s * c[i] * std::conj(c[j]);
    }
  }
  try {
    return EigenschaftOp::from_matrix(std::move(m));
  } catch (const DomainError& e) {
    throw ConstructionError(std::string("construction is not an involution: ") + e.what());
  }
}

EigenschaftOp from_projector_flip(const ProjectorSet& ps, const std::vector<int>& signs) {
  if (signs.size() != ps.size()) {
    throw DomainError("expected " + std::to_string(ps.size()) + " signs, got " + std::to_string(signs.size()));
  }
  ComplexMatrix h(ps.dim(), ps.dim());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (signs[i] != 1 && signs[i] != -1) throw DomainError("signs must be +1 or -1");
    h += static_cast<double>(signs[i]) * ps[i];
  }
  return EigenschaftOp::from_matrix(std::move(h));
}

ProjectorDecomposition to_projectors(const EigenschaftOp& h) {
  const Spectrum spec = hermitian_eig(h.matrix());
  std::vector<ComplexMatrix> ps;
  std::vector<int> signs;
  for (std::size_t k = 0; k < spec.values.size(); ++k) {
    ps.push_back(projector_onto(spec.vectors.column_vector(k)));
    signs.push_back(spec.values[k] > 0.0 ? 1 : -1);
  }
  return {ProjectorSet(std::move(ps)), std::move(signs)};
}

std::vector<EigenschaftOp> complement_family(const ProjectorSet& ps, FamilyKind kind) {
  std::vector<EigenschaftOp> family;
  if (kind == FamilyKind::Complement) {
    const ComplexMatrix id = ComplexMatrix::identity(ps.dim());
    for (const auto& p : ps.projectors()) family.push_back(EigenschaftOp::from_matrix(id - 2.0 * p));
    return family;
  }
  if (ps.dim() != 4) throw DomainError("the trace-zero family is defined for dim 4 only");
  static constexpr int patterns[3][4] = {{1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}};
  for (const auto& pattern : patterns) {
    family.push_back(from_projector_flip(ps, std::vector<int>(std::begin(pattern), std::end(pattern))));
  }
  return family;
}

std::array<EigenschaftOp, 3> build_kron_family(const EigenschaftOp& h_a, const EigenschaftOp& h_b) {
  if (h_a.dim() != 2 || h_b.dim() != 2) throw ShapeError("build_kron_family: inputs must be 2x2");
  if (h_a.trace_class() != 0 || h_b.trace_class() != 0) {
    throw DomainError("build_kron_family: inputs must be traceless");
  }
  const ComplexMatrix id = ComplexMatrix::identity(2);
  return {EigenschaftOp::from_matrix(kron(id, h_b.matrix())),
          EigenschaftOp::from_matrix(kron(h_a.matrix(), id)),
          EigenschaftOp::from_matrix(kron(h_a.matrix(), h_b.matrix()))};
}

// --- validation -----------------------------------------------------------

double ValidationReport::max_relation_residual() const {
  double m = 0.0;
  for (const auto& r : relations) m = std::max(m, r.value);
  return m;
}

double ValidationReport::max_phase_closure_residual() const {
  double m = 0.0;
  for (const auto& r : phase_closures) m = std::max(m, r.value);
  return m;
}

namespace {

struct Pair {
  const char* name;
  std::size_t i, j;
};

constexpr Pair kPairs3[] = {{"beta", 0, 1}, {"gamma", 0, 2}, {"mu", 1, 2}};
constexpr Pair kPairs4[] = {{"beta", 0, 1}, {"gamma", 0, 2}, {"delta", 0, 3},
                            {"mu", 1, 2},   {"nu", 1, 3},    {"zeta", 2, 3}};

// Dependent phase of (j, k) against phase(0, k) - phase(0, j), with every
// amplitude carrying the sign -s. Residual is |arg(-s H_0j H_jk conj(H_0k))|.
double closure_residual(const ComplexMatrix& m, double s, std::size_t j, std::size_t k) {
  const Complex h0j = m(0, j), hjk = m(j, k), h0k = m(0, k);
  if (std::abs(h0j) < 1e-8 || std::abs(hjk) < 1e-8 || std::abs(h0k) < 1e-8) return 0.0;
  return std::abs(std::arg(-s * h0j * hjk * std::conj(h0k)));
}

}  // namespace

ValidationReport validate(const ComplexMatrix& m) {
  if (!m.is_square() || m.empty()) throw ShapeError("validate: matrix must be square");
  ValidationReport r;
  r.dim = m.rows();
  r.hermiticity_residual = hermiticity_residual(m);
  r.unitarity_residual = unitarity_residual(m);
  r.involution_residual = involution_residual(m);
  const Complex t = trace(m);
  r.trace_re = t.real();
  r.trace_im = t.imag();
  r.trace_class = nearest_trace_class(t.real(), r.dim);
  r.trace_class_distance = std::abs(t - Complex(r.trace_class));
  r.trace_class_flag = r.trace_class_distance > kTraceFlagTol;

  auto alpha = [&](std::size_t i) { return m(i, i).real(); };

  if (r.dim == 2 && r.trace_class == 0) {
    const double beta = std::abs(m(0, 1));
    r.relations.push_back({"beta_alpha_sum", std::abs(beta * (alpha(0) + alpha(1)))});
    r.relations.push_back({"alpha1_beta_norm", std::abs(alpha(0) * alpha(0) + beta * beta - 1.0)});
    r.relations.push_back({"alpha2_beta_norm", std::abs(alpha(1) * alpha(1) + beta * beta - 1.0)});
  }

  const bool rank1_3 = r.dim == 3 && std::abs(r.trace_class) == 1;
  const bool rank1_4 = r.dim == 4 && std::abs(r.trace_class) == 2;
  if (rank1_3 || rank1_4) {
    const double s = r.trace_class > 0 ? 1.0 : -1.0;
    std::span<const Pair> pairs = rank1_3 ? std::span<const Pair>(kPairs3) : std::span<const Pair>(kPairs4);
    for (const auto& p : pairs) {
      const double lhs = std::norm(m(p.i, p.j));
      const double rhs = (1.0 - s * alpha(p.i)) * (1.0 - s * alpha(p.j));
      r.relations.push_back({p.name, std::abs(lhs - rhs)});
    }
    r.phase_closures.push_back({"dphi3", closure_residual(m, s, 1, 2)});
    if (rank1_4) {
      r.phase_closures.push_back({"dphi5", closure_residual(m, s, 1, 3)});
      r.phase_closures.push_back({"dphi6", closure_residual(m, s, 2, 3)});
    }
  }
  return r;
}

}  // namespace eigenschaft
