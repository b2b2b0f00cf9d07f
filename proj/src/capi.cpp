#include "eigenschaft/eigenschaft.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "eigenschaft/dynamics.hpp"
#include "eigenschaft/holo.hpp"
#include "eigenschaft/io.hpp"
#include "eigenschaft/ops.hpp"
#include "eigenschaft/states.hpp"

using namespace eigenschaft;

struct es_matrix {
  ComplexMatrix value;
};
struct es_op {
  EigenschaftOp value;
};
struct es_state {
  StateVector value;
};
struct es_projectors {
  ProjectorSet value;
};

namespace {

thread_local std::string g_last_error;

struct InvalidArgument {
  const char* what;
};

es_status fail(es_status s, const char* what) {
  g_last_error = what;
  return s;
}

template <class F>
es_status guard(F&& f) {
  try {
    f();
    g_last_error.clear();
    return ES_OK;
  } catch (const InvalidArgument& e) {
    return fail(ES_ERR_INVALID_ARGUMENT, e.what);
  } catch (const ShapeError& e) {
    return fail(ES_ERR_SHAPE, e.what());
  } catch (const ConstructionError& e) {
    return fail(ES_ERR_CONSTRUCTION, e.what());
  } catch (const DomainError& e) {
    return fail(ES_ERR_DOMAIN, e.what());
  } catch (const NumericError& e) {
    return fail(ES_ERR_NUMERIC, e.what());
  } catch (const FitError& e) {
    return fail(ES_ERR_FIT, e.what());
  } catch (const ConfigError& e) {
    return fail(ES_ERR_CONFIG, e.what());
  } catch (const ParseError& e) {
    return fail(ES_ERR_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ES_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ES_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(ES_ERR_INTERNAL, "unknown error");
  }
}

void need(const void* p, const char* name) {
  if (p == nullptr) throw InvalidArgument{name};
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<Complex> interleaved(const double* re_im, std::size_t count) {
  std::vector<Complex> v(count);
  for (std::size_t k = 0; k < count; ++k) v[k] = {re_im[2 * k], re_im[2 * k + 1]};
  return v;
}

InterferometerConfig make_config(const es_op* splitter, const double* phases, std::size_t n,
                                 double sigma) {
  if (n > 0) need(phases, "phases is null");
  return {splitter ? splitter->value : hadamard(), std::vector<double>(phases, phases + n), sigma};
}

}  // namespace

extern "C" {

double es_default_tolerance(void) { return kTolInv; }

const char* es_last_error(void) { return g_last_error.c_str(); }

const char* es_status_name(es_status status) {
  switch (status) {
    case ES_OK: return "ok";
    case ES_ERR_INVALID_ARGUMENT: return "invalid argument";
    case ES_ERR_SHAPE: return "shape error";
    case ES_ERR_DOMAIN: return "domain error";
    case ES_ERR_NUMERIC: return "numeric error";
    case ES_ERR_CONSTRUCTION: return "construction error";
    case ES_ERR_FIT: return "fit error";
    case ES_ERR_CONFIG: return "config error";
    case ES_ERR_PARSE: return "parse error";
    case ES_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void es_string_free(char* s) { std::free(s); }

// ---- matrices

es_status es_matrix_create(size_t rows, size_t cols, const double* re_im, es_matrix** out) {
  return guard([&] {
    need(out, "out is null");
    if (rows * cols > 0) need(re_im, "re_im is null");
    *out = new es_matrix{ComplexMatrix(rows, cols, interleaved(re_im, rows * cols))};
  });
}

es_status es_matrix_from_json(const char* json, es_matrix** out) {
  return guard([&] {
    need(json, "json is null");
    need(out, "out is null");
    *out = new es_matrix{io::matrix_from_json(io::parse(json))};
  });
}

es_status es_matrix_to_json(const es_matrix* m, char** out) {
  return guard([&] {
    need(m, "matrix is null");
    need(out, "out is null");
    *out = copy_string(io::dump(io::to_json(m->value)));
  });
}

size_t es_matrix_rows(const es_matrix* m) { return m ? m->value.rows() : 0; }
size_t es_matrix_cols(const es_matrix* m) { return m ? m->value.cols() : 0; }

es_status es_matrix_get(const es_matrix* m, size_t i, size_t j, double* re, double* im) {
  return guard([&] {
    need(m, "matrix is null");
    if (i >= m->value.rows() || j >= m->value.cols()) throw ShapeError("index out of range");
    const Complex z = m->value(i, j);
    if (re) *re = z.real();
    if (im) *im = z.imag();
  });
}

es_status es_matrix_mul(const es_matrix* a, const es_matrix* b, es_matrix** out) {
  return guard([&] {
    need(a, "a is null");
    need(b, "b is null");
    need(out, "out is null");
    *out = new es_matrix{mat_mul(a->value, b->value)};
  });
}

es_status es_matrix_kron(const es_matrix* a, const es_matrix* b, es_matrix** out) {
  return guard([&] {
    need(a, "a is null");
    need(b, "b is null");
    need(out, "out is null");
    *out = new es_matrix{kron(a->value, b->value)};
  });
}

es_status es_matrix_adjoint(const es_matrix* a, es_matrix** out) {
  return guard([&] {
    need(a, "a is null");
    need(out, "out is null");
    *out = new es_matrix{adjoint(a->value)};
  });
}

es_status es_matrix_hermitian_eig(const es_matrix* a, double* values, es_matrix** vectors) {
  return guard([&] {
    need(a, "matrix is null");
    need(values, "values is null");
    Spectrum s = hermitian_eig(a->value);
    std::copy(s.values.begin(), s.values.end(), values);
    if (vectors) *vectors = new es_matrix{std::move(s.vectors)};
  });
}

es_status es_matrix_is_involution(const es_matrix* a, double tol, int* involutive, double* residual) {
  return guard([&] {
    need(a, "matrix is null");
    const InvolutionCheck c = is_involution(a->value, tol);
    if (involutive) *involutive = c.involutive ? 1 : 0;
    if (residual) *residual = c.residual;
  });
}

void es_matrix_free(es_matrix* m) { delete m; }

// ---- operators

es_status es_op_from_matrix(const es_matrix* m, double tol, es_op** out) {
  return guard([&] {
    need(m, "matrix is null");
    need(out, "out is null");
    *out = new es_op{EigenschaftOp::from_matrix(m->value, tol)};
  });
}

es_status es_op_from_json(const char* json, double tol, es_op** out) {
  return guard([&] {
    need(json, "json is null");
    need(out, "out is null");
    *out = new es_op{io::op_from_json(io::parse(json), tol)};
  });
}

es_status es_op_to_json(const es_op* h, char** out) {
  return guard([&] {
    need(h, "operator is null");
    need(out, "out is null");
    *out = copy_string(io::dump(io::to_json(h->value)));
  });
}

es_status es_op_matrix(const es_op* h, es_matrix** out) {
  return guard([&] {
    need(h, "operator is null");
    need(out, "out is null");
    *out = new es_matrix{h->value.matrix()};
  });
}

size_t es_op_dim(const es_op* h) { return h ? h->value.dim() : 0; }
int es_op_trace_class(const es_op* h) { return h ? h->value.trace_class() : 0; }
void es_op_free(es_op* h) { delete h; }

es_status es_build_h2(double gamma_angle, double delta_phi, es_op** out) {
  return guard([&] {
    need(out, "out is null");
    *out = new es_op{build_h2({gamma_angle, delta_phi})};
  });
}

es_status es_h2_elements(const es_op* h, double* alpha, double* beta, double* delta_phi) {
  return guard([&] {
    need(h, "operator is null");
    const H2Elements e = h2_elements(h->value);
    if (alpha) *alpha = e.alpha;
    if (beta) *beta = e.beta;
    if (delta_phi) *delta_phi = e.delta_phi;
  });
}

es_status es_build_from_diag(int dim, const double* alphas, int trace_sign, const double* phases,
                             es_op** out) {
  return guard([&] {
    need(out, "out is null");
    need(alphas, "alphas is null");
    need(phases, "phases is null");
    if (dim != 3 && dim != 4) throw ConstructionError("closed-form construction supports dim 3 or 4");
    DiagSpec spec{dim, std::vector<double>(alphas, alphas + dim), trace_sign,
                  std::vector<double>(phases, phases + dim - 1)};
    *out = new es_op{build_from_diag(spec)};
  });
}

es_status es_build_kron_family(const es_op* h_a, const es_op* h_b, es_op** out) {
  return guard([&] {
    need(h_a, "h_a is null");
    need(h_b, "h_b is null");
    need(out, "out is null");
    auto family = build_kron_family(h_a->value, h_b->value);
    for (std::size_t k = 0; k < 3; ++k) out[k] = new es_op{std::move(family[k])};
  });
}

es_status es_from_projector_flip(const es_projectors* ps, const int* signs, size_t n, es_op** out) {
  return guard([&] {
    need(ps, "projectors is null");
    need(signs, "signs is null");
    need(out, "out is null");
    *out = new es_op{from_projector_flip(ps->value, std::vector<int>(signs, signs + n))};
  });
}

es_status es_validate(const es_matrix* m, double tol, char** report_json, int* passes) {
  return guard([&] {
    need(m, "matrix is null");
    const ValidationReport r = validate(m->value);
    if (passes) *passes = r.is_eigenschaft(tol) ? 1 : 0;
    if (report_json) *report_json = copy_string(io::dump(io::to_json(r)));
  });
}

// ---- projector sets

es_status es_projectors_from_json(const char* json, double tol, es_projectors** out) {
  return guard([&] {
    need(json, "json is null");
    need(out, "out is null");
    *out = new es_projectors{io::projectors_from_json(io::parse(json), tol)};
  });
}

es_status es_projectors_from_unitary(const es_matrix* u, double tol, es_projectors** out) {
  return guard([&] {
    need(u, "matrix is null");
    need(out, "out is null");
    *out = new es_projectors{ProjectorSet::from_unitary_columns(u->value, tol)};
  });
}

es_status es_projectors_to_json(const es_projectors* ps, char** out) {
  return guard([&] {
    need(ps, "projectors is null");
    need(out, "out is null");
    *out = copy_string(io::dump(io::to_json(ps->value)));
  });
}

size_t es_projectors_dim(const es_projectors* ps) { return ps ? ps->value.dim() : 0; }

es_status es_to_projectors(const es_op* h, es_projectors** out, int* signs) {
  return guard([&] {
    need(h, "operator is null");
    need(out, "out is null");
    ProjectorDecomposition pd = to_projectors(h->value);
    if (signs) std::copy(pd.signs.begin(), pd.signs.end(), signs);
    *out = new es_projectors{std::move(pd.projectors)};
  });
}

es_status es_complement_family(const es_projectors* ps, es_family family, es_op** out,
                               size_t capacity, size_t* count) {
  return guard([&] {
    need(ps, "projectors is null");
    FamilyKind kind;
    switch (family) {
      case ES_FAMILY_COMPLEMENT: kind = FamilyKind::Complement; break;
      case ES_FAMILY_TRACE_ZERO: kind = FamilyKind::TraceZero; break;
      default: throw InvalidArgument{"unknown family selector"};
    }
    auto ops = complement_family(ps->value, kind);
    if (count) *count = ops.size();
    if (capacity > 0) need(out, "out is null");
    for (std::size_t k = 0; k < ops.size() && k < capacity; ++k) out[k] = new es_op{std::move(ops[k])};
  });
}

es_status es_algebra_table(const es_op* const* family, size_t n, char** table_json) {
  return guard([&] {
    need(table_json, "out is null");
    if (n > 0) need(family, "family is null");
    std::vector<EigenschaftOp> members;
    for (std::size_t k = 0; k < n; ++k) {
      need(family[k], "family member is null");
      members.push_back(family[k]->value);
    }
    *table_json = copy_string(io::dump(io::to_json(algebra_table(members))));
  });
}

void es_projectors_free(es_projectors* ps) { delete ps; }

// ---- states

es_status es_state_create(size_t dim, const double* re_im, es_state** out) {
  return guard([&] {
    need(out, "out is null");
    need(re_im, "re_im is null");
    *out = new es_state{StateVector(interleaved(re_im, dim))};
  });
}

es_status es_state_from_json(const char* json, es_state** out) {
  return guard([&] {
    need(json, "json is null");
    need(out, "out is null");
    *out = new es_state{io::state_from_json(io::parse(json))};
  });
}

es_status es_state_to_json(const es_state* s, char** out) {
  return guard([&] {
    need(s, "state is null");
    need(out, "out is null");
    *out = copy_string(io::dump(io::to_json(s->value)));
  });
}

size_t es_state_dim(const es_state* s) { return s ? s->value.dim() : 0; }

es_status es_state_get(const es_state* s, size_t i, double* re, double* im) {
  return guard([&] {
    need(s, "state is null");
    if (i >= s->value.dim()) throw ShapeError("index out of range");
    if (re) *re = s->value[i].real();
    if (im) *im = s->value[i].imag();
  });
}

es_status es_superpose(double c1_re, double c1_im, const es_state* s1, double c2_re, double c2_im,
                       const es_state* s2, es_state** out) {
  return guard([&] {
    need(s1, "s1 is null");
    need(s2, "s2 is null");
    need(out, "out is null");
    *out = new es_state{superpose({c1_re, c1_im}, s1->value, {c2_re, c2_im}, s2->value)};
  });
}

void es_state_free(es_state* s) { delete s; }

es_status es_decompose(const es_matrix* a, const es_state* psi, double* mean, double* dispersion,
                       es_state** residual) {
  return guard([&] {
    need(a, "operator is null");
    need(psi, "state is null");
    Decomposition d = decompose_state(a->value, psi->value);
    if (mean) *mean = d.mean;
    if (dispersion) *dispersion = d.dispersion;
    if (residual) *residual = d.residual_state ? new es_state{std::move(*d.residual_state)} : nullptr;
  });
}

es_status es_decompose_json(const es_matrix* a, const es_state* psi, char** out) {
  return guard([&] {
    need(a, "operator is null");
    need(psi, "state is null");
    need(out, "out is null");
    *out = copy_string(io::dump(io::to_json(decompose_state(a->value, psi->value))));
  });
}

es_status es_density_from_state(const es_state* psi, int truncate, es_matrix** out) {
  return guard([&] {
    need(psi, "state is null");
    need(out, "out is null");
    DensityMatrix rho = outer_product(psi->value);
    if (truncate) rho = diagonal_truncate(rho);
    *out = new es_matrix{rho.matrix()};
  });
}

es_status es_diagonal_truncate(const es_matrix* rho, es_matrix** out) {
  return guard([&] {
    need(rho, "matrix is null");
    need(out, "out is null");
    *out = new es_matrix{diagonal_truncate(DensityMatrix(rho->value)).matrix()};
  });
}

es_status es_classify(const es_matrix* rho, es_state_kind* kind, double* purity, double* rho_dispersion) {
  return guard([&] {
    need(rho, "matrix is null");
    const Classification c = classify(DensityMatrix(rho->value));
    if (kind) *kind = c.kind == StateKind::Pure ? ES_KIND_PURE : ES_KIND_MIXTURE;
    if (purity) *purity = c.purity;
    if (rho_dispersion) *rho_dispersion = c.rho_dispersion;
  });
}

es_status es_classify_json(const es_matrix* rho, char** out) {
  return guard([&] {
    need(rho, "matrix is null");
    need(out, "out is null");
    *out = copy_string(io::dump(io::to_json(classify(DensityMatrix(rho->value)))));
  });
}

// ---- dynamics

es_status es_evolve_h2(const es_op* h, double omega1, double omega2, double t, es_op** out) {
  return guard([&] {
    need(h, "operator is null");
    need(out, "out is null");
    *out = new es_op{evolve_h2({omega1, omega2, h->value}, t)};
  });
}

es_status es_beat_trace(const es_op* h, double omega1, double omega2, const double* times, size_t n,
                        double* delta_phi) {
  return guard([&] {
    need(h, "operator is null");
    if (n > 0) {
      need(times, "times is null");
      need(delta_phi, "delta_phi is null");
    }
    const auto trace = beat_trace({omega1, omega2, h->value}, std::span<const double>(times, n));
    for (std::size_t k = 0; k < n; ++k) delta_phi[k] = trace[k].delta_phi;
  });
}

es_status es_beat_trace_csv(const es_op* h, double omega1, double omega2, const double* times, size_t n,
                            char** csv) {
  return guard([&] {
    need(h, "operator is null");
    need(csv, "out is null");
    if (n > 0) need(times, "times is null");
    *csv = copy_string(io::beat_trace_csv(beat_trace({omega1, omega2, h->value}, std::span<const double>(times, n))));
  });
}

// ---- holographic detection

es_status es_run_interferometer_csv(const es_state* state, const es_op* splitter, const double* phases,
                                    size_t n, double noise_sigma, uint64_t seed, char** csv) {
  return guard([&] {
    need(state, "state is null");
    need(csv, "out is null");
    const auto cfg = make_config(splitter, phases, n, noise_sigma);
    *csv = copy_string(io::fringe_csv(run_interferometer(state->value, cfg, seed)));
  });
}

es_status es_recover_state(const double* phases, const double* intensity_port1, size_t n, double* mag1,
                           double* mag2, double* relative_phase, int* ambiguous) {
  return guard([&] {
    if (n > 0) {
      need(phases, "phases is null");
      need(intensity_port1, "intensities is null");
    }
    FringeRecord fr;
    fr.phases.assign(phases, phases + n);
    fr.intensity_port1.assign(intensity_port1, intensity_port1 + n);
    fr.intensity_port2.reserve(n);
    for (double i1 : fr.intensity_port1) fr.intensity_port2.push_back(1.0 - i1);
    const Recovery r = recover_state(fr);
    if (mag1) *mag1 = r.state.mag1;
    if (mag2) *mag2 = r.state.mag2;
    if (relative_phase) *relative_phase = r.state.relative_phase;
    if (ambiguous) *ambiguous = r.diagnostics.ambiguous ? 1 : 0;
  });
}

es_status es_holographic_report_json(const es_state* state, const es_op* splitter, const double* phases,
                                     size_t n, double noise_sigma, uint64_t seed, char** out) {
  return guard([&] {
    need(state, "state is null");
    need(out, "out is null");
    const auto cfg = make_config(splitter, phases, n, noise_sigma);
    *out = copy_string(io::dump(io::to_json(holographic_report(state->value, cfg, seed))));
  });
}

}  // extern "C"
