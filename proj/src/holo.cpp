#include "eigenschaft/holo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "eigenschaft/dynamics.hpp"

namespace eigenschaft {

std::vector<double> uniform_phases(std::size_t n) {
  std::vector<double> p(n);
  for (std::size_t k = 0; k < n; ++k) p[k] = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
  return p;
}

EigenschaftOp hadamard() { return build_h2({std::numbers::pi / 4.0, 0.0}); }

FringeRecord run_interferometer(const StateVector& state, const InterferometerConfig& cfg,
                                std::uint64_t rng_seed) {
  if (state.dim() != 2) throw ConfigError("interferometer input must be a two-component state");
  if (cfg.splitter.dim() != 2) throw ConfigError("splitter must be a 2x2 operator");
  if (cfg.sweep_phases.empty()) throw ConfigError("phase sweep is empty");
  if (!(cfg.shot_noise_sigma >= 0.0) || !std::isfinite(cfg.shot_noise_sigma)) {
    throw ConfigError("noise sigma must be finite and non-negative");
  }

  std::mt19937_64 rng(rng_seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  const ComplexMatrix& h = cfg.splitter.matrix();

  FringeRecord fr;
  fr.phases = cfg.sweep_phases;
  fr.intensity_port1.reserve(fr.phases.size());
  fr.intensity_port2.reserve(fr.phases.size());
  for (double phi : fr.phases) {
    if (!std::isfinite(phi)) throw ConfigError("sweep phases must be finite");
    const Complex a = state[0];
    const Complex b = std::polar(1.0, phi) * state[1];
    double i1 = std::norm(h(0, 0) * a + h(0, 1) * b);
    double i2 = std::norm(h(1, 0) * a + h(1, 1) * b);
    if (cfg.shot_noise_sigma > 0.0) {
      i1 = std::max(0.0, i1 + cfg.shot_noise_sigma * noise(rng));
      i2 = std::max(0.0, i2 + cfg.shot_noise_sigma * noise(rng));
    }
    fr.intensity_port1.push_back(i1);
    fr.intensity_port2.push_back(i2);
  }
  return fr;
}

Recovery recover_state(const FringeRecord& fr) {
  const std::size_t n = fr.phases.size();
  if (fr.intensity_port1.size() != n) throw FitError("fringe record columns have different lengths");

  std::vector<double> wrapped;
  wrapped.reserve(n);
  for (double p : fr.phases) wrapped.push_back(wrap_phase(p));
  std::sort(wrapped.begin(), wrapped.end());
  const auto distinct = std::unique(wrapped.begin(), wrapped.end(),
                                    [](double x, double y) { return std::abs(x - y) <= 1e-12; }) -
                        wrapped.begin();
  if (distinct < 3) throw FitError("fringe fit needs at least 3 distinct phases (mod 2π)");

  // I1(phi) = c0 + c1 cos phi + c2 sin phi
  ComplexMatrix design(n, 3);
  std::vector<Complex> rhs(n);
  for (std::size_t k = 0; k < n; ++k) {
    design(k, 0) = 1.0;
    design(k, 1) = std::cos(fr.phases[k]);
    design(k, 2) = std::sin(fr.phases[k]);
    rhs[k] = fr.intensity_port1[k];
  }
  const auto coef = least_squares(design, rhs);
  const double c0 = coef[0].real(), c1 = coef[1].real(), c2 = coef[2].real();

  Recovery out;
  FitDiagnostics& d = out.diagnostics;
  d.samples = n;
  double ss = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double r = fr.intensity_port1[k] - (c0 + c1 * std::cos(fr.phases[k]) + c2 * std::sin(fr.phases[k]));
    ss += r * r;
  }
  d.residual_rms = std::sqrt(ss / static_cast<double>(n));
  d.offset = c0;
  d.amplitude = 2.0 * std::hypot(c1, c2);
  if (!(c0 > 0.0)) throw FitError("fitted fringe offset is not positive");
  d.visibility = d.amplitude / (2.0 * c0);

  // Standard error of V from the residual scatter; the cos/sin coefficients
  // each carry about sigma * sqrt(2/N).
  const double dof = n > 3 ? static_cast<double>(n - 3) : 1.0;
  const double sigma = std::sqrt(ss / dof);
  const double v_err = 2.0 * sigma * std::sqrt(2.0 / static_cast<double>(n));
  d.visibility_uncertainty = (1e-9 + 4.0 * v_err) / (2.0 * c0);

  double v = d.visibility;
  if (v > 1.0 + d.visibility_uncertainty) {
    throw FitError("unphysical fringe: visibility " + std::to_string(v) + " exceeds 1");
  }
  v = std::min(v, 1.0);

  RecoveredState& s = out.state;
  if (v <= d.visibility_uncertainty) {
    d.ambiguous = true;
    d.phase_defined = false;
    s.mag1 = 1.0;
    s.mag2 = 0.0;
    s.relative_phase = 0.0;
    return out;
  }
  // mag1^2 + mag2^2 = 1 and 2 mag1 mag2 = v.
  const double root = std::sqrt((1.0 - v) * (1.0 + v));
  s.mag1 = std::sqrt((1.0 + root) / 2.0);
  s.mag2 = v / (2.0 * s.mag1);
  s.relative_phase = wrap_phase(std::atan2(-c2, c1));
  return out;
}

HolographicReport holographic_report(const StateVector& state, const InterferometerConfig& cfg,
                                     std::uint64_t seed) {
  HolographicReport rep;
  rep.recovery = recover_state(run_interferometer(state, cfg, seed));

  const double ma = std::abs(state[0]), mb = std::abs(state[1]);
  rep.truth.mag1 = std::max(ma, mb);
  rep.truth.mag2 = std::min(ma, mb);
  const bool truth_phase = ma > 0.0 && mb > 0.0;
  rep.truth.relative_phase = truth_phase ? wrap_phase(std::arg(state[1]) - std::arg(state[0])) : 0.0;

  const RecoveredState& got = rep.recovery.state;
  rep.truth_error.mag1 = std::abs(got.mag1 - rep.truth.mag1);
  rep.truth_error.mag2 = std::abs(got.mag2 - rep.truth.mag2);
  rep.truth_error.relative_phase =
      (truth_phase && rep.recovery.diagnostics.phase_defined)
          ? std::abs(wrap_phase(got.relative_phase - rep.truth.relative_phase))
          : 0.0;
  return rep;
}

}  // namespace eigenschaft
