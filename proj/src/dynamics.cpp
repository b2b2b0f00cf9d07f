#include "eigenschaft/dynamics.hpp"

#include <cmath>
#include <numbers>

namespace eigenschaft {

double wrap_phase(double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::remainder(phi, two_pi);  // [-pi, pi]
  if (w <= -std::numbers::pi) w += two_pi;
  return w + 0.0;
}

EigenschaftOp evolve_h2(const TwoLevelSystem& sys, double t) {
  if (sys.h2.dim() != 2) throw ShapeError("evolve_h2: operator must be 2x2");
  ComplexMatrix m = sys.h2.matrix();
  const Complex rot = std::polar(1.0, sys.detuning() * t);
  m(0, 1) *= rot;
  m(1, 0) = std::conj(m(0, 1));
  return EigenschaftOp::from_matrix(std::move(m));
}

std::vector<BeatSample> beat_trace(const TwoLevelSystem& sys, std::span<const double> t_samples) {
  const double phi0 = h2_elements(sys.h2).delta_phi;
  std::vector<BeatSample> out;
  out.reserve(t_samples.size());
  for (double t : t_samples) {
    if (!std::isfinite(t)) throw DomainError("beat_trace: sample times must be finite");
    out.push_back({t, wrap_phase(phi0 + sys.detuning() * t)});
  }
  return out;
}

}  // namespace eigenschaft
