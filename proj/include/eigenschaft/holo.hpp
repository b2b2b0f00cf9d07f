#pragma once

#include <cstdint>
#include <vector>

#include "eigenschaft/ops.hpp"
#include "eigenschaft/states.hpp"

namespace eigenschaft {

// Two-arm interferometer. A controllable phase is applied to the second arm,
// then the splitter mixes the arms and both output ports are detected.
struct InterferometerConfig {
  EigenschaftOp splitter;
  std::vector<double> sweep_phases;  // radians
  double shot_noise_sigma = 0.0;     // additive Gaussian on intensities
};

struct FringeRecord {
  std::vector<double> phases;
  std::vector<double> intensity_port1;
  std::vector<double> intensity_port2;
};

// Magnitudes are an unordered pair; mag1 >= mag2 by convention.
struct RecoveredState {
  double mag1 = 0.0;
  double mag2 = 0.0;
  double relative_phase = 0.0;  // arg b - arg a, in (-pi, pi]
};

struct FitDiagnostics {
  std::size_t samples = 0;
  double offset = 0.0;        // C in I1 = C + V/2 cos(phi + theta)
  double amplitude = 0.0;     // V
  double visibility = 0.0;    // V / 2C
  double residual_rms = 0.0;
  double visibility_uncertainty = 0.0;
  bool ambiguous = false;       // no interference term: magnitudes are {1, 0}, phase undefined
  bool phase_defined = true;
  bool ordering_conventional = true;  // a single interferometer cannot tell the arms apart
};

struct Recovery {
  RecoveredState state;
  FitDiagnostics diagnostics;
};

struct TruthError {
  double mag1 = 0.0;
  double mag2 = 0.0;
  double relative_phase = 0.0;  // wrapped; 0 when the phase is undefined
};

struct HolographicReport {
  Recovery recovery;
  RecoveredState truth;
  TruthError truth_error;
};

// `n` phases evenly spaced over [0, 2 pi).
std::vector<double> uniform_phases(std::size_t n);

EigenschaftOp hadamard();

// ConfigError for an empty sweep or negative noise.
FringeRecord run_interferometer(const StateVector& state, const InterferometerConfig& cfg,
                                std::uint64_t rng_seed);

// Assumes the Hadamard splitter. FitError when fewer than three distinct
// phases are present or the fitted visibility is unphysical.
Recovery recover_state(const FringeRecord& fr);

HolographicReport holographic_report(const StateVector& state, const InterferometerConfig& cfg,
                                     std::uint64_t seed);

}  // namespace eigenschaft
