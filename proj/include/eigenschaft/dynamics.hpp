#pragma once

#include <span>
#include <vector>

#include "eigenschaft/ops.hpp"

namespace eigenschaft {

// Two-level system with level frequencies omega1, omega2 (rad per time unit)
// observed through a 2x2 eigenschaft operator.
struct TwoLevelSystem {
  double omega1 = 0.0;
  double omega2 = 0.0;
  EigenschaftOp h2;

  double detuning() const { return omega1 - omega2; }
};

struct BeatSample {
  double t = 0.0;
  double delta_phi = 0.0;  // wrapped to (-pi, pi]
};

// Diagonal is left alone; H12 picks up exp(+i (omega1 - omega2) t).
EigenschaftOp evolve_h2(const TwoLevelSystem& sys, double t);

std::vector<BeatSample> beat_trace(const TwoLevelSystem& sys, std::span<const double> t_samples);

// Maps any angle onto (-pi, pi].
double wrap_phase(double phi);

}  // namespace eigenschaft
