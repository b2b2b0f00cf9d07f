#pragma once

#include <optional>
#include <span>
#include <vector>

#include "eigenschaft/linalg.hpp"

namespace eigenschaft {

inline constexpr double kDispersionEps = 1e-12;

// Normalized wave function.
class StateVector {
 public:
  // Throws DomainError unless sum |a_i|^2 = 1 within tol.
  explicit StateVector(std::vector<Complex> amplitudes, double tol = kTolNorm);
  // Rescales to unit norm; DomainError for a zero or non-finite vector.
  static StateVector normalized(std::vector<Complex> amplitudes);
  static StateVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }

 private:
  std::vector<Complex> amplitudes_;
};

// Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m, double tol = kTolNorm);

  const ComplexMatrix& matrix() const { return matrix_; }
  std::size_t dim() const { return matrix_.rows(); }

 private:
  ComplexMatrix matrix_;
};

// A psi1 = mean psi1 + sqrt(dispersion) psi2, with psi2 orthogonal to psi1.
struct Decomposition {
  double mean = 0.0;
  double dispersion = 0.0;
  std::optional<StateVector> residual_state;  // absent when psi1 is an eigenvector
};

enum class StateKind { Pure, Mixture };

struct Classification {
  StateKind kind = StateKind::Pure;
  double purity = 1.0;          // Tr(rho^2)
  double rho_dispersion = 0.0;  // Tr(rho^2) - (Tr rho)^2, never positive
};

// Normalized c1 s1 + c2 s2. DomainError if the combination vanishes.
StateVector superpose(Complex c1, const StateVector& s1, Complex c2, const StateVector& s2);

Decomposition decompose_state(const ComplexMatrix& a, const StateVector& psi,
                              double herm_tol = kTolHerm);

DensityMatrix outer_product(const StateVector& psi);

// Drops every off-diagonal entry. The result keeps unit trace.
DensityMatrix diagonal_truncate(const DensityMatrix& rho);

Classification classify(const DensityMatrix& rho, double pure_tol = kTolNorm);

const char* to_string(StateKind kind);

}  // namespace eigenschaft
