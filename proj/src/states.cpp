#include "eigenschaft/states.hpp"

#include <cmath>
#include <string>

namespace eigenschaft {

StateVector::StateVector(std::vector<Complex> amplitudes, double tol)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty()) throw DomainError("state vector must have at least one component");
  for (const auto& z : amplitudes_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw DomainError("state amplitudes must be finite");
    }
  }
  const double n = norm(amplitudes_);
  if (std::abs(n * n - 1.0) > tol) {
    throw DomainError("state vector is not normalized (sum |a|^2 = " + std::to_string(n * n) + ")");
  }
}

StateVector StateVector::normalized(std::vector<Complex> amplitudes) {
  const double n = norm(amplitudes);
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("cannot normalize a zero vector");
  for (auto& z : amplitudes) z /= n;
  return StateVector(std::move(amplitudes));
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw ShapeError("basis index out of range");
  std::vector<Complex> v(dim);
  v[index] = 1.0;
  return StateVector(std::move(v));
}

DensityMatrix::DensityMatrix(ComplexMatrix m, double tol) : matrix_(std::move(m)) {
  if (!matrix_.is_square() || matrix_.empty()) throw ShapeError("density matrix must be square");
  const double herm = hermiticity_residual(matrix_);
  if (herm > kTolHerm) {
    throw DomainError("density matrix is not Hermitian (residual " + std::to_string(herm) + ")");
  }
  const Complex tr = trace(matrix_);
  if (std::abs(tr - Complex(1.0)) > tol) {
    throw DomainError("density matrix trace is " + std::to_string(tr.real()) + ", expected 1");
  }
  const Spectrum spec = hermitian_eig(matrix_);
  if (spec.values.front() < -1e-10) {
    throw DomainError("density matrix has negative eigenvalue " +
                      std::to_string(spec.values.front()));
  }
}

StateVector superpose(Complex c1, const StateVector& s1, Complex c2, const StateVector& s2) {
  if (s1.dim() != s2.dim()) throw ShapeError("superpose: states have different dimensions");
  std::vector<Complex> v(s1.dim());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = c1 * s1[i] + c2 * s2[i];
  if (norm(v) <= 1e-12) throw DomainError("degenerate superposition: resulting vector is zero");
  return StateVector::normalized(std::move(v));
}

Decomposition decompose_state(const ComplexMatrix& a, const StateVector& psi, double herm_tol) {
  if (!a.is_square() || a.rows() != psi.dim()) {
    throw ShapeError("decompose_state: operator and state dimensions differ");
  }
  const double herm = hermiticity_residual(a);
  if (herm > herm_tol) {
    throw DomainError("decompose_state: operator is not Hermitian (residual " +
                      std::to_string(herm) + ")");
  }

  const std::vector<Complex> a_psi = mat_vec(a, psi.amplitudes());
  Decomposition d;
  d.mean = inner(psi.amplitudes(), a_psi).real();

  // <A^2> - <A>^2 equals the squared norm of the component of A psi
  // orthogonal to psi; that form is never negative.
  std::vector<Complex> rest(a_psi);
  for (std::size_t i = 0; i < rest.size(); ++i) rest[i] -= d.mean * psi[i];
  const double rest_norm = norm(rest);
  d.dispersion = rest_norm * rest_norm;

  if (d.dispersion > kDispersionEps) {
    for (auto& z : rest) z /= rest_norm;
    // One Gram-Schmidt polish against psi.
    const Complex overlap = inner(psi.amplitudes(), rest);
    for (std::size_t i = 0; i < rest.size(); ++i) rest[i] -= overlap * psi[i];
    d.residual_state = StateVector::normalized(std::move(rest));
  }
  return d;
}

DensityMatrix outer_product(const StateVector& psi) {
  std::vector<Complex> conj(psi.amplitudes().begin(), psi.amplitudes().end());
  for (auto& z : conj) z = std::conj(z);
  ComplexMatrix m = kron(ComplexMatrix::column(psi.amplitudes()), ComplexMatrix::row(conj));
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) = m(i, i).real();
  return DensityMatrix(std::move(m));
}

DensityMatrix diagonal_truncate(const DensityMatrix& rho) {
  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix d(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) d(i, i) = m(i, i);
  return DensityMatrix(std::move(d));
}

Classification classify(const DensityMatrix& rho, double pure_tol) {
  const ComplexMatrix& m = rho.matrix();
  // Tr(rho^2) = sum_ij |rho_ij|^2 for Hermitian rho.
  double purity = 0.0;
  for (const auto& z : m.entries()) purity += std::norm(z);
  const double tr = trace(m).real();

  Classification c;
  c.purity = purity;
  c.rho_dispersion = purity - tr * tr;
  c.kind = std::abs(purity - 1.0) <= pure_tol ? StateKind::Pure : StateKind::Mixture;
  return c;
}

const char* to_string(StateKind kind) { return kind == StateKind::Pure ? "pure" : "mixture"; }

}  // namespace eigenschaft
