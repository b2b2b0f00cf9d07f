#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "eigenschaft/errors.hpp"

namespace eigenschaft {

using Complex = std::complex<double>;

// Default tolerances. Every routine that uses one also accepts an override.
inline constexpr double kTolHerm = 1e-10;
inline constexpr double kTolOrtho = 1e-10;
inline constexpr double kTolRecon = 1e-10;
inline constexpr double kTolInv = 1e-10;
inline constexpr double kTolNorm = 1e-10;
inline constexpr double kTolStrict = 1e-12;

// Dense row-major complex matrix. Entries are always finite.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  // Zero matrix.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  // Throws ShapeError on a length mismatch and DomainError on non-finite data.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  static ComplexMatrix diagonal(std::span<const double> diag);
  static ComplexMatrix column(std::span<const Complex> v);
  static ComplexMatrix row(std::span<const Complex> v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return entries_.empty(); }

  const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

  std::span<const Complex> entries() const { return entries_; }
  std::vector<Complex> column_vector(std::size_t j) const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b);
std::vector<Complex> mat_vec(const ComplexMatrix& a, std::span<const Complex> v);
ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
Complex trace(const ComplexMatrix& a);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

// Largest entry modulus.
double max_abs(const ComplexMatrix& a);
// max |a_ij - b_ij|; ShapeError on mismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

Complex inner(std::span<const Complex> a, std::span<const Complex> b);  // <a|b>
double norm(std::span<const Complex> v);

double hermiticity_residual(const ComplexMatrix& a);  // ||A - A^+||_max
double unitarity_residual(const ComplexMatrix& a);    // ||A^+ A - I||_max
double involution_residual(const ComplexMatrix& a);   // ||A A - I||_max
bool is_hermitian(const ComplexMatrix& a, double tol = kTolHerm);

struct InvolutionCheck {
  bool involutive = false;
  double residual = 0.0;
};

InvolutionCheck is_involution(const ComplexMatrix& a, double tol = kTolInv);

// Eigenvalues ascending; eigenvector k is column k of `vectors`.
struct Spectrum {
  std::vector<double> values;
  ComplexMatrix vectors;
};

struct EigOptions {
  double hermitian_tol = kTolHerm;
  int max_sweeps = 100;
  double off_diagonal_tol = 1e-13;
};

// Cyclic complex Jacobi. Throws DomainError for non-Hermitian input and
// NumericError when the sweep cap is hit.
Spectrum hermitian_eig(const ComplexMatrix& a, const EigOptions& opts = {});

// Solves min ||A x - b|| by modified Gram-Schmidt QR with one
// reorthogonalization pass. Columns numerically dependent on earlier ones get
// coefficient 0.
std::vector<Complex> least_squares(const ComplexMatrix& a, std::span<const Complex> b);

}  // namespace eigenschaft
