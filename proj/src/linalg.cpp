#include "eigenschaft/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace eigenschaft {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError(std::string(what) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                     std::to_string(b.cols()));
  }
}

void require_square(const ComplexMatrix& a, const char* what) {
  if (!a.is_square()) {
    throw ShapeError(std::string(what) + ": matrix must be square, got " +
                     std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw ShapeError("matrix entries: expected " + std::to_string(rows_ * cols_) + " values, got " +
                     std::to_string(entries_.size()));
  }
  if (!std::all_of(entries_.begin(), entries_.end(), finite)) {
    throw DomainError("matrix entries must be finite");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::column(std::span<const Complex> v) {
  return ComplexMatrix(v.size(), 1, std::vector<Complex>(v.begin(), v.end()));
}

ComplexMatrix ComplexMatrix::row(std::span<const Complex> v) {
  return ComplexMatrix(1, v.size(), std::vector<Complex>(v.begin(), v.end()));
}

std::vector<Complex> ComplexMatrix::column_vector(std::size_t j) const {
  std::vector<Complex> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "add");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "subtract");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& z : entries_) z *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return mat_mul(a, b); }

ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("mat_mul: inner dimensions differ (" + std::to_string(a.cols()) + " vs " +
                     std::to_string(b.rows()) + ")");
  }
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

std::vector<Complex> mat_vec(const ComplexMatrix& a, std::span<const Complex> v) {
  if (a.cols() != v.size()) {
    throw ShapeError("mat_vec: matrix has " + std::to_string(a.cols()) + " columns, vector has " +
                     std::to_string(v.size()) + " components");
  }
  std::vector<Complex> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex acc{};
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
  return t;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
  return k;
}

Complex trace(const ComplexMatrix& a) {
  require_square(a, "trace");
  Complex t{};
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return mat_mul(a, b) - mat_mul(b, a);
}

double max_abs(const ComplexMatrix& a) {
  double m = 0.0;
  for (const auto& z : a.entries()) m = std::max(m, std::abs(z));
  return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) m = std::max(m, std::abs(ea[k] - eb[k]));
  return m;
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw ShapeError("inner: vector lengths differ");
  Complex acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

double hermiticity_residual(const ComplexMatrix& a) {
  require_square(a, "hermiticity_residual");
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j)
      m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
  return m;
}

double unitarity_residual(const ComplexMatrix& a) {
  require_square(a, "unitarity_residual");
  return max_abs_diff(mat_mul(adjoint(a), a), ComplexMatrix::identity(a.rows()));
}

double involution_residual(const ComplexMatrix& a) {
  require_square(a, "involution_residual");
  return max_abs_diff(mat_mul(a, a), ComplexMatrix::identity(a.rows()));
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  return a.is_square() && hermiticity_residual(a) <= tol;
}

InvolutionCheck is_involution(const ComplexMatrix& a, double tol) {
  const double r = involution_residual(a);
  return {r <= tol, r};
}

Spectrum hermitian_eig(const ComplexMatrix& a, const EigOptions& opts) {
  require_square(a, "hermitian_eig");
  const double herm = hermiticity_residual(a);
  if (herm > opts.hermitian_tol) {
    throw DomainError("hermitian_eig: matrix is not Hermitian (residual " + std::to_string(herm) +
                      ")");
  }
  const std::size_t n = a.rows();

  // Work on the exactly Hermitian part.
  ComplexMatrix w = 0.5 * (a + adjoint(a));
  for (std::size_t i = 0; i < n; ++i) w(i, i) = w(i, i).real();
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double threshold = opts.off_diagonal_tol * std::max(1.0, max_abs(a));
  auto max_off_diagonal = [&] {
    double m = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) m = std::max(m, std::abs(w(p, q)));
    return m;
  };

  int sweep = 0;
  while (max_off_diagonal() >= threshold) {
    if (sweep++ >= opts.max_sweeps) {
      throw NumericError("hermitian_eig: no convergence after " + std::to_string(opts.max_sweeps) +
                         " sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex b = w(p, q);
        const double mag = std::abs(b);
        if (mag == 0.0) continue;
        const Complex phase = b / mag;  // e^{i phi}
        const double app = w(p, p).real();
        const double aqq = w(q, q).real();

        // Rotation angle: |b| (c^2 - s^2) + (aqq - app) c s = 0, smaller root.
        const double tau = (aqq - app) / (2.0 * mag);
        double t;
        if (std::abs(tau) > 1e150) {
          t = -0.5 / tau;
        } else {
          t = -std::copysign(1.0, tau) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // U = [[c, -s e^{i phi}], [s e^{-i phi}, c]] on the (p, q) plane.
        const Complex u01 = -s * phase;
        const Complex u10 = s * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {  // W <- W U, V <- V U
          const Complex wkp = w(k, p), wkq = w(k, q);
          w(k, p) = c * wkp + u10 * wkq;
          w(k, q) = u01 * wkp + c * wkq;
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp + u10 * vkq;
          v(k, q) = u01 * vkp + c * vkq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // W <- U^+ W
          const Complex wpk = w(p, k), wqk = w(q, k);
          w(p, k) = c * wpk + std::conj(u10) * wqk;
          w(q, k) = std::conj(u01) * wpk + c * wqk;
        }
        w(p, q) = 0.0;
        w(q, p) = 0.0;
        w(p, p) = w(p, p).real();
        w(q, q) = w(q, q).real();
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return w(x, x).real() < w(y, y).real(); });

  Spectrum out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = w(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

std::vector<Complex> least_squares(const ComplexMatrix& a, std::span<const Complex> b) {
  if (a.rows() != b.size()) throw ShapeError("least_squares: right-hand side length mismatch");
  const std::size_t m = a.rows();
  const std::size_t k = a.cols();

  std::vector<std::vector<Complex>> q;  // orthonormal columns kept so far
  std::vector<std::size_t> kept;
  ComplexMatrix r(k, k);

  for (std::size_t j = 0; j < k; ++j) {
    std::vector<Complex> col = a.column_vector(j);
    const double original = norm(col);
    std::vector<Complex> coeff(q.size());
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t l = 0; l < q.size(); ++l) {
        const Complex proj = inner(q[l], col);
        coeff[l] += proj;
        for (std::size_t i = 0; i < m; ++i) col[i] -= proj * q[l][i];
      }
    }
    const double rest = norm(col);
    if (original == 0.0 || rest <= 1e-10 * original) continue;
    for (auto& z : col) z /= rest;
    for (std::size_t l = 0; l < q.size(); ++l) r(l, kept.size()) = coeff[l];
    r(kept.size(), kept.size()) = rest;
    q.push_back(std::move(col));
    kept.push_back(j);
  }

  // Back-substitute R x = Q^+ b on the kept columns.
  const std::size_t rank = kept.size();
  std::vector<Complex> rhs(rank);
  for (std::size_t l = 0; l < rank; ++l) rhs[l] = inner(q[l], b);
  std::vector<Complex> y(rank);
  for (std::size_t l = rank; l-- > 0;) {
    Complex acc = rhs[l];
    for (std::size_t c = l + 1; c < rank; ++c) acc -= r(l, c) * y[c];
    y[l] = acc / r(l, l);
  }
  std::vector<Complex> x(k);
  for (std::size_t l = 0; l < rank; ++l) x[kept[l]] = y[l];
  return x;
}

}  // namespace eigenschaft
