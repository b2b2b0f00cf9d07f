#include <algorithm>
#include <cmath>
#include <functional>

#include "eigenschaft/ops.hpp"

namespace eigenschaft {

namespace {

constexpr double kExpressibleTol = 1e-9;
constexpr double kIntegerTol = 1e-9;
// Exhaustive subset search stays cheap up to this basis size.
constexpr std::size_t kMaxSearchBasis = 10;
constexpr std::size_t kMaxSubsetSize = 4;

struct Fit {
  std::vector<Complex> coefficients;
  double residual = 0.0;
};

Fit fit_subset(const std::vector<ComplexMatrix>& basis, const std::vector<std::size_t>& subset,
               const ComplexMatrix& target) {
  const std::size_t n2 = target.rows() * target.cols();
  ComplexMatrix design(n2, subset.size());
  for (std::size_t c = 0; c < subset.size(); ++c) {
    auto e = basis[subset[c]].entries();
    for (std::size_t r = 0; r < n2; ++r) design(r, c) = e[r];
  }
  const auto x = least_squares(design, target.entries());

  ComplexMatrix approx(target.rows(), target.cols());
  Fit fit;
  fit.coefficients.assign(basis.size(), Complex{});
  for (std::size_t c = 0; c < subset.size(); ++c) {
    fit.coefficients[subset[c]] = x[c];
    approx += x[c] * basis[subset[c]];
  }
  fit.residual = max_abs_diff(approx, target);
  return fit;
}

// Calls visit(subset) for every size-k subset of {0..n-1} in lexicographic
// order until it returns true.
bool for_each_subset(std::size_t n, std::size_t k,
                     const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  if (k > n) return false;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (visit(idx)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

bool all_integer(const std::vector<Complex>& xs) {
  return std::all_of(xs.begin(), xs.end(), [](Complex z) {
    return std::abs(z.real() - std::round(z.real())) <= kIntegerTol && std::abs(z.imag()) <= kIntegerTol;
  });
}

}  // namespace

AlgebraTable algebra_table(const std::vector<EigenschaftOp>& family) {
  AlgebraTable table;
  table.size = family.size();
  if (family.empty()) return table;
  const std::size_t n = family.front().dim();
  for (const auto& h : family) {
    if (h.dim() != n) throw ShapeError("algebra_table: family members differ in dimension");
  }

  std::vector<ComplexMatrix> basis;
  basis.push_back(ComplexMatrix::identity(n));
  for (const auto& h : family) basis.push_back(h.matrix());

  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      const ComplexMatrix product = mat_mul(family[i].matrix(), family[j].matrix());

      std::optional<Fit> best;
      if (basis.size() <= kMaxSearchBasis) {
        for (std::size_t k = 1; k <= std::min(kMaxSubsetSize, basis.size()) && !best; ++k) {
          for_each_subset(basis.size(), k, [&](const std::vector<std::size_t>& subset) {
            Fit f = fit_subset(basis, subset, product);
            if (f.residual <= kExpressibleTol) {
              best = std::move(f);
              return true;
            }
            return false;
          });
        }
      }
      if (!best) {
        std::vector<std::size_t> all(basis.size());
        for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
        best = fit_subset(basis, all, product);
      }

      ProductExpansion e;
      e.left = i;
      e.right = j;
      e.residual = best->residual;
      e.expressible = best->residual <= kExpressibleTol;
      e.coefficients = std::move(best->coefficients);
      e.integer = e.expressible && all_integer(e.coefficients);
      table.products.push_back(std::move(e));

      const double c = max_abs(commutator(family[i].matrix(), family[j].matrix()));
      table.commutators.push_back({i, j, c});
      table.max_commutator = std::max(table.max_commutator, c);
    }
  }
  return table;
}

}  // namespace eigenschaft
