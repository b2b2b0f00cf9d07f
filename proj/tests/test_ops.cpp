#include <doctest.h>

#include <cmath>
#include <numbers>

#include "eigenschaft/ops.hpp"
#include "support/testing.hpp"

using namespace eigenschaft;
using testing::Rng;

namespace {

constexpr double kPi = std::numbers::pi;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

ComplexMatrix diag(std::vector<double> d) { return ComplexMatrix::diagonal(d); }

// Random dim-n involution with the given trace, by unitary conjugation.
ComplexMatrix random_involution(std::size_t n, int trace_class, Rng& rng) {
  return testing::conjugated_diagonal(testing::random_unitary(n, rng),
                                      testing::signs_with_trace(n, trace_class, rng));
}

// Independent check of the rank-1 relations: |H_ij|^2 = (1 - s a_i)(1 - s a_j)
// and the phase closure under the signed-amplitude convention.
struct RelationCheck {
  double magnitude = 0.0;
  double closure = 0.0;
};

RelationCheck check_relations(const ComplexMatrix& h, int s) {
  RelationCheck rc;
  const std::size_t n = h.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double lhs = std::norm(h(i, j));
      const double rhs = (1.0 - s * h(i, i).real()) * (1.0 - s * h(j, j).real());
      rc.magnitude = std::max(rc.magnitude, std::abs(lhs - rhs));
    }
  auto phase = [&](std::size_t i, std::size_t j) { return std::arg(-static_cast<double>(s) * h(i, j)); };
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) {
      if (std::abs(h(0, j)) < 1e-6 || std::abs(h(0, k)) < 1e-6 || std::abs(h(j, k)) < 1e-6) continue;
      const double r = testing::wrap(phase(j, k) - (phase(0, k) - phase(0, j)));
      rc.closure = std::max(rc.closure, std::abs(r));
    }
  return rc;
}

}  // namespace

TEST_CASE("EigenschaftOp::from_matrix") {
  const auto h = EigenschaftOp::from_matrix(diag({1.0, -1.0, -1.0}));
  CHECK(h.trace_class() == -1);
  CHECK(h.plus_count() == 1);
  CHECK(h.minus_count() == 2);
  CHECK_THROWS_AS(EigenschaftOp::from_matrix(diag({1.0, 0.5})), DomainError);
  CHECK_THROWS_AS(EigenschaftOp::from_matrix(ComplexMatrix(2, 2, {1.0, 1.0, 0.0, -1.0})), DomainError);
  CHECK_THROWS_AS(EigenschaftOp::from_matrix(ComplexMatrix(2, 3)), DomainError);
}

TEST_CASE("build_h2") {
  const auto had = build_h2({kPi / 4.0, 0.0}).matrix();
  CHECK(testing::max_diff(had, ComplexMatrix(2, 2, {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2})) < 1e-15);

  CHECK(testing::max_diff(build_h2({0.0, 1.3}).matrix(), diag({1.0, -1.0})) < 1e-15);

  const auto y = build_h2({kPi / 2.0, kPi / 2.0}).matrix();
  CHECK(testing::max_diff(y, ComplexMatrix(2, 2, {0.0, Complex(0, 1), Complex(0, -1), 0.0})) < 1e-15);
  CHECK(involution_residual(y) < 1e-15);

  Rng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const auto h = build_h2({rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0)});
    const auto e = h2_elements(h);
    CHECK(std::abs(e.alpha * e.alpha + e.beta * e.beta - 1.0) < 1e-15);
    CHECK(std::abs(trace(h.matrix())) < 1e-15);
    CHECK(h.trace_class() == 0);
  }
}

TEST_CASE("h2_elements") {
  const auto had = h2_elements(build_h2({kPi / 4.0, 0.0}));
  CHECK(std::abs(had.alpha - kInvSqrt2) < 1e-15);
  CHECK(std::abs(had.beta - kInvSqrt2) < 1e-15);
  CHECK(had.delta_phi == 0.0);

  const auto z = h2_elements(EigenschaftOp::from_matrix(diag({1.0, -1.0})));
  CHECK(z.alpha == 1.0);
  CHECK(z.beta == 0.0);
  CHECK(z.delta_phi == 0.0);

  const auto g = h2_elements(build_h2({kPi / 3.0, kPi / 4.0}));
  CHECK(std::abs(g.alpha - 0.5) < 1e-15);
  CHECK(std::abs(g.beta - std::sqrt(3.0) / 2.0) < 1e-15);
  CHECK(std::abs(g.delta_phi - kPi / 4.0) < 1e-15);

  CHECK_THROWS_AS(h2_elements(EigenschaftOp::from_matrix(diag({1.0, 1.0, -1.0}))), ShapeError);
}

TEST_CASE("build_from_diag examples") {
  SUBCASE("uniform dim 3") {
    const double t = 1.0 / 3.0;
    const auto h = build_from_diag({3, {t, t, t}, 1, {0.0, 0.0}});
    CHECK(h.trace_class() == 1);
    ComplexMatrix expected = testing::eye(3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) expected(i, j) -= 2.0 / 3.0;
    CHECK(testing::max_diff(h.matrix(), expected) < 1e-15);
    CHECK(std::abs(h.matrix()(0, 1) + 2.0 / 3.0) < 1e-15);
    CHECK(involution_residual(h.matrix()) < 1e-14);
  }
  SUBCASE("dim 3 boundary") {
    const auto h = build_from_diag({3, {1.0, 1.0, -1.0}, 1, {0.3, -0.7}});
    CHECK(h.matrix() == diag({1.0, 1.0, -1.0}));
  }
  SUBCASE("dim 4 with phases 0, pi/2, pi") {
    const auto h = build_from_diag({4, {0.5, 0.5, 0.5, 0.5}, 1, {0.0, kPi / 2.0, kPi}});
    CHECK(h.trace_class() == 2);
    CHECK(involution_residual(h.matrix()) < 1e-14);
    const auto& m = h.matrix();
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) CHECK(std::abs(std::abs(m(i, j)) - 0.5) < 1e-15);
    // dependent phases under the signed convention (s = +1, amplitude sign -1)
    auto phase = [&](std::size_t i, std::size_t j) { return std::arg(-m(i, j)); };
    CHECK(std::abs(testing::wrap(phase(1, 2) - kPi / 2.0)) < 1e-14);
    CHECK(std::abs(std::abs(testing::wrap(phase(1, 3))) - kPi) < 1e-14);
    CHECK(std::abs(testing::wrap(phase(2, 3) - kPi / 2.0)) < 1e-14);
  }
}

TEST_CASE("build_from_diag rejects infeasible input") {
  auto message = [](const DiagSpec& spec) {
    try {
      build_from_diag(spec);
    } catch (const ConstructionError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message({3, {2.0, 0.0, -1.0}, 1, {0.0, 0.0}}).find("|α₁| ≤ 1 violated") != std::string::npos);
  CHECK(message({3, {0.5, 0.5, 0.5}, 1, {0.0, 0.0}}).find("trace relation") != std::string::npos);
  CHECK(message({5, {1, 1, 1, -1, -1}, 1, {0, 0, 0, 0}}) != "no error");
  CHECK(message({3, {1.0 / 3, 1.0 / 3, 1.0 / 3}, 2, {0.0, 0.0}}) != "no error");
  CHECK(message({3, {1.0 / 3, 1.0 / 3, 1.0 / 3}, 1, {0.0}}) != "no error");
  CHECK(message({4, {0.5, 0.5, 0.5}, 1, {0.0, 0.0, 0.0}}) != "no error");
}

TEST_CASE("signed amplitudes: product law in dim 3") {
  Rng rng(33);
  int checked = 0;
  while (checked < 100) {
    const int s = checked % 2 == 0 ? 1 : -1;
    // sample alphas in (-1, 1) with sum s by drawing two and solving for the third
    const double a1 = rng.uniform(-1.0, 1.0), a2 = rng.uniform(-1.0, 1.0);
    const double a3 = s - a1 - a2;
    if (std::abs(a3) >= 1.0) continue;
    const auto h = build_from_diag({3, {a1, a2, a3}, s, {0.0, 0.0}}).matrix();
    const double prod = (h(0, 1) * h(0, 2) * h(1, 2)).real();
    if (s == 1)
      CHECK(prod < 0.0);
    else
      CHECK(prod > 0.0);
    ++checked;
  }
}

TEST_CASE("rank-1 relations hold for random involutions") {
  Rng rng(4242);
  for (int trial = 0; trial < 100; ++trial) {
    const int s = rng.sign();
    const auto h3 = random_involution(3, s, rng);
    const auto r3 = check_relations(h3, s);
    CHECK(r3.magnitude <= 1e-9);
    CHECK(r3.closure <= 1e-9);
    const auto v3 = validate(h3);
    CHECK(v3.relations.size() == 3);
    CHECK(v3.max_relation_residual() <= 1e-9);
    CHECK(v3.max_phase_closure_residual() <= 1e-9);

    const auto h4 = random_involution(4, 2 * s, rng);
    const auto r4 = check_relations(h4, s);
    CHECK(r4.magnitude <= 1e-9);
    CHECK(r4.closure <= 1e-9);
    const auto v4 = validate(h4);
    CHECK(v4.relations.size() == 6);
    CHECK(v4.phase_closures.size() == 3);
    CHECK(v4.max_relation_residual() <= 1e-9);
    CHECK(v4.max_phase_closure_residual() <= 1e-9);
  }
}

TEST_CASE("build_from_diag agrees with the relation oracle") {
  Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const int s = rng.sign();
    const auto h = random_involution(4, 2 * s, rng);
    std::vector<double> alphas(4);
    for (std::size_t i = 0; i < 4; ++i) alphas[i] = h(i, i).real();
    std::vector<double> phases;
    for (std::size_t k = 1; k < 4; ++k) phases.push_back(std::arg(-static_cast<double>(s) * h(0, k)));
    const auto built = build_from_diag({4, alphas, s, phases});
    CHECK(testing::max_diff(built.matrix(), h) <= 1e-9);
  }
}

TEST_CASE("from_projector_flip") {
  const auto std3 = ProjectorSet::standard_basis(3);
  CHECK(from_projector_flip(std3, {-1, 1, 1}).matrix() == diag({-1.0, 1.0, 1.0}));
  CHECK(from_projector_flip(std3, {1, 1, 1}).matrix() == testing::eye(3));
  CHECK_THROWS_AS(from_projector_flip(std3, {1, 1}), DomainError);
  CHECK_THROWS_AS(from_projector_flip(std3, {1, 0, 1}), DomainError);

  Rng rng(7);
  const auto ps = ProjectorSet::from_unitary_columns(testing::random_unitary(4, rng));
  const auto h = from_projector_flip(ps, {1, -1, -1, 1});
  CHECK(h.trace_class() == 0);
  CHECK(is_involution(h.matrix()).involutive);
}

TEST_CASE("ProjectorSet validation") {
  CHECK_THROWS_AS(ProjectorSet({diag({1.0, 0.0})}), DomainError);
  CHECK_THROWS_AS(ProjectorSet({diag({1.0, 0.0}), diag({1.0, 0.0})}), DomainError);
  CHECK_THROWS_AS(ProjectorSet({diag({1.0, 0.0}), diag({0.0, 0.5})}), DomainError);
  CHECK_NOTHROW(ProjectorSet({diag({1.0, 0.0}), diag({0.0, 1.0})}));
}

TEST_CASE("to_projectors") {
  SUBCASE("diag(1,-1)") {
    const auto pd = to_projectors(EigenschaftOp::from_matrix(diag({1.0, -1.0})));
    for (std::size_t k = 0; k < 2; ++k) {
      const auto& p = pd.projectors[k];
      if (pd.signs[k] == 1)
        CHECK(testing::max_diff(p, diag({1.0, 0.0})) < 1e-15);
      else
        CHECK(testing::max_diff(p, diag({0.0, 1.0})) < 1e-15);
    }
  }
  SUBCASE("Hadamard") {
    const auto pd = to_projectors(build_h2({kPi / 4.0, 0.0}));
    const double c = std::cos(kPi / 8.0), s = std::sin(kPi / 8.0);
    const ComplexMatrix plus(2, 2, {c * c, c * s, c * s, s * s});
    const ComplexMatrix minus(2, 2, {s * s, -c * s, -c * s, c * c});
    for (std::size_t k = 0; k < 2; ++k)
      CHECK(testing::max_diff(pd.projectors[k], pd.signs[k] == 1 ? plus : minus) < 1e-14);
  }
  SUBCASE("identity") {
    const auto pd = to_projectors(EigenschaftOp::from_matrix(testing::eye(3)));
    CHECK(pd.signs == std::vector<int>{1, 1, 1});
    CHECK(testing::max_diff(from_projector_flip(pd.projectors, pd.signs).matrix(), testing::eye(3)) < 1e-14);
  }
}

TEST_CASE("projector roundtrip over random involutions") {
  Rng rng(100);
  for (std::size_t n = 2; n <= 8; ++n) {
    for (int trial = 0; trial < 100; ++trial) {
      const auto ps = ProjectorSet::from_unitary_columns(testing::random_unitary(n, rng));
      const auto h = from_projector_flip(ps, testing::random_signs(n, rng));
      const auto pd = to_projectors(h);
      const auto back = from_projector_flip(pd.projectors, pd.signs);
      CHECK(testing::max_diff(back.matrix(), h.matrix()) <= 1e-9);
      CHECK(back.trace_class() == h.trace_class());
    }
  }
}

TEST_CASE("complement families") {
  SUBCASE("dim 3") {
    const auto fam = complement_family(ProjectorSet::standard_basis(3));
    REQUIRE(fam.size() == 3);
    CHECK(fam[0].matrix() == diag({-1.0, 1.0, 1.0}));
    CHECK(fam[1].matrix() == diag({1.0, -1.0, 1.0}));
    CHECK(fam[2].matrix() == diag({1.0, 1.0, -1.0}));
  }
  SUBCASE("dim 4 trace zero") {
    const auto fam = complement_family(ProjectorSet::standard_basis(4), FamilyKind::TraceZero);
    REQUIRE(fam.size() == 3);
    CHECK(fam[0].matrix() == diag({1.0, -1.0, 1.0, -1.0}));
    CHECK(fam[1].matrix() == diag({1.0, 1.0, -1.0, -1.0}));
    CHECK(fam[2].matrix() == diag({1.0, -1.0, -1.0, 1.0}));
    CHECK_THROWS(complement_family(ProjectorSet::standard_basis(3), FamilyKind::TraceZero));
  }
  SUBCASE("sum identities for random projector sets") {
    Rng rng(49);
    for (int trial = 0; trial < 50; ++trial) {
      for (std::size_t n : {3u, 4u}) {
        const auto fam = complement_family(ProjectorSet::from_unitary_columns(testing::random_unitary(n, rng)));
        ComplexMatrix sum(n, n);
        for (const auto& h : fam) sum += h.matrix();
        // dim 3: sum = I; dim 4: sum / 2 = I
        const double scale = n == 3 ? 1.0 : 0.5;
        CHECK(testing::max_diff(scale * sum, testing::eye(n)) <= 1e-12);
        for (std::size_t i = 0; i < fam.size(); ++i)
          for (std::size_t j = i + 1; j < fam.size(); ++j)
            CHECK(max_abs(commutator(fam[i].matrix(), fam[j].matrix())) <= 1e-12);
      }
    }
  }
}

TEST_CASE("algebra tables") {
  auto coeffs_close = [](const std::vector<Complex>& got, const std::vector<double>& want) {
    if (got.size() != want.size()) return false;
    for (std::size_t k = 0; k < got.size(); ++k)
      if (std::abs(got[k] - want[k]) > 1e-12) return false;
    return true;
  };

  Rng rng(57);
  for (int trial = 0; trial < 10; ++trial) {
    const auto u3 = testing::random_unitary(3, rng);
    const auto u4 = testing::random_unitary(4, rng);

    // dim 3: H1 H2 = -H3, everything commutes
    const auto f3 = complement_family(ProjectorSet::from_unitary_columns(u3));
    const auto t3 = algebra_table(f3);
    REQUIRE(t3.products.size() == 3);
    CHECK(t3.products[0].expressible);
    CHECK(t3.products[0].integer);
    CHECK(coeffs_close(t3.products[0].coefficients, {0, 0, 0, -1}));
    CHECK(t3.max_commutator <= 1e-12);

    // dim 4, trace 2: the smallest expansion is H1 + H2 - I
    const auto f4 = complement_family(ProjectorSet::from_unitary_columns(u4));
    const auto t4 = algebra_table(f4);
    REQUIRE(t4.products.size() == 6);
    CHECK(coeffs_close(t4.products[0].coefficients, {-1, 1, 1, 0, 0}));
    CHECK(t4.products[0].residual <= 1e-12);

    const auto p12 = testing::naive_mul(f4[0].matrix(), f4[1].matrix());
    const auto four_terms = f4[0].matrix() + f4[1].matrix() - f4[2].matrix() - f4[3].matrix();
    // Half of the four-term combination is the product; the combination itself is not.
    CHECK(testing::max_diff(p12, 0.5 * four_terms) <= 1e-12);
    CHECK(testing::max_diff(p12, four_terms) > 0.5);

    // dim 4, trace 0: H1 H2 = H3
    const auto f0 = complement_family(ProjectorSet::from_unitary_columns(u4), FamilyKind::TraceZero);
    const auto t0 = algebra_table(f0);
    CHECK(coeffs_close(t0.products[0].coefficients, {0, 0, 0, 1}));
    CHECK(t0.products[0].residual <= 1e-12);
    CHECK(t0.max_commutator <= 1e-12);
  }

  SUBCASE("non-commuting pair is reported") {
    const auto t = algebra_table({build_h2({kPi / 4.0, 0.0}), EigenschaftOp::from_matrix(diag({1.0, -1.0}))});
    CHECK(t.max_commutator > 1.0);
    CHECK_FALSE(t.products[0].expressible);
  }
}

TEST_CASE("build_kron_family") {
  const auto z = EigenschaftOp::from_matrix(diag({1.0, -1.0}));
  const auto had = build_h2({kPi / 4.0, 0.0});

  const auto zz = build_kron_family(z, z);
  CHECK(zz[0].matrix() == diag({1.0, -1.0, 1.0, -1.0}));
  CHECK(zz[1].matrix() == diag({1.0, 1.0, -1.0, -1.0}));
  CHECK(zz[2].matrix() == diag({1.0, -1.0, -1.0, 1.0}));

  for (const auto& fam : {build_kron_family(had, had), build_kron_family(had, z)}) {
    for (const auto& h : fam) {
      CHECK(h.trace_class() == 0);
      CHECK(involution_residual(h.matrix()) <= 1e-12);
    }
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j)
        CHECK(max_abs(commutator(fam[i].matrix(), fam[j].matrix())) <= 1e-12);
  }

  const auto bad = EigenschaftOp::from_matrix(testing::eye(2));
  CHECK_THROWS(build_kron_family(bad, z));
  CHECK_THROWS(build_kron_family(EigenschaftOp::from_matrix(testing::eye(3)), z));
}

TEST_CASE("validate") {
  const auto had = validate(build_h2({kPi / 4.0, 0.0}).matrix());
  CHECK(had.hermiticity_residual <= 1e-15);
  CHECK(had.unitarity_residual <= 1e-15);
  CHECK(had.involution_residual <= 1e-15);
  CHECK(had.trace_class == 0);
  CHECK(had.max_relation_residual() <= 1e-15);

  const double t = 1.0 / 3.0;
  const auto r3 = validate(build_from_diag({3, {t, t, t}, 1, {0.0, 0.0}}).matrix());
  CHECK(r3.trace_class == 1);
  CHECK(r3.max_relation_residual() <= 1e-12);
  CHECK(r3.max_phase_closure_residual() <= 1e-12);

  Rng rng(3);
  const auto rh = validate(testing::random_hermitian(4, rng));
  CHECK(rh.hermiticity_residual == 0.0);
  CHECK(rh.involution_residual > 0.1);
  CHECK_FALSE(rh.is_eigenschaft());

  // trace-0 dim 4 has no closed-form relations to check
  const auto r0 = validate(diag({1.0, -1.0, 1.0, -1.0}));
  CHECK(r0.relations.empty());

  const auto off = validate(diag({1.0, 0.5}));
  CHECK(off.trace_class_flag);
}
