#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eigenschaft/linalg.hpp"

namespace eigenschaft {

// A Hermitian involution: H = H^+, H^2 = I. Eigenvalues are +1 and -1, so the
// trace is the integer n+ - n-.
class EigenschaftOp {
 public:
  // Throws DomainError if `m` is not square, not Hermitian within tol, or not
  // involutive within tol.
  static EigenschaftOp from_matrix(ComplexMatrix m, double tol = kTolInv);

  const ComplexMatrix& matrix() const { return matrix_; }
  std::size_t dim() const { return matrix_.rows(); }
  int trace_class() const { return trace_class_; }
  int plus_count() const { return (static_cast<int>(dim()) + trace_class_) / 2; }
  int minus_count() const { return (static_cast<int>(dim()) - trace_class_) / 2; }

 private:
  EigenschaftOp(ComplexMatrix m, int trace_class) : matrix_(std::move(m)), trace_class_(trace_class) {}

  ComplexMatrix matrix_;
  int trace_class_ = 0;
};

// Complete family of mutually orthogonal rank-1 projectors.
class ProjectorSet {
 public:
  // Throws DomainError when any projector, orthogonality or completeness
  // condition fails within tol.
  explicit ProjectorSet(std::vector<ComplexMatrix> projectors, double tol = kTolInv);
  // Projectors onto the columns of a unitary matrix.
  static ProjectorSet from_unitary_columns(const ComplexMatrix& u, double tol = kTolInv);
  static ProjectorSet standard_basis(std::size_t dim);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return projectors_.size(); }
  const ComplexMatrix& operator[](std::size_t i) const { return projectors_[i]; }
  const std::vector<ComplexMatrix>& projectors() const { return projectors_; }

 private:
  std::vector<ComplexMatrix> projectors_;
  std::size_t dim_ = 0;
};

// Radians. gamma_angle is the mixing angle of the 2x2 general solution and is
// unrelated to the off-diagonal amplitude named gamma in dim 3.
struct H2Params {
  double gamma_angle = 0.0;
  double delta_phi = 0.0;
};

struct H2Elements {
  double alpha = 0.0;      // H11
  double beta = 0.0;       // |H12|
  double delta_phi = 0.0;  // arg H12, 0 when beta vanishes
};

// Closed-form input for the rank-1-deficiency branches: dim 3 with trace +-1
// and dim 4 with trace +-2. Phases are the independent ones (radians):
//   dim 3: {phase(1,2), phase(1,3)}
//   dim 4: {phase(1,2), phase(1,3), phase(1,4)}
// The remaining phases follow from closure.
struct DiagSpec {
  int dim = 3;
  std::vector<double> alphas;
  int trace_sign = 1;
  std::vector<double> phases;
};

struct ProjectorDecomposition {
  ProjectorSet projectors;
  std::vector<int> signs;
};

enum class FamilyKind {
  Complement,  // I - 2 P_i for each projector
  TraceZero,   // dim 4 only: the three sign patterns (+-+-), (++--), (+--+)
};

EigenschaftOp build_h2(const H2Params& params);
H2Elements h2_elements(const EigenschaftOp& h);

// ConstructionError naming the violated relation on infeasible input.
EigenschaftOp build_from_diag(const DiagSpec& spec);

// H = sum_i signs_i P_i.
EigenschaftOp from_projector_flip(const ProjectorSet& ps, const std::vector<int>& signs);
ProjectorDecomposition to_projectors(const EigenschaftOp& h);

std::vector<EigenschaftOp> complement_family(const ProjectorSet& ps,
                                             FamilyKind kind = FamilyKind::Complement);

// {I (x) h_b, h_a (x) I, h_a (x) h_b}. Both inputs must be traceless dim 2.
std::array<EigenschaftOp, 3> build_kron_family(const EigenschaftOp& h_a, const EigenschaftOp& h_b);

// --- validation -----------------------------------------------------------

struct NamedResidual {
  std::string name;
  double value = 0.0;
};

struct ValidationReport {
  std::size_t dim = 0;
  double hermiticity_residual = 0.0;
  double unitarity_residual = 0.0;
  double involution_residual = 0.0;
  double trace_re = 0.0;
  double trace_im = 0.0;
  int trace_class = 0;
  double trace_class_distance = 0.0;
  bool trace_class_flag = false;  // distance > 1e-6
  // Closed-form relation residuals; empty outside dims 2/3/4 rank-1 branches.
  std::vector<NamedResidual> relations;
  std::vector<NamedResidual> phase_closures;

  bool is_eigenschaft(double tol = kTolInv) const {
    return hermiticity_residual <= tol && involution_residual <= tol;
  }
  double max_relation_residual() const;
  double max_phase_closure_residual() const;
};

// A report, never a gate: works on any square matrix.
ValidationReport validate(const ComplexMatrix& m);

// --- algebra --------------------------------------------------------------

struct ProductExpansion {
  std::size_t left = 0;
  std::size_t right = 0;
  bool expressible = false;
  bool integer = false;                // every coefficient within 1e-9 of an integer
  std::vector<Complex> coefficients;  // over {I, H_1, ..., H_k}
  double residual = 0.0;               // max-norm of product - expansion
};

struct CommutatorEntry {
  std::size_t left = 0;
  std::size_t right = 0;
  double norm = 0.0;
};

struct AlgebraTable {
  std::size_t size = 0;
  std::vector<ProductExpansion> products;  // i < j
  std::vector<CommutatorEntry> commutators;
  double max_commutator = 0.0;
};

// Expands each pairwise product H_i H_j over {I, family}, preferring the
// expansion with the fewest terms.
AlgebraTable algebra_table(const std::vector<EigenschaftOp>& family);

}  // namespace eigenschaft
