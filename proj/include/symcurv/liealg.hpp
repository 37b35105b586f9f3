#pragma once

#include "symcurv/linalg.hpp"

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace symcurv {

struct SparseTerm {
  int index;
  Rational coeff;
};
using SparseVec = std::vector<SparseTerm>;

/// A finite-dimensional real Lie algebra: basis labels, exact structure
/// constants [X_i, X_j] = sum_k c_ij^k X_k, and an inner product.
///
/// Construction does not validate; call validate() (catalog builders do).
/// An optional matrix realization (complex matrices, entries exactly
/// representable as doubles) is kept for algebras built from matrices.
class LieAlgebraModel {
 public:
  LieAlgebraModel() = default;
  /// brackets[i][j] must be given for every ordered pair (dim x dim table).
  LieAlgebraModel(std::string name, std::vector<std::string> labels,
                  std::vector<std::vector<SparseVec>> brackets, QMatrix inner_product,
                  std::vector<Eigen::MatrixXcd> realization = {});

  const std::string& name() const { return name_; }
  int dim() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const QMatrix& inner_product() const { return inner_product_; }
  bool has_realization() const { return !realization_.empty(); }
  const std::vector<Eigen::MatrixXcd>& realization() const { return realization_; }

  const SparseVec& bracket_of_basis(int i, int j) const { return brackets_[i][j]; }
  Rational structure_constant(int i, int j, int k) const;

  QMatrix bracket(const QMatrix& x, const QMatrix& y) const;
  Eigen::VectorXd bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  /// Matrix of ad_{X_i} in the basis.
  QMatrix ad(int i) const;
  /// tr(ad_X ad_Y) on basis pairs.
  QMatrix killing_form() const;

  LieAlgebraModel renamed(std::string name) const;
  /// Same algebra with c_ij^k overwritten (and c_ji^k = -value unless
  /// one_sided); used to build deliberately corrupted inputs.
  LieAlgebraModel with_structure_constant(int i, int j, int k, const Rational& value,
                                          bool one_sided = false) const;

 private:
  std::string name_;
  std::vector<std::string> labels_;
  std::vector<std::vector<SparseVec>> brackets_;
  QMatrix inner_product_;
  std::vector<Eigen::MatrixXcd> realization_;
};

struct CheckResult {
  bool pass = true;
  std::optional<std::array<int, 3>> witness;
  std::string detail;
};

struct ValidationReport {
  CheckResult antisymmetry;
  CheckResult jacobi;
  CheckResult invariance;
  CheckResult inner_product_positive;

  bool ok() const {
    return antisymmetry.pass && jacobi.pass && invariance.pass && inner_product_positive.pass;
  }
};

ValidationReport validate(const LieAlgebraModel& alg);

/// Checks that the matrix realization brackets agree with the structure
/// constants exactly (membership in the span is checked by comparing norms).
CheckResult check_realization(const LieAlgebraModel& alg);

/// Structure constants and inner product <A,B> = 1/2 Re tr(A^* B) read off a
/// list of complex matrices spanning a bracket-closed subspace.
LieAlgebraModel algebra_from_matrices(std::string name, std::vector<std::string> labels,
                                      std::vector<Eigen::MatrixXcd> matrices);

/// so(n): basis E_ij (i<j), E_ij = e_j e_i^T - e_i e_j^T.
LieAlgebraModel make_so(int n);
/// su(n), n >= 2: A_ij = E_ji - E_ij, S_ij = i(E_ij + E_ji) for i<j (in that
/// interleaved order), then H_k = i(E_kk - E_k+1,k+1).
LieAlgebraModel make_su(int n);
/// u(n): as su(n) with the diagonal replaced by D_k = i E_kk.
LieAlgebraModel make_u(int n);
LieAlgebraModel make_abelian(int k, std::string name = {});
LieAlgebraModel product_algebra(const LieAlgebraModel& a, const LieAlgebraModel& b);
/// Restriction to the span of the listed basis elements. Throws
/// InvalidArgument if they are not closed under the bracket.
LieAlgebraModel subalgebra(const LieAlgebraModel& alg, const std::vector<int>& indices, std::string name);

/// True when both have identical dimension and structure constants.
bool same_structure(const LieAlgebraModel& a, const LieAlgebraModel& b);

}  // namespace symcurv
