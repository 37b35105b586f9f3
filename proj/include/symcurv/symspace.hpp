#pragma once

// Symmetric spaces as Cartan pairs g = h + m with m identified with the
// tangent space at the base point.
//
// Sign convention: the curvature operator on Lambda^2(m) is
//   R(x ^ y) = pi([x, y]_h),
// where pi(H) = ad_H restricted to m, read as a bivector. Under the bivector
// identification this is the operator form of R(X,Y)Z = -[[X,Y],Z] that makes
// the unit sphere's operator the identity.

#include "symcurv/algebra_rep.hpp"
#include "symcurv/linalg.hpp"
#include "symcurv/liealg.hpp"

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace symcurv {

class SymmetricSpaceModel {
 public:
  /// Validates the Cartan relations and the Ad(h)-invariance of the metric.
  /// Throws NotCartanPair or MetricNotInvariant with the offending pair.
  SymmetricSpaceModel(LieAlgebraModel g, std::vector<int> h_indices, QMatrix metric_m, std::string name,
                      int flat_dim = 0, std::optional<Eigen::MatrixXd> complex_structure = std::nullopt);

  const std::string& name() const { return name_; }
  const LieAlgebraModel& g() const { return *g_; }
  const LieAlgebraModel& h() const { return *h_; }
  const AlgebraPtr& h_ptr() const { return h_; }
  const std::vector<int>& h_indices() const { return h_indices_; }
  const std::vector<int>& m_indices() const { return m_indices_; }
  const QMatrix& metric_m() const { return metric_m_; }
  int flat_dim() const { return flat_dim_; }
  int m_dim() const { return static_cast<int>(m_indices_.size()); }
  int h_dim() const { return static_cast<int>(h_indices_.size()); }
  /// Complex structure on m in the orthonormal frame, when the space is Kähler
  /// and the catalog records it.
  const std::optional<Eigen::MatrixXd>& complex_structure() const { return complex_structure_; }

  /// True when metric_m is a rational multiple of the identity, so the
  /// orthonormal frame keeps every bracket rational.
  bool exact() const { return metric_scale_.has_value(); }

  /// Columns: orthonormal frame of m in m-basis coordinates.
  const Eigen::MatrixXd& frame() const { return frame_; }

  /// [f_a, f_b] in h coordinates for frame vectors f_a, f_b.
  Eigen::VectorXd bracket_mm(int a, int b) const;
  QMatrix bracket_mm_exact(int a, int b) const;
  /// ad_H|m in the frame for the i-th basis element of h (a skew matrix).
  const Eigen::MatrixXd& isotropy_image(int i) const { return isotropy_[i]; }
  const QMatrix& isotropy_image_exact(int i) const;

  SymmetricSpaceModel renamed(std::string name) const;
  /// Same Cartan pair with metric_m multiplied by factor.
  SymmetricSpaceModel rescaled(const Rational& factor) const;

 private:
  std::string name_;
  std::shared_ptr<const LieAlgebraModel> g_;
  AlgebraPtr h_;
  std::vector<int> h_indices_;
  std::vector<int> m_indices_;
  QMatrix metric_m_;
  int flat_dim_;
  std::optional<Eigen::MatrixXd> complex_structure_;
  std::optional<Rational> metric_scale_;
  Eigen::MatrixXd frame_;
  std::vector<Eigen::MatrixXd> isotropy_;
  std::vector<QMatrix> isotropy_exact_;
};

SymmetricSpaceModel make_symmetric_space(LieAlgebraModel g, std::vector<int> h_indices, QMatrix metric,
                                         std::string name, int flat_dim = 0);

/// Curvature operator on Lambda^2(m) in the lexicographic bivector basis of
/// the orthonormal frame.
struct CurvatureOperator {
  int m_dim = 0;
  SymmetricOperator op;
  std::optional<QMatrix> exact;

  const Eigen::MatrixXd& matrix() const { return op.matrix(); }
  const EigenDecomposition& eigen() const { return op.eigen(); }
  Eigen::MatrixXd image_basis() const { return op.eigen().image(); }
  const Eigen::MatrixXd& kernel_basis() const { return op.eigen().kernel; }
  Eigen::VectorXd apply(const Eigen::VectorXd& bivector) const { return op.matrix() * bivector; }
};

CurvatureOperator curvature_operator(const SymmetricSpaceModel& space);

/// pi: h -> so(m), H -> ad_H|m. Validated as a homomorphism.
AlgebraRep isotropy_rep(const SymmetricSpaceModel& space);

/// Columns are pi(H_i) as bivectors; the linear map h -> so(m) in bivector
/// coordinates.
Eigen::MatrixXd isotropy_bivectors(const SymmetricSpaceModel& space);

struct ConditionAReport {
  bool holds = false;
  bool exact = false;
  int dim_kernel = 0;
  int dim_image = 0;
  int dim_span_bracket = 0;
  /// A kernel basis vector outside span[ker, Im] when the condition fails.
  std::optional<Eigen::VectorXd> witness;
};

/// Throws ContainmentViolated if some [k, i] leaves the kernel.
ConditionAReport condition_a(const SymmetricSpaceModel& space);

/// Residuals of the eigenspace structure of R: nonzero eigenspaces are
/// subalgebras, distinct nonzero eigenspaces commute, and each nonzero
/// eigenspace is an ideal of Im R.
struct EigenspaceReport {
  double subalgebra = 0.0;
  double commuting = 0.0;
  double ideal = 0.0;
  double image_closed = 0.0;
};

EigenspaceReport eigenspace_structure(const CurvatureOperator& curvature);

SymmetricSpaceModel product_space(const SymmetricSpaceModel& a, const SymmetricSpaceModel& b);

/// Names: S2..S8, CP1..CP3, R1, R2, SU2_group, and products joined by "×"
/// (or "x"). Throws UnknownSpace.
SymmetricSpaceModel catalog(const std::string& name);
std::vector<std::string> catalog_names();

/// s = sum over ordered orthonormal pairs of sectional curvature = 2 tr R.
double scalar_curvature(const SymmetricSpaceModel& space);

}  // namespace symcurv
