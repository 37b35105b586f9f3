#pragma once

#include "symcurv/liealg.hpp"

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace symcurv {

using AlgebraPtr = std::shared_ptr<const LieAlgebraModel>;

/// Real-linear map on the realified representation space that anticommutes
/// with the complex structure (i.e. is conjugate-linear), commutes with the
/// action, and squares to sign * identity.
struct StructureMap {
  Eigen::MatrixXd matrix;
  int sign = 1;
};

/// An orthogonal representation h -> so(k) given by the images of the basis
/// of h. Complex representations are stored realified with coordinates
/// (Re z_0, Im z_0, Re z_1, Im z_1, ...).
class AlgebraRep {
 public:
  /// Throws NotSkew for non-skew images and InvalidArgument for shape errors
  /// or a complex structure / structure map violating its defining identities.
  /// The homomorphism property is not enforced here; see homomorphism_residual.
  /// dim_hint supplies the target dimension when the source algebra is zero.
  AlgebraRep(AlgebraPtr source, std::vector<Eigen::MatrixXd> images, std::string label,
             std::optional<Eigen::MatrixXd> complex_structure = std::nullopt,
             std::optional<StructureMap> structure_map = std::nullopt, int dim_hint = -1);

  const LieAlgebraModel& source() const { return *source_; }
  const AlgebraPtr& source_ptr() const { return source_; }
  int dim() const { return dim_; }
  const std::vector<Eigen::MatrixXd>& images() const { return images_; }
  const Eigen::MatrixXd& image(int i) const { return images_[i]; }
  const std::string& label() const { return label_; }
  const std::optional<Eigen::MatrixXd>& complex_structure() const { return complex_structure_; }
  const std::optional<StructureMap>& structure_map() const { return structure_map_; }

  /// rho(sum_i c_i X_i)
  Eigen::MatrixXd apply(const Eigen::VectorXd& coeffs) const;

  AlgebraRep relabeled(std::string label) const;

 private:
  AlgebraPtr source_;
  int dim_ = 0;
  std::vector<Eigen::MatrixXd> images_;
  std::string label_;
  std::optional<Eigen::MatrixXd> complex_structure_;
  std::optional<StructureMap> structure_map_;
};

/// max over basis pairs of |rho[X_i,X_j] - [rho X_i, rho X_j]| (entrywise).
double homomorphism_residual(const AlgebraRep& rep);

/// Same algebra object or identical structure constants.
bool same_source(const LieAlgebraModel& a, const LieAlgebraModel& b);

}  // namespace symcurv
