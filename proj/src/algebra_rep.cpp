#include "symcurv/algebra_rep.hpp"

#include "symcurv/errors.hpp"
#include "symcurv/tolerance.hpp"

#include <algorithm>

namespace symcurv {

AlgebraRep::AlgebraRep(AlgebraPtr source, std::vector<Eigen::MatrixXd> images, std::string label,
                       std::optional<Eigen::MatrixXd> complex_structure,
                       std::optional<StructureMap> structure_map, int dim_hint)
    : source_(std::move(source)),
      images_(std::move(images)),
      label_(std::move(label)),
      complex_structure_(std::move(complex_structure)),
      structure_map_(std::move(structure_map)) {
  if (!source_) throw Error(ErrorKind::InvalidArgument, "representation without source algebra");
  if (static_cast<int>(images_.size()) != source_->dim())
    throw Error(ErrorKind::InvalidArgument, "need one image per basis element of " + source_->name());
  dim_ = images_.empty() ? std::max(dim_hint, 0) : static_cast<int>(images_[0].rows());
  const double tol = 10 * eps();
  for (const auto& m : images_) {
    if (m.rows() != dim_ || m.cols() != dim_) throw Error(ErrorKind::InvalidArgument, "image shape mismatch");
    if (dim_ > 0 && (m + m.transpose()).cwiseAbs().maxCoeff() > tol)
      throw Error(ErrorKind::NotSkew, "representation image is not skew");
  }
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(dim_, dim_);
  if (complex_structure_) {
    const auto& j = *complex_structure_;
    if (j.rows() != dim_ || j.cols() != dim_ || dim_ % 2 != 0)
      throw Error(ErrorKind::InvalidArgument, "complex structure shape mismatch");
    if (dim_ > 0) {
      if ((j * j + id).cwiseAbs().maxCoeff() > tol || (j + j.transpose()).cwiseAbs().maxCoeff() > tol)
        throw Error(ErrorKind::InvalidArgument, "complex structure must be orthogonal with J^2 = -1");
      for (const auto& m : images_)
        if ((j * m - m * j).cwiseAbs().maxCoeff() > tol)
          throw Error(ErrorKind::InvalidArgument, "complex structure does not commute with the action");
    }
  }
  if (structure_map_) {
    const auto& s = structure_map_->matrix;
    if (s.rows() != dim_ || s.cols() != dim_) throw Error(ErrorKind::InvalidArgument, "structure map shape mismatch");
    if (std::abs(structure_map_->sign) != 1) throw Error(ErrorKind::InvalidArgument, "structure map sign must be +-1");
    if (dim_ > 0) {
      if ((s * s - structure_map_->sign * id).cwiseAbs().maxCoeff() > tol)
        throw Error(ErrorKind::InvalidArgument, "structure map does not square to its sign");
      for (const auto& m : images_)
        if ((s * m - m * s).cwiseAbs().maxCoeff() > tol)
          throw Error(ErrorKind::InvalidArgument, "structure map does not commute with the action");
      if (complex_structure_ && (s * *complex_structure_ + *complex_structure_ * s).cwiseAbs().maxCoeff() > tol)
        throw Error(ErrorKind::InvalidArgument, "structure map is not conjugate-linear");
    }
  }
}

Eigen::MatrixXd AlgebraRep::apply(const Eigen::VectorXd& coeffs) const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim_, dim_);
  for (int i = 0; i < static_cast<int>(images_.size()); ++i)
    if (coeffs[i] != 0.0) out += coeffs[i] * images_[i];
  return out;
}

AlgebraRep AlgebraRep::relabeled(std::string label) const {
  AlgebraRep copy = *this;
  copy.label_ = std::move(label);
  return copy;
}

double homomorphism_residual(const AlgebraRep& rep) {
  const auto& alg = rep.source();
  double worst = 0.0;
  for (int i = 0; i < alg.dim(); ++i)
    for (int j = i + 1; j < alg.dim(); ++j) {
      Eigen::MatrixXd lhs = Eigen::MatrixXd::Zero(rep.dim(), rep.dim());
      for (const auto& t : alg.bracket_of_basis(i, j)) lhs += to_double(t.coeff) * rep.image(t.index);
      const Eigen::MatrixXd rhs = rep.image(i) * rep.image(j) - rep.image(j) * rep.image(i);
      if (rep.dim() > 0) worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  return worst;
}

bool same_source(const LieAlgebraModel& a, const LieAlgebraModel& b) {
  return &a == &b || same_structure(a, b);
}

}  // namespace symcurv
