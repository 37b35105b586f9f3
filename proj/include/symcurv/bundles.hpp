#pragma once

// Bundles induced from isotropy representations, the curvature identities
// they satisfy, reconstruction of the representation from curvature, and
// characteristic numbers by Chern-Weil at a single point.
//
// Sign: R^E(x ^ y) = rho([x, y]_h), matching R^M(x ^ y) = pi([x, y]_h), so the
// tangent bundle reproduces R^M. The curvature 2-form used for characteristic
// classes is Omega(x, y) = -R^E(x ^ y).

#include "symcurv/algebra_rep.hpp"
#include "symcurv/reps.hpp"
#include "symcurv/symspace.hpp"

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace symcurv {

struct InducedBundle {
  std::shared_ptr<const SymmetricSpaceModel> space;
  AlgebraRep rep;
  CurvatureOperator base;
  /// R^E on the lexicographic bivector basis of the frame.
  std::vector<Eigen::MatrixXd> curvature;

  int rank() const { return rep.dim(); }
  Eigen::MatrixXd at(const Eigen::VectorXd& bivector) const;
};

/// Throws SourceMismatch unless rep acts by the isotropy algebra of space.
InducedBundle induce(const SymmetricSpaceModel& space, const AlgebraRep& rep);
InducedBundle with_curvature(const InducedBundle& bundle, std::vector<Eigen::MatrixXd> curvature);

struct IdentityCheck {
  bool pass = true;
  double residual = 0.0;
  std::optional<std::pair<int, int>> witness;
};

/// R^E[R^M A, B] = [R^E A, R^E B] over all basis pairs.
IdentityCheck check_bracket_identity(const InducedBundle& bundle, double tol = 1e-8);
double bracket_identity_residual(const InducedBundle& bundle, const Eigen::VectorXd& a, const Eigen::VectorXd& b);

struct KernelCheck {
  bool pass = true;
  double residual = 0.0;
  int dim_kernel = 0;
};
KernelCheck check_kernel_inclusion(const InducedBundle& bundle, double tol = 1e-8);

/// rho(H) = R^E((R^M)^-1 pi(H)) for each basis element H of h.
/// Throws KernelNotIncluded when ker R^M is not killed by the input and
/// NotHomomorphism when the result fails the bracket relation.
AlgebraRep recover_rho_hat(const SymmetricSpaceModel& space, const std::vector<Eigen::MatrixXd>& curvature,
                           const std::optional<Eigen::MatrixXd>& complex_structure = std::nullopt,
                           double tol = 1e-8);

struct CharClassReport {
  std::string base;
  int rank = 0;
  std::optional<double> euler;
  std::optional<double> p1;
  std::optional<double> c1;
  std::optional<double> c2;
  bool integral = true;
  double tolerance = 1e-6;
};

/// Supported bases: two-dimensional compact spaces (S2, CP1), round S4, CP2,
/// and c1 over CP^n through a projective line. Throws UnsupportedBase.
CharClassReport characteristic_numbers(const InducedBundle& bundle);

struct BundleChecks {
  bool bracket_identity = false;
  bool kernel_inclusion = false;
  bool rho_roundtrip = false;
};

struct BundleReport {
  std::string space;
  std::string rep;
  int rank = 0;
  RepKind type = RepKind::Real;
  CharClassReport classes;
  BundleChecks checks;
};

BundleChecks run_checks(const InducedBundle& bundle);

/// Type of a direct sum from the types and multiplicities of its isotypic
/// components.
RepKind sum_type(const std::vector<std::pair<RepKind, int>>& isotypic);

/// Irreducible catalog representations over a supported space, as
/// descriptors, with real dimension <= rank_bound. weight_bound caps the
/// U(1) weights of line-bundle families. Throws UnsupportedSpace.
std::vector<std::string> catalog_irreps(const SymmetricSpaceModel& space, int rank_bound, int weight_bound = 3);

/// All direct sums of catalog irreps with total rank in [1, rank_bound],
/// sorted by (rank, label).
std::vector<BundleReport> classify_bundles(const SymmetricSpaceModel& space, int rank_bound, int weight_bound = 3);

}  // namespace symcurv
