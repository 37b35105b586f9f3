#pragma once

// Representation descriptors, e.g. "spin4:(1,0)" or "sum(trivial:1,spin4:(2,0))",
// resolved against a symmetric space's isotropy algebra.

#include "symcurv/algebra_rep.hpp"
#include "symcurv/symspace.hpp"

#include <Eigen/Dense>

#include <string>
#include <string_view>
#include <vector>

namespace symcurv {

struct RepExpr {
  /// Atom name ("spin4", "tangent", ...) or combinator ("sum", "tensor",
  /// "ext", "sym2", "real").
  std::string head;
  std::vector<int> params;
  std::vector<RepExpr> args;
  bool pair_param = false;  // params written as (k1,k2)
};

/// Throws ParseError on malformed text or unknown constructor names.
RepExpr parse_rep(std::string_view text);
std::string to_string(const RepExpr& expr);

/// Throws UnsupportedSpace when an atom does not exist over this space.
AlgebraRep build_rep(const SymmetricSpaceModel& space, const RepExpr& expr);
AlgebraRep build_rep(const SymmetricSpaceModel& space, std::string_view text);

/// h -> su(2) through the spin lift of the isotropy, for three-dimensional
/// tangent spaces (rows: su(2) coordinates).
Eigen::MatrixXd isotropy_into_su2(const SymmetricSpaceModel& space);
/// h -> u(n) for CP^n: with Y = pi(H) as a complex n x n matrix,
/// X = Y - tr(Y)/(n+1) I, so that X + tr(X) I recovers the isotropy.
Eigen::MatrixXd isotropy_into_un(const SymmetricSpaceModel& space);

}  // namespace symcurv
