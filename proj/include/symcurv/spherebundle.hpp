#pragma once

// Scalar curvature of connection metrics on sphere bundles of induced
// bundles: the operator C~ = -sum R^E(x_i,x_j)^2 over ordered frame pairs,
// its constancy on unit vectors, and the O'Neill A-tensor contribution.

#include "symcurv/bundles.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>

namespace symcurv {

struct CtildeResult {
  Eigen::MatrixXd op;
  bool is_multiple_of_identity = false;
  double c = 0.0;  // tr(op) / k
  double residual = 0.0;  // max |op - c I|
};

CtildeResult c_tilde(const InducedBundle& bundle, double tol = 1e-8);

/// C(u) = sum over ordered pairs |R^E(x_i,x_j) u|^2 = <C~ u, u>
double c_of_u(const InducedBundle& bundle, const Eigen::VectorXd& u);

struct SchurReport {
  bool pass = false;
  double c = 0.0;
  double max_deviation = 0.0;
  int samples = 0;
};

/// Samples C(u) at random unit u and compares with c.
SchurReport schur_constancy_check(const InducedBundle& bundle, int samples, std::uint64_t seed = 0x5eed,
                                  double tol = 1e-8);

struct FiberMetricProfile {
  std::function<double(double)> G;
  double s_F = 0.0;
};

/// Scalar curvature of the round S^(k-1) of radius a.
double round_sphere_scalar(int k, double a);
/// Fiber R^k with the metric dr^2 + G(r)^2 dsigma^2, G(r) = a sin(r/a), and
/// s_F of the round sphere of radius a.
FiberMetricProfile round_sphere_profile(int k, double a);

/// |A|^2(ru) = G(r)^2 C(u) / 4. Throws InvalidArgument unless r > 0 and |u| = 1.
double a_tensor_norm(const InducedBundle& bundle, double r, const FiberMetricProfile& profile,
                     const Eigen::VectorXd& u);

/// s_M + s_F - |A|^2, unclamped.
double total_scalar_curvature(double s_m, const FiberMetricProfile& profile, double a_norm);

}  // namespace symcurv
