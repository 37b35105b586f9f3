#include "symcurv/spherebundle.hpp"

#include "symcurv/errors.hpp"

#include <cmath>
#include <random>

namespace symcurv {

CtildeResult c_tilde(const InducedBundle& bundle, double tol) {
  const int k = bundle.rank();
  CtildeResult out;
  out.op = Eigen::MatrixXd::Zero(k, k);
  // each unordered pair appears twice in the ordered sum
  for (const auto& r : bundle.curvature) out.op -= 2.0 * r * r;
  out.op = 0.5 * (out.op + out.op.transpose());
  out.c = k ? out.op.trace() / k : 0.0;
  out.residual = k ? (out.op - out.c * Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff() : 0.0;
  out.is_multiple_of_identity = out.residual < tol;
  return out;
}

double c_of_u(const InducedBundle& bundle, const Eigen::VectorXd& u) {
  double s = 0.0;
  for (const auto& r : bundle.curvature) s += 2.0 * (r * u).squaredNorm();
  return s;
}

SchurReport schur_constancy_check(const InducedBundle& bundle, int samples, std::uint64_t seed, double tol) {
  SchurReport out;
  out.c = c_tilde(bundle).c;
  out.samples = samples;
  const int k = bundle.rank();
  if (k == 0) {
    out.pass = true;
    return out;
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (int s = 0; s < samples; ++s) {
    Eigen::VectorXd u(k);
    for (int i = 0; i < k; ++i) u(i) = gauss(rng);
    u.normalize();
    out.max_deviation = std::max(out.max_deviation, std::abs(c_of_u(bundle, u) - out.c));
  }
  out.pass = out.max_deviation < tol;
  return out;
}

double round_sphere_scalar(int k, double a) {
  if (a <= 0) throw Error(ErrorKind::InvalidArgument, "radius must be positive");
  return double(k - 1) * (k - 2) / (a * a);
}

FiberMetricProfile round_sphere_profile(int k, double a) {
  return {[a](double r) { return a * std::sin(r / a); }, round_sphere_scalar(k, a)};
}

double a_tensor_norm(const InducedBundle& bundle, double r, const FiberMetricProfile& profile,
                     const Eigen::VectorXd& u) {
  if (!(r > 0)) throw Error(ErrorKind::InvalidArgument, "radius must be positive");
  if (u.size() != bundle.rank() || std::abs(u.norm() - 1.0) > 1e-9)
    throw Error(ErrorKind::InvalidArgument, "u must be a unit fiber vector");
  const double g = profile.G(r);
  return 0.25 * g * g * c_of_u(bundle, u);
}

double total_scalar_curvature(double s_m, const FiberMetricProfile& profile, double a_norm) {
  return s_m + profile.s_F - a_norm;
}

}  // namespace symcurv
