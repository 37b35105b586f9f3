#pragma once

namespace symcurv {

/// Base floating-point tolerance. Defaults to 1e-9; the CLI may override it
/// once at startup (SYMCURV_TOL or --tol). Clustering and residual checks use
/// multiples of this value.
double eps();
void set_eps(double value);

inline double cluster_gap() { return 10.0 * eps(); }

}  // namespace symcurv
