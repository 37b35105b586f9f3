#include <doctest.h>

#include "symcurv/errors.hpp"
#include "symcurv/liealg.hpp"

#include <complex>

using namespace symcurv;

namespace {

// coefficient of X_k in [X_i, X_j], read off hand-built matrices by least squares
Eigen::VectorXd expand(const std::vector<Eigen::MatrixXcd>& basis, const Eigen::MatrixXcd& m) {
  const int n = static_cast<int>(basis.size());
  const int s = static_cast<int>(m.size());
  Eigen::MatrixXd a(2 * s, n);
  Eigen::VectorXd b(2 * s);
  for (int k = 0; k < n; ++k) {
    const Eigen::Map<const Eigen::VectorXcd> v(basis[k].data(), s);
    a.col(k) << v.real(), v.imag();
  }
  const Eigen::Map<const Eigen::VectorXcd> w(m.data(), s);
  b << w.real(), w.imag();
  return a.colPivHouseholderQr().solve(b);
}

Eigen::MatrixXcd unit(int n, int i, int j) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  m(i, j) = 1;
  return m;
}

}  // namespace

TEST_CASE("so(3) brackets agree with matrix commutators") {
  const LieAlgebraModel so3 = make_so(3);
  REQUIRE(so3.dim() == 3);
  // E_ij = e_j e_i^T - e_i e_j^T, in the order E01, E02, E12
  std::vector<Eigen::MatrixXcd> e;
  for (auto [i, j] : {std::pair{0, 1}, {0, 2}, {1, 2}}) e.push_back(unit(3, j, i) - unit(3, i, j));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const Eigen::VectorXd c = expand(e, e[i] * e[j] - e[j] * e[i]);
      for (int k = 0; k < 3; ++k) CHECK(to_double(so3.structure_constant(i, j, k)) == doctest::Approx(c(k)));
    }
  // with this matrix convention [E01, E02] = +E12
  CHECK(so3.structure_constant(0, 1, 2) == Rational(1));
}

TEST_CASE("so(2) is abelian and so(n) passes validation") {
  const LieAlgebraModel so2 = make_so(2);
  CHECK(so2.dim() == 1);
  CHECK(so2.bracket_of_basis(0, 0).empty());
  for (int n = 2; n <= 8; ++n) {
    const ValidationReport v = validate(make_so(n));
    CHECK_MESSAGE(v.ok(), "so(" << n << ")");
    CHECK(make_so(n).dim() == n * (n - 1) / 2);
  }
}

TEST_CASE("su(2) against Pauli-type commutators") {
  const LieAlgebraModel su2 = make_su(2);
  REQUIRE(su2.dim() == 3);
  const std::complex<double> I(0, 1);
  std::vector<Eigen::MatrixXcd> b = {unit(2, 1, 0) - unit(2, 0, 1), I * (unit(2, 0, 1) + unit(2, 1, 0)),
                                     I * (unit(2, 0, 0) - unit(2, 1, 1))};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const Eigen::VectorXd c = expand(b, b[i] * b[j] - b[j] * b[i]);
      for (int k = 0; k < 3; ++k) CHECK(to_double(su2.structure_constant(i, j, k)) == doctest::Approx(c(k)));
    }
  // isomorphic to so(3) after halving the basis: every bracket of distinct
  // elements is +-2 times the remaining one
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      const int k = 3 - i - j;
      CHECK(abs(su2.structure_constant(i, j, k)) == Rational(2));
    }
  const Eigen::MatrixXd kf = make_su(2).killing_form().to_double();
  CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(kf).eigenvalues().maxCoeff() < 0);
}

TEST_CASE("so(3) Killing form is tr(ad X ad Y) = (n-2) tr(XY)") {
  const Eigen::MatrixXd kf = make_so(3).killing_form().to_double();
  // tr(E01 E01) = -2 and n - 2 = 1
  CHECK(kf.isApprox(-2 * Eigen::MatrixXd::Identity(3, 3)));
}

TEST_CASE("u(1), su(3), u(2)") {
  CHECK(make_u(1).dim() == 1);
  CHECK(make_u(1).bracket_of_basis(0, 0).empty());
  CHECK(validate(make_su(3)).ok());
  CHECK(make_su(3).dim() == 8);
  CHECK(validate(make_u(2)).ok());
  CHECK(check_realization(make_su(3)).pass);
}

TEST_CASE("products") {
  const LieAlgebraModel p = product_algebra(make_su(2), make_su(2));
  CHECK(p.dim() == 6);
  for (int i = 0; i < 3; ++i)
    for (int j = 3; j < 6; ++j) CHECK(p.bracket_of_basis(i, j).empty());
  CHECK(validate(p).ok());
  CHECK(same_structure(product_algebra(make_so(3), make_abelian(0)), make_so(3)));
  CHECK(product_algebra(make_so(4), make_u(2)).dim() == 10);
}

TEST_CASE("validation catches corrupted structure constants") {
  CHECK(validate(make_so(4)).ok());
  CHECK(validate(make_abelian(3)).ok());
  // any antisymmetric bracket on a 3-dim space satisfies Jacobi, so on so(3)
  // only the invariance of the inner product can notice
  const ValidationReport v3 = validate(make_so(3).with_structure_constant(0, 1, 2, Rational(3)));
  CHECK(v3.jacobi.pass);
  CHECK_FALSE(v3.invariance.pass);
  const ValidationReport v = validate(make_so(4).with_structure_constant(0, 1, 3, Rational(3)));
  CHECK_FALSE(v.jacobi.pass);
  CHECK(v.jacobi.witness.has_value());
  const ValidationReport w = validate(make_so(3).with_structure_constant(0, 1, 2, Rational(5), true));
  CHECK_FALSE(w.antisymmetry.pass);
}

TEST_CASE("subalgebra closure") {
  const LieAlgebraModel so4 = make_so(4);
  // E12, E13, E23 (indices 3, 4, 5) span so(3)
  CHECK(subalgebra(so4, {3, 4, 5}, "so3").dim() == 3);
  CHECK_THROWS_AS(subalgebra(so4, {0, 1}, "bad"), Error);
}
