#include <doctest.h>

#include "symcurv/bundles.hpp"
#include "symcurv/descriptor.hpp"
#include "symcurv/errors.hpp"

#include <algorithm>
#include <random>

using namespace symcurv;

namespace {

InducedBundle bundle(const std::string& space, const std::string& rep) {
  const SymmetricSpaceModel s = catalog(space);
  return induce(s, build_rep(s, rep));
}

CharClassReport classes(const std::string& space, const std::string& rep) {
  return characteristic_numbers(bundle(space, rep));
}

std::vector<Eigen::MatrixXd> random_skew_curvature(std::mt19937_64& rng, int nb, int k) {
  std::normal_distribution<double> g;
  std::vector<Eigen::MatrixXd> out;
  for (int p = 0; p < nb; ++p) {
    Eigen::MatrixXd a(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) a(i, j) = g(rng);
    out.push_back(a - a.transpose());
  }
  return out;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("tangent bundle reproduces R^M") {
  for (const char* name : {"S4", "CP2", "S2×S3", "SU2_group"}) {
    const InducedBundle b = bundle(name, "tangent");
    const Eigen::MatrixXd& r = b.base.matrix();
    for (std::size_t p = 0; p < b.curvature.size(); ++p)
      CHECK((coeffs_from_skew(b.curvature[p]) - r.col(p)).norm() < 1e-12);
  }
}

TEST_CASE("trivial bundles are flat") {
  for (const auto& m : bundle("CP2", "trivial:3").curvature) CHECK(m.isZero());
}

TEST_CASE("the (1,0) instanton takes values in an su(2)") {
  const InducedBundle b = bundle("S4", "spin4:(1,0)");
  CHECK(b.rank() == 4);
  Eigen::MatrixXd stack(16, b.curvature.size());
  for (std::size_t p = 0; p < b.curvature.size(); ++p) {
    CHECK_FALSE(b.curvature[p].isZero());
    stack.col(p) = Eigen::Map<const Eigen::VectorXd>(b.curvature[p].data(), 16);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stack, Eigen::ComputeThinU);
  svd.setThreshold(1e-9);
  CHECK(svd.rank() == 3);
  // the span is bracket closed
  const Eigen::MatrixXd basis = svd.matrixU().leftCols(3);
  for (std::size_t p = 0; p < b.curvature.size(); ++p)
    for (std::size_t q = 0; q < b.curvature.size(); ++q) {
      const Eigen::MatrixXd c = b.curvature[p] * b.curvature[q] - b.curvature[q] * b.curvature[p];
      const Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(c.data(), 16);
      CHECK((v - basis * (basis.transpose() * v)).norm() < 1e-9);
    }
}

TEST_CASE("source mismatch") {
  CHECK(kind_of([] { induce(catalog("S4"), build_rep(catalog("S3"), "su2:1")); }) == ErrorKind::SourceMismatch);
}

TEST_CASE("bracket identity") {
  CHECK(check_bracket_identity(bundle("S4", "spin4:(1,0)")).pass);
  CHECK(check_bracket_identity(bundle("S2×S3", "sum(tangent,trivial:1,tangent)")).pass);
  const InducedBundle b = bundle("S4", "spin4:(1,0)");
  std::vector<Eigen::MatrixXd> corrupt = b.curvature;
  corrupt[2].setZero();
  const IdentityCheck c = check_bracket_identity(with_curvature(b, corrupt));
  CHECK_FALSE(c.pass);
  CHECK(c.witness.has_value());
  CHECK(c.residual > 0.1);
}

TEST_CASE("kernel inclusion") {
  const KernelCheck cp2 = check_kernel_inclusion(bundle("CP2", "un_det:1"));
  CHECK(cp2.pass);
  CHECK(cp2.dim_kernel == 2);
  const KernelCheck s4 = check_kernel_inclusion(bundle("S4", "tangent"));
  CHECK(s4.pass);
  CHECK(s4.dim_kernel == 0);
  const KernelCheck s2s2 = check_kernel_inclusion(bundle("S2×S2", "tangent"));
  CHECK(s2s2.pass);
  CHECK(s2s2.dim_kernel == 4);
}

TEST_CASE("rho-hat reconstruction") {
  for (const auto& [space, rep] : std::vector<std::pair<std::string, std::string>>{
           {"S4", "spin4:(1,0)"}, {"S4", "tangent"}, {"CP2", "un_det:1"}, {"S3", "su2:3"}, {"S2×S2", "tangent"}}) {
    const InducedBundle b = bundle(space, rep);
    const AlgebraRep back = recover_rho_hat(*b.space, b.curvature, b.rep.complex_structure());
    for (int i = 0; i < b.space->h_dim(); ++i) CHECK((back.image(i) - b.rep.image(i)).norm() < 1e-8);
    // induce after recover gives the same curvature
    const InducedBundle again = induce(*b.space, back);
    for (std::size_t p = 0; p < b.curvature.size(); ++p) CHECK((again.curvature[p] - b.curvature[p]).norm() < 1e-8);
  }
  // the tangent bundle recovers the isotropy representation
  const SymmetricSpaceModel s4 = catalog("S4");
  const AlgebraRep pi = isotropy_rep(s4);
  const AlgebraRep back = recover_rho_hat(s4, induce(s4, pi).curvature);
  for (int i = 0; i < 6; ++i) CHECK((back.image(i) - pi.image(i)).norm() < 1e-10);
}

TEST_CASE("recovered rho-hat commutes with the complex structure") {
  const InducedBundle b = bundle("CP2", "un_fund:0");
  REQUIRE(b.rep.complex_structure().has_value());
  const Eigen::MatrixXd& j = *b.rep.complex_structure();
  const AlgebraRep back = recover_rho_hat(*b.space, b.curvature, j);
  for (const auto& m : back.images()) CHECK((j * m - m * j).norm() < 1e-9);
}

TEST_CASE("random curvature inputs are rejected") {
  std::mt19937_64 rng(42);
  int rejected = 0;
  const SymmetricSpaceModel s4 = catalog("S4");
  for (int t = 0; t < 100; ++t) {
    try {
      recover_rho_hat(s4, random_skew_curvature(rng, 6, 4));
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotHomomorphism);
      ++rejected;
    }
  }
  CHECK(rejected >= 95);
  const SymmetricSpaceModel cp2 = catalog("CP2");
  CHECK(kind_of([&] { recover_rho_hat(cp2, random_skew_curvature(rng, 6, 2)); }) == ErrorKind::KernelNotIncluded);
}

TEST_CASE("Euler numbers over S2") {
  for (int k = -5; k <= 5; ++k) {
    const CharClassReport c = classes("S2", "spin2:" + std::to_string(k));
    REQUIRE(c.euler.has_value());
    CHECK(*c.euler == doctest::Approx(k).epsilon(1e-9));
    CHECK(c.integral);
  }
  CHECK(*classes("S2", "tangent").euler == doctest::Approx(2));
  CHECK_FALSE(classes("S2", "sum(trivial:1,spin2:1)").euler.has_value());
}

TEST_CASE("rank-4 bundles over S4") {
  auto ep = [](const std::string& rep) {
    const CharClassReport c = classes("S4", rep);
    REQUIRE(c.euler.has_value());
    REQUIRE(c.p1.has_value());
    CHECK(c.integral);
    return std::make_pair(std::round(*c.euler), std::round(*c.p1));
  };
  CHECK(ep("tangent") == std::make_pair(2.0, 0.0));
  CHECK(ep("spin4:(1,1)") == std::make_pair(2.0, 0.0));
  CHECK(ep("trivial:4") == std::make_pair(0.0, 0.0));
  CHECK(ep("sum(trivial:1,spin4:(2,0))") == std::make_pair(0.0, 4.0));
  CHECK(ep("sum(trivial:1,spin4:(0,2))") == std::make_pair(0.0, -4.0));
  // S+ and S- carry opposite Euler numbers and opposite p1
  const auto sp = ep("spin4:(1,0)"), sm = ep("spin4:(0,1)");
  CHECK(std::abs(sp.first) == 1);
  CHECK(sp.first == -sm.first);
  CHECK(std::abs(sp.second) == 2);
  CHECK(sp.second == -sm.second);
  const CharClassReport splus = classes("S4", "spin4:(1,0)");
  REQUIRE(splus.c2.has_value());
  CHECK(*splus.c2 == doctest::Approx(-1));
}

TEST_CASE("Chern-Weil consistency for complex rank-2 bundles") {
  // complex orientation: e = c2; for any complex bundle p1 = c1^2 - 2 c2
  for (const auto& [space, rep] : std::vector<std::pair<std::string, std::string>>{
           {"S4", "spin4:(1,0)"}, {"S4", "spin4:(0,1)"}, {"CP2", "tangent"}, {"CP2", "un_fund:0"},
           {"CP2", "un_fund:-2"}, {"CP2", "sum(un_det:1,un_det:2)"}}) {
    const CharClassReport c = classes(space, rep);
    REQUIRE(c.c2.has_value());
    REQUIRE(c.euler.has_value());
    CHECK(*c.euler == doctest::Approx(*c.c2));
    const double c1 = c.c1.value_or(0.0);
    CHECK(*c.p1 == doctest::Approx(c1 * c1 - 2 * *c.c2));
  }
  // p1 of the real rank-3 bundle of (2,0) is -4 c2 of (1,0)
  CHECK(*classes("S4", "spin4:(2,0)").p1 == doctest::Approx(-4 * *classes("S4", "spin4:(1,0)").c2));
}

TEST_CASE("tangent bundle of CP2") {
  // c(TCP2) = (1 + h)^3, Euler characteristic 3, and p1 = 3 signature = 3
  const CharClassReport c = classes("CP2", "tangent");
  CHECK(*c.c1 == doctest::Approx(3));
  CHECK(*c.c2 == doctest::Approx(3));
  CHECK(*c.euler == doctest::Approx(3));
  CHECK(*c.p1 == doctest::Approx(3));
  for (int k = 1; k <= 3; ++k) {
    CHECK(*classes("CP2", "un_det:" + std::to_string(k)).c1 == doctest::Approx(k));
    CHECK(*classes("CP3", "un_det:" + std::to_string(k)).c1 == doctest::Approx(k));
    CHECK(*classes("CP1", "un_det:" + std::to_string(k)).euler == doctest::Approx(k));
  }
  CHECK(*classes("CP1", "tangent").c1 == doctest::Approx(2));
}

TEST_CASE("characteristic numbers are invariant under rescaling the base") {
  for (const auto& [space, rep] : std::vector<std::pair<std::string, std::string>>{
           {"S4", "spin4:(1,0)"}, {"CP2", "tangent"}, {"S2", "spin2:3"}}) {
    const SymmetricSpaceModel s = catalog(space);
    const SymmetricSpaceModel t = s.rescaled(Rational(4));
    const CharClassReport a = characteristic_numbers(induce(s, build_rep(s, rep)));
    const CharClassReport b = characteristic_numbers(induce(t, build_rep(t, rep)));
    for (const auto& [x, y] : {std::pair{a.euler, b.euler}, {a.p1, b.p1}, {a.c1, b.c1}, {a.c2, b.c2}}) {
      REQUIRE(x.has_value() == y.has_value());
      if (x) CHECK(*x == doctest::Approx(*y));
    }
  }
}

TEST_CASE("Euler vanishes with a trivial summand and p1 is additive") {
  CHECK(*classes("S4", "sum(trivial:1,spin4:(0,2))").euler == doctest::Approx(0));
  CHECK(*classes("S2", "sum(trivial:1,trivial:1)").euler == doctest::Approx(0));
  const double a = *classes("S4", "spin4:(1,0)").p1, b = *classes("S4", "spin4:(2,0)").p1;
  CHECK(*classes("S4", "sum(spin4:(1,0),spin4:(2,0))").p1 == doctest::Approx(a + b));
  const double c = *classes("CP2", "un_det:2").p1, d = *classes("CP2", "adjoint").p1;
  CHECK(*classes("CP2", "sum(un_det:2,adjoint)").p1 == doctest::Approx(c + d));
}

TEST_CASE("unsupported bases") {
  CHECK(kind_of([] { classes("S5", "spin_fund:5"); }) == ErrorKind::UnsupportedBase);
  CHECK(kind_of([] { classes("S3", "su2:1"); }) == ErrorKind::UnsupportedBase);
  CHECK(kind_of([] { classes("S2×S2", "tangent"); }) == ErrorKind::UnsupportedBase);
}

TEST_CASE("type of a direct sum") {
  using K = RepKind;
  CHECK(sum_type({{K::Real, 1}}) == K::Real);
  CHECK(sum_type({{K::Real, 2}}) == K::Complex);
  CHECK(sum_type({{K::Real, 4}}) == K::Quaternionic);
  CHECK(sum_type({{K::Complex, 1}}) == K::Complex);
  CHECK(sum_type({{K::Complex, 2}}) == K::Quaternionic);
  CHECK(sum_type({{K::Quaternionic, 1}}) == K::Quaternionic);
  CHECK(sum_type({{K::Quaternionic, 1}, {K::Real, 1}}) == K::Real);
  CHECK(sum_type({{K::Complex, 1}, {K::Real, 2}}) == K::Complex);
}

TEST_CASE("classification over S4") {
  const auto all = classify_bundles(catalog("S4"), 4);
  std::vector<std::string> rank4;
  for (const auto& r : all) {
    CHECK(r.checks.bracket_identity);
    CHECK(r.checks.kernel_inclusion);
    CHECK(r.checks.rho_roundtrip);
    if (r.rank == 4) rank4.push_back(r.rep);
  }
  const std::vector<std::string> expect = {"spin4:(0,1)", "spin4:(1,0)", "spin4:(1,1)", "sum(trivial:1,spin4:(0,2))",
                                           "sum(trivial:1,spin4:(2,0))", "trivial:4"};
  CHECK(rank4 == expect);
  CHECK(classify_bundles(catalog("S4"), 0).empty());
  CHECK(std::is_sorted(all.begin(), all.end(), [](const BundleReport& a, const BundleReport& b) {
    return a.rank != b.rank ? a.rank < b.rank : a.rep < b.rep;
  }));
}

TEST_CASE("classification over S3 and S5") {
  std::vector<std::string> rank4, rank2;
  for (const auto& r : classify_bundles(catalog("S3"), 5)) {
    if (r.rank == 4) rank4.push_back(r.rep);
    if (r.rank == 2) rank2.push_back(r.rep);
  }
  CHECK(rank4 == std::vector<std::string>{"su2:1", "sum(trivial:1,su2:2)", "trivial:4"});
  CHECK(rank2 == std::vector<std::string>{"trivial:2"});

  for (const auto& r : classify_bundles(catalog("S5"), 4)) CHECK(r.rep == "trivial:" + std::to_string(r.rank));
  CHECK(classify_bundles(catalog("S5"), 5).size() == 6);  // trivial:1..5 and the tangent bundle

  std::vector<std::string> irr = catalog_irreps(catalog("S3"), 3);
  CHECK(irr == std::vector<std::string>{"su2:2"});
}

TEST_CASE("classification over surfaces and CP2") {
  const auto s2 = classify_bundles(catalog("S2"), 2);
  std::vector<double> eulers;
  for (const auto& r : s2)
    if (r.rank == 2) eulers.push_back(std::round(r.classes.euler.value()));
  CHECK(eulers == std::vector<double>{1, 2, 3, 0});
  for (const auto& r : classify_bundles(catalog("CP2"), 4)) {
    CHECK(r.checks.bracket_identity);
    CHECK(r.checks.kernel_inclusion);
    CHECK(r.checks.rho_roundtrip);
    CHECK(r.classes.integral);
  }
  CHECK(kind_of([] { classify_bundles(catalog("S2×S2"), 2); }) == ErrorKind::UnsupportedSpace);
  CHECK(kind_of([] { classify_bundles(catalog("CP3"), 2); }) == ErrorKind::UnsupportedSpace);
}
