#include <doctest.h>

#include "symcurv/descriptor.hpp"
#include "symcurv/errors.hpp"
#include "symcurv/reps.hpp"

using namespace symcurv;

namespace {

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

TEST_CASE("parse and print") {
  for (const char* s : {"spin4:(1,0)", "su2:2", "sum(spin4:(2,0),trivial:1)", "tensor(tangent,spin2:-3)",
                        "ext(tangent,2)", "sym2(tangent)", "real(spin_fund:7)", "adjoint", "un_fund:-1"})
    CHECK(to_string(parse_rep(s)) == s);
  CHECK(to_string(parse_rep(" sum( trivial:1 , spin4:( 2 , 0 ) ) ")) == "sum(trivial:1,spin4:(2,0))");
  const RepExpr e = parse_rep("sum(trivial:2,su2:1)");
  CHECK(e.head == "sum");
  REQUIRE(e.args.size() == 2);
  CHECK(e.args[1].params == std::vector<int>{1});
}

TEST_CASE("parse errors") {
  for (const char* s : {"bogus:(9", "spin4:(1", "sum(", "su2", "su2:x", "tangent extra", "", "ext(tangent)",
                        "spin4:1", "su2:99999999"})
    CHECK_MESSAGE(kind_of([&] { parse_rep(s); }) == ErrorKind::ParseError, s);
}

TEST_CASE("atoms over their spaces") {
  const SymmetricSpaceModel s2 = catalog("S2"), s3 = catalog("S3"), s4 = catalog("S4"), cp2 = catalog("CP2");
  CHECK(build_rep(s2, "spin2:3").dim() == 2);
  CHECK(equivalent(build_rep(s2, "spin2:2"), build_rep(s2, "tangent")));
  CHECK(build_rep(s3, "su2:1").dim() == 4);
  CHECK(build_rep(s3, "su2:2").dim() == 3);
  CHECK(equivalent(build_rep(s3, "su2:2"), build_rep(s3, "tangent")));
  CHECK(build_rep(catalog("SU2_group"), "su2:3").dim() == 8);
  CHECK(equivalent(build_rep(s4, "spin4:(1,1)"), build_rep(s4, "tangent")));
  CHECK(equivalent(build_rep(s4, "spin4:(1,0)"), build_rep(s4, "spin_plus:4")) !=
        equivalent(build_rep(s4, "spin4:(1,0)"), build_rep(s4, "spin_minus:4")));
  CHECK(build_rep(cp2, "un_det:1").dim() == 2);
  CHECK(build_rep(cp2, "un_fund:0").dim() == 4);
  CHECK(build_rep(cp2, "adjoint").dim() == 3);
  CHECK(build_rep(catalog("S7"), "real(spin_fund:7)").dim() == 8);
  CHECK(build_rep(s4, "sum(trivial:1,spin4:(2,0))").label() == "sum(trivial:1,spin4:(2,0))");
}

TEST_CASE("atoms outside their spaces") {
  CHECK(kind_of([] { build_rep(catalog("S4"), "spin2:1"); }) == ErrorKind::UnsupportedSpace);
  CHECK(kind_of([] { build_rep(catalog("S2"), "un_det:1"); }) == ErrorKind::UnsupportedSpace);
  CHECK(kind_of([] { build_rep(catalog("S3"), "spin4:(1,0)"); }) == ErrorKind::UnsupportedSpace);
  CHECK(kind_of([] { build_rep(catalog("S5"), "spin_plus:4"); }) == ErrorKind::UnsupportedSpace);
  CHECK(kind_of([] { build_rep(catalog("S5"), "spin_plus:5"); }) == ErrorKind::UnsupportedDim);
}

TEST_CASE("u(n) covering: X + tr(X) I recovers the CP^n isotropy") {
  for (const char* name : {"CP1", "CP2", "CP3"}) {
    const SymmetricSpaceModel s = catalog(name);
    const int n = s.m_dim() / 2;
    const Eigen::MatrixXd phi = isotropy_into_un(s);
    const AlgebraPtr un = u_algebra(n);
    std::vector<Eigen::MatrixXd> pis;
    for (int k = 0; k < s.h_dim(); ++k) pis.push_back(s.isotropy_image(k));
    const auto ys = to_complex(*s.complex_structure(), pis);
    for (int k = 0; k < s.h_dim(); ++k) {
      Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(n, n);
      for (int i = 0; i < un->dim(); ++i) x += phi(i, k) * un->realization()[i];
      const Eigen::MatrixXcd y = x + x.trace() * Eigen::MatrixXcd::Identity(n, n);
      CHECK((y - ys[k]).norm() < 1e-10);
    }
    // the tangent bundle is un_fund twisted by one
    CHECK(equivalent(build_rep(s, "un_fund:1"), build_rep(s, "tangent")));
  }
}

TEST_CASE("un_det:k over CP1 has the spin2:k normalization") {
  const SymmetricSpaceModel cp1 = catalog("CP1");
  for (int k = 1; k <= 3; ++k) {
    const std::string kk = std::to_string(k);
    CHECK(equivalent(build_rep(cp1, "un_det:" + kk), build_rep(cp1, "spin2:" + kk)));
  }
  CHECK_FALSE(equivalent(build_rep(cp1, "un_det:1"), build_rep(cp1, "spin2:2")));
}
