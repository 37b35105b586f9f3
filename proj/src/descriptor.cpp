#include "symcurv/descriptor.hpp"

#include "symcurv/errors.hpp"
#include "symcurv/reps.hpp"

#include <cctype>
#include <set>

namespace symcurv {

namespace {

const std::set<std::string> kIntAtoms = {"trivial", "spin2", "su2", "spin_fund", "spin_plus", "spin_minus",
                                         "un_det", "un_fund"};
const std::set<std::string> kBareAtoms = {"tangent", "adjoint"};

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  RepExpr parse() {
    RepExpr e = rep();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::ParseError, what + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  std::string name() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected a name");
    return std::string(s_.substr(start, pos_ - start));
  }
  int integer() {
    skip();
    const std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    const std::size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (digits == pos_) fail("expected an integer");
    if (pos_ - digits > 6) fail("integer too large");
    return std::stoi(std::string(s_.substr(start, pos_ - start)));
  }

  RepExpr rep() {
    RepExpr e;
    e.head = name();
    if (e.head == "sum" || e.head == "tensor" || e.head == "ext" || e.head == "sym2" || e.head == "real") {
      expect('(');
      e.args.push_back(rep());
      if (e.head == "sum") {
        while (eat(',')) e.args.push_back(rep());
      } else if (e.head == "tensor") {
        expect(',');
        e.args.push_back(rep());
      } else if (e.head == "ext") {
        expect(',');
        e.params.push_back(integer());
      }
      expect(')');
      return e;
    }
    if (kBareAtoms.count(e.head)) return e;
    if (e.head == "spin4") {
      expect(':');
      expect('(');
      e.params.push_back(integer());
      expect(',');
      e.params.push_back(integer());
      expect(')');
      e.pair_param = true;
      return e;
    }
    if (kIntAtoms.count(e.head)) {
      expect(':');
      e.params.push_back(integer());
      return e;
    }
    fail("unknown constructor '" + e.head + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

[[noreturn]] void unsupported(const SymmetricSpaceModel& space, const std::string& what) {
  throw Error(ErrorKind::UnsupportedSpace, what + " is not defined over " + space.name());
}

bool is_sphere_like(const SymmetricSpaceModel& space, int n) {
  return space.m_dim() == n && space.h_dim() == n * (n - 1) / 2;
}

bool is_cpn(const SymmetricSpaceModel& space) {
  const int n = space.m_dim() / 2;
  return space.complex_structure() && space.m_dim() == 2 * n && n >= 1 && space.h_dim() == n * n;
}

}  // namespace

RepExpr parse_rep(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const RepExpr& e) {
  if (!e.args.empty()) {
    std::string out = e.head + "(";
    for (std::size_t i = 0; i < e.args.size(); ++i) out += (i ? "," : "") + to_string(e.args[i]);
    if (e.head == "ext") out += "," + std::to_string(e.params.at(0));
    return out + ")";
  }
  if (e.params.empty()) return e.head;
  if (e.pair_param) return e.head + ":(" + std::to_string(e.params[0]) + "," + std::to_string(e.params[1]) + ")";
  return e.head + ":" + std::to_string(e.params[0]);
}

Eigen::MatrixXd isotropy_into_su2(const SymmetricSpaceModel& space) {
  if (!is_sphere_like(space, 3)) unsupported(space, "the su(2) spin lift");
  const auto gens = spin_generators(3);
  const Eigen::MatrixXd biv = isotropy_bivectors(space);
  const auto su2 = su_algebra(2);
  Eigen::MatrixXd phi(3, space.h_dim());
  for (int k = 0; k < space.h_dim(); ++k) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    for (int p = 0; p < 3; ++p) m += biv(p, k) * gens[p];
    phi.col(k) = realization_coords(*su2, m);
  }
  return phi;
}

Eigen::MatrixXd isotropy_into_un(const SymmetricSpaceModel& space) {
  if (!is_cpn(space)) unsupported(space, "the u(n) isotropy");
  const int n = space.m_dim() / 2;
  std::vector<Eigen::MatrixXd> pis;
  for (int k = 0; k < space.h_dim(); ++k) pis.push_back(space.isotropy_image(k));
  const auto ys = to_complex(*space.complex_structure(), pis);
  const auto un = u_algebra(n);
  Eigen::MatrixXd phi(un->dim(), space.h_dim());
  for (int k = 0; k < space.h_dim(); ++k) {
    const Eigen::MatrixXcd x = ys[k] - ys[k].trace() / double(n + 1) * Eigen::MatrixXcd::Identity(n, n);
    phi.col(k) = realization_coords(*un, x);
  }
  return phi;
}

AlgebraRep build_rep(const SymmetricSpaceModel& space, const RepExpr& e) {
  const std::string label = to_string(e);
  const auto& h = space.h_ptr();
  auto finish = [&](const AlgebraRep& r) {
    AlgebraRep out = r.relabeled(label);
    validate_homomorphism(out, 1e-8);
    return out;
  };
  if (e.head == "sum") {
    std::vector<AlgebraRep> parts;
    for (const auto& a : e.args) parts.push_back(build_rep(space, a));
    return finish(direct_sum(parts));
  }
  if (e.head == "tensor") return finish(tensor(build_rep(space, e.args[0]), build_rep(space, e.args[1])));
  if (e.head == "ext") return finish(exterior_power(build_rep(space, e.args[0]), e.params[0]));
  if (e.head == "sym2") return finish(sym2_traceless(build_rep(space, e.args[0])));
  if (e.head == "real") {
    // one irreducible real summand; meaningful for isotypic arguments such as
    // the realification of a real-type complex representation
    const auto parts = decompose(build_rep(space, e.args[0]));
    if (parts.empty()) throw Error(ErrorKind::InvalidArgument, "real() of the zero representation");
    return finish(parts.front());
  }
  if (e.head == "tangent") return finish(isotropy_rep(space));
  if (e.head == "adjoint") return finish(adjoint_rep(h));
  if (e.head == "trivial") {
    if (e.params[0] < 0) throw Error(ErrorKind::InvalidArgument, "negative rank");
    return finish(trivial_rep(h, e.params[0]));
  }
  if (e.head == "spin2") {
    if (space.m_dim() != 2 || space.h_dim() != 1) unsupported(space, label);
    return finish(pullback(spin2_irrep(e.params[0]), h, isotropy_bivectors(space), label));
  }
  if (e.head == "su2") {
    if (e.params[0] < 0) throw Error(ErrorKind::InvalidArgument, "su2 weight must be >= 0");
    return finish(irreducible_real(pullback(su2_irrep(e.params[0]), h, isotropy_into_su2(space), label)));
  }
  if (e.head == "spin4") {
    if (!is_sphere_like(space, 4)) unsupported(space, label);
    return finish(pullback(spin4_irrep(e.params[0], e.params[1]), h, isotropy_bivectors(space), label));
  }
  if (e.head == "spin_fund" || e.head == "spin_plus" || e.head == "spin_minus") {
    const int n = e.params[0];
    if (!is_sphere_like(space, n)) unsupported(space, label);
    const SpinRep s = spin_fundamental(n);
    const std::optional<AlgebraRep>& part = e.head == "spin_plus" ? s.plus : s.minus;
    if (e.head != "spin_fund" && !part) throw Error(ErrorKind::UnsupportedDim, "chiral spinors need even n");
    const AlgebraRep& base = e.head == "spin_fund" ? s.full : *part;
    return finish(pullback(base, h, isotropy_bivectors(space), label));
  }
  if (e.head == "un_det" || e.head == "un_fund") {
    if (!is_cpn(space)) unsupported(space, label);
    const int n = space.m_dim() / 2;
    const AlgebraRep base = e.head == "un_det" ? un_det_power(n, e.params[0]) : un_fundamental_twist(n, e.params[0]);
    return finish(pullback(base, h, isotropy_into_un(space), label));
  }
  throw Error(ErrorKind::ParseError, "unknown constructor '" + e.head + "'");
}

AlgebraRep build_rep(const SymmetricSpaceModel& space, std::string_view text) {
  return build_rep(space, parse_rep(text));
}

}  // namespace symcurv
