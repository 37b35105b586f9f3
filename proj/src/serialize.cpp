#include "symcurv/serialize.hpp"

#include "symcurv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace symcurv {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<int>();
}

Json qmatrix_to_json(const QMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(rational_to_string(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

QMatrix qmatrix_from_json(const Json& j, std::size_t n, const char* what) {
  if (!j.is_array() || j.size() != n) bad(std::string(what) + " must be a square matrix of size " + std::to_string(n));
  QMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!j[r].is_array() || j[r].size() != n) bad(std::string(what) + " has a malformed row");
    for (std::size_t c = 0; c < n; ++c) m(r, c) = rational_from_json(j[r][c]);
  }
  return m;
}

}  // namespace

std::string rational_to_string(const Rational& q) {
  const auto num = boost::multiprecision::numerator(q);
  const auto den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_string()) bad("rational must be a string \"p/q\" or an integer");
  const std::string s = j.get<std::string>();
  const auto slash = s.find('/');
  auto integer = [&](const std::string& t) {
    if (t.empty() || t.find_first_not_of("+-0123456789") != std::string::npos) bad("malformed rational '" + s + "'");
    try {
      return boost::multiprecision::cpp_int(t.front() == '+' ? t.substr(1) : t);
    } catch (const std::exception&) {
      bad("malformed rational '" + s + "'");
    }
  };
  if (slash == std::string::npos) return Rational(integer(s));
  const auto den = integer(s.substr(slash + 1));
  if (den == 0) bad("zero denominator in '" + s + "'");
  return Rational(integer(s.substr(0, slash)), den);
}

double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  const double y = std::strtod(buf, nullptr);
  return y == 0.0 ? 0.0 : y;
}

Json number(double x) { return round12(x); }
Json number(const std::optional<double>& x) { return x ? Json(round12(*x)) : Json(nullptr); }

Json algebra_to_json(const LieAlgebraModel& alg) {
  Json brackets = Json::array();
  for (int i = 0; i < alg.dim(); ++i)
    for (int j = i + 1; j < alg.dim(); ++j)
      for (const auto& t : alg.bracket_of_basis(i, j)) brackets.push_back({i, j, t.index, rational_to_string(t.coeff)});
  return Json{{"name", alg.name()},
              {"dim", alg.dim()},
              {"labels", alg.labels()},
              {"brackets", brackets},
              {"inner_product", qmatrix_to_json(alg.inner_product())}};
}

LieAlgebraModel algebra_from_json(const Json& j) {
  const Json& jn = field(j, "name");
  if (!jn.is_string()) bad("algebra name must be a string");
  const int dim = as_int(field(j, "dim"), "dim");
  if (dim < 0) bad("dim must be nonnegative");
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    const Json& jl = j.at("labels");
    if (!jl.is_array() || static_cast<int>(jl.size()) != dim) bad("labels must list dim names");
    for (const auto& l : jl) {
      if (!l.is_string()) bad("labels must be strings");
      labels.push_back(l.get<std::string>());
    }
  } else {
    for (int i = 0; i < dim; ++i) labels.push_back("X" + std::to_string(i));
  }

  std::vector<std::vector<SparseVec>> table(dim, std::vector<SparseVec>(dim));
  const Json& jb = field(j, "brackets");
  if (!jb.is_array()) bad("brackets must be an array");
  for (const auto& t : jb) {
    if (!t.is_array() || t.size() != 4) bad("bracket entries are [i, j, k, coeff]");
    const int a = as_int(t[0], "bracket index"), b = as_int(t[1], "bracket index"), c = as_int(t[2], "bracket index");
    if (a < 0 || b < 0 || c < 0 || a >= dim || b >= dim || c >= dim) bad("bracket index out of range");
    if (a >= b) bad("bracket entries need i < j");
    const Rational q = rational_from_json(t[3]);
    if (q == 0) continue;
    table[a][b].push_back({c, q});
    table[b][a].push_back({c, -q});
  }
  for (auto& row : table)
    for (auto& v : row) std::sort(v.begin(), v.end(), [](const SparseTerm& x, const SparseTerm& y) { return x.index < y.index; });

  const QMatrix ip = j.contains("inner_product") ? qmatrix_from_json(j.at("inner_product"), dim, "inner_product")
                                                 : QMatrix::identity(dim);
  LieAlgebraModel alg(jn.get<std::string>(), labels, table, ip);
  const ValidationReport v = validate(alg);
  if (!v.antisymmetry.pass || !v.jacobi.pass)
    throw Error(ErrorKind::InvalidArgument, "algebra " + alg.name() + " fails the Jacobi identity");
  return alg;
}

Json space_to_json(const SymmetricSpaceModel& space) {
  Json out{{"name", space.name()},
           {"algebra", algebra_to_json(space.g())},
           {"h_indices", space.h_indices()},
           {"metric", qmatrix_to_json(space.metric_m())},
           {"flat_dim", space.flat_dim()}};
  if (space.complex_structure()) {
    Json rows = Json::array();
    const auto& jm = *space.complex_structure();
    for (int r = 0; r < jm.rows(); ++r) {
      Json row = Json::array();
      for (int c = 0; c < jm.cols(); ++c) row.push_back(number(jm(r, c)));
      rows.push_back(row);
    }
    out["complex_structure"] = rows;
  }
  return out;
}

SymmetricSpaceModel space_from_json(const Json& j) {
  const Json& jn = field(j, "name");
  if (!jn.is_string()) bad("space name must be a string");
  LieAlgebraModel g = algebra_from_json(field(j, "algebra"));
  std::vector<int> h;
  const Json& jh = field(j, "h_indices");
  if (!jh.is_array()) bad("h_indices must be an array");
  for (const auto& x : jh) {
    const int i = as_int(x, "h index");
    if (i < 0 || i >= g.dim()) bad("h index out of range");
    h.push_back(i);
  }
  const std::size_t m = g.dim() - h.size();
  const QMatrix metric = j.contains("metric") ? qmatrix_from_json(j.at("metric"), m, "metric") : QMatrix::identity(m);
  const int flat = j.contains("flat_dim") ? as_int(j.at("flat_dim"), "flat_dim") : 0;
  std::optional<Eigen::MatrixXd> cs;
  if (j.contains("complex_structure")) {
    const Json& jc = j.at("complex_structure");
    if (!jc.is_array() || jc.size() != m) bad("complex_structure must be an m x m matrix");
    Eigen::MatrixXd c(m, m);
    for (std::size_t r = 0; r < m; ++r) {
      if (!jc[r].is_array() || jc[r].size() != m) bad("complex_structure has a malformed row");
      for (std::size_t k = 0; k < m; ++k) {
        if (!jc[r][k].is_number()) bad("complex_structure entries must be numbers");
        c(r, k) = jc[r][k].get<double>();
      }
    }
    cs = c;
  }
  return SymmetricSpaceModel(std::move(g), std::move(h), metric, jn.get<std::string>(), flat, cs);
}

Json to_json(const CharClassReport& r) {
  return Json{{"base", r.base},           {"rank", r.rank},         {"euler", number(r.euler)},
              {"p1", number(r.p1)},       {"c1", number(r.c1)},     {"c2", number(r.c2)},
              {"integral", r.integral},   {"tolerance", r.tolerance}};
}

Json to_json(const BundleReport& r) {
  return Json{{"space", r.space},
              {"rep", r.rep},
              {"rank", r.rank},
              {"type", std::string(to_string(r.type))},
              {"euler", number(r.classes.euler)},
              {"p1", number(r.classes.p1)},
              {"c1", number(r.classes.c1)},
              {"c2", number(r.classes.c2)},
              {"checks",
               {{"bracket_identity", r.checks.bracket_identity},
                {"kernel_inclusion", r.checks.kernel_inclusion},
                {"rho_roundtrip", r.checks.rho_roundtrip}}}};
}

}  // namespace symcurv
