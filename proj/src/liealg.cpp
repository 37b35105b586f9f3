#include "symcurv/liealg.hpp"

#include "symcurv/errors.hpp"

#include <set>
#include <utility>

namespace symcurv {

namespace {

using Table = std::vector<std::vector<SparseVec>>;

void add_to(std::vector<Rational>& acc, const SparseVec& v, const Rational& scale) {
  for (const auto& t : v) acc[t.index] += scale * t.coeff;
}

SparseVec to_sparse(const QMatrix& column) {
  SparseVec v;
  for (std::size_t k = 0; k < column.rows(); ++k)
    if (column(k, 0) != 0) v.push_back({static_cast<int>(k), column(k, 0)});
  return v;
}

SparseVec to_sparse(const std::vector<Rational>& dense) {
  SparseVec v;
  for (std::size_t k = 0; k < dense.size(); ++k)
    if (dense[k] != 0) v.push_back({static_cast<int>(k), dense[k]});
  return v;
}

SparseVec negated(const SparseVec& v) {
  SparseVec out = v;
  for (auto& t : out) t.coeff = -t.coeff;
  return out;
}

// <A,B> = 1/2 Re tr(A^* B); exact for matrices with dyadic entries.
double matrix_inner(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return 0.5 * (a.adjoint() * b).trace().real();
}

std::string pair_label(const char* prefix, int i, int j) {
  return std::string(prefix) + std::to_string(i) + std::to_string(j);
}

}  // namespace

LieAlgebraModel::LieAlgebraModel(std::string name, std::vector<std::string> labels, Table brackets,
                                 QMatrix inner_product, std::vector<Eigen::MatrixXcd> realization)
    : name_(std::move(name)),
      labels_(std::move(labels)),
      brackets_(std::move(brackets)),
      inner_product_(std::move(inner_product)),
      realization_(std::move(realization)) {
  const std::size_t d = labels_.size();
  if (brackets_.size() != d) throw Error(ErrorKind::InvalidArgument, "bracket table has wrong size");
  for (const auto& row : brackets_)
    if (row.size() != d) throw Error(ErrorKind::InvalidArgument, "bracket table has wrong size");
  if (inner_product_.rows() != d || inner_product_.cols() != d)
    throw Error(ErrorKind::InvalidArgument, "inner product has wrong size");
  if (!realization_.empty() && realization_.size() != d)
    throw Error(ErrorKind::InvalidArgument, "realization has wrong size");
}

Rational LieAlgebraModel::structure_constant(int i, int j, int k) const {
  for (const auto& t : brackets_[i][j])
    if (t.index == k) return t.coeff;
  return 0;
}

QMatrix LieAlgebraModel::bracket(const QMatrix& x, const QMatrix& y) const {
  std::vector<Rational> acc(dim());
  for (int i = 0; i < dim(); ++i) {
    if (x(i, 0) == 0) continue;
    for (int j = 0; j < dim(); ++j) {
      if (y(j, 0) == 0) continue;
      add_to(acc, brackets_[i][j], x(i, 0) * y(j, 0));
    }
  }
  return QMatrix::column(acc);
}

Eigen::VectorXd LieAlgebraModel::bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim());
  for (int i = 0; i < dim(); ++i) {
    if (x[i] == 0.0) continue;
    for (int j = 0; j < dim(); ++j) {
      if (y[j] == 0.0) continue;
      for (const auto& t : brackets_[i][j]) out[t.index] += x[i] * y[j] * to_double(t.coeff);
    }
  }
  return out;
}

QMatrix LieAlgebraModel::ad(int i) const {
  QMatrix m(dim(), dim());
  for (int j = 0; j < dim(); ++j)
    for (const auto& t : brackets_[i][j]) m(t.index, j) = t.coeff;
  return m;
}

QMatrix LieAlgebraModel::killing_form() const {
  QMatrix k(dim(), dim());
  // (ad_i ad_j)_{mm} = sum_l c_il^m c_jm^l
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) {
      Rational sum = 0;
      for (int m = 0; m < dim(); ++m)
        for (const auto& t : brackets_[j][m]) sum += t.coeff * structure_constant(i, t.index, m);
      k(i, j) = sum;
    }
  return k;
}

LieAlgebraModel LieAlgebraModel::renamed(std::string name) const {
  LieAlgebraModel copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

LieAlgebraModel LieAlgebraModel::with_structure_constant(int i, int j, int k, const Rational& value,
                                                         bool one_sided) const {
  LieAlgebraModel copy = *this;
  auto set = [&](int a, int b, const Rational& v) {
    std::vector<Rational> dense(dim());
    add_to(dense, copy.brackets_[a][b], 1);
    dense[k] = v;
    copy.brackets_[a][b] = to_sparse(dense);
  };
  set(i, j, value);
  if (!one_sided) set(j, i, -value);
  return copy;
}

// ---------------------------------------------------------------------------

ValidationReport validate(const LieAlgebraModel& alg) {
  ValidationReport report;
  const int d = alg.dim();

  for (int i = 0; i < d && report.antisymmetry.pass; ++i)
    for (int j = i; j < d && report.antisymmetry.pass; ++j)
      for (int k = 0; k < d; ++k)
        if (alg.structure_constant(i, j, k) != -alg.structure_constant(j, i, k)) {
          report.antisymmetry = {false, std::array{i, j, k}, "c_ij^k != -c_ji^k"};
          break;
        }

  for (int i = 0; i < d && report.jacobi.pass; ++i)
    for (int j = i + 1; j < d && report.jacobi.pass; ++j)
      for (int k = j + 1; k < d; ++k) {
        // [X_i,[X_j,X_k]] + [X_j,[X_k,X_i]] + [X_k,[X_i,X_j]]
        std::vector<Rational> acc(d);
        auto nested = [&](int a, int b, int c) {
          for (const auto& t : alg.bracket_of_basis(b, c)) add_to(acc, alg.bracket_of_basis(a, t.index), t.coeff);
        };
        nested(i, j, k);
        nested(j, k, i);
        nested(k, i, j);
        bool zero = true;
        for (const auto& q : acc) zero = zero && q == 0;
        if (!zero) {
          report.jacobi = {false, std::array{i, j, k}, "Jacobi sum nonzero"};
          break;
        }
      }

  const QMatrix& g = alg.inner_product();
  for (int i = 0; i < d && report.invariance.pass; ++i)
    for (int j = 0; j < d && report.invariance.pass; ++j)
      for (int k = j; k < d; ++k) {
        // <[X_i,X_j],X_k> + <X_j,[X_i,X_k]>
        Rational s = 0;
        for (const auto& t : alg.bracket_of_basis(i, j)) s += t.coeff * g(t.index, k);
        for (const auto& t : alg.bracket_of_basis(i, k)) s += t.coeff * g(j, t.index);
        if (s != 0) {
          report.invariance = {false, std::array{i, j, k}, "inner product not ad-invariant"};
          break;
        }
      }

  // Symmetric elimination: positive definite iff every pivot is positive.
  bool symmetric = true;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) symmetric = symmetric && g(i, j) == g(j, i);
  if (!symmetric) {
    report.inner_product_positive = {false, std::nullopt, "inner product not symmetric"};
  } else {
    QMatrix work = g;
    for (int p = 0; p < d; ++p) {
      if (work(p, p) <= 0) {
        report.inner_product_positive = {false, std::array{p, p, p}, "nonpositive pivot"};
        break;
      }
      for (int r = p + 1; r < d; ++r) {
        if (work(r, p) == 0) continue;
        Rational f = work(r, p) / work(p, p);
        for (int c = p; c < d; ++c) work(r, c) -= f * work(p, c);
      }
    }
  }
  return report;
}

CheckResult check_realization(const LieAlgebraModel& alg) {
  if (!alg.has_realization()) return {true, std::nullopt, "no realization"};
  const auto& mats = alg.realization();
  const int d = alg.dim();
  QMatrix gram(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) gram(i, j) = Rational(matrix_inner(mats[i], mats[j]));
  if (!(gram == alg.inner_product())) return {false, std::nullopt, "inner product differs from realization"};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Eigen::MatrixXcd c = mats[i] * mats[j] - mats[j] * mats[i];
      QMatrix coeffs(d, 1);
      for (const auto& t : alg.bracket_of_basis(i, j)) coeffs(t.index, 0) = t.coeff;
      // <X_k, C> must equal (G c)_k, and |C|^2 = c^T G c pins C inside the span.
      QMatrix gc = gram * coeffs;
      for (int k = 0; k < d; ++k)
        if (Rational(matrix_inner(mats[k], c)) != gc(k, 0))
          return {false, std::array{i, j, k}, "bracket component mismatch"};
      if (Rational(matrix_inner(c, c)) != (coeffs.transpose() * gc)(0, 0))
        return {false, std::array{i, j, -1}, "commutator leaves the span"};
    }
  return {};
}

LieAlgebraModel algebra_from_matrices(std::string name, std::vector<std::string> labels,
                                      std::vector<Eigen::MatrixXcd> matrices) {
  const int d = static_cast<int>(matrices.size());
  if (static_cast<int>(labels.size()) != d) throw Error(ErrorKind::InvalidArgument, "label count mismatch");
  QMatrix gram(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) gram(i, j) = Rational(matrix_inner(matrices[i], matrices[j]));
  auto gram_inv = inverse(gram);
  if (!gram_inv) throw Error(ErrorKind::InvalidArgument, "matrices are linearly dependent");

  Table table(d, std::vector<SparseVec>(d));
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      Eigen::MatrixXcd c = matrices[i] * matrices[j] - matrices[j] * matrices[i];
      QMatrix rhs(d, 1);
      for (int k = 0; k < d; ++k) rhs(k, 0) = Rational(matrix_inner(matrices[k], c));
      QMatrix coeffs = *gram_inv * rhs;
      if (Rational(matrix_inner(c, c)) != (coeffs.transpose() * rhs)(0, 0))
        throw Error(ErrorKind::InvalidArgument, "matrices are not closed under the commutator");
      table[i][j] = to_sparse(coeffs);
      table[j][i] = negated(table[i][j]);
    }
  return LieAlgebraModel(std::move(name), std::move(labels), std::move(table), std::move(gram),
                         std::move(matrices));
}

LieAlgebraModel make_so(int n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "so(n) needs n >= 2");
  std::vector<Eigen::MatrixXcd> mats;
  std::vector<std::string> labels;
  for (auto [i, j] : bivector_pairs(n)) {
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(n, n);
    e(j, i) = 1.0;
    e(i, j) = -1.0;
    mats.push_back(std::move(e));
    labels.push_back(pair_label("E", i, j));
  }
  return algebra_from_matrices("so(" + std::to_string(n) + ")", std::move(labels), std::move(mats));
}

namespace {

void push_offdiagonal(int n, std::vector<Eigen::MatrixXcd>& mats, std::vector<std::string>& labels) {
  const std::complex<double> I(0.0, 1.0);
  for (auto [i, j] : bivector_pairs(n)) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
    a(j, i) = 1.0;
    a(i, j) = -1.0;
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(n, n);
    s(i, j) = I;
    s(j, i) = I;
    mats.push_back(std::move(a));
    labels.push_back(pair_label("A", i, j));
    mats.push_back(std::move(s));
    labels.push_back(pair_label("S", i, j));
  }
}

}  // namespace

LieAlgebraModel make_su(int n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "su(n) needs n >= 2");
  std::vector<Eigen::MatrixXcd> mats;
  std::vector<std::string> labels;
  push_offdiagonal(n, mats, labels);
  for (int k = 0; k + 1 < n; ++k) {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
    h(k, k) = std::complex<double>(0.0, 1.0);
    h(k + 1, k + 1) = std::complex<double>(0.0, -1.0);
    mats.push_back(std::move(h));
    labels.push_back("H" + std::to_string(k));
  }
  return algebra_from_matrices("su(" + std::to_string(n) + ")", std::move(labels), std::move(mats));
}

LieAlgebraModel make_u(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "u(n) needs n >= 1");
  std::vector<Eigen::MatrixXcd> mats;
  std::vector<std::string> labels;
  push_offdiagonal(n, mats, labels);
  for (int k = 0; k < n; ++k) {
    Eigen::MatrixXcd dk = Eigen::MatrixXcd::Zero(n, n);
    dk(k, k) = std::complex<double>(0.0, 1.0);
    mats.push_back(std::move(dk));
    labels.push_back("D" + std::to_string(k));
  }
  return algebra_from_matrices("u(" + std::to_string(n) + ")", std::move(labels), std::move(mats));
}

LieAlgebraModel make_abelian(int k, std::string name) {
  if (k < 0) throw Error(ErrorKind::InvalidArgument, "negative dimension");
  std::vector<std::string> labels;
  for (int i = 0; i < k; ++i) labels.push_back("T" + std::to_string(i));
  if (name.empty()) name = "R" + std::to_string(k);
  return LieAlgebraModel(std::move(name), std::move(labels), Table(k, std::vector<SparseVec>(k)),
                         QMatrix::identity(k));
}

LieAlgebraModel product_algebra(const LieAlgebraModel& a, const LieAlgebraModel& b) {
  const int da = a.dim();
  const int db = b.dim();
  const int d = da + db;
  std::set<std::string> seen(a.labels().begin(), a.labels().end());
  bool collide = false;
  for (const auto& l : b.labels()) collide = collide || seen.count(l) > 0;

  std::vector<std::string> labels;
  for (const auto& l : a.labels()) labels.push_back(collide ? l + "_1" : l);
  for (const auto& l : b.labels()) labels.push_back(collide ? l + "_2" : l);

  Table table(d, std::vector<SparseVec>(d));
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j) table[i][j] = a.bracket_of_basis(i, j);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j) {
      SparseVec v = b.bracket_of_basis(i, j);
      for (auto& t : v) t.index += da;
      table[da + i][da + j] = std::move(v);
    }

  QMatrix g(d, d);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j) g(i, j) = a.inner_product()(i, j);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j) g(da + i, da + j) = b.inner_product()(i, j);

  std::vector<Eigen::MatrixXcd> realization;
  if ((a.has_realization() || da == 0) && (b.has_realization() || db == 0) && d > 0) {
    const Eigen::Index na = da ? a.realization()[0].rows() : 0;
    const Eigen::Index nb = db ? b.realization()[0].rows() : 0;
    for (int i = 0; i < da; ++i) {
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(na + nb, na + nb);
      m.topLeftCorner(na, na) = a.realization()[i];
      realization.push_back(std::move(m));
    }
    for (int i = 0; i < db; ++i) {
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(na + nb, na + nb);
      m.bottomRightCorner(nb, nb) = b.realization()[i];
      realization.push_back(std::move(m));
    }
  }
  std::string name = da == 0 ? b.name() : db == 0 ? a.name() : a.name() + "×" + b.name();
  return LieAlgebraModel(std::move(name), std::move(labels), std::move(table), std::move(g),
                         std::move(realization));
}

LieAlgebraModel subalgebra(const LieAlgebraModel& alg, const std::vector<int>& indices, std::string name) {
  const int d = static_cast<int>(indices.size());
  std::vector<int> position(alg.dim(), -1);
  for (int a = 0; a < d; ++a) {
    if (indices[a] < 0 || indices[a] >= alg.dim() || position[indices[a]] >= 0)
      throw Error(ErrorKind::InvalidArgument, "bad subalgebra index list");
    position[indices[a]] = a;
  }
  Table table(d, std::vector<SparseVec>(d));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      SparseVec v;
      for (const auto& t : alg.bracket_of_basis(indices[a], indices[b])) {
        if (position[t.index] < 0)
          throw Error(ErrorKind::InvalidArgument,
                      "[" + alg.labels()[indices[a]] + "," + alg.labels()[indices[b]] + "] leaves the subspace");
        v.push_back({position[t.index], t.coeff});
      }
      table[a][b] = std::move(v);
    }
  QMatrix g(d, d);
  std::vector<std::string> labels;
  std::vector<Eigen::MatrixXcd> realization;
  for (int a = 0; a < d; ++a) {
    labels.push_back(alg.labels()[indices[a]]);
    if (alg.has_realization()) realization.push_back(alg.realization()[indices[a]]);
    for (int b = 0; b < d; ++b) g(a, b) = alg.inner_product()(indices[a], indices[b]);
  }
  return LieAlgebraModel(std::move(name), std::move(labels), std::move(table), std::move(g),
                         std::move(realization));
}

bool same_structure(const LieAlgebraModel& a, const LieAlgebraModel& b) {
  if (a.dim() != b.dim()) return false;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      for (int k = 0; k < a.dim(); ++k)
        if (a.structure_constant(i, j, k) != b.structure_constant(i, j, k)) return false;
  return true;
}

}  // namespace symcurv
