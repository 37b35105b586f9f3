#include "symcurv/linalg.hpp"

#include "symcurv/errors.hpp"
#include "symcurv/tolerance.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>

namespace symcurv {

double to_double(const Rational& q) { return q.convert_to<double>(); }

// ---------------------------------------------------------------------------
// QMatrix

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::column(const std::vector<Rational>& values) {
  QMatrix m(values.size(), 1);
  for (std::size_t i = 0; i < values.size(); ++i) m(i, 0) = values[i];
  return m;
}

QMatrix QMatrix::from_double(const Eigen::MatrixXd& a) {
  QMatrix m(a.rows(), a.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c) m(r, c) = Rational(a(r, c));
  return m;
}

QMatrix QMatrix::hcat(const std::vector<QMatrix>& blocks) {
  if (blocks.empty()) return {};
  std::size_t rows = blocks.front().rows();
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != rows) throw Error(ErrorKind::InvalidArgument, "hcat: row mismatch");
    cols += b.cols();
  }
  QMatrix m(rows, cols);
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) m(r, offset + c) = b(r, c);
    offset += b.cols();
  }
  return m;
}

QMatrix QMatrix::col(std::size_t c) const {
  QMatrix m(rows_, 1);
  for (std::size_t r = 0; r < rows_; ++r) m(r, 0) = (*this)(r, c);
  return m;
}

QMatrix QMatrix::transpose() const {
  QMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
  return m;
}

bool QMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return q == 0; });
}

Eigen::MatrixXd QMatrix::to_double() const {
  Eigen::MatrixXd m(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(r, c) = symcurv::to_double((*this)(r, c));
  return m;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::InvalidArgument, "QMatrix +: shape");
  QMatrix m = a;
  for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] += b.data_[i];
  return m;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::InvalidArgument, "QMatrix -: shape");
  QMatrix m = a;
  for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] -= b.data_[i];
  return m;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::InvalidArgument, "QMatrix *: shape");
  QMatrix m(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (b(k, j) != 0) m(i, j) += aik * b(k, j);
    }
  return m;
}

bool operator==(const QMatrix& a, const QMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(QMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(p, c), m(row, c));
    Rational inv = 1 / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      Rational f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        if (m(row, c) != 0) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const QMatrix& m) {
  QMatrix work = m;
  return rref(work).size();
}

QMatrix nullspace(const QMatrix& m) {
  QMatrix work = m;
  auto pivots = rref(work);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<QMatrix> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    QMatrix v(m.cols(), 1);
    v(free, 0) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v(pivots[r], 0) = -work(r, free);
    basis.push_back(std::move(v));
  }
  if (basis.empty()) return QMatrix(m.cols(), 0);
  return QMatrix::hcat(basis);
}

QMatrix column_space(const QMatrix& m) {
  QMatrix work = m;
  auto pivots = rref(work);
  if (pivots.empty()) return QMatrix(m.rows(), 0);
  std::vector<QMatrix> cols;
  for (auto p : pivots) cols.push_back(m.col(p));
  return QMatrix::hcat(cols);
}

std::optional<QMatrix> inverse(const QMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  QMatrix aug = QMatrix::hcat({m, QMatrix::identity(n)});
  auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  QMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
  return inv;
}

// ---------------------------------------------------------------------------
// Bivectors

std::size_t bivector_dim(int n) { return n < 2 ? 0 : static_cast<std::size_t>(n * (n - 1) / 2); }

std::size_t pair_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  return static_cast<std::size_t>(i * n - i * (i + 1) / 2 + (j - i - 1));
}

const std::vector<std::pair<int, int>>& bivector_pairs(int n) {
  static std::mutex mutex;
  static std::map<int, std::vector<std::pair<int, int>>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  return cache.emplace(n, std::move(pairs)).first->second;
}

Eigen::MatrixXd skew_from_coeffs(const Eigen::VectorXd& coeffs, int n) {
  if (static_cast<std::size_t>(coeffs.size()) != bivector_dim(n))
    throw Error(ErrorKind::InvalidArgument, "bivector length mismatch");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  std::size_t k = 0;
  for (auto [i, j] : bivector_pairs(n)) {
    a(j, i) += coeffs[k];
    a(i, j) -= coeffs[k];
    ++k;
  }
  return a;
}

Eigen::VectorXd coeffs_from_skew(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  Eigen::VectorXd coeffs(bivector_dim(n));
  std::size_t k = 0;
  for (auto [i, j] : bivector_pairs(n)) coeffs[k++] = 0.5 * (a(j, i) - a(i, j));
  return coeffs;
}

QMatrix skew_from_coeffs(const QMatrix& coeffs, int n) {
  if (coeffs.rows() != bivector_dim(n) || coeffs.cols() != 1)
    throw Error(ErrorKind::InvalidArgument, "bivector length mismatch");
  QMatrix a(n, n);
  std::size_t k = 0;
  for (auto [i, j] : bivector_pairs(n)) {
    a(j, i) += coeffs(k, 0);
    a(i, j) -= coeffs(k, 0);
    ++k;
  }
  return a;
}

QMatrix coeffs_from_skew(const QMatrix& a) {
  const int n = static_cast<int>(a.rows());
  QMatrix coeffs(bivector_dim(n), 1);
  std::size_t k = 0;
  for (auto [i, j] : bivector_pairs(n)) coeffs(k++, 0) = (a(j, i) - a(i, j)) / 2;
  return coeffs;
}

double skew_inner(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return 0.5 * (a.transpose() * b).trace();
}

Eigen::VectorXd bivector_bracket(const Eigen::VectorXd& a, const Eigen::VectorXd& b, int n) {
  Eigen::MatrixXd sa = skew_from_coeffs(a, n);
  Eigen::MatrixXd sb = skew_from_coeffs(b, n);
  return coeffs_from_skew(sa * sb - sb * sa);
}

QMatrix bivector_bracket(const QMatrix& a, const QMatrix& b, int n) {
  QMatrix sa = skew_from_coeffs(a, n);
  QMatrix sb = skew_from_coeffs(b, n);
  return coeffs_from_skew(sa * sb - sb * sa);
}

SkewMatrix SkewMatrix::from_matrix(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::NotSkew, "matrix is not square");
  double residual = a.size() == 0 ? 0.0 : (a + a.transpose()).cwiseAbs().maxCoeff();
  if (residual > eps())
    throw Error(ErrorKind::NotSkew, "symmetry residual " + std::to_string(residual));
  return SkewMatrix(0.5 * (a - a.transpose()));
}

SkewMatrix SkewMatrix::zero(int n) { return SkewMatrix(Eigen::MatrixXd::Zero(n, n)); }

Bivector::Bivector(int n, Eigen::VectorXd coeffs) : n_(n), coeffs_(std::move(coeffs)) {
  if (static_cast<std::size_t>(coeffs_.size()) != bivector_dim(n))
    throw Error(ErrorKind::InvalidArgument, "bivector length mismatch");
}

Bivector Bivector::basis(int n, int i, int j) {
  if (i == j || i < 0 || j < 0 || i >= n || j >= n)
    throw Error(ErrorKind::InvalidArgument, "bad bivector basis index");
  Eigen::VectorXd c = Eigen::VectorXd::Zero(bivector_dim(n));
  c[pair_index(n, i, j)] = i < j ? 1.0 : -1.0;
  return Bivector(n, std::move(c));
}

Bivector Bivector::wedge(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  const int n = static_cast<int>(u.size());
  Eigen::VectorXd c(bivector_dim(n));
  std::size_t k = 0;
  for (auto [i, j] : bivector_pairs(n)) c[k++] = u[i] * v[j] - u[j] * v[i];
  return Bivector(n, std::move(c));
}

SkewMatrix bivector_to_skew(const Bivector& b) {
  return SkewMatrix::from_matrix(skew_from_coeffs(b.coeffs(), b.dim()));
}

Bivector skew_to_bivector(const SkewMatrix& a) {
  return Bivector(a.dim(), coeffs_from_skew(a.matrix()));
}

// ---------------------------------------------------------------------------
// Spectra

int EigenDecomposition::dim() const {
  int d = 0;
  for (const auto& c : clusters) d += c.multiplicity();
  return d;
}

Eigen::MatrixXd EigenDecomposition::image() const {
  int cols = 0;
  for (const auto& c : clusters)
    if (c.value != 0.0) cols += c.multiplicity();
  Eigen::MatrixXd basis(dim(), cols);
  int offset = 0;
  for (const auto& c : clusters) {
    if (c.value == 0.0) continue;
    basis.middleCols(offset, c.multiplicity()) = c.basis;
    offset += c.multiplicity();
  }
  return basis;
}

Eigen::MatrixXd EigenDecomposition::reconstruct() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim(), dim());
  for (const auto& c : clusters) m += c.value * c.projector();
  return m;
}

const EigenCluster* EigenDecomposition::find(double value) const {
  for (const auto& c : clusters)
    if (std::abs(c.value - value) <= cluster_gap()) return &c;
  return nullptr;
}

namespace {

EigenDecomposition decompose(const Eigen::MatrixXd& m) {
  EigenDecomposition out;
  const Eigen::Index n = m.rows();
  out.kernel = Eigen::MatrixXd(n, 0);
  if (n == 0) return out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  const Eigen::VectorXd& values = solver.eigenvalues();
  const Eigen::MatrixXd& vectors = solver.eigenvectors();
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && values[end] - values[end - 1] <= cluster_gap()) ++end;
    EigenCluster cluster;
    cluster.value = values.segment(start, end - start).mean();
    if (std::abs(cluster.value) <= cluster_gap()) cluster.value = 0.0;
    cluster.basis = vectors.middleCols(start, end - start);
    if (cluster.value == 0.0) out.kernel = cluster.basis;
    out.clusters.push_back(std::move(cluster));
    start = end;
  }
  return out;
}

}  // namespace

SymmetricOperator::SymmetricOperator(Eigen::MatrixXd matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) throw Error(ErrorKind::NotSymmetric, "matrix is not square");
  double residual = matrix_.size() == 0 ? 0.0 : (matrix_ - matrix_.transpose()).cwiseAbs().maxCoeff();
  if (residual > eps())
    throw Error(ErrorKind::NotSymmetric, "symmetry residual " + std::to_string(residual));
  matrix_ = 0.5 * (matrix_ + matrix_.transpose());
  eigen_ = decompose(matrix_);
}

EigenDecomposition eig_sym(const SymmetricOperator& op) { return op.eigen(); }

Eigen::VectorXd solve_on_image(const SymmetricOperator& op, const Eigen::VectorXd& y) {
  if (y.size() != op.dim()) throw Error(ErrorKind::InvalidArgument, "solve_on_image: size mismatch");
  Eigen::VectorXd x = Eigen::VectorXd::Zero(op.dim());
  Eigen::VectorXd in_image = Eigen::VectorXd::Zero(op.dim());
  for (const auto& c : op.eigen().clusters) {
    if (c.value == 0.0) continue;
    Eigen::VectorXd part = c.basis * (c.basis.transpose() * y);
    in_image += part;
    x += part / c.value;
  }
  double residual = (y - in_image).norm();
  if (residual > eps())
    throw Error(ErrorKind::NotInImage, "residual " + std::to_string(residual));
  return x;
}

}  // namespace symcurv
