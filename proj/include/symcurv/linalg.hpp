#pragma once

// Small dense linear algebra in two arithmetic modes.
//
// Exact mode (QMatrix) carries structure constants, brackets and the rank
// computations behind Condition A. Float mode (Eigen doubles) carries spectra,
// representation matrices and everything downstream of an eigensolver.
//
// Bivectors on R^n are stored as coefficient vectors over e_i ^ e_j, i < j, in
// lexicographic order. The identification with skew matrices is
//   (u ^ v)(w) = <u,w> v - <v,w> u,
// so e_i ^ e_j is the matrix with entry (j,i) = +1 and (i,j) = -1.

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace symcurv {

using Rational = boost::multiprecision::cpp_rational;

double to_double(const Rational& q);

class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static QMatrix identity(std::size_t n);
  static QMatrix column(const std::vector<Rational>& values);
  /// Exact conversion; every double is a dyadic rational.
  static QMatrix from_double(const Eigen::MatrixXd& m);
  static QMatrix hcat(const std::vector<QMatrix>& blocks);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  QMatrix col(std::size_t c) const;
  QMatrix transpose() const;
  bool is_zero() const;
  Eigen::MatrixXd to_double() const;

  friend QMatrix operator+(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator-(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  // Defined inline so only argument-dependent lookup finds it; a namespace
  // scope overload makes Boost probe Eigen expressions for convertibility.
  friend QMatrix operator*(const Rational& s, const QMatrix& a) {
    QMatrix m = a;
    for (auto& q : m.data_) q *= s;
    return m;
  }
  friend bool operator==(const QMatrix& a, const QMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

std::size_t rank(const QMatrix& m);
/// Basis of {x : m x = 0}, one column per basis vector.
QMatrix nullspace(const QMatrix& m);
/// Pivot columns of m, i.e. a basis of its column space drawn from m itself.
QMatrix column_space(const QMatrix& m);
std::optional<QMatrix> inverse(const QMatrix& m);

// ---------------------------------------------------------------------------
// Lambda^2(R^n) <-> so(n)

std::size_t bivector_dim(int n);
std::size_t pair_index(int n, int i, int j);
const std::vector<std::pair<int, int>>& bivector_pairs(int n);

Eigen::MatrixXd skew_from_coeffs(const Eigen::VectorXd& coeffs, int n);
Eigen::VectorXd coeffs_from_skew(const Eigen::MatrixXd& a);
QMatrix skew_from_coeffs(const QMatrix& coeffs, int n);
QMatrix coeffs_from_skew(const QMatrix& a);

/// <A,B> = 1/2 tr(A^T B)
double skew_inner(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// [A,B] of two bivectors, computed through the skew-matrix commutator.
Eigen::VectorXd bivector_bracket(const Eigen::VectorXd& a, const Eigen::VectorXd& b, int n);
QMatrix bivector_bracket(const QMatrix& a, const QMatrix& b, int n);

class SkewMatrix {
 public:
  /// Throws NotSkew when max |A + A^T| exceeds eps().
  static SkewMatrix from_matrix(const Eigen::MatrixXd& a);
  static SkewMatrix zero(int n);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& matrix() const { return m_; }
  Eigen::VectorXd apply(const Eigen::VectorXd& w) const { return m_ * w; }

 private:
  explicit SkewMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {}
  Eigen::MatrixXd m_;
};

class Bivector {
 public:
  Bivector(int n, Eigen::VectorXd coeffs);
  static Bivector basis(int n, int i, int j);
  /// u ^ v
  static Bivector wedge(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

  int dim() const { return n_; }
  const Eigen::VectorXd& coeffs() const { return coeffs_; }
  double norm() const { return coeffs_.norm(); }

 private:
  int n_;
  Eigen::VectorXd coeffs_;
};

SkewMatrix bivector_to_skew(const Bivector& b);
Bivector skew_to_bivector(const SkewMatrix& a);

// ---------------------------------------------------------------------------
// Self-adjoint operators and clustered spectra

struct EigenCluster {
  double value = 0.0;
  Eigen::MatrixXd basis;  // orthonormal columns spanning the eigenspace

  int multiplicity() const { return static_cast<int>(basis.cols()); }
  Eigen::MatrixXd projector() const { return basis * basis.transpose(); }
};

struct EigenDecomposition {
  /// Ascending by eigenvalue; includes the zero cluster when present.
  std::vector<EigenCluster> clusters;
  Eigen::MatrixXd kernel;

  int dim() const;
  /// Orthonormal basis of the sum of nonzero eigenspaces.
  Eigen::MatrixXd image() const;
  Eigen::MatrixXd reconstruct() const;
  const EigenCluster* find(double value) const;
};

class SymmetricOperator {
 public:
  /// Throws NotSymmetric when max |A - A^T| exceeds eps().
  explicit SymmetricOperator(Eigen::MatrixXd matrix);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  const EigenDecomposition& eigen() const { return eigen_; }

 private:
  Eigen::MatrixXd matrix_;
  EigenDecomposition eigen_;
};

EigenDecomposition eig_sym(const SymmetricOperator& op);

/// The unique x in Im(op) with op x = y. Throws NotInImage when y has a
/// component of norm > eps() orthogonal to the image.
Eigen::VectorXd solve_on_image(const SymmetricOperator& op, const Eigen::VectorXd& y);

}  // namespace symcurv
