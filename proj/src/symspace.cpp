#include "symcurv/symspace.hpp"

#include "symcurv/errors.hpp"
#include "symcurv/tolerance.hpp"

#include <algorithm>
#include <cmath>
#include <regex>

namespace symcurv {

namespace {

bool positive_definite(QMatrix m) {
  const std::size_t n = m.rows();
  for (std::size_t k = 0; k < n; ++k) {
    if (m(k, k) <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m(i, k) == 0) continue;
      const Rational f = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return true;
}

std::optional<Rational> scalar_multiple_of_identity(const QMatrix& m) {
  if (m.rows() == 0) return Rational(1);
  const Rational c = m(0, 0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != (i == j ? c : Rational(0))) return std::nullopt;
  return c;
}

}  // namespace

SymmetricSpaceModel::SymmetricSpaceModel(LieAlgebraModel g, std::vector<int> h_indices, QMatrix metric_m,
                                         std::string name, int flat_dim,
                                         std::optional<Eigen::MatrixXd> complex_structure)
    : name_(std::move(name)),
      h_indices_(std::move(h_indices)),
      metric_m_(std::move(metric_m)),
      flat_dim_(flat_dim),
      complex_structure_(std::move(complex_structure)) {
  const int d = g.dim();
  // position: >= 0 index into h, <= -1 encodes -(index into m) - 1
  std::vector<int> position(d, 0);
  std::vector<bool> in_h(d, false);
  for (int i : h_indices_) {
    if (i < 0 || i >= d || in_h[i]) throw Error(ErrorKind::InvalidArgument, "h_indices must be distinct basis indices");
    in_h[i] = true;
  }
  for (int i = 0; i < d; ++i)
    if (!in_h[i]) m_indices_.push_back(i);
  for (std::size_t a = 0; a < h_indices_.size(); ++a) position[h_indices_[a]] = static_cast<int>(a);
  for (std::size_t a = 0; a < m_indices_.size(); ++a) position[m_indices_[a]] = -static_cast<int>(a) - 1;

  const auto& labels = g.labels();
  auto fail = [&](const char* rel, int i, int j) {
    throw Error(ErrorKind::NotCartanPair,
                std::string(rel) + " violated by [" + labels[i] + "," + labels[j] + "]");
  };
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (const auto& t : g.bracket_of_basis(i, j)) {
        const bool target_h = in_h[t.index];
        if (in_h[i] && in_h[j] && !target_h) fail("[h,h] in h", i, j);
        if (in_h[i] != in_h[j] && target_h) fail("[h,m] in m", i, j);
        if (!in_h[i] && !in_h[j] && !target_h) fail("[m,m] in h", i, j);
      }

  const int n = m_dim();
  if (metric_m_.rows() != static_cast<std::size_t>(n) || metric_m_.cols() != static_cast<std::size_t>(n))
    throw Error(ErrorKind::InvalidArgument, "metric has wrong size");
  if (!(metric_m_ == metric_m_.transpose()) || !positive_definite(metric_m_))
    throw Error(ErrorKind::InvalidArgument, "metric must be symmetric positive definite");

  // ad_H on m in the m basis, exact
  std::vector<QMatrix> ad_m;
  for (int hk : h_indices_) {
    QMatrix a(n, n);
    for (int b = 0; b < n; ++b)
      for (const auto& t : g.bracket_of_basis(hk, m_indices_[b])) a(-position[t.index] - 1, b) = t.coeff;
    QMatrix inv = a.transpose() * metric_m_ + metric_m_ * a;
    if (!inv.is_zero()) {
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (inv(x, y) != 0)
            throw Error(ErrorKind::MetricNotInvariant, "metric not invariant under " + labels[hk] + " on (" +
                                                           labels[m_indices_[x]] + "," + labels[m_indices_[y]] + ")");
    }
    ad_m.push_back(std::move(a));
  }

  metric_scale_ = scalar_multiple_of_identity(metric_m_);
  if (metric_scale_) {
    frame_ = Eigen::MatrixXd::Identity(n, n) / std::sqrt(to_double(*metric_scale_));
    for (auto& a : ad_m) {
      isotropy_.push_back(a.to_double());
      isotropy_exact_.push_back(std::move(a));
    }
  } else {
    const Eigen::LLT<Eigen::MatrixXd> llt(metric_m_.to_double());
    const Eigen::MatrixXd l = llt.matrixL();
    frame_ = l.transpose().triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(n, n));
    const Eigen::MatrixXd frame_inv = l.transpose();
    for (const auto& a : ad_m) isotropy_.push_back(frame_inv * a.to_double() * frame_);
  }

  h_ = std::make_shared<const LieAlgebraModel>(subalgebra(g, h_indices_, "h(" + name_ + ")"));
  g_ = std::make_shared<const LieAlgebraModel>(std::move(g));

  if (complex_structure_) {
    const auto& j = *complex_structure_;
    if (j.rows() != n || j.cols() != n) throw Error(ErrorKind::InvalidArgument, "complex structure has wrong size");
    const double tol = 10 * eps();
    if ((j * j + Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() > tol)
      throw Error(ErrorKind::InvalidArgument, "complex structure must square to -1");
    for (const auto& a : isotropy_)
      if ((j * a - a * j).cwiseAbs().maxCoeff() > tol)
        throw Error(ErrorKind::InvalidArgument, "complex structure is not invariant under the isotropy");
  }
}

Eigen::VectorXd SymmetricSpaceModel::bracket_mm(int a, int b) const {
  const int n = m_dim();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(h_dim());
  std::vector<int> h_position(g_->dim(), -1);
  for (int k = 0; k < h_dim(); ++k) h_position[h_indices_[k]] = k;
  for (int c = 0; c < n; ++c) {
    if (frame_(c, a) == 0.0) continue;
    for (int e = 0; e < n; ++e) {
      const double w = frame_(c, a) * frame_(e, b);
      if (w == 0.0) continue;
      for (const auto& t : g_->bracket_of_basis(m_indices_[c], m_indices_[e]))
        out[h_position[t.index]] += w * to_double(t.coeff);
    }
  }
  return out;
}

QMatrix SymmetricSpaceModel::bracket_mm_exact(int a, int b) const {
  if (!exact()) throw Error(ErrorKind::InvalidArgument, "exact brackets need a scalar metric");
  QMatrix out(h_dim(), 1);
  for (const auto& t : g_->bracket_of_basis(m_indices_[a], m_indices_[b])) {
    const auto it = std::find(h_indices_.begin(), h_indices_.end(), t.index);
    out(static_cast<std::size_t>(it - h_indices_.begin()), 0) = t.coeff / *metric_scale_;
  }
  return out;
}

const QMatrix& SymmetricSpaceModel::isotropy_image_exact(int i) const {
  if (!exact()) throw Error(ErrorKind::InvalidArgument, "exact isotropy needs a scalar metric");
  return isotropy_exact_[i];
}

SymmetricSpaceModel SymmetricSpaceModel::renamed(std::string name) const {
  SymmetricSpaceModel copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

SymmetricSpaceModel SymmetricSpaceModel::rescaled(const Rational& factor) const {
  if (factor <= 0) throw Error(ErrorKind::InvalidArgument, "scale factor must be positive");
  return SymmetricSpaceModel(*g_, h_indices_, factor * metric_m_, name_, flat_dim_, complex_structure_);
}

SymmetricSpaceModel make_symmetric_space(LieAlgebraModel g, std::vector<int> h_indices, QMatrix metric,
                                         std::string name, int flat_dim) {
  return SymmetricSpaceModel(std::move(g), std::move(h_indices), std::move(metric), std::move(name), flat_dim);
}

// ---------------------------------------------------------------------------

CurvatureOperator curvature_operator(const SymmetricSpaceModel& space) {
  const int n = space.m_dim();
  const int nb = static_cast<int>(bivector_dim(n));
  const auto& pairs = bivector_pairs(n);
  CurvatureOperator out{n, SymmetricOperator(Eigen::MatrixXd::Zero(nb, nb)), std::nullopt};
  if (space.exact()) {
    QMatrix r(nb, nb);
    for (int p = 0; p < nb; ++p) {
      const QMatrix beta = space.bracket_mm_exact(pairs[p].first, pairs[p].second);
      QMatrix skew(n, n);
      for (int k = 0; k < space.h_dim(); ++k)
        if (beta(k, 0) != 0) skew = skew + beta(k, 0) * space.isotropy_image_exact(k);
      const QMatrix col = coeffs_from_skew(skew);
      for (int q = 0; q < nb; ++q) r(q, p) = col(q, 0);
    }
    if (!(r == r.transpose())) throw Error(ErrorKind::NotSymmetric, "curvature operator is not self-adjoint");
    out.op = SymmetricOperator(r.to_double());
    out.exact = std::move(r);
  } else {
    Eigen::MatrixXd r(nb, nb);
    for (int p = 0; p < nb; ++p) {
      const Eigen::VectorXd beta = space.bracket_mm(pairs[p].first, pairs[p].second);
      Eigen::MatrixXd skew = Eigen::MatrixXd::Zero(n, n);
      for (int k = 0; k < space.h_dim(); ++k) skew += beta[k] * space.isotropy_image(k);
      r.col(p) = coeffs_from_skew(skew);
    }
    out.op = SymmetricOperator(r);
  }
  return out;
}

AlgebraRep isotropy_rep(const SymmetricSpaceModel& space) {
  std::vector<Eigen::MatrixXd> images;
  for (int k = 0; k < space.h_dim(); ++k) images.push_back(space.isotropy_image(k));
  std::optional<Eigen::MatrixXd> j = space.complex_structure();
  AlgebraRep rep(space.h_ptr(), std::move(images), "tangent", j, std::nullopt, space.m_dim());
  if (homomorphism_residual(rep) > 10 * eps())
    throw Error(ErrorKind::NotHomomorphism, "isotropy representation of " + space.name());
  return rep;
}

Eigen::MatrixXd isotropy_bivectors(const SymmetricSpaceModel& space) {
  const int n = space.m_dim();
  Eigen::MatrixXd out(bivector_dim(n), space.h_dim());
  for (int k = 0; k < space.h_dim(); ++k) out.col(k) = coeffs_from_skew(space.isotropy_image(k));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

int float_rank(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > 1e3 * eps()) ++r;
  return r;
}

}  // namespace

ConditionAReport condition_a(const SymmetricSpaceModel& space) {
  const int n = space.m_dim();
  const auto curv = curvature_operator(space);
  ConditionAReport report;
  if (curv.exact) {
    const QMatrix& r = *curv.exact;
    const QMatrix ker = nullspace(r);
    const QMatrix img = column_space(r);
    report.exact = true;
    report.dim_kernel = static_cast<int>(ker.cols());
    report.dim_image = static_cast<int>(img.cols());
    std::vector<QMatrix> brackets;
    for (std::size_t a = 0; a < ker.cols(); ++a)
      for (std::size_t b = 0; b < img.cols(); ++b) {
        QMatrix br = bivector_bracket(ker.col(a), img.col(b), n);
        if (!(r * br).is_zero())
          throw Error(ErrorKind::ContainmentViolated, "[ker R, Im R] leaves ker R on " + space.name());
        brackets.push_back(std::move(br));
      }
    const QMatrix span = brackets.empty() ? QMatrix(r.rows(), 0) : QMatrix::hcat(brackets);
    report.dim_span_bracket = brackets.empty() ? 0 : static_cast<int>(rank(span));
    report.holds = report.dim_span_bracket == report.dim_kernel;
    if (!report.holds) {
      for (std::size_t a = 0; a < ker.cols(); ++a) {
        const QMatrix v = ker.col(a);
        const QMatrix ext = brackets.empty() ? v : QMatrix::hcat({span, v});
        if (static_cast<int>(rank(ext)) > report.dim_span_bracket) {
          report.witness = v.to_double();
          break;
        }
      }
    }
    return report;
  }

  const Eigen::MatrixXd ker = curv.kernel_basis();
  const Eigen::MatrixXd img = curv.image_basis();
  report.dim_kernel = static_cast<int>(ker.cols());
  report.dim_image = static_cast<int>(img.cols());
  Eigen::MatrixXd span(curv.matrix().rows(), ker.cols() * img.cols());
  int c = 0;
  for (Eigen::Index a = 0; a < ker.cols(); ++a)
    for (Eigen::Index b = 0; b < img.cols(); ++b) {
      const Eigen::VectorXd br = bivector_bracket(Eigen::VectorXd(ker.col(a)), Eigen::VectorXd(img.col(b)), n);
      if ((curv.apply(br)).norm() > 1e3 * eps())
        throw Error(ErrorKind::ContainmentViolated, "[ker R, Im R] leaves ker R on " + space.name());
      span.col(c++) = br;
    }
  report.dim_span_bracket = float_rank(span);
  report.holds = report.dim_span_bracket == report.dim_kernel;
  if (!report.holds)
    for (Eigen::Index a = 0; a < ker.cols(); ++a) {
      Eigen::MatrixXd ext(span.rows(), span.cols() + 1);
      ext << span, ker.col(a);
      if (float_rank(ext) > report.dim_span_bracket) {
        report.witness = ker.col(a);
        break;
      }
    }
  return report;
}

EigenspaceReport eigenspace_structure(const CurvatureOperator& curvature) {
  EigenspaceReport rep;
  const int n = curvature.m_dim;
  const auto& clusters = curvature.eigen().clusters;
  const Eigen::MatrixXd img = curvature.image_basis();
  auto bracket = [n](const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return bivector_bracket(a, b, n); };
  auto off = [](const Eigen::MatrixXd& basis, const Eigen::VectorXd& v) {
    return (v - basis * (basis.transpose() * v)).norm();
  };
  for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
    const auto& c = clusters[ci];
    if (c.value == 0.0) continue;
    for (int a = 0; a < c.multiplicity(); ++a) {
      const Eigen::VectorXd va = c.basis.col(a);
      for (int b = a + 1; b < c.multiplicity(); ++b)
        rep.subalgebra = std::max(rep.subalgebra, off(c.basis, bracket(va, c.basis.col(b))));
      for (Eigen::Index b = 0; b < img.cols(); ++b)
        rep.ideal = std::max(rep.ideal, off(c.basis, bracket(va, img.col(b))));
      for (std::size_t cj = ci + 1; cj < clusters.size(); ++cj) {
        const auto& d = clusters[cj];
        if (d.value == 0.0) continue;
        for (int b = 0; b < d.multiplicity(); ++b) rep.commuting = std::max(rep.commuting, bracket(va, d.basis.col(b)).norm());
      }
    }
  }
  for (Eigen::Index a = 0; a < img.cols(); ++a)
    for (Eigen::Index b = a + 1; b < img.cols(); ++b)
      rep.image_closed = std::max(rep.image_closed, off(img, bracket(img.col(a), img.col(b))));
  return rep;
}

// ---------------------------------------------------------------------------

SymmetricSpaceModel product_space(const SymmetricSpaceModel& a, const SymmetricSpaceModel& b) {
  LieAlgebraModel g = product_algebra(a.g(), b.g());
  const int da = a.g().dim();
  std::vector<int> h = a.h_indices();
  for (int i : b.h_indices()) h.push_back(i + da);
  std::sort(h.begin(), h.end());
  const int na = a.m_dim();
  const int nb = b.m_dim();
  QMatrix metric(na + nb, na + nb);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j) metric(i, j) = a.metric_m()(i, j);
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j) metric(na + i, na + j) = b.metric_m()(i, j);
  std::optional<Eigen::MatrixXd> j;
  if ((a.complex_structure() || na == 0) && (b.complex_structure() || nb == 0)) {
    Eigen::MatrixXd jj = Eigen::MatrixXd::Zero(na + nb, na + nb);
    if (na) jj.topLeftCorner(na, na) = *a.complex_structure();
    if (nb) jj.bottomRightCorner(nb, nb) = *b.complex_structure();
    if (na + nb > 0) j = jj;
  }
  return SymmetricSpaceModel(std::move(g), std::move(h), std::move(metric), a.name() + "×" + b.name(),
                             a.flat_dim() + b.flat_dim(), std::move(j));
}

namespace {

SymmetricSpaceModel make_sphere(int n) {
  LieAlgebraModel g = make_so(n + 1);
  std::vector<int> h;
  const auto& pairs = bivector_pairs(n + 1);
  for (std::size_t p = 0; p < pairs.size(); ++p)
    if (pairs[p].first > 0) h.push_back(static_cast<int>(p));
  return SymmetricSpaceModel(std::move(g), std::move(h), QMatrix::identity(n), "S" + std::to_string(n));
}

// su(n+1)/u(n); m = {A_0j, S_0j}, i.e. complex coordinates (Re v_j, Im v_j).
SymmetricSpaceModel make_cpn(int n) {
  LieAlgebraModel g = make_su(n + 1);
  std::vector<int> h;
  for (int i = 2 * n; i < g.dim(); ++i) h.push_back(i);
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    j(2 * k + 1, 2 * k) = 1.0;
    j(2 * k, 2 * k + 1) = -1.0;
  }
  return SymmetricSpaceModel(std::move(g), std::move(h), QMatrix::identity(2 * n), "CP" + std::to_string(n), 0, j);
}

SymmetricSpaceModel make_flat(int k) {
  std::optional<Eigen::MatrixXd> j;
  return SymmetricSpaceModel(make_abelian(k), {}, QMatrix::identity(k), "R" + std::to_string(k), k, j);
}

// su(2)+su(2) in the adapted basis D_i = (X_i, X_i)/2, A_i = (X_i, -X_i)/2.
// The restricted inner product on m is I/2; doubling it gives the round unit
// three-sphere.
SymmetricSpaceModel make_su2_group() {
  const LieAlgebraModel su2 = make_su(2);
  std::vector<Eigen::MatrixXcd> mats;
  std::vector<std::string> labels;
  for (int sign : {1, -1})
    for (int i = 0; i < 3; ++i) {
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
      m.topLeftCorner(2, 2) = 0.5 * su2.realization()[i];
      m.bottomRightCorner(2, 2) = 0.5 * sign * su2.realization()[i];
      mats.push_back(std::move(m));
      labels.push_back((sign > 0 ? "D" : "A") + std::to_string(i));
    }
  LieAlgebraModel g = algebra_from_matrices("su(2)×su(2)", std::move(labels), std::move(mats));
  return SymmetricSpaceModel(std::move(g), {0, 1, 2}, QMatrix::identity(3), "SU2_group");
}

SymmetricSpaceModel catalog_atom(const std::string& name) {
  static const std::regex sphere("S([2-8])");
  static const std::regex cp("CP([1-3])");
  static const std::regex flat("R([12])");
  std::smatch m;
  if (std::regex_match(name, m, sphere)) return make_sphere(std::stoi(m[1]));
  if (std::regex_match(name, m, cp)) return make_cpn(std::stoi(m[1]));
  if (std::regex_match(name, m, flat)) return make_flat(std::stoi(m[1]));
  if (name == "SU2_group") return make_su2_group();
  throw Error(ErrorKind::UnknownSpace, "unknown space '" + name + "'");
}

}  // namespace

SymmetricSpaceModel catalog(const std::string& name) {
  std::vector<std::string> parts;
  std::string cur;
  for (std::size_t i = 0; i < name.size();) {
    if (name.compare(i, 2, "×") == 0) {
      parts.push_back(cur);
      cur.clear();
      i += 2;
    } else if (name[i] == 'x' || name[i] == '*') {
      parts.push_back(cur);
      cur.clear();
      ++i;
    } else {
      cur += name[i++];
    }
  }
  parts.push_back(cur);
  SymmetricSpaceModel space = catalog_atom(parts[0]);
  for (std::size_t i = 1; i < parts.size(); ++i) space = product_space(space, catalog_atom(parts[i]));
  return space;
}

std::vector<std::string> catalog_names() {
  return {"S2", "S3", "S4", "S5", "S6", "S7", "S8", "CP1", "CP2", "CP3", "R1", "R2", "SU2_group"};
}

double scalar_curvature(const SymmetricSpaceModel& space) {
  return 2.0 * curvature_operator(space).matrix().trace();
}

}  // namespace symcurv
