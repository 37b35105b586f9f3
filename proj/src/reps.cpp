#include "symcurv/reps.hpp"

#include "symcurv/errors.hpp"
#include "symcurv/tolerance.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <random>

namespace symcurv {

namespace {

using cd = std::complex<double>;

AlgebraPtr cached(std::map<int, AlgebraPtr>& cache, int n, LieAlgebraModel (*make)(int)) {
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto ptr = std::make_shared<const LieAlgebraModel>(make(n));
  cache.emplace(n, ptr);
  return ptr;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::MatrixXd block_diag(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

void require_same_source(const AlgebraRep& a, const AlgebraRep& b) {
  if (!same_source(a.source(), b.source()))
    throw Error(ErrorKind::SourceMismatch, a.label() + " and " + b.label() + " act by different algebras");
}

// Orthonormal basis of the null space of a PSD normal matrix.
Eigen::MatrixXd psd_null(const Eigen::MatrixXd& n) {
  if (n.rows() == 0) return Eigen::MatrixXd(0, 0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(n);
  const auto& ev = es.eigenvalues();
  const double thresh = 1e-8 * std::max(1.0, ev.cwiseAbs().maxCoeff());
  int count = 0;
  while (count < ev.size() && ev[count] <= thresh) ++count;
  return es.eigenvectors().leftCols(count);
}

}  // namespace

AlgebraPtr so_algebra(int n) {
  static std::map<int, AlgebraPtr> cache;
  return cached(cache, n, make_so);
}
AlgebraPtr su_algebra(int n) {
  static std::map<int, AlgebraPtr> cache;
  return cached(cache, n, make_su);
}
AlgebraPtr u_algebra(int n) {
  static std::map<int, AlgebraPtr> cache;
  return cached(cache, n, make_u);
}

// ---------------------------------------------------------------------------

Eigen::MatrixXd realify(const Eigen::MatrixXcd& m) {
  Eigen::MatrixXd r(2 * m.rows(), 2 * m.cols());
  for (Eigen::Index s = 0; s < m.rows(); ++s)
    for (Eigen::Index t = 0; t < m.cols(); ++t) {
      const double re = m(s, t).real();
      const double im = m(s, t).imag();
      r(2 * s, 2 * t) = re;
      r(2 * s, 2 * t + 1) = -im;
      r(2 * s + 1, 2 * t) = im;
      r(2 * s + 1, 2 * t + 1) = re;
    }
  return r;
}

Eigen::MatrixXd realify_antilinear(const Eigen::MatrixXcd& a) {
  Eigen::MatrixXd r(2 * a.rows(), 2 * a.cols());
  for (Eigen::Index s = 0; s < a.rows(); ++s)
    for (Eigen::Index t = 0; t < a.cols(); ++t) {
      const double re = a(s, t).real();
      const double im = a(s, t).imag();
      r(2 * s, 2 * t) = re;
      r(2 * s, 2 * t + 1) = im;
      r(2 * s + 1, 2 * t) = im;
      r(2 * s + 1, 2 * t + 1) = -re;
    }
  return r;
}

Eigen::MatrixXd standard_complex_structure(int complex_dim) {
  return realify(cd(0, 1) * Eigen::MatrixXcd::Identity(complex_dim, complex_dim));
}

std::vector<Eigen::MatrixXcd> to_complex(const Eigen::MatrixXd& j, const std::vector<Eigen::MatrixXd>& mats) {
  const Eigen::Index k = j.rows();
  std::vector<Eigen::VectorXd> u;
  for (Eigen::Index i = 0; i < k && static_cast<Eigen::Index>(2 * u.size()) < k; ++i) {
    Eigen::VectorXd v = Eigen::VectorXd::Unit(k, i);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& w : u) {
        const Eigen::VectorXd jw = j * w;
        v -= w.dot(v) * w + jw.dot(v) * jw;
      }
    if (v.norm() > 1e-6) u.push_back(v.normalized());
  }
  const int m = static_cast<int>(u.size());
  std::vector<Eigen::MatrixXcd> out;
  for (const auto& a : mats) {
    Eigen::MatrixXcd c(m, m);
    for (int s = 0; s < m; ++s) {
      const Eigen::VectorXd ju = j * u[s];
      for (int t = 0; t < m; ++t) {
        const Eigen::VectorXd au = a * u[t];
        c(s, t) = cd(u[s].dot(au), ju.dot(au));
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Eigen::MatrixXcd> complex_images(const AlgebraRep& rep) {
  if (!rep.complex_structure()) throw Error(ErrorKind::InvalidArgument, rep.label() + " has no complex structure");
  return to_complex(*rep.complex_structure(), rep.images());
}

Eigen::VectorXd realization_coords(const LieAlgebraModel& alg, const Eigen::MatrixXcd& m) {
  if (!alg.has_realization()) throw Error(ErrorKind::InvalidArgument, alg.name() + " has no matrix realization");
  const int d = alg.dim();
  const auto& basis = alg.realization();
  Eigen::MatrixXd g(d, d);
  Eigen::VectorXd b(d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) g(i, j) = 0.5 * (basis[i].adjoint() * basis[j]).trace().real();
    b[i] = 0.5 * (basis[i].adjoint() * m).trace().real();
  }
  return g.ldlt().solve(b);
}

AlgebraRep from_complex(AlgebraPtr source, const std::vector<Eigen::MatrixXcd>& images, std::string label,
                        const std::optional<Eigen::MatrixXcd>& antilinear, int sign) {
  std::vector<Eigen::MatrixXd> real;
  for (const auto& m : images) real.push_back(realify(m));
  Eigen::Index n = images.empty() ? (antilinear ? antilinear->rows() : 0) : images[0].rows();
  std::optional<StructureMap> sm;
  if (antilinear) sm = StructureMap{realify_antilinear(*antilinear), sign};
  return AlgebraRep(std::move(source), std::move(real), std::move(label),
                    standard_complex_structure(static_cast<int>(n)), std::move(sm), static_cast<int>(2 * n));
}

// ---------------------------------------------------------------------------

AlgebraRep spin2_irrep(int k) {
  Eigen::MatrixXd e(2, 2);
  e << 0.0, -1.0, 1.0, 0.0;
  return AlgebraRep(so_algebra(2), {0.5 * k * e}, "spin2:" + std::to_string(k));
}

Eigen::MatrixXcd su2_action(const Eigen::MatrixXcd& x, int k) {
  if (k < 0) throw Error(ErrorKind::InvalidArgument, "su(2) weight must be >= 0");
  std::vector<double> w(k + 1);
  for (int r = 0; r <= k; ++r) w[r] = std::sqrt(std::tgamma(r + 1.0) * std::tgamma(k - r + 1.0));
  // monomial basis m_r = z1^r z2^(k-r):
  // X.m_r = -[(r X11 + (k-r) X22) m_r + r X12 m_(r-1) + (k-r) X21 m_(r+1)]
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(k + 1, k + 1);
  for (int r = 0; r <= k; ++r) {
    a(r, r) = -(double(r) * x(0, 0) + double(k - r) * x(1, 1));
    if (r > 0) a(r - 1, r) = -double(r) * x(0, 1);
    if (r < k) a(r + 1, r) = -double(k - r) * x(1, 0);
  }
  for (int s = 0; s <= k; ++s)
    for (int r = 0; r <= k; ++r) a(s, r) *= w[s] / w[r];
  return a;
}

Eigen::MatrixXcd su2_antilinear(int k) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(k + 1, k + 1);
  for (int s = 0; s <= k; ++s) a(s, k - s) = (s % 2 == 0) ? 1.0 : -1.0;
  return a;
}

AlgebraRep su2_irrep(int k) {
  const auto src = su_algebra(2);
  std::vector<Eigen::MatrixXcd> images;
  for (const auto& x : src->realization()) images.push_back(su2_action(x, k));
  return from_complex(src, images, "su2:" + std::to_string(k), su2_antilinear(k), k % 2 == 0 ? 1 : -1);
}

AlgebraRep spin4_irrep(int k1, int k2) {
  if (k1 < 0 || k2 < 0) throw Error(ErrorKind::InvalidArgument, "spin4 weights must be >= 0");
  const auto gens = spin_generators(4);
  const Eigen::MatrixXcd gamma = chirality(4);
  std::vector<int> plus, minus;
  for (int i = 0; i < 4; ++i) (gamma(i, i).real() > 0 ? plus : minus).push_back(i);
  const Eigen::MatrixXcd i1 = Eigen::MatrixXcd::Identity(k1 + 1, k1 + 1);
  const Eigen::MatrixXcd i2 = Eigen::MatrixXcd::Identity(k2 + 1, k2 + 1);
  std::vector<Eigen::MatrixXcd> images;
  for (const auto& g : gens) {
    Eigen::MatrixXcd pp(2, 2), pm(2, 2);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        pp(a, b) = g(plus[a], plus[b]);
        pm(a, b) = g(minus[a], minus[b]);
      }
    images.push_back(kron(su2_action(pp, k1), i2) + kron(i1, su2_action(pm, k2)));
  }
  const int sign = (k1 + k2) % 2 == 0 ? 1 : -1;
  const std::string label = "spin4:(" + std::to_string(k1) + "," + std::to_string(k2) + ")";
  AlgebraRep rep = from_complex(so_algebra(4), images, label, kron(su2_antilinear(k1), su2_antilinear(k2)), sign);
  return sign > 0 ? real_form(rep) : rep;
}

std::vector<Eigen::MatrixXcd> gamma_matrices(int n) {
  if (n < 2) throw Error(ErrorKind::UnsupportedDim, "gamma matrices need n >= 2");
  Eigen::MatrixXcd s1(2, 2), s2(2, 2);
  s1 << 0.0, 1.0, 1.0, 0.0;
  s2 << 0.0, cd(0, -1), cd(0, 1), 0.0;
  if (n == 2) return {s1, s2};
  if (n % 2 == 1) {
    auto g = gamma_matrices(n - 1);
    g.push_back(chirality(n - 1));
    return g;
  }
  const auto g = gamma_matrices(n - 2);
  const Eigen::MatrixXcd c = chirality(n - 2);
  std::vector<Eigen::MatrixXcd> out;
  for (const auto& gi : g) out.push_back(kron(gi, s1));
  out.push_back(kron(c, s1));
  out.push_back(kron(Eigen::MatrixXcd::Identity(c.rows(), c.cols()), s2));
  return out;
}

Eigen::MatrixXcd chirality(int n) {
  if (n < 2 || n % 2 != 0) throw Error(ErrorKind::UnsupportedDim, "chirality needs even n >= 2");
  const auto g = gamma_matrices(n);
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(g[0].rows(), g[0].cols());
  for (const auto& gi : g) p = p * gi;
  return std::pow(cd(0, 1), n / 2) * p;
}

std::vector<Eigen::MatrixXcd> spin_generators(int n) {
  const auto g = gamma_matrices(n);
  std::vector<Eigen::MatrixXcd> out;
  for (auto [i, j] : bivector_pairs(n)) out.push_back(0.5 * g[j] * g[i]);
  return out;
}

SpinRep spin_fundamental(int n) {
  if (n < 3 || n > 8) throw Error(ErrorKind::UnsupportedDim, "spin representations are built for 3 <= n <= 8");
  const auto gens = spin_generators(n);
  const std::string tag = std::to_string(n);
  SpinRep out{from_complex(so_algebra(n), gens, "spin_fund:" + tag), std::nullopt, std::nullopt};
  if (n % 2 == 0) {
    const Eigen::MatrixXcd gamma = chirality(n);
    std::vector<int> plus, minus;
    for (Eigen::Index i = 0; i < gamma.rows(); ++i)
      (gamma(i, i).real() > 0 ? plus : minus).push_back(static_cast<int>(i));
    auto restrict = [&](const std::vector<int>& idx) {
      std::vector<Eigen::MatrixXcd> imgs;
      for (const auto& g : gens) {
        Eigen::MatrixXcd b(idx.size(), idx.size());
        for (std::size_t a = 0; a < idx.size(); ++a)
          for (std::size_t c = 0; c < idx.size(); ++c) b(a, c) = g(idx[a], idx[c]);
        imgs.push_back(std::move(b));
      }
      return imgs;
    };
    out.plus = from_complex(so_algebra(n), restrict(plus), "spin_plus:" + tag);
    out.minus = from_complex(so_algebra(n), restrict(minus), "spin_minus:" + tag);
  }
  return out;
}

// ---------------------------------------------------------------------------

AlgebraRep exterior_power(const AlgebraRep& rep, int k) {
  const int n = rep.dim();
  if (k < 0 || k > n) throw Error(ErrorKind::InvalidArgument, "exterior power degree out of range");
  std::vector<std::vector<int>> subsets;
  std::vector<int> cur;
  auto gen = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      subsets.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  gen(gen, 0);
  std::map<std::vector<int>, int> index;
  for (std::size_t s = 0; s < subsets.size(); ++s) index[subsets[s]] = static_cast<int>(s);
  const int dim = static_cast<int>(subsets.size());

  std::vector<Eigen::MatrixXd> images;
  for (const auto& a : rep.images()) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    for (int col = 0; col < dim; ++col) {
      const auto& s = subsets[col];
      for (int pos = 0; pos < k; ++pos)
        for (int i = 0; i < n; ++i) {
          const double coef = a(i, s[pos]);
          if (coef == 0.0) continue;
          std::vector<int> t = s;
          t[pos] = i;
          if (i != s[pos] && std::find(s.begin(), s.end(), i) != s.end()) continue;
          int sign = 1;
          for (int x = 0; x < k; ++x)
            for (int y = x + 1; y < k; ++y)
              if (t[x] > t[y]) sign = -sign;
          std::sort(t.begin(), t.end());
          m(index[t], col) += sign * coef;
        }
    }
    images.push_back(std::move(m));
  }
  return AlgebraRep(rep.source_ptr(), std::move(images), "ext(" + rep.label() + "," + std::to_string(k) + ")",
                    std::nullopt, std::nullopt, dim);
}

AlgebraRep sym2_traceless(const AlgebraRep& rep) {
  const int n = rep.dim();
  std::vector<Eigen::VectorXd> cols;
  auto at = [n](int i, int j) { return i * n + j; };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(n * n);
      v[at(i, j)] = v[at(j, i)] = 1.0 / std::sqrt(2.0);
      cols.push_back(v);
    }
  for (int k = 1; k < n; ++k) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n * n);
    const double s = 1.0 / std::sqrt(double(k) * (k + 1));
    for (int i = 0; i < k; ++i) v[at(i, i)] = s;
    v[at(k, k)] = -k * s;
    cols.push_back(v);
  }
  Eigen::MatrixXd q(n * n, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) q.col(c) = cols[c];
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  std::vector<Eigen::MatrixXd> images;
  for (const auto& a : rep.images()) images.push_back(q.transpose() * (kron(a, id) + kron(id, a)) * q);
  return AlgebraRep(rep.source_ptr(), std::move(images), "sym2(" + rep.label() + ")", std::nullopt, std::nullopt,
                    static_cast<int>(q.cols()));
}

AlgebraRep un_det_power(int n, int k) {
  const auto src = u_algebra(n);
  std::vector<Eigen::MatrixXcd> images;
  for (const auto& x : src->realization()) images.push_back(Eigen::MatrixXcd::Constant(1, 1, double(k) * x.trace()));
  return from_complex(src, images, "un_det:" + std::to_string(k));
}

AlgebraRep un_fundamental_twist(int n, int k) {
  const auto src = u_algebra(n);
  std::vector<Eigen::MatrixXcd> images;
  for (const auto& x : src->realization())
    images.push_back(x + double(k) * x.trace() * Eigen::MatrixXcd::Identity(n, n));
  return from_complex(src, images, "un_fund:" + std::to_string(k));
}

AlgebraRep adjoint_rep(const AlgebraPtr& alg) {
  const int d = alg->dim();
  const Eigen::MatrixXd g = alg->inner_product().to_double();
  std::vector<Eigen::MatrixXd> ad;
  for (int i = 0; i < d; ++i) ad.push_back(alg->ad(i).to_double());
  if (d == 0) return AlgebraRep(alg, {}, "adjoint");
  Eigen::MatrixXd brackets(d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) brackets.col(i * d + j) = ad[i].col(j);
  const Eigen::LLT<Eigen::MatrixXd> llt(g);
  const Eigen::MatrixXd lt = llt.matrixU();  // g = lt^T lt
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(lt * brackets, Eigen::ComputeThinU);
  int r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > 1e-9) ++r;
  const Eigen::MatrixXd q = svd.matrixU().leftCols(r);
  const Eigen::MatrixXd e = lt.triangularView<Eigen::Upper>().solve(q);
  std::vector<Eigen::MatrixXd> images;
  for (int i = 0; i < d; ++i) {
    Eigen::MatrixXd m = q.transpose() * lt * ad[i] * e;
    images.push_back(0.5 * (m - m.transpose()));
  }
  return AlgebraRep(alg, std::move(images), "adjoint");
}

AlgebraRep direct_sum(const AlgebraRep& a, const AlgebraRep& b) {
  require_same_source(a, b);
  std::vector<Eigen::MatrixXd> images;
  for (int i = 0; i < a.source().dim(); ++i) images.push_back(block_diag(a.image(i), b.image(i)));
  std::optional<Eigen::MatrixXd> j;
  const bool ja = a.complex_structure() || a.dim() == 0;
  const bool jb = b.complex_structure() || b.dim() == 0;
  if (ja && jb && a.dim() + b.dim() > 0)
    j = block_diag(a.complex_structure().value_or(Eigen::MatrixXd(0, 0)),
                   b.complex_structure().value_or(Eigen::MatrixXd(0, 0)));
  std::optional<StructureMap> sm;
  if (a.structure_map() && b.structure_map() && a.structure_map()->sign == b.structure_map()->sign)
    sm = StructureMap{block_diag(a.structure_map()->matrix, b.structure_map()->matrix), a.structure_map()->sign};
  if (sm && !j && (a.complex_structure() || b.complex_structure())) sm.reset();
  return AlgebraRep(a.source_ptr(), std::move(images), "sum(" + a.label() + "," + b.label() + ")", std::move(j),
                    std::move(sm), a.dim() + b.dim());
}

AlgebraRep direct_sum(const std::vector<AlgebraRep>& parts) {
  if (parts.empty()) throw Error(ErrorKind::InvalidArgument, "empty direct sum");
  AlgebraRep acc = parts[0];
  std::string label = parts[0].label();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    acc = direct_sum(acc, parts[i]);
    label += "," + parts[i].label();
  }
  return parts.size() == 1 ? acc : acc.relabeled("sum(" + label + ")");
}

AlgebraRep tensor(const AlgebraRep& a, const AlgebraRep& b) {
  require_same_source(a, b);
  const Eigen::MatrixXd ia = Eigen::MatrixXd::Identity(a.dim(), a.dim());
  const Eigen::MatrixXd ib = Eigen::MatrixXd::Identity(b.dim(), b.dim());
  std::vector<Eigen::MatrixXd> images;
  for (int i = 0; i < a.source().dim(); ++i) images.push_back(kron(a.image(i), ib) + kron(ia, b.image(i)));
  return AlgebraRep(a.source_ptr(), std::move(images), "tensor(" + a.label() + "," + b.label() + ")", std::nullopt,
                    std::nullopt, a.dim() * b.dim());
}

AlgebraRep trivial_rep(const AlgebraPtr& source, int k) {
  if (k < 0) throw Error(ErrorKind::InvalidArgument, "negative rank");
  std::vector<Eigen::MatrixXd> images(source->dim(), Eigen::MatrixXd::Zero(k, k));
  std::optional<Eigen::MatrixXd> j;
  std::optional<StructureMap> sm;
  if (k > 0 && k % 2 == 0) {
    j = standard_complex_structure(k / 2);
    sm = StructureMap{realify_antilinear(Eigen::MatrixXcd::Identity(k / 2, k / 2)), 1};
  }
  return AlgebraRep(source, std::move(images), "trivial:" + std::to_string(k), std::move(j), std::move(sm), k);
}

AlgebraRep pullback(const AlgebraRep& rep, const AlgebraPtr& new_source, const Eigen::MatrixXd& phi,
                    std::string label) {
  if (phi.rows() != rep.source().dim() || phi.cols() != new_source->dim())
    throw Error(ErrorKind::InvalidArgument, "pullback map has wrong shape");
  std::vector<Eigen::MatrixXd> images;
  for (int j = 0; j < new_source->dim(); ++j) images.push_back(rep.apply(phi.col(j)));
  return AlgebraRep(new_source, std::move(images), std::move(label), rep.complex_structure(), rep.structure_map(),
                    rep.dim());
}

AlgebraRep restrict_to(const AlgebraRep& rep, const Eigen::MatrixXd& q, std::string label) {
  std::vector<Eigen::MatrixXd> images;
  for (const auto& a : rep.images()) {
    Eigen::MatrixXd m = q.transpose() * a * q;
    images.push_back(0.5 * (m - m.transpose()));
  }
  const Eigen::Index k = q.cols();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(k, k);
  const double tol = 10 * eps();
  std::optional<Eigen::MatrixXd> j;
  if (rep.complex_structure() && k > 0) {
    Eigen::MatrixXd jj = q.transpose() * *rep.complex_structure() * q;
    if ((jj * jj + id).cwiseAbs().maxCoeff() < tol) j = jj;
  }
  std::optional<StructureMap> sm;
  if (rep.structure_map() && k > 0) {
    Eigen::MatrixXd s = q.transpose() * rep.structure_map()->matrix * q;
    if ((s * s - rep.structure_map()->sign * id).cwiseAbs().maxCoeff() < tol &&
        (!rep.complex_structure() || j))
      sm = StructureMap{s, rep.structure_map()->sign};
  }
  return AlgebraRep(rep.source_ptr(), std::move(images), std::move(label), std::move(j), std::move(sm),
                    static_cast<int>(k));
}

AlgebraRep real_form(const AlgebraRep& rep) {
  if (!rep.structure_map() || rep.structure_map()->sign != 1)
    throw Error(ErrorKind::InvalidArgument, rep.label() + " has no real structure");
  const Eigen::MatrixXd& s = rep.structure_map()->matrix;
  const int k = rep.dim();
  std::vector<Eigen::VectorXd> basis;
  for (int i = 0; i < k && static_cast<int>(2 * basis.size()) < k; ++i) {
    Eigen::VectorXd v = Eigen::VectorXd::Unit(k, i) + s.col(i);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& w : basis) v -= w.dot(v) * w;
    if (v.norm() > 1e-6) basis.push_back(v.normalized());
  }
  Eigen::MatrixXd q(k, basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c) q.col(c) = basis[c];
  std::vector<Eigen::MatrixXd> images;
  for (const auto& a : rep.images()) {
    Eigen::MatrixXd m = q.transpose() * a * q;
    images.push_back(0.5 * (m - m.transpose()));
  }
  return AlgebraRep(rep.source_ptr(), std::move(images), rep.label(), std::nullopt, std::nullopt,
                    static_cast<int>(q.cols()));
}

AlgebraRep irreducible_real(const AlgebraRep& rep) {
  if (rep.structure_map() && rep.structure_map()->sign == 1) return real_form(rep);
  return rep;
}

void validate_homomorphism(const AlgebraRep& rep, double tol) {
  const double r = homomorphism_residual(rep);
  if (r > tol)
    throw Error(ErrorKind::NotHomomorphism, rep.label() + " fails the bracket relation (residual " +
                                                std::to_string(r) + ")");
}

// ---------------------------------------------------------------------------

std::string_view to_string(RepKind kind) {
  switch (kind) {
    case RepKind::Real: return "real";
    case RepKind::Complex: return "complex";
    case RepKind::Quaternionic: return "quaternionic";
  }
  return "?";
}

namespace {

std::vector<Eigen::MatrixXd> commutant_part(const AlgebraRep& rep, bool symmetric) {
  const int k = rep.dim();
  std::vector<Eigen::MatrixXd> basis;
  const double h = 1.0 / std::sqrt(2.0);
  for (int a = 0; a < k; ++a)
    for (int b = symmetric ? a : a + 1; b < k; ++b) {
      Eigen::MatrixXd e = Eigen::MatrixXd::Zero(k, k);
      if (a == b) {
        e(a, a) = 1.0;
      } else {
        e(a, b) = h;
        e(b, a) = symmetric ? h : -h;
      }
      basis.push_back(std::move(e));
    }
  const Eigen::Index p = static_cast<Eigen::Index>(basis.size());
  if (p == 0) return {};
  Eigen::MatrixXd normal = Eigen::MatrixXd::Zero(p, p);
  Eigen::MatrixXd l(static_cast<Eigen::Index>(k) * k, p);
  for (const auto& r : rep.images()) {
    for (Eigen::Index c = 0; c < p; ++c) {
      const Eigen::MatrixXd br = r * basis[c] - basis[c] * r;
      l.col(c) = Eigen::Map<const Eigen::VectorXd>(br.data(), br.size());
    }
    normal.selfadjointView<Eigen::Lower>().rankUpdate(l.transpose());
  }
  normal = normal.selfadjointView<Eigen::Lower>();
  const Eigen::MatrixXd null = psd_null(normal);
  std::vector<Eigen::MatrixXd> out;
  for (Eigen::Index c = 0; c < null.cols(); ++c) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k, k);
    for (Eigen::Index q = 0; q < p; ++q) m += null(q, c) * basis[q];
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

Commutant commutant(const AlgebraRep& rep) {
  return Commutant{commutant_part(rep, true), commutant_part(rep, false)};
}

RepType classify_type(const AlgebraRep& rep) {
  if (rep.dim() == 0) throw Error(ErrorKind::InvalidArgument, "zero representation has no type");
  const Commutant c = commutant(rep);
  const int ns = static_cast<int>(c.symmetric.size());
  const int nk = static_cast<int>(c.skew.size());
  if (ns != 1 || (nk != 0 && nk != 1 && nk != 3))
    throw Error(ErrorKind::Reducible, rep.label() + " has a commutant of dimension " + std::to_string(ns + nk));
  RepType t;
  t.commutant_dim = ns + nk;
  if (nk == 0) {
    t.kind = RepKind::Real;
    t.witness = Eigen::MatrixXd::Identity(rep.dim(), rep.dim());
    return t;
  }
  t.kind = nk == 1 ? RepKind::Complex : RepKind::Quaternionic;
  Eigen::MatrixXd w = c.skew[0];
  const double lambda = -(w * w).trace() / rep.dim();
  t.witness = w / std::sqrt(lambda);
  return t;
}

bool is_irreducible(const AlgebraRep& rep) {
  if (rep.dim() == 0) return false;
  return commutant_part(rep, true).size() == 1;
}

std::vector<AlgebraRep> decompose(const AlgebraRep& rep, std::uint64_t seed) {
  if (rep.dim() == 0) return {};
  const auto sym = commutant_part(rep, true);
  if (sym.size() == 1) return {rep};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(rep.dim(), rep.dim());
  for (const auto& s : sym) c += normal(rng) * s;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c);
  const auto& ev = es.eigenvalues();
  std::vector<AlgebraRep> out;
  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= ev.size(); ++i) {
    if (i < ev.size() && ev[i] - ev[i - 1] < 1e-6) continue;
    const Eigen::MatrixXd q = es.eigenvectors().middleCols(start, i - start);
    for (auto& part : decompose(restrict_to(rep, q, rep.label()), seed + 1)) out.push_back(std::move(part));
    start = i;
  }
  return out;
}

int intertwiner_dim(const AlgebraRep& a, const AlgebraRep& b) {
  require_same_source(a, b);
  const int ka = a.dim();
  const int kb = b.dim();
  if (ka == 0 || kb == 0) return 0;
  const Eigen::MatrixXd ia = Eigen::MatrixXd::Identity(ka, ka);
  const Eigen::MatrixXd ib = Eigen::MatrixXd::Identity(kb, kb);
  Eigen::MatrixXd normal = Eigen::MatrixXd::Zero(ka * kb, ka * kb);
  for (int i = 0; i < a.source().dim(); ++i) {
    // vec(rho_b T - T rho_a) for column-major vec(T)
    const Eigen::MatrixXd l = kron(ia, b.image(i)) - kron(a.image(i).transpose(), ib);
    normal.selfadjointView<Eigen::Lower>().rankUpdate(l.transpose());
  }
  normal = normal.selfadjointView<Eigen::Lower>();
  return static_cast<int>(psd_null(normal).cols());
}

bool equivalent(const AlgebraRep& a, const AlgebraRep& b) {
  return a.dim() == b.dim() && intertwiner_dim(a, b) > 0;
}

}  // namespace symcurv
