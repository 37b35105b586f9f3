#include "symcurv/bundles.hpp"

#include "symcurv/descriptor.hpp"
#include "symcurv/errors.hpp"
#include "symcurv/linalg.hpp"
#include "symcurv/tolerance.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>

namespace symcurv {

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

double image_scale(const std::vector<Eigen::MatrixXd>& mats) {
  double s = 1.0;
  for (const auto& m : mats) s = std::max(s, max_abs(m));
  return s;
}

}  // namespace

Eigen::MatrixXd InducedBundle::at(const Eigen::VectorXd& bivector) const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rank(), rank());
  for (int p = 0; p < bivector.size(); ++p)
    if (bivector(p) != 0.0) out += bivector(p) * curvature[p];
  return out;
}

InducedBundle induce(const SymmetricSpaceModel& space, const AlgebraRep& rep) {
  if (!same_source(rep.source(), space.h()))
    throw Error(ErrorKind::SourceMismatch,
                "representation " + rep.label() + " does not act by the isotropy algebra of " + space.name());
  auto sp = std::make_shared<const SymmetricSpaceModel>(space);
  CurvatureOperator base = curvature_operator(*sp);
  std::vector<Eigen::MatrixXd> curv;
  for (const auto& [a, b] : bivector_pairs(space.m_dim())) curv.push_back(rep.apply(sp->bracket_mm(a, b)));
  return InducedBundle{std::move(sp), rep, std::move(base), std::move(curv)};
}

InducedBundle with_curvature(const InducedBundle& bundle, std::vector<Eigen::MatrixXd> curvature) {
  if (curvature.size() != bundle.curvature.size())
    throw Error(ErrorKind::InvalidArgument, "curvature needs one matrix per bivector");
  InducedBundle out = bundle;
  out.curvature = std::move(curvature);
  return out;
}

double bracket_identity_residual(const InducedBundle& bundle, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const int n = bundle.space->m_dim();
  const Eigen::MatrixXd lhs = bundle.at(bivector_bracket(bundle.base.apply(a), b, n));
  const Eigen::MatrixXd ra = bundle.at(a), rb = bundle.at(b);
  return max_abs(lhs - (ra * rb - rb * ra));
}

IdentityCheck check_bracket_identity(const InducedBundle& bundle, double tol) {
  IdentityCheck out;
  const int nb = static_cast<int>(bundle.curvature.size());
  double worst = 0.0;
  for (int p = 0; p < nb; ++p) {
    for (int q = 0; q < nb; ++q) {
      const double r = bracket_identity_residual(bundle, Eigen::VectorXd::Unit(nb, p), Eigen::VectorXd::Unit(nb, q));
      if (r > worst) {
        worst = r;
        if (r >= tol) out.witness = std::make_pair(p, q);
      }
    }
  }
  out.residual = worst;
  out.pass = worst < tol;
  if (out.pass) out.witness.reset();
  return out;
}

KernelCheck check_kernel_inclusion(const InducedBundle& bundle, double tol) {
  KernelCheck out;
  const Eigen::MatrixXd& ker = bundle.base.kernel_basis();
  out.dim_kernel = static_cast<int>(ker.cols());
  for (int c = 0; c < ker.cols(); ++c) out.residual = std::max(out.residual, max_abs(bundle.at(ker.col(c))));
  out.pass = out.residual < tol;
  return out;
}

AlgebraRep recover_rho_hat(const SymmetricSpaceModel& space, const std::vector<Eigen::MatrixXd>& curvature,
                           const std::optional<Eigen::MatrixXd>& complex_structure, double tol) {
  const int nb = static_cast<int>(bivector_dim(space.m_dim()));
  if (static_cast<int>(curvature.size()) != nb)
    throw Error(ErrorKind::InvalidArgument, "curvature needs one matrix per bivector");
  const int k = curvature.empty() ? 0 : static_cast<int>(curvature.front().rows());
  const CurvatureOperator base = curvature_operator(space);
  auto at = [&](const Eigen::VectorXd& v) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(k, k);
    for (int p = 0; p < nb; ++p) out += v(p) * curvature[p];
    return out;
  };

  const double scale = image_scale(curvature);
  const Eigen::MatrixXd& ker = base.kernel_basis();
  for (int c = 0; c < ker.cols(); ++c) {
    const double r = max_abs(at(ker.col(c)));
    if (r > tol * scale)
      throw Error(ErrorKind::KernelNotIncluded,
                  "R^E does not vanish on ker R^M (residual " + std::to_string(r) + ")");
  }

  const Eigen::MatrixXd pis = isotropy_bivectors(space);
  std::vector<Eigen::MatrixXd> images;
  for (int i = 0; i < space.h_dim(); ++i) images.push_back(at(solve_on_image(base.op, pis.col(i))));

  AlgebraRep rep(space.h_ptr(), images, "rho_hat", std::nullopt, std::nullopt, k);
  const double res = homomorphism_residual(rep);
  const double s = image_scale(images);
  if (res > tol * s * s)
    throw Error(ErrorKind::NotHomomorphism, "recovered map fails the bracket relation (residual " +
                                                std::to_string(res) + ")");
  if (complex_structure) return AlgebraRep(space.h_ptr(), images, "rho_hat", complex_structure, std::nullopt, k);
  return rep;
}

// --- characteristic numbers -----------------------------------------------

namespace {

// Omega(f_i, f_j) = -R^E(f_i ^ f_j) for i < j
struct Forms {
  int n;
  std::vector<Eigen::MatrixXd> omega;
  const Eigen::MatrixXd& operator()(int i, int j) const { return omega[pair_index(n, i, j)]; }
};

// 4-form built from a bilinear pairing of 2-form values, evaluated on (f0..f3):
// (a ^ b)(0123) = a01 b23 - a02 b13 + a03 b12 + a12 b03 - a13 b02 + a23 b01
template <class T, class F>
T wedge4(const F& pair) {
  return pair(0, 1, 2, 3) - pair(0, 2, 1, 3) + pair(0, 3, 1, 2) + pair(1, 2, 0, 3) - pair(1, 3, 0, 2) +
         pair(2, 3, 0, 1);
}

std::complex<double> ctrace(const Eigen::MatrixXd& a, const Eigen::MatrixXd& j) {
  // tr over C of a complex-linear a, with j acting as multiplication by i
  return {0.5 * a.trace(), -0.5 * (j * a).trace()};
}

enum class BaseKind { Surface, Sphere4, CP2, CPn };

}  // namespace

CharClassReport characteristic_numbers(const InducedBundle& bundle) {
  const SymmetricSpaceModel& space = *bundle.space;
  const int n = space.m_dim();
  const Eigen::MatrixXd& r = bundle.base.matrix();
  const double tol = 1e3 * eps();
  const auto& jm = space.complex_structure();

  BaseKind kind;
  double volume = 0.0, line_area = 0.0;
  if (n == 2 && space.h_dim() == 1 && r(0, 0) > tol) {
    kind = BaseKind::Surface;
    volume = line_area = 4 * kPi / r(0, 0);
  } else if (n == 4 && r(0, 0) > tol && (r - r(0, 0) * Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() < tol) {
    kind = BaseKind::Sphere4;
    volume = 8 * kPi * kPi / (3 * r(0, 0) * r(0, 0));
  } else if (jm && n >= 4 && n % 2 == 0 && space.h_dim() == (n / 2) * (n / 2) && r(0, 0) > tol) {
    const double hol = r(0, 0);  // holomorphic sectional curvature on span(f0, f1)
    line_area = 4 * kPi / hol;
    if (n == 4) {
      kind = BaseKind::CP2;
      volume = kPi * kPi / 2 * (4 / hol) * (4 / hol);
    } else {
      kind = BaseKind::CPn;
    }
  } else {
    throw Error(ErrorKind::UnsupportedBase, "no characteristic-number model for base " + space.name());
  }

  Forms f{n, {}};
  for (const auto& m : bundle.curvature) f.omega.push_back(-m);
  const int k = bundle.rank();
  const auto& je = bundle.rep.complex_structure();

  CharClassReport out;
  out.base = space.name();
  out.rank = k;

  if (je && line_area > 0) out.c1 = (*je * f(0, 1)).trace() / (4 * kPi) * line_area;

  if (kind == BaseKind::Surface) {
    if (k == 2) out.euler = f(0, 1)(0, 1) / (2 * kPi) * volume;
  } else if (kind == BaseKind::Sphere4 || kind == BaseKind::CP2) {
    if (k == 4) {
      // Pf = O01 ^ O23 - O02 ^ O13 + O03 ^ O12 in matrix-entry 2-forms
      auto entry_pf = [&](int a, int b, int c, int d) {
        return wedge4<double>([&](int i, int j, int p, int q) { return f(i, j)(a, b) * f(p, q)(c, d); });
      };
      const double pf = entry_pf(0, 1, 2, 3) - entry_pf(0, 2, 1, 3) + entry_pf(0, 3, 1, 2);
      out.euler = pf / (4 * kPi * kPi) * volume;
    }
    const double trff = wedge4<double>([&](int i, int j, int p, int q) { return (f(i, j) * f(p, q)).trace(); });
    out.p1 = -trff / (8 * kPi * kPi) * volume;
    if (je) {
      const Eigen::MatrixXd& j = *je;
      const std::complex<double> cff =
          wedge4<std::complex<double>>([&](int a, int b, int p, int q) { return ctrace(f(a, b) * f(p, q), j); });
      const std::complex<double> tt = wedge4<std::complex<double>>(
          [&](int a, int b, int p, int q) { return ctrace(f(a, b), j) * ctrace(f(p, q), j); });
      out.c2 = (cff - tt).real() / (8 * kPi * kPi) * volume;
    }
  }

  for (const auto& v : {out.euler, out.p1, out.c1, out.c2})
    if (v && std::abs(*v - std::round(*v)) > out.tolerance) out.integral = false;
  return out;
}

// --- checks and classification --------------------------------------------

BundleChecks run_checks(const InducedBundle& bundle) {
  BundleChecks out;
  out.bracket_identity = check_bracket_identity(bundle).pass;
  out.kernel_inclusion = check_kernel_inclusion(bundle).pass;
  try {
    const AlgebraRep back = recover_rho_hat(*bundle.space, bundle.curvature, bundle.rep.complex_structure());
    double diff = 0.0;
    for (int i = 0; i < bundle.space->h_dim(); ++i)
      diff = std::max(diff, max_abs(back.image(i) - bundle.rep.image(i)));
    out.rho_roundtrip = diff < 1e-8 * image_scale(bundle.rep.images());
  } catch (const Error&) {
    out.rho_roundtrip = false;
  }
  return out;
}

RepKind sum_type(const std::vector<std::pair<RepKind, int>>& isotypic) {
  bool real_even = true, real_four = true, complex_even = true;
  for (const auto& [kind, mult] : isotypic) {
    if (kind == RepKind::Real) {
      real_even = real_even && mult % 2 == 0;
      real_four = real_four && mult % 4 == 0;
    } else if (kind == RepKind::Complex) {
      complex_even = complex_even && mult % 2 == 0;
    }
  }
  if (real_four && complex_even) return RepKind::Quaternionic;
  if (real_even) return RepKind::Complex;
  return RepKind::Real;
}

namespace {

struct Candidate {
  std::string label;
  int dim;
};

std::vector<Candidate> candidates(const SymmetricSpaceModel& space, int weight_bound) {
  const std::string& nm = space.name();
  std::vector<Candidate> out;
  if (nm == "S2") {
    for (int k = 1; k <= weight_bound; ++k) out.push_back({"spin2:" + std::to_string(k), 2});
  } else if (nm == "CP1") {
    for (int k = 1; k <= weight_bound; ++k) out.push_back({"un_det:" + std::to_string(k), 2});
  } else if (nm == "S3" || nm == "SU2_group") {
    // real dimension grows with k; the caller trims by rank
    for (int k = 1; k <= 64; ++k) out.push_back({"su2:" + std::to_string(k), k % 2 ? 2 * (k + 1) : k + 1});
  } else if (nm == "S4") {
    for (int a = 0; a <= 16; ++a)
      for (int b = 0; b <= 16; ++b) {
        if (a + b == 0) continue;
        const int c = (a + 1) * (b + 1);
        out.push_back({"spin4:(" + std::to_string(a) + "," + std::to_string(b) + ")", (a + b) % 2 ? 2 * c : c});
      }
  } else if (nm == "CP2") {
    for (int k = 1; k <= weight_bound; ++k) out.push_back({"un_det:" + std::to_string(k), 2});
    for (int k = -weight_bound; k <= weight_bound; ++k) out.push_back({"un_fund:" + std::to_string(k), 4});
    out.push_back({"adjoint", 3});
  } else if (nm.size() == 2 && nm[0] == 'S' && nm[1] >= '5' && nm[1] <= '8') {
    const int n = nm[1] - '0';
    const std::string s = std::to_string(n);
    out.push_back({"tangent", n});
    out.push_back({"ext(tangent,2)", n * (n - 1) / 2});
    out.push_back({"sym2(tangent)", n * (n + 1) / 2 - 1});
    if (n == 5) out.push_back({"spin_fund:5", 8});
    if (n == 6) out.push_back({"spin_plus:6", 8});
    if (n == 7) out.push_back({"real(spin_fund:7)", 8});
    if (n == 8) {
      out.push_back({"real(spin_plus:8)", 8});
      out.push_back({"real(spin_minus:8)", 8});
    }
  } else {
    throw Error(ErrorKind::UnsupportedSpace, "no irreducible catalog for " + nm);
  }
  return out;
}

struct Irrep {
  std::string label;
  AlgebraRep rep;
  RepKind kind;
};

std::vector<Irrep> build_irreps(const SymmetricSpaceModel& space, int rank_bound, int weight_bound) {
  std::vector<Irrep> out;
  for (const auto& c : candidates(space, weight_bound)) {
    if (c.dim > rank_bound) continue;
    AlgebraRep rep = build_rep(space, c.label);
    const RepKind kind = classify_type(rep).kind;
    const bool seen = std::any_of(out.begin(), out.end(), [&](const Irrep& o) {
      return o.rep.dim() == rep.dim() && equivalent(o.rep, rep);
    });
    if (!seen) out.push_back({c.label, std::move(rep), kind});
  }
  return out;
}

}  // namespace

std::vector<std::string> catalog_irreps(const SymmetricSpaceModel& space, int rank_bound, int weight_bound) {
  std::vector<std::string> out;
  for (const auto& i : build_irreps(space, rank_bound, weight_bound)) out.push_back(i.label);
  return out;
}

std::vector<BundleReport> classify_bundles(const SymmetricSpaceModel& space, int rank_bound, int weight_bound) {
  const std::vector<Irrep> irreps = build_irreps(space, std::max(rank_bound, 0), weight_bound);
  std::vector<BundleReport> out;
  if (rank_bound <= 0) return out;

  std::vector<int> counts(irreps.size(), 0);
  std::function<void(std::size_t, int)> walk = [&](std::size_t i, int used) {
    if (i < irreps.size()) {
      for (int c = 0; used + c * irreps[i].rep.dim() <= rank_bound; ++c) {
        counts[i] = c;
        walk(i + 1, used + c * irreps[i].rep.dim());
      }
      counts[i] = 0;
      return;
    }
    for (int t = 0; used + t <= rank_bound; ++t) {
      if (used + t == 0) continue;
      std::vector<AlgebraRep> parts;
      std::vector<std::string> labels;
      std::vector<std::pair<RepKind, int>> isotypic;
      if (t > 0) {
        parts.push_back(trivial_rep(space.h_ptr(), t));
        labels.push_back("trivial:" + std::to_string(t));
        isotypic.emplace_back(RepKind::Real, t);
      }
      for (std::size_t j = 0; j < irreps.size(); ++j) {
        if (counts[j] == 0) continue;
        isotypic.emplace_back(irreps[j].kind, counts[j]);
        for (int c = 0; c < counts[j]; ++c) {
          parts.push_back(irreps[j].rep);
          labels.push_back(irreps[j].label);
        }
      }
      std::string label = labels.front();
      if (labels.size() > 1) {
        label = "sum(";
        for (std::size_t j = 0; j < labels.size(); ++j) label += (j ? "," : "") + labels[j];
        label += ")";
      }
      const AlgebraRep rep = (parts.size() == 1 ? parts.front() : direct_sum(parts)).relabeled(label);
      const InducedBundle bundle = induce(space, rep);

      BundleReport r;
      r.space = space.name();
      r.rep = label;
      r.rank = rep.dim();
      r.type = sum_type(isotypic);
      try {
        r.classes = characteristic_numbers(bundle);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::UnsupportedBase) throw;
        r.classes.base = space.name();
        r.classes.rank = r.rank;
      }
      r.checks = run_checks(bundle);
      out.push_back(std::move(r));
    }
  };
  walk(0, 0);

  std::sort(out.begin(), out.end(), [](const BundleReport& a, const BundleReport& b) {
    return a.rank != b.rank ? a.rank < b.rank : a.rep < b.rep;
  });
  return out;
}

}  // namespace symcurv
