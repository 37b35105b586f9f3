// One line per acceptance criterion; exits nonzero when any fails.
// argv[1] is a directory for the determinism artifacts.

#include "symcurv/bundles.hpp"
#include "symcurv/cli.hpp"
#include "symcurv/descriptor.hpp"
#include "symcurv/errors.hpp"
#include "symcurv/reps.hpp"
#include "symcurv/serialize.hpp"
#include "symcurv/spherebundle.hpp"
#include "symcurv/symspace.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace symcurv;
namespace fs = std::filesystem;

namespace {

struct Criterion {
  bool pass = true;
  std::ostringstream why;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) why << what;
      pass = false;
    }
  }
};

std::pair<int, std::string> cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str()};
}

bool integral(double x) { return std::abs(x - std::round(x)) < 1e-6; }

// Supported spaces and their irreducible catalog representations.
std::vector<std::pair<std::string, std::string>> catalog_pairs() {
  std::vector<std::pair<std::string, std::string>> out;
  for (const std::string name : {"S2", "CP1", "S3", "S4", "CP2", "S5", "S6", "S7", "S8"}) {
    const SymmetricSpaceModel s = catalog(name);
    for (const std::string& rep : catalog_irreps(s, 8)) out.emplace_back(name, rep);
  }
  return out;
}

Eigen::VectorXd random_vector(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = g(rng);
  return v;
}

void criterion1(Criterion& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto [code, out] = cli({"classify", "S4", "--rank", "4"});
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.require(code == 0, "classify exit code");
  if (code != 0) return;
  std::vector<double> euler, abs_p1;
  int rank4 = 0, fixed_tuples = 0, spinors = 0;
  for (const Json& r : Json::parse(out)) {
    if (r["rank"] != 4) continue;
    ++rank4;
    if (r["euler"].is_null() || r["p1"].is_null()) {
      c.require(false, "missing classes for " + r["rep"].get<std::string>());
      continue;
    }
    const double e = r["euler"], p = r["p1"];
    c.require(integral(e) && integral(p), "non-integral classes");
    euler.push_back(std::round(e));
    abs_p1.push_back(std::round(std::abs(p)));
    const std::string rep = r["rep"];
    if (rep == "spin4:(1,1)") fixed_tuples += std::round(e) == 2 && std::round(p) == 0;
    if (rep == "trivial:4") fixed_tuples += std::round(e) == 0 && std::round(p) == 0;
    if (rep == "sum(trivial:1,spin4:(2,0))") fixed_tuples += std::round(e) == 0 && std::round(p) == 4;
    if (rep == "sum(trivial:1,spin4:(0,2))") fixed_tuples += std::round(e) == 0 && std::round(p) == -4;
    if (rep == "spin4:(1,0)" || rep == "spin4:(0,1)") {
      // oracle for a rank-2 complex bundle with c1 = 0: e = c2, p1 = -2 c2
      c.require(!r["c2"].is_null(), "missing c2");
      if (r["c2"].is_null()) continue;
      const double c2 = r["c2"];
      spinors += std::abs(e - c2) < 1e-6 && std::abs(p + 2 * c2) < 1e-6 && std::abs(std::abs(c2) - 1) < 1e-6;
    }
  }
  std::sort(euler.begin(), euler.end());
  std::sort(abs_p1.begin(), abs_p1.end());
  c.require(rank4 == 6, "expected 6 rank-4 bundles, got " + std::to_string(rank4));
  c.require(euler == std::vector<double>{-1, 0, 0, 0, 1, 2}, "euler multiset");
  c.require(abs_p1 == std::vector<double>{0, 0, 2, 2, 4, 4}, "|p1| multiset");
  c.require(fixed_tuples == 4, "fixed (euler, p1) tuples");
  c.require(spinors == 2, "spinor sign pairing");
  c.require(seconds < 60.0, "runtime");
  c.why << (c.pass ? "" : "; ") << "runtime " << seconds << " s";
}

void criterion2(Criterion& c) {
  const SymmetricSpaceModel s2 = catalog("S2");
  for (int k = -5; k <= 5; ++k) {
    const CharClassReport r = characteristic_numbers(induce(s2, build_rep(s2, "spin2:" + std::to_string(k))));
    c.require(r.euler && std::abs(*r.euler - k) < 1e-6, "euler of spin2:" + std::to_string(k));
  }
  const CharClassReport tm = characteristic_numbers(induce(s2, isotropy_rep(s2)));
  const CharClassReport two = characteristic_numbers(induce(s2, build_rep(s2, "spin2:2")));
  c.require(tm.euler && two.euler && std::abs(*tm.euler - *two.euler) < 1e-6, "spin2:2 vs TM");
  c.require(equivalent(build_rep(s2, "spin2:2"), isotropy_rep(s2)), "spin2:2 not equivalent to TM");
}

void criterion3(Criterion& c) {
  const std::vector<std::pair<std::string, bool>> table = {
      {"S2", true},     {"S3", true},      {"S4", true},      {"S5", true},        {"S6", true},
      {"CP1", true},    {"CP2", true},     {"CP3", true},     {"S2×S2", true},     {"S2×S3", true},
      {"S2×R1", true},  {"SU2_group", true}, {"R2", false},   {"S2×R2", false},    {"R1×R1", false}};
  for (const auto& [name, holds] : table) {
    const ConditionAReport r = condition_a(catalog(name));
    c.require(r.exact, name + " not computed exactly");
    c.require(r.holds == holds, "condition A on " + name);
  }
}

void criterion4(Criterion& c, const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::mt19937_64 rng(0x5eed);
  double bracket = 0, eigen = 0, kernel = 0;
  std::string last_space;
  for (const auto& [name, rep] : pairs) {
    const SymmetricSpaceModel s = catalog(name);
    if (name != last_space) {
      const EigenspaceReport e = eigenspace_structure(curvature_operator(s));
      eigen = std::max({eigen, e.subalgebra, e.commuting, e.ideal, e.image_closed});
      last_space = name;
    }
    const InducedBundle b = induce(s, build_rep(s, rep));
    const int nb = static_cast<int>(b.curvature.size());
    for (int t = 0; t < 50; ++t)
      bracket = std::max(bracket, bracket_identity_residual(b, random_vector(rng, nb), random_vector(rng, nb)));
    const KernelCheck k = check_kernel_inclusion(b);
    kernel = std::max(kernel, k.residual);
  }
  c.require(bracket < 1e-8, "bracket identity");
  c.require(eigen < 1e-8, "eigenspace structure");
  c.require(kernel < 1e-8, "kernel inclusion");
  c.why << (c.pass ? "" : "; ") << pairs.size() << " bundles, max residuals " << bracket << ", " << eigen << ", "
        << kernel;
}

void criterion5(Criterion& c, const std::vector<std::pair<std::string, std::string>>& pairs) {
  double worst = 0;
  for (const auto& [name, rep] : pairs) {
    const SymmetricSpaceModel s = catalog(name);
    const InducedBundle b = induce(s, build_rep(s, rep));
    try {
      const AlgebraRep back = recover_rho_hat(s, b.curvature, b.rep.complex_structure());
      for (int i = 0; i < s.h_dim(); ++i) worst = std::max(worst, (back.image(i) - b.rep.image(i)).cwiseAbs().maxCoeff());
    } catch (const Error& e) {
      c.require(false, name + " " + rep + ": " + e.what());
    }
  }
  c.require(worst < 1e-8, "roundtrip residual");

  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> g;
  const SymmetricSpaceModel s4 = catalog("S4");
  int rejected = 0;
  for (int t = 0; t < 100; ++t) {
    std::vector<Eigen::MatrixXd> curvature;
    for (int p = 0; p < 6; ++p) {
      Eigen::MatrixXd a(4, 4);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a(i, j) = g(rng);
      curvature.push_back(a - a.transpose());
    }
    try {
      recover_rho_hat(s4, curvature);
    } catch (const Error& e) {
      rejected += e.kind() == ErrorKind::NotHomomorphism || e.kind() == ErrorKind::KernelNotIncluded;
    }
  }
  c.require(rejected >= 95, "rejected only " + std::to_string(rejected) + "/100");
  c.why << (c.pass ? "" : "; ") << "roundtrip residual " << worst << ", rejected " << rejected << "/100";
}

void criterion6(Criterion& c) {
  const SymmetricSpaceModel s3 = catalog("S3");
  for (int k = 1; k <= 6; ++k) {
    const AlgebraRep r = build_rep(s3, "su2:" + std::to_string(k));
    const bool odd = k % 2 == 1;
    c.require(classify_type(r).kind == (odd ? RepKind::Quaternionic : RepKind::Real), "type of su2:" + std::to_string(k));
    c.require(r.dim() == (odd ? 2 * (k + 1) : k + 1), "dim of su2:" + std::to_string(k));
  }
  const SymmetricSpaceModel s4 = catalog("S4");
  for (int k1 = 0; k1 <= 3; ++k1)
    for (int k2 = 0; k2 <= 3; ++k2) {
      if (k1 + k2 == 0) continue;
      const std::string label = "spin4:(" + std::to_string(k1) + "," + std::to_string(k2) + ")";
      const AlgebraRep r = build_rep(s4, label);
      const int cdim = (k1 + 1) * (k2 + 1);
      const bool odd = (k1 + k2) % 2 == 1;
      c.require(classify_type(r).kind == (odd ? RepKind::Quaternionic : RepKind::Real), "type of " + label);
      c.require(r.dim() == (odd ? 2 * cdim : cdim), "dim of " + label);
    }
}

void criterion7(Criterion& c, const std::vector<std::pair<std::string, std::string>>& pairs) {
  double worst = 0;
  int checked = 0;
  for (const auto& [name, rep] : pairs) {
    const SymmetricSpaceModel s = catalog(name);
    const InducedBundle b = induce(s, build_rep(s, rep));
    const CtildeResult ct = c_tilde(b, 1e-9);
    const SchurReport sr = schur_constancy_check(b, 1000, 0x5eed, 1e-9);
    c.require(ct.is_multiple_of_identity && sr.pass, "Schur constancy on " + name + " " + rep);
    worst = std::max({worst, ct.residual, sr.max_deviation});
    ++checked;
  }
  const SymmetricSpaceModel s4 = catalog("S4");
  const InducedBundle red = induce(s4, build_rep(s4, "sum(trivial:1,spin4:(2,0))"));
  c.require(!c_tilde(red, 1e-9).is_multiple_of_identity, "reducible C~ is scalar");
  c.require(!schur_constancy_check(red, 1000, 0x5eed, 1e-9).pass, "reducible passes Schur check");
  c.why << (c.pass ? "" : "; ") << checked << " irreducible bundles, max deviation " << worst;
}

std::vector<std::vector<std::string>> battery() {
  return {{"space-info", "S4"},
          {"space-info", "CP2", "--output", "csv"},
          {"classify", "S4", "--rank", "4"},
          {"classify", "CP2", "--rank", "4"},
          {"verify", "S4", "spin4:(1,0)", "--samples", "200"},
          {"verify", "CP2", "un_fund:1", "--seed", "7"},
          {"charclasses", "S2", "spin2:3"},
          {"scalar", "S4", "spin4:(1,1)", "--radius", "0.3", "--profile", "round", "--fiber-radius", "2"}};
}

void criterion8(Criterion& c, const fs::path& dir) {
  const auto cases = battery();
  for (int run = 1; run <= 2; ++run) {
    const fs::path d = dir / ("determinism_run" + std::to_string(run));
    fs::create_directories(d);
    for (std::size_t i = 0; i < cases.size(); ++i) {
      std::ofstream f(d / ("artifact" + std::to_string(i) + ".out"), std::ios::binary);
      f << cli(cases[i]).second;
    }
  }
  for (std::size_t i = 0; i < cases.size(); ++i) {
    auto slurp = [&](int run) {
      std::ifstream f(dir / ("determinism_run" + std::to_string(run)) / ("artifact" + std::to_string(i) + ".out"),
                      std::ios::binary);
      return std::string(std::istreambuf_iterator<char>(f), {});
    };
    const std::string a = slurp(1);
    c.require(!a.empty() && a == slurp(2), "artifact " + std::to_string(i) + " differs");
  }
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path dir = argc > 1 ? fs::path(argv[1]) : fs::current_path();
  const auto pairs = catalog_pairs();
  int failed = 0;
  auto report = [&](int n, auto&& body) {
    Criterion c;
    try {
      body(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    std::cout << "criterion " << n << ": " << (c.pass ? "PASS" : "FAIL");
    if (!c.why.str().empty()) std::cout << " (" << c.why.str() << ")";
    std::cout << "\n";
    failed += !c.pass;
  };
  report(1, criterion1);
  report(2, criterion2);
  report(3, criterion3);
  report(4, [&](Criterion& c) { criterion4(c, pairs); });
  report(5, [&](Criterion& c) { criterion5(c, pairs); });
  report(6, criterion6);
  report(7, [&](Criterion& c) { criterion7(c, pairs); });
  report(8, [&](Criterion& c) { criterion8(c, dir); });
  return failed == 0 ? 0 : 1;
}
