#include "symcurv/cli.hpp"

#include "symcurv/bundles.hpp"
#include "symcurv/descriptor.hpp"
#include "symcurv/errors.hpp"
#include "symcurv/serialize.hpp"
#include "symcurv/spherebundle.hpp"
#include "symcurv/tolerance.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <random>

namespace symcurv {

namespace {

constexpr double kDefaultEps = 1e-9;
constexpr std::uint64_t kDefaultSeed = 0x5eed;

struct RunConfig {
  std::string output = "json";
  std::optional<double> tol;
  std::uint64_t seed = kDefaultSeed;
  std::string config_file;
};

class Spaces {
 public:
  void load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open config file " + path);
    Json doc;
    try {
      doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw Error(ErrorKind::ParseError, std::string("config file: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("spaces") || !doc["spaces"].is_array())
      throw Error(ErrorKind::ParseError, "config file needs a \"spaces\" array");
    for (const auto& s : doc["spaces"]) {
      SymmetricSpaceModel sp = space_from_json(s);
      const std::string name = sp.name();
      user_.insert_or_assign(name, std::move(sp));
    }
  }
  SymmetricSpaceModel get(const std::string& name) const {
    if (auto it = user_.find(name); it != user_.end()) return it->second;
    return catalog(name);
  }

 private:
  std::map<std::string, SymmetricSpaceModel> user_;
};

// --- output ----------------------------------------------------------------

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void flatten(const Json& v, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
  } else if (v.is_array() && std::any_of(v.begin(), v.end(), [](const Json& e) { return e.is_structured(); })) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "[" + std::to_string(i) + "]", rows);
  } else {
    rows.emplace_back(prefix, v.is_array() ? v.dump() : scalar_text(v));
  }
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void emit(const Json& doc, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << doc.dump(2) << "\n";
    return;
  }
  const bool csv = format == "csv";
  if (doc.is_array()) {
    // one row per element, columns from the union of flattened keys
    std::vector<std::string> cols;
    std::vector<std::map<std::string, std::string>> table;
    for (const auto& e : doc) {
      std::vector<std::pair<std::string, std::string>> rows;
      flatten(e, "", rows);
      std::map<std::string, std::string> m;
      for (auto& [k, v] : rows) {
        if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
        m[k] = v;
      }
      table.push_back(std::move(m));
    }
    const std::string sep = csv ? "," : "\t";
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? sep : "") << (csv ? csv_cell(cols[i]) : cols[i]);
    if (!cols.empty()) out << "\n";
    for (const auto& m : table) {
      for (std::size_t i = 0; i < cols.size(); ++i) {
        auto it = m.find(cols[i]);
        const std::string v = it == m.end() ? "" : it->second;
        out << (i ? sep : "") << (csv ? csv_cell(v) : v);
      }
      out << "\n";
    }
    return;
  }
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(doc, "", rows);
  if (csv) out << "field,value\n";
  for (const auto& [k, v] : rows) out << (csv ? csv_cell(k) + "," + csv_cell(v) : k + ": " + v) << "\n";
}

// --- commands --------------------------------------------------------------

Json space_info(const SymmetricSpaceModel& space) {
  const CurvatureOperator curv = curvature_operator(space);
  Json spectrum = Json::array();
  for (const auto& c : curv.eigen().clusters)
    spectrum.push_back({{"value", number(c.value)}, {"multiplicity", c.multiplicity()}});
  const ConditionAReport a = condition_a(space);
  const EigenspaceReport e = eigenspace_structure(curv);
  return Json{{"name", space.name()},
              {"g_dim", space.g().dim()},
              {"h_dim", space.h_dim()},
              {"m_dim", space.m_dim()},
              {"flat_dim", space.flat_dim()},
              {"exact_metric", space.exact()},
              {"spectrum", spectrum},
              {"dim_kernel", static_cast<int>(curv.kernel_basis().cols())},
              {"dim_image", static_cast<int>(curv.image_basis().cols())},
              {"scalar_curvature", number(scalar_curvature(space))},
              {"condition_a",
               {{"holds", a.holds},
                {"exact", a.exact},
                {"dim_kernel", a.dim_kernel},
                {"dim_image", a.dim_image},
                {"dim_span_bracket", a.dim_span_bracket}}},
              {"eigenspaces",
               {{"subalgebra", number(e.subalgebra)},
                {"commuting", number(e.commuting)},
                {"ideal", number(e.ideal)},
                {"image_closed", number(e.image_closed)}}}};
}

Eigen::VectorXd random_unit(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = g(rng);
  return v.normalized();
}

Json verify(const SymmetricSpaceModel& space, const std::string& rep_text, std::uint64_t seed, int samples,
            bool& all_pass) {
  const AlgebraRep rep = build_rep(space, rep_text);
  const InducedBundle bundle = induce(space, rep);
  const double tol = 10 * eps();

  const IdentityCheck bi = check_bracket_identity(bundle, tol);
  std::mt19937_64 rng(seed);
  const int nb = static_cast<int>(bundle.curvature.size());
  double random_res = 0.0;
  for (int s = 0; s < samples && nb > 0; ++s) {
    const Eigen::VectorXd a = random_unit(rng, nb), b = random_unit(rng, nb);
    random_res = std::max(random_res, bracket_identity_residual(bundle, a, b));
  }
  const KernelCheck kc = check_kernel_inclusion(bundle, tol);

  bool rt_pass = false;
  std::optional<double> rt_res;
  std::string rt_error;
  try {
    const AlgebraRep back = recover_rho_hat(space, bundle.curvature, rep.complex_structure(), 1e-8);
    double d = 0.0;
    for (int i = 0; i < space.h_dim(); ++i) d = std::max(d, (back.image(i) - rep.image(i)).cwiseAbs().maxCoeff());
    rt_res = d;
    rt_pass = d < 1e-8 * std::max(1.0, [&] {
                double s = 0.0;
                for (const auto& m : rep.images()) s = std::max(s, m.cwiseAbs().maxCoeff());
                return s;
              }());
  } catch (const Error& e) {
    rt_error = e.what();
  }

  bool irreducible = false;
  try {
    irreducible = rep.dim() > 0 && is_irreducible(rep);
  } catch (const Error&) {
  }
  const SchurReport sc = schur_constancy_check(bundle, 1000, seed, 1e-8);

  Json checks{{"bracket_identity",
               {{"pass", bi.pass}, {"residual", number(bi.residual)}}},
              {"random_pairs",
               {{"pass", random_res < tol}, {"samples", samples}, {"max_residual", number(random_res)}}},
              {"kernel_inclusion",
               {{"pass", kc.pass}, {"dim_kernel", kc.dim_kernel}, {"residual", number(kc.residual)}}},
              {"rho_roundtrip", {{"pass", rt_pass}, {"residual", number(rt_res)}}},
              {"schur_constancy",
               {{"applicable", irreducible},
                {"pass", sc.pass},
                {"c", number(sc.c)},
                {"max_deviation", number(sc.max_deviation)},
                {"samples", sc.samples}}}};
  if (bi.witness) checks["bracket_identity"]["witness"] = {bi.witness->first, bi.witness->second};
  if (!rt_error.empty()) checks["rho_roundtrip"]["error"] = rt_error;

  all_pass = bi.pass && random_res < tol && kc.pass && rt_pass && (!irreducible || sc.pass);
  return Json{{"space", space.name()},
              {"rep", rep.label()},
              {"rank", rep.dim()},
              {"irreducible", irreducible},
              {"checks", checks},
              {"pass", all_pass}};
}

Json charclasses(const SymmetricSpaceModel& space, const std::string& rep_text) {
  const AlgebraRep rep = build_rep(space, rep_text);
  Json j = to_json(characteristic_numbers(induce(space, rep)));
  Json out{{"space", space.name()}, {"rep", rep.label()}};
  out.update(j);
  return out;
}

Json scalar(const SymmetricSpaceModel& space, const std::string& rep_text, double r, const std::string& profile,
            double fiber_radius, std::uint64_t seed, int samples) {
  const AlgebraRep rep = build_rep(space, rep_text);
  const InducedBundle bundle = induce(space, rep);
  const int k = rep.dim();
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "the sphere bundle of a rank-0 bundle is empty");
  FiberMetricProfile prof;
  if (profile == "flat") {
    prof.G = [](double x) { return x; };
  } else {
    prof = round_sphere_profile(k, fiber_radius);
  }
  if (!(r > 0)) throw Error(ErrorKind::InvalidArgument, "radius must be positive");
  const double g = prof.G(r);
  // the unit-radius sphere of E at distance r is a round S^(k-1) of radius G(r)
  prof.s_F = k >= 2 ? round_sphere_scalar(k, std::abs(g)) : 0.0;
  const double s_m = scalar_curvature(space);
  const CtildeResult ct = c_tilde(bundle);

  std::mt19937_64 rng(seed);
  double amin = 0.0, amax = 0.0;
  for (int s = 0; s < samples; ++s) {
    const double a = a_tensor_norm(bundle, r, prof, random_unit(rng, k));
    amin = s ? std::min(amin, a) : a;
    amax = s ? std::max(amax, a) : a;
  }
  return Json{{"space", space.name()},
              {"rep", rep.label()},
              {"rank", k},
              {"radius", number(r)},
              {"profile", profile},
              {"G", number(g)},
              {"s_M", number(s_m)},
              {"s_F", number(prof.s_F)},
              {"c", number(ct.c)},
              {"c_tilde_scalar", ct.is_multiple_of_identity},
              {"samples", samples},
              {"a_norm_min", number(amin)},
              {"a_norm_max", number(amax)},
              {"total_min", number(total_scalar_curvature(s_m, prof, amax))},
              {"total_max", number(total_scalar_curvature(s_m, prof, amin))},
              {"constant", ct.is_multiple_of_identity}};
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::UnknownSpace:
    case ErrorKind::UnsupportedSpace:
    case ErrorKind::UnsupportedBase:
    case ErrorKind::UnsupportedDim:
    case ErrorKind::SourceMismatch:
      return 2;
    case ErrorKind::ParseError:
    case ErrorKind::InvalidArgument:
      return 3;
    default:
      return 1;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Curvature of symmetric spaces and their parallel bundles", "symcurv"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--output", cfg.output, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--tol", cfg.tol, "numerical tolerance epsilon (default 1e-9, or $SYMCURV_TOL)");
  app.add_option("--seed", cfg.seed, "seed for randomized checks");
  app.add_option("--config", cfg.config_file, "JSON file with extra spaces");

  std::string space_name, rep_text, profile = "flat";
  int rank = 0, weight_bound = 3, samples = 50;
  double radius = 1.0, fiber_radius = 1.0;

  auto* info = app.add_subcommand("space-info", "spectrum, kernel and Condition A of a space");
  info->add_option("space", space_name)->required();

  auto* irreps = app.add_subcommand("irreps", "irreducible catalog representations over a space");
  irreps->add_option("space", space_name)->required();
  irreps->add_option("--rank", rank, "maximal real dimension")->required();
  irreps->add_option("--weight-bound", weight_bound, "largest U(1) weight for line bundles");

  auto* classify = app.add_subcommand("classify", "parallel bundles up to a rank");
  classify->add_option("space", space_name)->required();
  classify->add_option("--rank", rank, "maximal rank")->required();
  classify->add_option("--weight-bound", weight_bound, "largest U(1) weight for line bundles");

  auto* verify_cmd = app.add_subcommand("verify", "curvature identities and reconstruction for one bundle");
  verify_cmd->add_option("space", space_name)->required();
  verify_cmd->add_option("rep", rep_text)->required();
  verify_cmd->add_option("--samples", samples, "random bivector pairs");

  auto* cc = app.add_subcommand("charclasses", "characteristic numbers of one bundle");
  cc->add_option("space", space_name)->required();
  cc->add_option("rep", rep_text)->required();

  auto* sc = app.add_subcommand("scalar", "scalar curvature of the sphere bundle");
  sc->add_option("space", space_name)->required();
  sc->add_option("rep", rep_text)->required();
  sc->add_option("--radius", radius, "fiber radius r at which to evaluate");
  sc->add_option("--profile", profile, "flat (G(r) = r) or round (G(r) = a sin(r/a))")
      ->check(CLI::IsMember({"flat", "round"}));
  sc->add_option("--fiber-radius", fiber_radius, "a for the round profile");
  sc->add_option("--samples", samples, "random unit fiber vectors");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }

  try {
    set_eps(kDefaultEps);
    if (cfg.tol) {
      set_eps(*cfg.tol);
    } else if (const char* env = std::getenv("SYMCURV_TOL")) {
      char* end = nullptr;
      const double v = std::strtod(env, &end);
      if (end == env || *end != '\0') throw Error(ErrorKind::ParseError, "SYMCURV_TOL is not a number");
      set_eps(v);
    }
    Spaces spaces;
    if (!cfg.config_file.empty()) spaces.load(cfg.config_file);

    int code = 0;
    Json doc;
    if (*info) {
      doc = space_info(spaces.get(space_name));
    } else if (*irreps) {
      const SymmetricSpaceModel sp = spaces.get(space_name);
      doc = Json::array();
      for (const auto& label : catalog_irreps(sp, rank, weight_bound)) {
        const AlgebraRep r = build_rep(sp, label);
        doc.push_back({{"rep", label}, {"dim", r.dim()}, {"type", std::string(to_string(classify_type(r).kind))}});
      }
    } else if (*classify) {
      doc = Json::array();
      for (const auto& r : classify_bundles(spaces.get(space_name), rank, weight_bound)) doc.push_back(to_json(r));
    } else if (*verify_cmd) {
      bool pass = false;
      doc = verify(spaces.get(space_name), rep_text, cfg.seed, samples, pass);
      code = pass ? 0 : 1;
    } else if (*cc) {
      doc = charclasses(spaces.get(space_name), rep_text);
    } else if (*sc) {
      doc = scalar(spaces.get(space_name), rep_text, radius, profile, fiber_radius, cfg.seed, samples);
    }
    emit(doc, cfg.output, out);
    set_eps(kDefaultEps);
    return code;
  } catch (const Error& e) {
    set_eps(kDefaultEps);
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  }
}

}  // namespace symcurv
