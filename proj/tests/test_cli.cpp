#include <doctest.h>

#include "symcurv/cli.hpp"
#include "symcurv/serialize.hpp"
#include "symcurv/tolerance.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace symcurv;

namespace {

struct Run {
  int code;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("space-info") {
  const Run s4 = run({"space-info", "S4"});
  REQUIRE(s4.code == 0);
  const Json j = s4.json();
  REQUIRE(j["spectrum"].size() == 1);
  CHECK(j["spectrum"][0]["value"] == 1.0);
  CHECK(j["spectrum"][0]["multiplicity"] == 6);
  CHECK(j["condition_a"]["holds"] == true);
  CHECK(j["scalar_curvature"] == 12.0);

  CHECK(run({"space-info", "R2"}).json()["condition_a"]["holds"] == false);
  CHECK(run({"space-info", "S2×R2"}).json()["condition_a"]["holds"] == false);
  CHECK(run({"space-info", "CP2"}).json()["dim_kernel"] == 2);
  const Run bad = run({"space-info", "T9"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("UnknownSpace") != std::string::npos);
}

TEST_CASE("classify") {
  const Json j = run({"classify", "S4", "--rank", "4"}).json();
  int rank4 = 0;
  for (const auto& r : j) rank4 += r["rank"] == 4;
  CHECK(rank4 == 6);

  std::vector<std::string> rank3;
  for (const auto& r : run({"classify", "S3", "--rank", "3"}).json())
    if (r["rank"] == 3) rank3.push_back(r["rep"]);
  CHECK(rank3 == std::vector<std::string>{"su2:2", "trivial:3"});

  CHECK(run({"classify", "S4", "--rank", "0"}).json().empty());
  CHECK(run({"classify", "S2×S2", "--rank", "2"}).code == 2);
  CHECK(run({"classify", "S4"}).code == 3);  // --rank is required
}

TEST_CASE("verify") {
  const Run ok = run({"verify", "S4", "spin4:(1,0)"});
  CHECK(ok.code == 0);
  CHECK(ok.json()["pass"] == true);
  CHECK(ok.json()["checks"]["schur_constancy"]["applicable"] == true);

  const Json cp2 = run({"verify", "CP2", "un_det:1"}).json();
  CHECK(cp2["checks"]["kernel_inclusion"]["pass"] == true);
  CHECK(cp2["checks"]["kernel_inclusion"]["dim_kernel"] == 2);

  // reducible: Schur constancy is reported but not required
  const Run red = run({"verify", "S4", "sum(trivial:1,spin4:(2,0))"});
  CHECK(red.code == 0);
  CHECK(red.json()["checks"]["schur_constancy"]["pass"] == false);

  CHECK(run({"verify", "S4", "bogus:(9"}).code == 3);
  CHECK(run({"verify", "S4", "spin2:1"}).code == 2);
}

TEST_CASE("charclasses") {
  CHECK(run({"charclasses", "S2", "spin2:3"}).json()["euler"] == 3.0);
  const Json t = run({"charclasses", "S4", "spin4:(1,1)"}).json();
  CHECK(t["euler"] == 2.0);
  CHECK(t["p1"] == 0.0);
  CHECK(t["integral"] == true);
  CHECK(run({"charclasses", "S5", "spin_fund:5"}).code == 2);
  CHECK(run({"charclasses", "CP2", "un_det:2"}).json()["c1"] == 2.0);
}

TEST_CASE("scalar") {
  const Json j = run({"scalar", "S4", "spin4:(1,0)", "--radius", "0.5"}).json();
  CHECK(j["s_M"] == 12.0);
  CHECK(j["constant"] == true);
  CHECK(j["a_norm_min"].get<double>() == doctest::Approx(0.25 * 0.25 * j["c"].get<double>()));
  CHECK(j["s_F"].get<double>() == doctest::Approx(6.0 / 0.25));
  CHECK(run({"scalar", "S4", "spin4:(1,0)", "--radius", "-1"}).code == 3);
  CHECK(run({"scalar", "S4", "spin4:(1,0)", "--profile", "wavy"}).code == 3);
}

TEST_CASE("output formats") {
  const Run csv = run({"classify", "S2", "--rank", "2", "--output", "csv"});
  REQUIRE(csv.code == 0);
  std::istringstream in(csv.out);
  std::string header;
  std::getline(in, header);
  CHECK(header == "space,rep,rank,type,euler,p1,c1,c2,checks.bracket_identity,checks.kernel_inclusion,"
                  "checks.rho_roundtrip");
  const Run text = run({"--output", "text", "space-info", "S2"});
  CHECK(text.out.find("condition_a.holds: true") != std::string::npos);
  CHECK(run({"space-info", "S2", "--output", "yaml"}).code == 3);
}

TEST_CASE("tolerance override") {
  CHECK(run({"space-info", "S2", "--tol", "-1"}).code == 3);
  CHECK(run({"space-info", "S2", "--tol", "1e-7"}).code == 0);
  CHECK(eps() == 1e-9);  // restored after the run
  setenv("SYMCURV_TOL", "abc", 1);
  CHECK(run({"space-info", "S2"}).code == 3);
  setenv("SYMCURV_TOL", "1e-8", 1);
  CHECK(run({"space-info", "S2"}).code == 0);
  unsetenv("SYMCURV_TOL");
}

TEST_CASE("deterministic output") {
  const std::vector<std::string> args = {"verify", "CP2", "un_fund:0", "--seed", "17", "--samples", "20"};
  CHECK(run(args).out == run(args).out);
  CHECK(run({"classify", "S4", "--rank", "4"}).out == run({"classify", "S4", "--rank", "4"}).out);
}

TEST_CASE("config file adds spaces") {
  Json sp = space_to_json(catalog("S3"));
  sp["name"] = "MyS3";
  const std::string path = "test_cli_config.json";
  {
    std::ofstream f(path);
    f << Json{{"spaces", Json::array({sp})}}.dump();
  }
  const Run r = run({"--config", path, "space-info", "MyS3"});
  CHECK(r.code == 0);
  CHECK(r.json()["name"] == "MyS3");
  CHECK(run({"--config", "no_such_file.json", "space-info", "S2"}).code == 3);
  {
    std::ofstream f(path);
    f << "{ not json";
  }
  CHECK(run({"--config", path, "space-info", "S2"}).code == 3);
  std::remove(path.c_str());
}
