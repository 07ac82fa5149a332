#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "dgw/suites.hpp"

using namespace dgw;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string output;
};

Run run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + std::string(DGW_CLI_PATH) + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.output.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch() {
  fs::path dir = fs::temp_directory_path() / ("dgw_cli_" + std::to_string(getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
  fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("complexes and chain maps round trip through JSON") {
    std::mt19937_64 rng(3);
    for (Ring R : {Ring::fp(3), Ring::rationals(), Ring::integers()}) {
      ChainComplex x = random_complex(rng, R, {}), y = random_complex(rng, R, {});
      ChainMap f = random_chain_map(rng, x, y);
      CHECK(complex_from_json(to_json(x)) == x);
      CHECK(chain_map_from_json(to_json(f)) == f);
      CHECK(complex_from_json(parse_json(to_json(x).dump())) == x);
    }
    Json half = parse_json(R"({"ring": "Q", "ranks": {"0": 1, "1": 1}, "d": {"1": [["1/2"]]}})");
    CHECK(complex_from_json(half).d(1).at(0, 0) == Scalar(1, 2));
    CHECK(to_json(complex_from_json(half))["d"]["1"][0][0] == "1/2");
  }

  TEST_CASE("malformed inputs are reported with positions and reasons") {
    CHECK_THROWS_WITH_AS(parse_json("{\n  \"a\": [1,,2]}", "f.json"), doctest::Contains("f.json:2:11"), InputError);
    CHECK_THROWS_WITH_AS(complex_from_json(parse_json(R"({"ring": "F3", "ranks": {"0": 1, "1": 1, "2": 1},
                                                        "d": {"1": [["1"]], "2": [["1"]]}})")),
                         doctest::Contains("degree 2"), InputError);
    CHECK_THROWS_AS(complex_from_json(parse_json(R"({"ring": "F3", "ranks": {"x": 1}})")), InputError);
    CHECK_THROWS_AS(complex_from_json(parse_json(R"({"ring": "F3", "ranks": {"0": 1, "1": 2}, "d": {"1": [["1"]]}})")),
                    InputError);
    CHECK_THROWS_AS(complex_from_json(parse_json(R"({"ring": "R", "ranks": {}})")), InputError);
  }

  TEST_CASE("categories round trip through JSON") {
    for (const ReedyCategory& c : {truncated_delta(2), truncated_delta_op(2), discrete_category(2)}) {
      Json j = to_json(c);
      ReedyCategory back = category_from_json(parse_json(j.dump()));
      CHECK(back.object_count() == c.object_count());
      CHECK(back.morphism_count() == c.morphism_count());
      CHECK(to_json(back) == j);
    }
    Json j = to_json(truncated_delta(2));
    std::string victim;
    for (const auto& m : j["morphisms"])
      if (m["tag"] == "minus" && m["src"] != m["dst"]) victim = m["name"];
    REQUIRE(!victim.empty());
    j["compose"].erase(victim);
    CHECK_THROWS_WITH_AS(category_from_json(j), doctest::Contains("misses"), InputError);
  }

  TEST_CASE("report assembly is independent of the thread count") {
    SuiteConfig cfg;
    cfg.suite = "reedy";
    cfg.cases = 6;
    cfg.shape = "delta-op-1";
    cfg.threads = 1;
    Report one = run_suite(cfg);
    cfg.threads = 3;
    Report three = run_suite(cfg);
    CHECK(one.to_json().dump() == three.to_json().dump());
    CHECK(one.pass());
    CHECK(std::is_sorted(one.cases.begin(), one.cases.end(),
                         [](const CaseRecord& a, const CaseRecord& b) { return a.id < b.id; }));
    cfg.timing = true;
    CHECK(run_suite(cfg).to_json().contains("wall_time_s"));
  }

  TEST_CASE("adding cases leaves earlier records unchanged") {
    SuiteConfig cfg;
    cfg.suite = "wfs";
    cfg.ring = Ring::fp(2);
    cfg.max_rank = 2;
    cfg.cases = 4;
    Report small = run_suite(cfg);
    cfg.cases = 7;
    Report large = run_suite(cfg);
    for (std::size_t i = 0; i < small.cases.size(); ++i) {
      CHECK(small.cases[i].id == large.cases[i].id);
      CHECK(small.cases[i].digest == large.cases[i].digest);
    }
  }

  TEST_CASE("wfs runs are byte-identical") {
    const std::string a = (scratch() / "wfs_a.json").string(), b = (scratch() / "wfs_b.json").string();
    Run r1 = run_cli("wfs --cases 30 --seed 7 --out " + a);
    Run r2 = run_cli("wfs --cases 30 --seed 7 --out " + b, "DGW_THREADS=1");
    CHECK(r1.code == 0);
    CHECK(r2.code == 0);
    CHECK(read_file(a) == read_file(b));
    CHECK(r1.output.find("wfs: 30 cases, 0 failed, PASS") != std::string::npos);
    Json rep = parse_json(read_file(a));
    CHECK(rep["verdict"] == "pass");
    CHECK(rep["config"]["seed"] == 7);
    CHECK(rep["cases"].size() == 30);
  }

  TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli("wfs --bogus").code == 2);
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("frobnicate").code == 2);
    CHECK(run_cli("wfs --ring F4x").code == 2);
    CHECK(run_cli("reedy --ring Z --cases 1").code == 2);
    CHECK(run_cli("reedy --shape delta-op-7").code == 2);
    CHECK(run_cli("counterexample --ring Z").code == 2);
    CHECK(run_cli("counterexample --ring Q --m 3").code == 2);
    CHECK(run_cli("--help").code == 0);
  }

  TEST_CASE("validate reports the offending degree") {
    std::string bad = write_file("bad.json", R"({"ring": "F3", "ranks": {"0": 1, "1": 1, "2": 1},
                                                 "d": {"1": [["1"]], "2": [["1"]]}})");
    Run r = run_cli("validate " + bad);
    CHECK(r.code == 2);
    CHECK(r.output.find("d^2 != 0 at degree 2") != std::string::npos);
    std::string broken = write_file("broken.json", "{\"ring\": \"F3\",\n  \"ranks\": {\"0\": 1,,}}");
    r = run_cli("validate " + broken);
    CHECK(r.code == 2);
    CHECK(r.output.find("broken.json:2:20") != std::string::npos);
    std::string good = write_file("good.json", R"({"ring": "Z", "ranks": {"0": 1, "1": 1}, "d": {"1": [["2"]]}})");
    r = run_cli("validate " + good);
    CHECK(r.code == 0);
    CHECK(r.output.find("valid complex") != std::string::npos);
    CHECK(run_cli("validate " + (scratch() / "missing.json").string()).code == 2);
  }

  TEST_CASE("homology of a complex over Z") {
    std::string good = write_file("z.json", R"({"ring": "Z", "ranks": {"0": 1, "1": 1}, "d": {"1": [["2"]]}})");
    Run r = run_cli("homology " + good);
    CHECK(r.code == 0);
    Json j = parse_json(r.output);
    CHECK(j["homology"]["0"]["free_rank"] == 0);
    CHECK(j["homology"]["0"]["torsion"][0] == "2");
    CHECK(j["homology"]["1"]["free_rank"] == 0);
    Run k = run_cli("homology --kunneth --cases 10");
    CHECK(k.code == 0);
  }

  TEST_CASE("counterexample reports the difference tensor for every a") {
    const std::string out = (scratch() / "ce.json").string();
    Run r = run_cli("counterexample --ring F3 --m 2 --out " + out);
    Json rep = parse_json(read_file(out));
    CHECK(r.code == (rep["verdict"] == "pass" ? 0 : 1));
    std::size_t points = 0;
    for (const auto& c : rep["cases"])
      if (c["id"].get<std::string>().rfind("a=", 0) == 0) ++points;
    CHECK(points == 3);
    CHECK(r.output.find("a=0: 2*(x|x)⊗(x|x)") != std::string::npos);
  }

  TEST_CASE("suites read JSON inputs") {
    std::string cat = write_file("delta.json", to_json(truncated_delta_op(1)).dump(2));
    Run r = run_cli("reedy --category " + cat + " --cases 4 --ring F5");
    CHECK(r.code == 0);
    CHECK(run_cli("validate " + cat).output.find("Reedy category with 2 objects and 7 morphisms") != std::string::npos);
    std::string alg = write_file("alg.json", R"({"ring": "F5", "generators": [{"name": "x", "degree": 1}, {"name": "y", "degree": 2}],
                                                 "differential": {"y": [{"word": ["x"], "coeff": "1"}]}, "max_weight": 2})");
    r = run_cli("barcobar --algebra " + alg + " --max-weight 4 --window-report");
    CHECK(r.code == 0);
    CHECK(r.output.find("algebra-input window") != std::string::npos);
    std::string coalg = write_file("coalg.json", R"({"ring": "Q", "complex": {"ranks": {"2": 1}}, "names": ["x"], "max_weight": 3})");
    r = run_cli("barcobar --coalgebra " + coalg + " --max-weight 4");
    CHECK(r.code == 0);
    CHECK(run_cli("validate " + coalg).code == 0);
    std::string dxx = write_file("dxx.json", R"({"ring": "Q", "generators": [{"name": "x", "degree": 2}],
                                                 "differential": {"x": [{"word": ["x", "x"], "coeff": "1"}]}, "max_weight": 2})");
    CHECK(run_cli("validate " + dxx).code == 2);
  }

  TEST_CASE("other subcommands pass at small sizes") {
    CHECK(run_cli("wfs --property lifting --cases 20 --ring F5").code == 0);
    CHECK(run_cli("wfs --property two-of-six --cases 10 --deg-range -1 2").code == 0);
    CHECK(run_cli("distlaw --cases 3").code == 0);
    CHECK(run_cli("barcobar --two-sided --cases 2").code == 0);
  }
}
