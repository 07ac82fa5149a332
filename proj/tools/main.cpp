#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "dgw/suites.hpp"

using namespace dgw;

namespace {

struct Common {
  std::string ring, out;
  std::uint64_t seed = 1;
  std::size_t cases = 0;
  std::optional<std::size_t> max_rank;
  std::optional<int> deg_lo, deg_hi;
  unsigned threads = 0;
  bool timing = false;
};

void add_common(CLI::App* app, Common& c, bool shapes = true) {
  app->add_option("--ring", c.ring, "coefficient ring: F2, F3, F5, Fp, Q or Z");
  app->add_option("--seed", c.seed, "suite seed");
  app->add_option("--cases", c.cases, "number of random cases (0: suite default)");
  app->add_option("--out", c.out, "write the JSON report here");
  app->add_option("--threads", c.threads, "worker threads (capped by DGW_THREADS)");
  app->add_flag("--timing", c.timing, "record wall time in the JSON report");
  if (shapes) {
    app->add_option("--max-rank", c.max_rank, "largest rank per degree");
    app->add_option("--deg-lo", c.deg_lo, "lowest degree");
    app->add_option("--deg-hi", c.deg_hi, "highest degree");
  }
}

SuiteConfig config_from(const std::string& suite, const Common& c) {
  SuiteConfig cfg;
  cfg.suite = suite;
  if (!c.ring.empty()) cfg.ring = Ring::parse(c.ring);
  cfg.seed = c.seed;
  cfg.cases = c.cases;
  cfg.max_rank = c.max_rank;
  cfg.deg_lo = c.deg_lo;
  cfg.deg_hi = c.deg_hi;
  cfg.threads = c.threads;
  cfg.timing = c.timing;
  return cfg;
}

void write_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

int finish(const Report& rep, const std::string& out, bool windows = false) {
  if (!out.empty()) write_json(out, rep.to_json());
  std::cout << rep.summary(windows);
  return rep.pass() ? 0 : 1;
}

Json homology_json(const ChainComplex& x) {
  Json j = Json::object();
  if (!x.is_zero())
    for (int n = x.lo(); n <= x.hi(); ++n) {
      HomologyGroup h = homology(x, n);
      Json t = Json::array();
      for (const auto& s : h.torsion) t.push_back(scalar_to_string(s));
      j[std::to_string(n)] = {{"free_rank", h.free_rank}, {"torsion", t}};
    }
  return j;
}

std::string validate(const Json& j) {
  const std::string kind = json_kind(j);
  if (kind == "complex") {
    ChainComplex x = complex_from_json(j);
    return "complex with total rank " + std::to_string(x.total_rank());
  }
  if (kind == "chain_map") {
    chain_map_from_json(j);
    return "chain map";
  }
  if (kind == "category") {
    ReedyCategory c = category_from_json(j);
    return "Reedy category with " + std::to_string(c.object_count()) + " objects and " + std::to_string(c.morphism_count()) +
           " morphisms";
  }
  if (kind == "algebra") {
    DGAlgebra a = algebra_from_json(j);
    auto bad = check_algebra(a);
    if (!bad.empty()) throw InputError(bad.front());
    return "algebra with total rank " + std::to_string(a.complex.total_rank());
  }
  if (kind == "coalgebra") {
    DGCoalgebra d = coalgebra_from_json(j);
    auto bad = check_coalgebra(d);
    if (!bad.empty()) throw InputError(bad.front());
    return "coalgebra with total rank " + std::to_string(d.complex.total_rank());
  }
  throw InputError("unknown kind '" + kind + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dgw: verification suites for chain complexes, bar/cobar, distributive laws and Reedy diagrams"};
  app.require_subcommand(1);

  Common wfs_opt;
  std::string property = "factor";
  auto* wfs = app.add_subcommand("wfs", "Hurewicz factorizations, lifting and 2-of-6 on random maps");
  add_common(wfs, wfs_opt);
  std::vector<int> deg_range;
  wfs->add_option("--deg-range", deg_range, "lowest and highest degree")->expected(2);
  wfs->add_option("--property", property, "factor, lifting or two-of-six")
      ->check(CLI::IsMember({"factor", "lifting", "two-of-six"}));

  Common bc_opt;
  std::string algebra_file, coalgebra_file;
  std::size_t max_weight = 6;
  bool window_report = false, two_sided = false;
  auto* bc = app.add_subcommand("barcobar", "bar/cobar counit and unit on the regression set or given inputs");
  add_common(bc, bc_opt, false);
  bc->add_option("--algebra", algebra_file, "algebra JSON file");
  bc->add_option("--coalgebra", coalgebra_file, "coalgebra JSON file");
  bc->add_option("--max-weight", max_weight, "bar/cobar word-length truncation");
  bc->add_flag("--window-report", window_report, "print the certified window of every case");
  bc->add_flag("--two-sided", two_sided, "two-sided bar resolutions with coactions instead");

  Common dl_opt;
  auto* dl = app.add_subcommand("distlaw", "distributive-law diagrams for χ, its sign mutations and the Reedy χ");
  add_common(dl, dl_opt, false);

  Common ce_opt;
  int m = 2;
  auto* ce = app.add_subcommand("counterexample", "obstruction tensor for lifting along the cofree bialgebra");
  add_common(ce, ce_opt, false);
  ce->add_option("--m", m, "even degree of the generator");

  Common rd_opt;
  std::string shape = "delta-op-2", category_file;
  auto* rd = app.add_subcommand("reedy", "latching, matching, exact squares and classification on Reedy diagrams");
  add_common(rd, rd_opt);
  rd->add_option("--shape", shape, "delta-N or delta-op-N, N <= 3");
  rd->add_option("--category", category_file, "category JSON file");

  Common hm_opt;
  std::string complex_file;
  bool kunneth = false;
  auto* hm = app.add_subcommand("homology", "homology of a complex, or the Künneth rank suite");
  add_common(hm, hm_opt);
  hm->add_option("file", complex_file, "complex JSON file");
  hm->add_flag("--kunneth", kunneth, "run the Künneth rank suite on random pairs");

  std::string validate_file;
  auto* va = app.add_subcommand("validate", "validate a JSON complex, chain map, category, algebra or coalgebra");
  va->add_option("file", validate_file, "JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*wfs) {
      const std::string suite = property == "factor" ? "wfs" : property;
      SuiteConfig cfg = config_from(suite, wfs_opt);
      if (!deg_range.empty()) {
        cfg.deg_lo = deg_range[0];
        cfg.deg_hi = deg_range[1];
      }
      return finish(run_suite(cfg), wfs_opt.out);
    }
    if (*bc) {
      SuiteConfig cfg = config_from(two_sided ? "two-sided-bar" : "barcobar", bc_opt);
      cfg.max_weight = max_weight;
      if (!algebra_file.empty()) cfg.algebra = load_json_file(algebra_file);
      if (!coalgebra_file.empty()) cfg.coalgebra = load_json_file(coalgebra_file);
      return finish(run_suite(cfg), bc_opt.out, window_report);
    }
    if (*dl) return finish(run_suite(config_from("distlaw", dl_opt)), dl_opt.out);
    if (*ce) {
      SuiteConfig cfg = config_from("counterexample", ce_opt);
      cfg.m = m;
      Report rep = run_suite(cfg);
      for (const auto& c : rep.cases)
        if (c.detail.contains("difference")) std::cout << "  " << c.id << ": " << c.detail["difference"].get<std::string>() << "\n";
      return finish(rep, ce_opt.out);
    }
    if (*rd) {
      SuiteConfig cfg = config_from("reedy", rd_opt);
      cfg.shape = shape;
      if (!category_file.empty()) cfg.category = load_json_file(category_file);
      return finish(run_suite(cfg), rd_opt.out);
    }
    if (*hm) {
      if (kunneth) return finish(run_suite(config_from("kunneth", hm_opt)), hm_opt.out);
      if (complex_file.empty()) throw InputError("homology needs a complex file or --kunneth");
      ChainComplex x = complex_from_json(load_json_file(complex_file));
      Json j{{"ring", x.ring().is_fp() ? "F" + std::to_string(x.ring().characteristic()) : x.ring().name()},
             {"homology", homology_json(x)}};
      if (!hm_opt.out.empty()) write_json(hm_opt.out, j);
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    const std::string what = validate(load_json_file(validate_file));
    std::cout << "valid " << what << "\n";
    return 0;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
