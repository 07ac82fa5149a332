#include "dgw/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <thread>

#include "dgw/barcobar.hpp"
#include "dgw/bialg.hpp"
#include "dgw/catalog.hpp"
#include "dgw/distlaw.hpp"
#include "dgw/wfs.hpp"

namespace dgw {

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"wfs",     "lifting",  "two-of-six",     "kunneth", "barcobar",
                                              "two-sided-bar", "distlaw", "counterexample", "reedy"};
  return names;
}

unsigned thread_count(unsigned requested) {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  unsigned n = requested ? requested : hw;
  if (const char* env = std::getenv("DGW_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end && *end == '\0' && cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return std::max(1u, n);
}

bool Report::pass() const { return failed() == 0; }

std::size_t Report::failed() const {
  return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const CaseRecord& c) { return !c.pass; }));
}

Json Report::to_json() const {
  Json j;
  j["suite"] = suite;
  j["config"] = config;
  j["verdict"] = pass() ? "pass" : "fail";
  j["cases_total"] = cases.size();
  j["cases_failed"] = failed();
  Json cs = Json::array();
  for (const auto& c : cases)
    cs.push_back({{"id", c.id}, {"inputs_digest", c.digest}, {"verdict", c.pass ? "pass" : "fail"}, {"detail", c.detail}});
  j["cases"] = cs;
  if (timing) j["wall_time_s"] = seconds;
  return j;
}

std::string Report::summary(bool windows) const {
  std::ostringstream out;
  char t[32];
  std::snprintf(t, sizeof t, "%.2f", seconds);
  out << suite << ": " << cases.size() << " cases, " << failed() << " failed, " << (pass() ? "PASS" : "FAIL") << " ("
      << t << " s)\n";
  std::size_t shown = 0;
  for (const auto& c : cases) {
    if (windows && c.detail.contains("window")) out << "  " << c.id << " window " << c.detail["window"].dump() << "\n";
    if (!c.pass && shown++ < 10) out << "  failed " << c.id << ": " << c.detail.dump() << "\n";
  }
  return out.str();
}

namespace {

using CaseFn = std::function<CaseRecord(std::size_t)>;

std::vector<CaseRecord> run_cases(std::size_t n, unsigned threads, const CaseFn& fn) {
  std::vector<CaseRecord> out(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < n;) {
      try {
        out[i] = fn(i);
      } catch (const std::exception& e) {
        out[i].pass = false;
        out[i].detail = {{"error", e.what()}};
      }
    }
  };
  const unsigned k = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1)));
  if (k <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < k; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return out;
}

std::string case_id(const std::string& prefix, std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04zu", i);
  return prefix + "-" + buf;
}

std::string ring_label(const Ring& r) { return r.is_fp() ? "F" + std::to_string(r.characteristic()) : r.name(); }

RandomSpec shape_of(const SuiteConfig& c, RandomSpec base) {
  if (c.max_rank) base.max_rank = *c.max_rank;
  if (c.deg_lo) base.deg_lo = *c.deg_lo;
  if (c.deg_hi) base.deg_hi = *c.deg_hi;
  if (base.deg_lo > base.deg_hi) throw InputError("empty degree range");
  return base;
}

// records a named boolean check and keeps the first failing one
struct Checks {
  Json detail = Json::object();
  bool ok = true;
  void add(const std::string& name, bool value) {
    detail[name] = value;
    ok = ok && value;
  }
  void add(const std::string& name, const std::vector<std::string>& failures) {
    if (failures.empty()) {
      detail[name] = true;
    } else {
      detail[name] = failures.front();
      ok = false;
    }
  }
};

CaseRecord record(std::string id, const Json& inputs, Checks& c) {
  CaseRecord r;
  r.id = std::move(id);
  r.digest = digest(inputs);
  r.pass = c.ok;
  r.detail = c.detail;
  return r;
}

ChainMap inverse_map(const ChainMap& f) {
  std::map<int, Matrix> m;
  const ChainComplex& x = f.src();
  if (!x.is_zero())
    for (int n = x.lo(); n <= x.hi(); ++n) m[n] = inverse(f.at(n)).value();
  return ChainMap(f.dst(), f.src(), m);
}

// ---------------------------------------------------------------- wfs

CaseRecord wfs_case(const SuiteConfig& cfg, const Ring& R, const RandomSpec& spec, std::size_t i) {
  std::mt19937_64 rng(case_seed(cfg.seed, i));
  ChainComplex x = random_complex(rng, R, spec), y = random_complex(rng, R, spec), y2 = random_complex(rng, R, spec);
  ChainMap f = random_chain_map(rng, x, y);
  ChainMap b = random_chain_map(rng, y, y2);
  ChainMap aut = random_automorphism(rng, x);
  ChainMap g = compose(b, compose(f, inverse_map(aut)));
  Checks c;
  Factorization m = factor_cof_then_acyclic_fib(f), n = factor_acyclic_cof_then_fib(f);
  c.add("cylinder_composes", compose(m.right, m.left) == f);
  c.add("cylinder_classes", m.left_class == MapClass::Cof && m.right_class == MapClass::AcyclicFib &&
                                in_class(m.left, m.left_class) && in_class(m.right, m.right_class));
  c.add("cocylinder_composes", compose(n.right, n.left) == f);
  c.add("cocylinder_classes", n.left_class == MapClass::AcyclicCof && n.right_class == MapClass::Fib &&
                                  in_class(n.left, n.left_class) && in_class(n.right, n.right_class));
  Factorization mg = factor_cof_then_acyclic_fib(g), ng = factor_acyclic_cof_then_fib(g);
  ChainMap mm = cylinder_functor(f, g, aut, b), nn = cocylinder_functor(f, g, aut, b);
  c.add("cylinder_functorial", compose(mm, m.left) == compose(mg.left, aut) && compose(mg.right, mm) == compose(b, m.right));
  c.add("cocylinder_functorial",
        compose(nn, n.left) == compose(ng.left, aut) && compose(ng.right, nn) == compose(b, n.right));
  Json inputs{{"f", to_json(f)}, {"square", {{"top", to_json(aut)}, {"bottom", to_json(b)}}}};
  if (!c.ok) c.detail["witness"] = inputs;
  return record(case_id("map", i), inputs, c);
}

// ---------------------------------------------------------------- lifting

bool brute_force_lift_exists(const LiftingProblem& p) {
  const ChainComplex& B = p.left.dst();
  const ChainComplex& X = p.right.src();
  const Ring R = Ring::fp(2);
  std::vector<std::pair<int, std::pair<std::size_t, std::size_t>>> slots;
  if (!B.is_zero())
    for (int n = B.lo(); n <= B.hi(); ++n)
      for (std::size_t r = 0; r < X.rank(n); ++r)
        for (std::size_t col = 0; col < B.rank(n); ++col) slots.push_back({n, {r, col}});
  for (std::uint64_t mask = 0; mask < (1ULL << slots.size()); ++mask) {
    GradedMap g(B, X, 0);
    std::map<int, Matrix> m;
    if (!B.is_zero())
      for (int n = B.lo(); n <= B.hi(); ++n) m[n] = Matrix(R, X.rank(n), B.rank(n));
    for (std::size_t k = 0; k < slots.size(); ++k)
      if (mask >> k & 1) m[slots[k].first].set(slots[k].second.first, slots[k].second.second, 1);
    for (auto& [n, mat] : m) g.set(n, mat);
    if (!is_chain_map(g)) continue;
    ChainMap cm(g, false);
    if (compose(cm, p.left) == p.top && compose(p.right, cm) == p.bottom) return true;
  }
  return false;
}

std::size_t lift_slots(const LiftingProblem& p) {
  const ChainComplex& B = p.left.dst();
  std::size_t s = 0;
  if (!B.is_zero())
    for (int n = B.lo(); n <= B.hi(); ++n) s += B.rank(n) * p.right.src().rank(n);
  return s;
}

Json problem_json(const LiftingProblem& p) {
  return {{"left", to_json(p.left)}, {"right", to_json(p.right)}, {"top", to_json(p.top)}, {"bottom", to_json(p.bottom)}};
}

std::vector<CaseRecord> lifting_suite(const SuiteConfig& cfg, const Ring& R, unsigned threads) {
  const RandomSpec spec = shape_of(cfg, {-1, 2, 3, 2});
  const std::size_t solvable = cfg.cases ? cfg.cases : 200;
  const std::size_t unsolvable = std::max<std::size_t>(1, solvable / 10);
  const std::size_t brute = std::max<std::size_t>(1, solvable / 20);
  return run_cases(solvable + unsolvable + brute, threads, [&](std::size_t i) {
    Checks c;
    if (i < solvable) {
      std::mt19937_64 rng(case_seed(cfg.seed, i));
      LiftingProblem p = random_solvable_problem(rng, R, spec);
      auto lift = solve_lift(p);
      c.add("solved", lift.has_value());
      if (lift) {
        c.add("upper_triangle", compose(*lift, p.left) == p.top);
        c.add("lower_triangle", compose(p.right, *lift) == p.bottom);
      }
      Json in = problem_json(p);
      if (!c.ok) c.detail["witness"] = in;
      return record(case_id("solvable", i), in, c);
    }
    if (i < solvable + unsolvable) {
      const std::size_t k = i - solvable;
      std::mt19937_64 rng(case_seed(cfg.seed ^ 0x5bd1e995ULL, k));
      for (int attempt = 0; attempt < 200; ++attempt) {
        auto p = random_unsolvable_problem(rng, R, spec);
        if (!p) continue;
        c.add("rejected", !solve_lift(*p).has_value());
        Json in = problem_json(*p);
        if (!c.ok) c.detail["witness"] = in;
        return record(case_id("unsolvable", k), in, c);
      }
      c.add("generated", false);
      return record(case_id("unsolvable", k), Json(), c);
    }
    const std::size_t k = i - solvable - unsolvable;
    const Ring F2 = Ring::fp(2);
    const RandomSpec tiny{0, 1, 2, 1};
    std::mt19937_64 rng(case_seed(cfg.seed ^ 0x9e3779b9ULL, k));
    for (int attempt = 0; attempt < 5000; ++attempt) {
      ChainComplex a = random_complex(rng, F2, tiny), b = random_complex(rng, F2, tiny);
      ChainComplex x = random_complex(rng, F2, tiny), y = random_complex(rng, F2, tiny);
      LiftingProblem p{random_chain_map(rng, a, b), random_chain_map(rng, x, y), {}, {}};
      p.top = random_chain_map(rng, a, x);
      p.bottom = random_chain_map(rng, b, y);
      if (!p.commutes() || lift_slots(p) > 16) continue;
      const bool expect = brute_force_lift_exists(p);
      c.add("agrees_with_enumeration", solve_lift(p).has_value() == expect);
      c.detail["solvable"] = expect;
      Json in = problem_json(p);
      if (!c.ok) c.detail["witness"] = in;
      return record(case_id("enumerated", k), in, c);
    }
    c.add("generated", false);
    return record(case_id("enumerated", k), Json(), c);
  });
}

// ---------------------------------------------------------------- two of six, Künneth

CaseRecord two_of_six_case(const SuiteConfig& cfg, const Ring& R, const RandomSpec& spec, std::size_t i) {
  std::mt19937_64 rng(case_seed(cfg.seed, i));
  ChainComplex x = random_complex(rng, R, spec);
  ChainMap f = random_equivalence_from(rng, x, spec);
  ChainMap g = random_equivalence_from(rng, f.dst(), spec);
  ChainMap h = random_equivalence_from(rng, g.dst(), spec);
  TwoOfSixReport rep = check_two_of_six(f, g, h);
  Checks c;
  c.add("hypothesis", rep.hypothesis_met);
  c.add("f", rep.f);
  c.add("g", rep.g);
  c.add("h", rep.h);
  c.add("hgf", rep.hgf);
  c.add("violations", rep.violations);
  Json in{{"f", to_json(f)}, {"g", to_json(g)}, {"h", to_json(h)}};
  if (!c.ok) c.detail["witness"] = in;
  return record(case_id("triple", i), in, c);
}

CaseRecord kunneth_case(const SuiteConfig& cfg, const Ring& R, const RandomSpec& spec, std::size_t i) {
  std::mt19937_64 rng(case_seed(cfg.seed, i));
  ChainComplex x = random_complex(rng, R, spec), y = random_complex(rng, R, spec);
  ChainComplex xy = tensor(x, y);
  Checks c;
  Json ranks = Json::object();
  if (!xy.is_zero())
    for (int n = xy.lo(); n <= xy.hi(); ++n) {
      std::size_t expect = 0;
      for (int p = x.lo(); p <= x.hi(); ++p) expect += homology(x, p).free_rank * homology(y, n - p).free_rank;
      const std::size_t got = homology(xy, n).free_rank;
      ranks[std::to_string(n)] = got;
      c.add("degree " + std::to_string(n), got == expect);
    }
  c.detail["tensor_homology_ranks"] = ranks;
  Json in{{"x", to_json(x)}, {"y", to_json(y)}};
  if (!c.ok) c.detail["witness"] = in;
  return record(case_id("pair", i), in, c);
}

// ---------------------------------------------------------------- bar and cobar

bool squares_to_zero(const ChainComplex& x) {
  for (Cell c : cells_of(x))
    if (!differential(x, differential(x, unit_vec(c))).empty()) return false;
  return true;
}

Json window_json(const Window& w) { return Json::array({w.lo, w.hi}); }

CaseRecord algebra_case(const std::string& name, const DGAlgebra& a, std::size_t max_weight) {
  Checks c;
  c.add("algebra", check_algebra(a));
  CounitResult r = counit_eps(a, max_weight);
  c.add("bar_d_squared", squares_to_zero(r.bar.coalgebra.complex));
  c.add("cobar_d_squared", squares_to_zero(r.cobar.algebra.complex));
  c.add("bar_coalgebra", check_coalgebra(r.bar.coalgebra));
  c.add("cobar_algebra", check_algebra(r.cobar.algebra));
  c.add("window_nonempty", !r.window.empty());
  c.add("counit_algebra_map", check_algebra_map(r.eps, r.window));
  c.add("cone_acyclic_in_window", quasi_iso_in(r.eps.map, r.window));
  c.detail["window"] = window_json(r.window);
  return record("algebra-" + name, to_json(a.complex), c);
}

CaseRecord coalgebra_case(const std::string& name, const DGCoalgebra& d, std::size_t max_weight) {
  Checks c;
  c.add("coalgebra", check_coalgebra(d));
  UnitResult r = unit_eta(d, max_weight);
  c.add("cobar_d_squared", squares_to_zero(r.cobar.algebra.complex));
  c.add("bar_d_squared", squares_to_zero(r.bar.coalgebra.complex));
  c.add("cobar_algebra", check_algebra(r.cobar.algebra));
  c.add("bar_coalgebra", check_coalgebra(r.bar.coalgebra));
  c.add("window_nonempty", !r.window.empty());
  c.add("unit_coalgebra_map", check_coalgebra_map(r.eta, r.window));
  c.add("cone_acyclic_in_window", quasi_iso_in(r.eta.map, r.window));
  c.detail["window"] = window_json(r.window);
  return record("coalgebra-" + name, to_json(d.complex), c);
}

std::vector<CaseRecord> barcobar_suite(const SuiteConfig& cfg, const Ring& R, unsigned threads) {
  std::vector<CaseFn> jobs;
  if (cfg.algebra || cfg.coalgebra) {
    if (cfg.algebra) {
      DGAlgebra a = algebra_from_json(*cfg.algebra);
      jobs.push_back([a, &cfg](std::size_t) { return algebra_case("input", a, cfg.max_weight); });
    }
    if (cfg.coalgebra) {
      DGCoalgebra d = coalgebra_from_json(*cfg.coalgebra);
      jobs.push_back([d, &cfg](std::size_t) { return coalgebra_case("input", d, cfg.max_weight); });
    }
  } else {
    for (const auto& a : regression_algebras(R))
      jobs.push_back([a, &cfg](std::size_t) { return algebra_case(a.name, a.algebra, cfg.max_weight); });
    for (const auto& d : regression_coalgebras(R))
      jobs.push_back([d, &cfg](std::size_t) { return coalgebra_case(d.name, d.coalgebra, cfg.max_weight); });
  }
  return run_cases(jobs.size(), threads, [&](std::size_t i) { return jobs[i](i); });
}

CaseRecord two_sided_case(const SuiteConfig& cfg, const Ring& R, std::size_t i) {
  std::mt19937_64 rng(case_seed(cfg.seed, i));
  const std::vector<std::size_t> algebras{1, 2, 3, 5, 7};
  const std::vector<std::size_t> coalgebras{0, 1, 2, 3};
  const NamedAlgebra a = regression_algebras(R)[algebras[rng() % algebras.size()]];
  const NamedCoalgebra d = regression_coalgebras(R)[coalgebras[rng() % coalgebras.size()]];
  DGModule y = free_module(a.algebra);
  const bool doubled = rng() % 2;
  if (doubled) y = direct_sum_module(y, free_module(a.algebra));
  CoringComodule x = tensor_with_coalgebra(y, d.coalgebra);
  TwoSidedBar t = two_sided_bar(x, {3, 0, 10});
  Checks c;
  c.add("input_module", check_module(x.module));
  c.add("input_comodule", check_comodule(x.comodule));
  c.add("module", check_module(t.module));
  c.add("augmentation_module_map", check_module_map(t.aug));
  c.add("has_coaction", t.coaction.has_value());
  if (t.coaction) {
    c.add("coaction_is_comodule", check_comodule(*t.coaction));
    c.add("augmentation_comodule_map", check_comodule_map(ComoduleMap{*t.coaction, *t.target_coaction, t.aug.map}));
  }
  c.add("window_nonempty", !t.window.empty());
  c.add("quasi_iso_in_window", quasi_iso_in(t.aug.map, t.window));
  c.detail["algebra"] = a.name;
  c.detail["coalgebra"] = d.name;
  c.detail["copies"] = doubled ? 2 : 1;
  c.detail["window"] = window_json(t.window);
  Json in{{"algebra", a.name}, {"coalgebra", d.name}, {"copies", doubled ? 2 : 1}};
  return record(case_id("triple", i), in, c);
}

// ---------------------------------------------------------------- distributive laws

ChainComplex nonzero_complex(std::mt19937_64& rng, const Ring& R) {
  for (;;) {
    ChainComplex x = random_complex(rng, R, {0, 2, 1, 2});
    if (x.total_rank() > 0) return x;
  }
}

Json law_detail(const std::vector<DiagramReport>& rep) {
  Json j = Json::object();
  for (const auto& d : rep)
    j[d.diagram] = {{"checked", d.checked}, {"ok", d.ok()}, {"first_failure", d.failures.empty() ? "" : d.failures.front()}};
  return j;
}

ReedyCategory shape_category(const std::string& name) {
  auto number = [&](const std::string& prefix) -> std::optional<int> {
    if (name.rfind(prefix, 0) != 0) return std::nullopt;
    std::string rest = name.substr(prefix.size());
    if (rest.size() != 1 || !std::isdigit(static_cast<unsigned char>(rest[0]))) return std::nullopt;
    return rest[0] - '0';
  };
  if (auto n = number("delta-op-")) return truncated_delta_op(*n);
  if (auto n = number("delta-")) return truncated_delta(*n);
  throw InputError("unknown shape '" + name + "' (expected delta-N or delta-op-N)");
}

std::vector<CaseRecord> distlaw_suite(const SuiteConfig& cfg, const Ring& R, unsigned threads) {
  const std::size_t samples = cfg.cases ? cfg.cases : 20;
  const auto mutations = chi_mutations();
  const std::vector<std::string> shapes{"delta-1", "delta-2", "delta-op-1", "delta-op-2"};
  return run_cases(samples + mutations.size() + shapes.size(), threads, [&](std::size_t i) {
    Checks c;
    if (i < samples) {
      std::mt19937_64 rng(case_seed(cfg.seed, i));
      ChainComplex x = nonzero_complex(rng, R), y = nonzero_complex(rng, R);
      ChainMap f = random_chain_map(rng, x, y);
      Bialgebra h = i % 3 == 0 ? group_bialgebra(R, 2) : exterior_bialgebra(R, i % 3 == 1 ? 1 : 3);
      auto rep = check_distributive_law(comodule_algebra_law(x, h, 3, f));
      for (const auto& d : rep) c.add(d.diagram, d.ok());
      c.detail["bialgebra"] = h.name;
      c.detail["diagrams"] = law_detail(rep);
      return record(case_id("sample", i), {{"x", to_json(x)}, {"f", to_json(f)}, {"h", h.name}}, c);
    }
    if (i < samples + mutations.size()) {
      const ChiVariant& v = mutations[i - samples];
      ChainComplex x(R, {{1, 1}, {2, 1}});
      auto rep = check_distributive_law(comodule_algebra_law(x, exterior_bialgebra(R, 1), 3, v));
      c.add("detected", !all_ok(rep));
      c.detail["mutation"] = v.name();
      c.detail["diagrams"] = law_detail(rep);
      return record(case_id("mutation", i - samples), {{"mutation", v.name()}}, c);
    }
    const std::string& shape = shapes[i - samples - mutations.size()];
    ReedyCategory cat = shape_category(shape);
    std::mt19937_64 rng(case_seed(cfg.seed ^ 0x2545f491ULL, i));
    std::vector<ChainComplex> fam, other;
    std::vector<ChainMap> maps;
    for (std::size_t x = 0; x < cat.object_count(); ++x) {
      fam.push_back(random_complex(rng, R, {0, 1, 1, 2}));
      other.push_back(random_complex(rng, R, {0, 1, 1, 2}));
      maps.push_back(random_chain_map(rng, fam.back(), other.back()));
    }
    auto rep = check_distributive_law(reedy_distributive_law(cat, fam, other, maps));
    for (const auto& d : rep) c.add(d.diagram, d.ok());
    c.detail["diagrams"] = law_detail(rep);
    Json in = Json::array();
    for (const auto& f : maps) in.push_back(to_json(f));
    return record("reedy-" + shape, in, c);
  });
}

// ---------------------------------------------------------------- counterexample

std::vector<CaseRecord> counterexample_suite(const SuiteConfig& cfg, const Ring& R) {
  ObstructionReport rep = counterexample_obstruction(cfg.m, R);
  std::vector<CaseRecord> out;
  const Json in{{"m", cfg.m}, {"ring", ring_label(R)}};
  const Word xx{0, 0};
  {
    Checks c;
    c.add("p_respects_structure", rep.p_respects_structure);
    c.add("not_identically_zero", !rep.identically_zero());
    Json coeffs = Json::object();
    for (std::size_t k = 0; k < rep.coefficients.size(); ++k) coeffs["a^" + std::to_string(k)] = rep.tensor_string(rep.coefficients[k]);
    c.detail["coefficients"] = coeffs;
    Json forced = Json::object();
    for (const auto& [g, v] : rep.forced) forced[g] = v;
    c.detail["forced"] = forced;
    c.detail["a_forced_by_counit"] = rep.a_forced_by_counit ? scalar_to_string(*rep.a_forced_by_counit) : "none";
    Json zeros = Json::array();
    for (const auto& a : rep.vanishing_at) zeros.push_back(scalar_to_string(a));
    c.detail["vanishing_at"] = zeros;
    out.push_back(record("difference-tensor", in, c));
  }
  std::vector<Scalar> points;
  if (R.is_fp()) {
    for (const auto& [a, nonzero] : rep.sweep) points.push_back(a);
  } else {
    points.push_back(Scalar(0));
    for (const auto& a : rep.vanishing_at)
      if (a != 0) points.push_back(a);
  }
  for (const Scalar& a : points) {
    Checks c;
    Vec2 d = rep.at(a);
    c.add("obstruction_nonzero", !d.empty());
    c.detail["difference"] = rep.tensor_string(d);
    c.detail["coefficient_xx_xx"] = scalar_to_string(rep.coefficient(d, xx, xx));
    out.push_back(record("a=" + scalar_to_string(a), in, c));
  }
  return out;
}

// ---------------------------------------------------------------- Reedy

std::optional<int> simplicial_level(const std::string& shape) {
  if (shape.rfind("delta-op-", 0) == 0) return shape.back() - '0';
  return std::nullopt;
}

std::string digits_name(int a, int b, const std::vector<int>& v) {
  std::string s = std::to_string(a) + "->" + std::to_string(b) + ":";
  for (int t : v) s += std::to_string(t);
  return s;
}

// latching and matching at [k] against degeneracies and compatible face tuples
std::vector<std::string> simplicial_comparison(const ReedyCategory& c, const Diagram& x, int k) {
  std::vector<std::string> out;
  const Ring R = x.at[k].ring();
  std::vector<int> degen, faces, lower_faces;
  for (int j = 0; j < k; ++j) {
    std::vector<int> v;
    for (int t = 0; t <= k; ++t) v.push_back(t <= j ? t : t - 1);
    degen.push_back(c.find_morphism(digits_name(k, k - 1, v)));
  }
  auto face = [&](int level, int i) {
    std::vector<int> v;
    for (int t = 0; t <= level; ++t)
      if (t != i) v.push_back(t);
    return c.find_morphism(digits_name(level - 1, level, v));
  };
  for (int i = 0; i <= k; ++i) faces.push_back(face(k, i));
  if (k >= 2)
    for (int i = 0; i < k; ++i) lower_faces.push_back(face(k - 1, i));
  Latching l = latching(x, k);
  Matching m = matching(x, k);
  if (x.at[k].is_zero()) return out;
  for (int n = x.at[k].lo(); n <= x.at[k].hi(); ++n) {
    const std::string at = " in degree " + std::to_string(n);
    Matrix span(R, x.at[k].rank(n), 0);
    for (int s : degen) span = span.hcat(x.of(s).at(n));
    if (rank(l.canonical.at(n)) != l.object.rank(n)) out.push_back("latching map not injective" + at);
    if (rank(span) != l.object.rank(n) || rank(span.hcat(l.canonical.at(n))) != rank(span))
      out.push_back("latching image differs from the span of degeneracies" + at);
    const std::size_t r1 = x.at[k - 1].rank(n);
    const std::size_t r0 = k >= 2 ? x.at[k - 2].rank(n) : 0;
    std::size_t offset = 0;
    std::vector<std::size_t> where;
    for (int g : m.slice) {
      where.push_back(offset);
      offset += x.at[c.morphism(g).dst].rank(n);
    }
    Matrix pick(R, (k + 1) * r1, offset);
    for (int i = 0; i <= k; ++i) {
      auto it = std::find(m.slice.begin(), m.slice.end(), faces[i]);
      if (it == m.slice.end()) throw Error("face missing from the matching slice");
      pick.add_block(i * r1, where[it - m.slice.begin()], Matrix::identity(R, r1), 1);
    }
    const std::size_t pairs = static_cast<std::size_t>(k * (k + 1) / 2);
    Matrix cons(R, pairs * r0, (k + 1) * r1);
    std::size_t row = 0;
    if (k >= 2)
      for (int i = 0; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j) {
          cons.add_block(row, j * r1, x.of(lower_faces[i]).at(n), 1);
          cons.add_block(row, i * r1, x.of(lower_faces[j - 1]).at(n), -1);
          row += r0;
        }
    Matrix tuple = pick * m.inclusion.at(n);
    Matrix stacked(R, 0, x.at[k].rank(n));
    for (int f : faces) stacked = stacked.vcat(x.of(f).at(n));
    if (kernel_basis(cons).cols() != m.object.rank(n) || rank(tuple) != m.object.rank(n) || !(cons * tuple).is_zero())
      out.push_back("matching object differs from compatible face tuples" + at);
    if (!(tuple * m.canonical.at(n) == stacked)) out.push_back("matching map is not the tuple of faces" + at);
  }
  return out;
}

std::vector<CaseRecord> reedy_golden(const Ring& R) {
  std::vector<CaseRecord> out;
  const ReedyCategory c = truncated_delta_op(1);
  auto add = [&](const std::string& id, const NatTrans& t, bool cof, bool fib, bool we) {
    ReedyVerdict v = reedy_classify(t);
    Checks k;
    k.add("natural", check_natural(t));
    k.add("cofibration", v.cofibration == cof);
    k.add("fibration", v.fibration == fib);
    k.add("weak_equivalence", v.weak_equivalence == we);
    Json in = Json::array();
    for (const auto& m : t.at) in.push_back(to_json(m));
    out.push_back(record("golden-" + id, in, k));
  };
  std::mt19937_64 rng(case_seed(0x601d, 0));
  add("identity", identity_nat(random_diagram(rng, c, R)), true, true, true);
  ChainMap incl(sphere(0, R), disk(1, R), {{0, Matrix::identity(R, 1)}});
  add("sphere-into-disk", NatTrans{constant_diagram(c, sphere(0, R)), constant_diagram(c, disk(1, R)), {incl, incl}}, true,
      false, false);
  Diagram zero = zero_diagram(c, R);
  ChainMap collapse = ChainMap::zero(disk(1, R), ChainComplex(R));
  add("disk-to-zero", NatTrans{constant_diagram(c, disk(1, R)), zero, {collapse, collapse}}, false, false, true);
  Diagram f = free_diagram(c, {ChainComplex(R), sphere(0, R)});
  add("zero-into-free", NatTrans{zero, f, {ChainMap::zero(ChainComplex(R), f.at[0]), ChainMap::zero(ChainComplex(R), f.at[1])}},
      true, false, false);
  return out;
}

std::vector<CaseRecord> reedy_suite(const SuiteConfig& cfg, const Ring& R, unsigned threads) {
  if (!R.is_field()) throw InputError("the reedy suite needs a field");
  const ReedyCategory c = cfg.category ? category_from_json(*cfg.category) : shape_category(cfg.shape);
  const std::optional<int> level = cfg.category ? std::nullopt : simplicial_level(cfg.shape);
  DiagramSpec spec;
  spec.family = shape_of(cfg, spec.family);
  const std::size_t n = cfg.cases ? cfg.cases : 50;
  std::vector<CaseRecord> out = run_cases(n, threads, [&](std::size_t i) {
    std::mt19937_64 rng(case_seed(cfg.seed, i));
    Diagram x = random_diagram(rng, c, R, spec);
    Checks k;
    k.add("diagram", check_diagram(x));
    k.add("exact_square_LV_VL", check_exact_square_lv(restrict_to(x, Sub::minus)).failures);
    k.add("exact_square_RU_UR", check_exact_square_ru(restrict_to(x, Sub::plus)).failures);
    if (level) {
      std::vector<std::string> bad;
      for (int r = 1; r <= *level; ++r)
        for (auto& s : simplicial_comparison(c, x, r)) bad.push_back("[" + std::to_string(r) + "] " + s);
      k.add("simplicial_latching_matching", bad);
    }
    NatTrans t = i % 2 ? random_nat(rng, x, spec) : cokernel_nat(random_nat(rng, x, spec));
    bool agree = true;
    for (int r = 0; r < static_cast<int>(c.object_count()); ++r) {
      agree = agree && is_cofibration(relative_latching(t, r)) == relative_latching_injective(t, r);
      agree = agree && is_fibration(relative_matching(t, r)) == relative_matching_surjective(t, r);
    }
    k.add("relative_maps_agree_with_rank_checks", agree);
    ReedyVerdict v = reedy_classify(t);
    k.detail["verdict"] = {{"cofibration", v.cofibration}, {"fibration", v.fibration}, {"weak_equivalence", v.weak_equivalence}};
    Diagram p = restrict_to(x, Sub::plus), m = restrict_to(x, Sub::minus);
    k.add("bialgebra_pair", check_bialgebra_pair(p, m));
    Diagram back = diagram_from_pair(p, m);
    bool same = true;
    for (const auto& [f, phi] : x.map) same = same && back.of(f) == phi;
    k.add("pair_round_trip", same);
    Json in = Json::array();
    for (const auto& [f, phi] : x.map) in.push_back(to_json(phi));
    return record(case_id("diagram", i), in, k);
  });
  for (auto& g : reedy_golden(R)) out.push_back(std::move(g));
  return out;
}

Ring default_ring(const std::string& suite) {
  if (suite == "kunneth" || suite == "two-sided-bar" || suite == "distlaw" || suite == "barcobar") return Ring::fp(5);
  return Ring::fp(3);
}

}  // namespace

Report run_suite(const SuiteConfig& cfg) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), cfg.suite) == names.end()) throw InputError("unknown suite '" + cfg.suite + "'");
  const Ring R = cfg.ring ? *cfg.ring : default_ring(cfg.suite);
  const unsigned threads = thread_count(cfg.threads);
  const auto start = std::chrono::steady_clock::now();
  Report rep;
  rep.suite = cfg.suite;
  rep.timing = cfg.timing;
  Json conf;
  conf["ring"] = ring_label(R);
  conf["seed"] = cfg.seed;
  conf["cases"] = cfg.cases;
  if (cfg.max_rank) conf["max_rank"] = *cfg.max_rank;
  if (cfg.deg_lo) conf["deg_lo"] = *cfg.deg_lo;
  if (cfg.deg_hi) conf["deg_hi"] = *cfg.deg_hi;
  if (cfg.suite == "barcobar") conf["max_weight"] = cfg.max_weight;
  if (cfg.suite == "counterexample") conf["m"] = cfg.m;
  if (cfg.suite == "reedy") conf["shape"] = cfg.category ? "input:" + digest(*cfg.category) : cfg.shape;
  if (cfg.algebra) conf["algebra"] = digest(*cfg.algebra);
  if (cfg.coalgebra) conf["coalgebra"] = digest(*cfg.coalgebra);
  rep.config = conf;

  if (cfg.suite == "wfs") {
    const RandomSpec spec = shape_of(cfg, {-3, 5, 6, 2});
    rep.cases = run_cases(cfg.cases ? cfg.cases : 500, threads, [&](std::size_t i) { return wfs_case(cfg, R, spec, i); });
  } else if (cfg.suite == "lifting") {
    rep.cases = lifting_suite(cfg, R, threads);
  } else if (cfg.suite == "two-of-six") {
    const RandomSpec spec = shape_of(cfg, {-1, 2, 3, 2});
    rep.cases = run_cases(cfg.cases ? cfg.cases : 100, threads, [&](std::size_t i) { return two_of_six_case(cfg, R, spec, i); });
  } else if (cfg.suite == "kunneth") {
    const RandomSpec spec = shape_of(cfg, {-1, 2, 3, 2});
    rep.cases = run_cases(cfg.cases ? cfg.cases : 100, threads, [&](std::size_t i) { return kunneth_case(cfg, R, spec, i); });
  } else if (cfg.suite == "barcobar") {
    rep.cases = barcobar_suite(cfg, R, threads);
  } else if (cfg.suite == "two-sided-bar") {
    rep.cases = run_cases(cfg.cases ? cfg.cases : 5, threads, [&](std::size_t i) { return two_sided_case(cfg, R, i); });
  } else if (cfg.suite == "distlaw") {
    rep.cases = distlaw_suite(cfg, R, threads);
  } else if (cfg.suite == "counterexample") {
    rep.cases = counterexample_suite(cfg, R);
  } else {
    rep.cases = reedy_suite(cfg, R, threads);
  }
  std::stable_sort(rep.cases.begin(), rep.cases.end(), [](const CaseRecord& a, const CaseRecord& b) { return a.id < b.id; });
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace dgw
