#include <random>

#include "doctest.h"
#include "dgw/wfs.hpp"

using namespace dgw;

namespace {

// exhaustive search for a lift over F2
bool brute_force_lift_exists(const LiftingProblem& p) {
  const ChainComplex& B = p.left.dst();
  const ChainComplex& X = p.right.src();
  std::vector<std::pair<int, std::pair<std::size_t, std::size_t>>> slots;
  for (int n = B.lo(); n <= B.hi(); ++n)
    for (std::size_t r = 0; r < X.rank(n); ++r)
      for (std::size_t c = 0; c < B.rank(n); ++c) slots.push_back({n, {r, c}});
  REQUIRE(slots.size() <= 18);
  Ring R = Ring::fp(2);
  for (std::uint64_t mask = 0; mask < (1ULL << slots.size()); ++mask) {
    std::map<int, Matrix> c;
    for (int n = B.lo(); n <= B.hi(); ++n) c[n] = Matrix(R, X.rank(n), B.rank(n));
    for (std::size_t k = 0; k < slots.size(); ++k)
      if (mask >> k & 1) c[slots[k].first].set(slots[k].second.first, slots[k].second.second, 1);
    GradedMap g(B, X, 0);
    for (auto& [n, m] : c) g.set(n, m);
    if (!is_chain_map(g)) continue;
    ChainMap cm(g, false);
    if (compose(cm, p.left) == p.top && compose(p.right, cm) == p.bottom) return true;
  }
  return false;
}

}  // namespace

TEST_SUITE("wfs") {
  TEST_CASE("generating sets and predicates") {
    for (Ring R : {Ring::fp(2), Ring::rationals(), Ring::integers()}) {
      for (int n = 0; n <= 3; ++n) {
        ChainMap i(sphere(n - 1, R), disk(n, R), {{n - 1, Matrix::identity(R, 1)}});
        CHECK(is_cofibration(i));
        CHECK_FALSE(is_homotopy_equivalence(i));
        ChainMap j = ChainMap::zero(ChainComplex(R), disk(n, R));
        CHECK(in_class(j, MapClass::AcyclicCof));
      }
    }
    ChainComplex SZ = sphere(0, Ring::integers()), SQ = sphere(0, Ring::rationals());
    CHECK_FALSE(is_cofibration(ChainMap::identity(SZ).scaled(2)));
    CHECK(is_cofibration(ChainMap::identity(SQ).scaled(2)));
    for (int n = 0; n <= 2; ++n) {
      CHECK_FALSE(is_homotopy_equivalence(ChainMap::identity(sphere(n, Ring::integers())).scaled(2)));
      CHECK(is_homotopy_equivalence(ChainMap::identity(sphere(n, Ring::fp(3))).scaled(2)));
    }
    std::mt19937_64 rng(1);
    ChainComplex x = random_complex(rng, Ring::fp(5), {});
    CHECK(is_homotopy_equivalence(ChainMap::identity(x)));
  }

  TEST_CASE("mapping cylinder of the identity is the cylinder") {
    std::mt19937_64 rng(2);
    for (Ring R : {Ring::fp(3), Ring::integers()}) {
      for (int t = 0; t < 10; ++t) {
        ChainComplex x = random_complex(rng, R, {});
        Factorization F = factor_cof_then_acyclic_fib(ChainMap::identity(x));
        Cylinder C = cylinder(x);
        // Mf basis [x⊗d1t, x⊗t, y] -> X⊗I: y -> x⊗d1t, x⊗d1t -> x⊗d0t, x⊗t -> -x⊗t
        TensorLayout L = tensor_layout(x, interval(R));
        std::map<int, Matrix> psi;
        for (int n = F.mid.lo(); n <= F.mid.hi(); ++n) {
          Matrix m(R, C.cyl.rank(n), F.mid.rank(n));
          std::size_t a = x.rank(n), b = x.rank(n - 1);
          for (std::size_t k = 0; k < a; ++k) {
            m.set(L.index(interval(R), n, n, k, 0), k, 1);
            m.set(L.index(interval(R), n, n, k, 1), a + b + k, 1);
          }
          for (std::size_t k = 0; k < b; ++k) m.set(L.index(interval(R), n, n - 1, k, 0), a + k, -1);
          psi[n] = m;
        }
        ChainMap P(F.mid, C.cyl, psi);  // validates chain map
        for (int n = F.mid.lo(); n <= F.mid.hi(); ++n) CHECK(inverse(P.at(n)).has_value());
        CHECK(compose(P, F.left) == C.i0);
        CHECK(compose(C.q, P) == F.right);
      }
    }
  }

  TEST_CASE("factorizations of maps out of zero") {
    Ring R = Ring::fp(5);
    std::mt19937_64 rng(3);
    ChainComplex y = random_complex(rng, R, {});
    ChainMap f = ChainMap::zero(ChainComplex(R), y);
    Factorization F = factor_cof_then_acyclic_fib(f);
    CHECK(F.mid == y);
    CHECK(F.right == ChainMap::identity(y));
    Factorization G = factor_acyclic_cof_then_fib(f);
    CHECK(in_class(G.left, MapClass::AcyclicCof));
    CHECK(is_acyclic(G.mid));
    ChainMap id = ChainMap::identity(y);
    Factorization H = factor_acyclic_cof_then_fib(id);
    CHECK(in_class(H.left, MapClass::AcyclicCof));
    CHECK(in_class(H.right, MapClass::AcyclicFib));
  }

  TEST_CASE("random factorizations over small fields and Z") {
    for (Ring R : {Ring::fp(2), Ring::fp(3), Ring::fp(5), Ring::integers()}) {
      SampleSpec s;
      s.ring = R;
      s.count = R.is_field() ? 40 : 15;
      s.seed = 99;
      PropertyReport rep = check_factorization_axioms(s);
      CHECK(rep.cases == s.count);
      for (auto& f : rep.failures) FAIL_CHECK(f);
    }
  }

  TEST_CASE("functoriality on random squares") {
    std::mt19937_64 rng(4);
    for (Ring R : {Ring::fp(2), Ring::fp(3)}) {
      for (int t = 0; t < 30; ++t) {
        ChainComplex x = random_complex(rng, R, {}), y = random_complex(rng, R, {});
        ChainComplex y2 = random_complex(rng, R, {});
        ChainMap f = random_chain_map(rng, x, y);
        ChainMap b = random_chain_map(rng, y, y2);
        // square (aut, b): f -> g with g = b f aut^-1
        ChainMap aut = random_automorphism(rng, x);
        ChainMap inv(aut.dst(), aut.src(), [&] {
          std::map<int, Matrix> m;
          for (int n = x.lo(); n <= x.hi(); ++n) m[n] = *inverse(aut.at(n));
          return m;
        }());
        ChainMap g = compose(b, compose(f, inv));
        Factorization Ff = factor_cof_then_acyclic_fib(f), Fg = factor_cof_then_acyclic_fib(g);
        ChainMap M = cylinder_functor(f, g, aut, b);
        CHECK(compose(M, Ff.left) == compose(Fg.left, aut));
        CHECK(compose(Fg.right, M) == compose(b, Ff.right));
        Factorization Nf = factor_acyclic_cof_then_fib(f), Ng = factor_acyclic_cof_then_fib(g);
        ChainMap N = cocylinder_functor(f, g, aut, b);
        CHECK(compose(N, Nf.left) == compose(Ng.left, aut));
        CHECK(compose(Ng.right, N) == compose(b, Nf.right));
      }
    }
  }

  TEST_CASE("lifting: J-set against fibrations, identity, unsolvable") {
    std::mt19937_64 rng(5);
    Ring R = Ring::fp(3);
    for (int t = 0; t < 20; ++t) {
      ChainMap p = random_fibration(rng, R, {});
      int n = 1 + t % 2;
      ChainMap j = ChainMap::zero(ChainComplex(R), disk(n, R));
      ChainMap bottom = random_chain_map(rng, disk(n, R), p.dst());
      auto c = solve_lift({j, p, ChainMap::zero(ChainComplex(R), p.src()), bottom});
      REQUIRE(c.has_value());
      CHECK(compose(p, *c) == bottom);
    }
    ChainComplex x = random_complex(rng, R, {});
    ChainMap top = ChainMap::identity(x);
    ChainMap p = ChainMap::zero(x, ChainComplex(R));
    auto c = solve_lift({ChainMap::identity(x), p, top, ChainMap::zero(x, ChainComplex(R))});
    REQUIRE(c.has_value());
    CHECK(*c == top);
    // S0 -> D1 against S0 -> 0 with top the identity: a lift would bound the generator
    ChainComplex S = sphere(0, R);
    ChainMap i(S, disk(1, R), {{0, Matrix::identity(R, 1)}});
    CHECK_FALSE(solve_lift({i, ChainMap::zero(S, ChainComplex(R)), ChainMap::identity(S),
                            ChainMap::zero(disk(1, R), ChainComplex(R))})
                    .has_value());
  }

  TEST_CASE("lifting: constructed problems") {
    for (Ring R : {Ring::fp(2), Ring::fp(5), Ring::integers()}) {
      std::mt19937_64 rng(6);
      for (int t = 0; t < 15; ++t) {
        LiftingProblem p = random_solvable_problem(rng, R, {});
        auto c = solve_lift(p);
        REQUIRE(c.has_value());
        CHECK(compose(*c, p.left) == p.top);
        CHECK(compose(p.right, *c) == p.bottom);
      }
      int rejected = 0;
      for (int t = 0; t < 40 && rejected < 8; ++t) {
        auto p = random_unsolvable_problem(rng, R, {});
        if (!p) continue;
        CHECK_FALSE(solve_lift(*p).has_value());
        ++rejected;
      }
      CHECK(rejected == 8);
    }
  }

  TEST_CASE("lifting agrees with brute force over F2") {
    Ring R = Ring::fp(2);
    std::mt19937_64 rng(7);
    RandomSpec tiny;
    tiny.deg_lo = 0;
    tiny.deg_hi = 1;
    tiny.max_rank = 2;
    int solvable = 0, unsolvable = 0, done = 0;
    for (int t = 0; done < 30 && t < 5000; ++t) {
      ChainComplex a = random_complex(rng, R, tiny), b = random_complex(rng, R, tiny);
      ChainComplex x = random_complex(rng, R, tiny), y = random_complex(rng, R, tiny);
      ChainMap i = random_chain_map(rng, a, b), p = random_chain_map(rng, x, y);
      ChainMap top = random_chain_map(rng, a, x), bottom = random_chain_map(rng, b, y);
      LiftingProblem lp{i, p, top, bottom};
      if (!lp.commutes()) continue;
      bool expect = brute_force_lift_exists(lp);
      auto c = solve_lift(lp);
      CHECK(c.has_value() == expect);
      (expect ? solvable : unsolvable)++;
      ++done;
    }
    CHECK(done == 30);
    CHECK(solvable > 0);
    CHECK(unsolvable > 0);
  }

  TEST_CASE("two of six") {
    Ring R = Ring::fp(5);
    std::mt19937_64 rng(8);
    ChainComplex x = random_complex(rng, R, {});
    ChainMap id = ChainMap::identity(x);
    TwoOfSixReport r = check_two_of_six(id, id, id);
    CHECK(r.hypothesis_met);
    CHECK(r.ok());
    for (int t = 0; t < 30; ++t) {
      ChainComplex x0 = random_complex(rng, R, {});
      ChainMap f = random_equivalence_from(rng, x0, {});
      ChainMap g = random_equivalence_from(rng, f.dst(), {});
      ChainMap h = random_equivalence_from(rng, g.dst(), {});
      TwoOfSixReport rr = check_two_of_six(f, g, h);
      CHECK(rr.hypothesis_met);
      CHECK(rr.ok());
    }
    ChainComplex s = sphere(0, R);
    TwoOfSixReport u = check_two_of_six(ChainMap::identity(s), ChainMap::identity(s), ChainMap::zero(s, ChainComplex(R)));
    CHECK_FALSE(u.hypothesis_met);
  }

  TEST_CASE("retract argument") {
    Ring R = Ring::fp(3);
    std::mt19937_64 rng(9);
    ChainComplex x = random_complex(rng, R, {}), y = random_complex(rng, R, {});
    ChainMap g = random_chain_map(rng, x, y);
    ChainMap l = factor_cof_then_acyclic_fib(g).left;
    RetractWitness w = retract_argument(l);
    CHECK(w.ok);
    SampleSpec s;
    s.ring = R;
    s.count = 20;
    PropertyReport rep = check_retract_closure(s);
    for (auto& f : rep.failures) FAIL_CHECK(f);
    // a map that is not a cofibration has no such retraction
    ChainComplex S = sphere(0, Ring::integers());
    CHECK_FALSE(retract_argument(ChainMap::identity(S).scaled(2)).ok);
  }
}
