#include <random>

#include "doctest.h"
#include "dgw/coalg.hpp"

using namespace dgw;

namespace {

ChainMap projection_off_unit(const DGCoalgebra& c) {
  return map_from(c.complex, c.complex, [&](Cell x) {
    Vec v = unit_vec(x);
    accumulate(v, *c.coaugmentation, -c.counit_of(x), c.ring());
    return v;
  });
}

// coassociativity through chain-level matrices and the associator
bool coassociative_as_matrices(const DGCoalgebra& c) {
  ChainMap d = c.comult_map();
  ChainMap id = ChainMap::identity(c.complex);
  ChainMap left = compose(associator(c.complex, c.complex, c.complex), compose(tensor_map(d, id), d));
  ChainMap right = compose(tensor_map(id, d), d);
  return left == right;
}

ChainComplex two_cells(Ring R) {
  // x in degree 1, y in degree 2, zero differential
  return ChainComplex(R, {{1, 1}, {2, 1}});
}

}  // namespace

TEST_SUITE("coalg") {
  TEST_CASE("cofree coalgebra on zero is the unit coalgebra") {
    for (Ring R : {Ring::fp(2), Ring::rationals(), Ring::integers()}) {
      DGCoalgebra c = cofree_coalgebra(ChainComplex(R), 3);
      CHECK(c.complex.total_rank() == 1);
      CHECK(c.complex == unit_coalgebra(R).complex);
      CHECK(c.comult(Cell{0, 0}) == Vec2{{{Cell{0, 0}, Cell{0, 0}}, Scalar(1)}});
      CHECK(check_coalgebra(c).empty());
    }
  }

  TEST_CASE("deconcatenation of a two letter word") {
    Ring R = Ring::rationals();
    ChainComplex x = two_cells(R);
    DGCoalgebra c = cofree_coalgebra(x, 3, [](Cell a) { return a.deg == 1 ? std::string("x") : std::string("y"); });
    const WordBasis& wb = *c.words;
    Cell one = *wb.find({}), cx = *wb.find({0}), cy = *wb.find({1}), cxy = *wb.find({0, 1});
    CHECK(c.name(cxy) == "x|y");
    Vec2 want{{{cxy, one}, Scalar(1)}, {{cx, cy}, Scalar(1)}, {{one, cxy}, Scalar(1)}};
    CHECK(c.comult(cxy) == want);
    CHECK(c.reduced(cxy) == Vec2{{{cx, cy}, Scalar(1)}});
    CHECK(c.conilpotency_bound == 3u);
    CHECK(c.window == Window{0, 2});
  }

  TEST_CASE("cofree coalgebra invariants on random complexes") {
    std::mt19937_64 rng(case_seed(21, 0));
    for (int k = 0; k < 10; ++k) {
      Ring R = k % 3 == 0 ? Ring::fp(2) : k % 3 == 1 ? Ring::fp(7) : Ring::rationals();
      ChainComplex x = random_complex(rng, R, {-1, 2, 2, 2});
      DGCoalgebra c = cofree_coalgebra(x, 2);
      auto problems = check_coalgebra(c);
      CHECK_MESSAGE(problems.empty(), (problems.empty() ? "" : problems.front()));
      CHECK(is_chain_map(c.comult_map().graded()));
      ChainComplex small = random_complex(rng, R, {0, 1, 1, 2});
      CHECK(coassociative_as_matrices(cofree_coalgebra(small, 2)));
      // words of length at most 2 in the letters
      std::size_t n = x.total_rank();
      CHECK(c.complex.total_rank() == 1 + n + n * n);
    }
  }

  TEST_CASE("interval coalgebra") {
    for (Ring R : {Ring::fp(2), Ring::fp(3), Ring::rationals(), Ring::integers()}) {
      DGCoalgebra c = interval_coalgebra(R);
      CHECK(check_coalgebra(c).empty());
      CHECK(coassociative_as_matrices(c));
      const Cell e0{0, 0}, e1{0, 1}, t{1, 0};
      // dt = d0t - d1t, so Δ(dt) = d0t⊗d0t - d1t⊗d1t
      Vec2 delta_dt = c.comult_vec(differential(c.complex, unit_vec(t)));
      Vec2 want{{{e0, e0}, Scalar(1)}, {{e1, e1}, R.normalize(Scalar(-1))}};
      CHECK(delta_dt == want);
      TVec d_delta = tensor_differential(to_tvec(c.comult(t)), {&c.complex, &c.complex}, R);
      CHECK(d_delta == to_tvec(want));
      Vec l, r;
      for (const auto& [ab, s] : c.comult(t)) {
        accumulate(l, ab.second, s * c.counit_of(ab.first), R);
        accumulate(r, ab.first, s * c.counit_of(ab.second), R);
      }
      CHECK(l == unit_vec(t));
      CHECK(r == unit_vec(t));
    }
  }

  TEST_CASE("cofree comodules") {
    std::mt19937_64 rng(case_seed(22, 0));
    for (int k = 0; k < 6; ++k) {
      Ring R = k % 2 ? Ring::rationals() : Ring::fp(3);
      ChainComplex x = random_complex(rng, R, {-1, 1, 2, 2});
      DGCoalgebra u = unit_coalgebra(R);
      Comodule mu = cofree_comodule(x, u);
      CHECK(check_comodule(mu).empty());
      // over the unit coalgebra the coaction is the inverse of the right unitor
      CHECK(compose(right_unitor(mu.complex), mu.coaction_map()) == ChainMap::identity(mu.complex));

      DGCoalgebra c = cofree_coalgebra(random_complex(rng, R, {1, 2, 1, 2}), 2);
      Comodule m = cofree_comodule(x, c);
      auto problems = check_comodule(m);
      CHECK_MESSAGE(problems.empty(), (problems.empty() ? "" : problems.front()));

      // a chain map M -> Y induces a comodule map into Y⊗C whose counit composite is the map
      ChainComplex y = random_complex(rng, R, {-1, 3, 2, 2});
      ChainMap g = random_chain_map(rng, m.complex, y);
      ComoduleMap h = induced_comodule_map(m, g);
      CHECK(check_comodule_map(h).empty());
      ChainMap back = compose(right_unitor(y), compose(tensor_map(ChainMap::identity(y), c.counit_map()), h.map));
      CHECK(back == g);
    }
  }

  TEST_CASE("comodule cylinder") {
    for (Ring R : {Ring::fp(2), Ring::fp(5), Ring::rationals()}) {
      DGCoalgebra c = cofree_coalgebra(two_cells(R), 2);
      for (int n : {0, 1}) {
        Comodule m = cofree_comodule(sphere(n, R), c);
        ComoduleCylinder cy = comodule_cylinder(m);
        CHECK(cy.cyl.complex == cylinder(m.complex).cyl);
        CHECK(cy.i.map == cylinder(m.complex).i);
        auto problems = check_comodule(cy.cyl);
        CHECK_MESSAGE(problems.empty(), (problems.empty() ? "" : problems.front()));
        CHECK(check_comodule(cy.doubled).empty());
        CHECK(check_comodule_map(cy.i).empty());
        CHECK(check_comodule_map(cy.q).empty());
        DirectSum ds = direct_sum(m.complex, m.complex);
        CHECK(compose(cy.q.map, cy.i.map) == ds.pr1 + ds.pr2);
        // counit law on every basis element of M⊗I
        for (Cell x : cells_of(cy.cyl.complex)) {
          Vec back;
          for (const auto& [ab, s] : cy.cyl.coaction(x)) accumulate(back, ab.first, s * c.counit_of(ab.second), R);
          CHECK(back == unit_vec(x));
        }
      }
    }
  }

  TEST_CASE("coalgebra maps are determined by their corestrictions") {
    std::mt19937_64 rng(case_seed(23, 0));
    for (int k = 0; k < 20; ++k) {
      Ring R = k % 2 ? Ring::rationals() : Ring::fp(5);
      DGCoalgebra src = cofree_coalgebra(random_complex(rng, R, {1, 2, 2, 2}), 2);
      ChainComplex x = random_complex(rng, R, {0, 4, 2, 2});
      ChainMap f = compose(random_chain_map(rng, src.complex, x), projection_off_unit(src));
      DGCoalgebra dst = cofree_coalgebra(x, 2);
      CoalgebraMap F = coalgebra_map_from_corestriction(src, dst, f);
      auto problems = check_coalgebra_map(F, {src.complex.lo(), src.complex.hi()});
      CHECK_MESSAGE(problems.empty(), (problems.empty() ? "" : problems.front()));
      CHECK(is_chain_map(F.map.graded()));
      // projection of T(X) onto its length one part recovers f
      std::map<int, Cell> letter_cell;
      for (Cell c : cells_of(x)) letter_cell.emplace(static_cast<int>(letter_cell.size()), c);
      for (Cell c : cells_of(src.complex)) {
        Vec got;
        for (const auto& [l, a] : corestriction_of(F, c)) got[letter_cell.at(l)] = a;
        CHECK(got == dgw::apply(f, unit_vec(c)));
      }
      CoalgebraMap again =
          coalgebra_map_from_corestriction(src, dst, [&](Cell c) { return corestriction_of(F, c); });
      CHECK(again.map == F.map);
    }
  }
}
