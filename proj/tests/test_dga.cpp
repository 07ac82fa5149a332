#include <random>
#include <set>

#include "doctest.h"
#include "dgw/dga.hpp"

using namespace dgw;

namespace {

// number of words of length <= w with letter degrees `degs` and total degree n
std::size_t count_words(const std::vector<int>& degs, std::size_t w, int n) {
  std::map<int, std::size_t> level{{0, 1}};
  std::size_t total = level.count(n) ? level[n] : 0;
  for (std::size_t len = 1; len <= w; ++len) {
    std::map<int, std::size_t> next;
    for (const auto& [d, c] : level)
      for (int g : degs) next[d + g] += c;
    level = next;
    if (level.count(n)) total += level[n];
  }
  return total;
}

DGAlgebra polynomial_like(Ring R) {
  // x in degree 1, y in degree 3 with dy = x|x, z in degree 5 with dz = x|y + y|x
  FreePresentation p;
  p.gens = {{"x", 1}, {"y", 3}, {"z", 5}};
  p.d = {{}, {{Word{0, 0}, Scalar(1)}}, {{Word{0, 1}, Scalar(1)}, {Word{1, 0}, Scalar(1)}}};
  p.trunc = {6, 0, 8};
  return free_algebra(R, p);
}

DGAlgebra random_linear_algebra(std::mt19937_64& rng, Ring R) {
  RandomSpec spec{0, 1, 2, 2};
  ChainComplex x = random_complex(rng, R, spec);
  FreePresentation p = presentation_on(x, {2, 0, 2}, "v");
  p.quotient = true;
  return free_algebra(R, p);
}

bool contractible_in(const ChainComplex& x, const Window& w) {
  for (int n = w.lo; n <= w.hi; ++n) {
    HomologyGroup h = homology(x, n);
    if (n == 0 ? !(h.free_rank == 1 && h.torsion.empty()) : !h.is_zero()) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("dga") {
  TEST_CASE("free algebra basics") {
    for (Ring R : {Ring::fp(2), Ring::fp(3), Ring::rationals(), Ring::integers()}) {
      DGAlgebra u = unit_algebra(R);
      CHECK(u.complex.total_rank() == 1);
      CHECK(u.complex.rank(0) == 1);
      CHECK(check_algebra(u).empty());

      FreePresentation p;
      p.gens = {{"x", 1}};
      p.trunc = {3, 0, 3};
      DGAlgebra a = free_algebra(R, p);
      for (int n = 0; n <= 3; ++n) CHECK(a.complex.rank(n) == 1);
      CHECK(a.complex.total_rank() == 4);
      CHECK(a.name(Cell{3, 0}) == "x|x|x");
      CHECK(check_algebra(a).empty());
      CHECK_FALSE(a.mul(Cell{2, 0}, Cell{2, 0}).has_value());
    }
  }

  TEST_CASE("ranks match word counting") {
    Ring R = Ring::rationals();
    FreePresentation p;
    p.gens = {{"a", 0}, {"b", 1}, {"c", 2}, {"e", -1}};
    p.trunc = {3, -2, 4};
    DGAlgebra a = free_algebra(R, p);
    for (int n = -3; n <= 5; ++n) {
      std::size_t want = (n < -2 || n > 4) ? 0 : count_words({0, 1, 2, -1}, 3, n);
      CHECK(a.complex.rank(n) == want);
    }
  }

  TEST_CASE("Leibniz and associativity hold exhaustively") {
    for (Ring R : {Ring::fp(2), Ring::fp(3), Ring::rationals()}) {
      DGAlgebra a = polynomial_like(R);
      CHECK_FALSE(a.window.empty());
      CHECK(a.window.hi <= 8);
      auto problems = check_algebra(a);
      CHECK_MESSAGE(problems.empty(), (problems.empty() ? "" : problems.front()));
      // d(x|y) = -x|x|x by hand
      Cell xy = *a.words->find(Word{0, 1});
      Cell xxx = *a.words->find(Word{0, 0, 0});
      Vec dxy = differential(a.complex, unit_vec(xy));
      CHECK(dxy == Vec{{xxx, R.normalize(Scalar(-1))}});
    }
  }

  TEST_CASE("d^2 != 0 on generators is rejected") {
    FreePresentation p;
    p.gens = {{"x", 1}, {"y", 2}, {"z", 3}};
    p.d = {{}, {{Word{0, 0}, Scalar(1)}}, {{Word{1}, Scalar(1)}}};
    p.trunc = {3, 0, 6};
    CHECK_THROWS_AS(free_algebra(Ring::rationals(), p), InputError);
    p.d[2] = {{Word{0, 0, 0}, Scalar(1)}};
    CHECK_THROWS_AS(free_algebra(Ring::rationals(), p), InputError);
    p.d[2] = {};
    p.d[0] = {{Word{}, Scalar(1)}};
    CHECK_THROWS_AS(free_algebra(Ring::rationals(), p), InputError);
  }

  TEST_CASE("coproducts") {
    Ring R = Ring::fp(5);
    FreePresentation px, py;
    px.gens = {{"x", 1}};
    py.gens = {{"y", 2}};
    px.trunc = py.trunc = {3, 0, 6};
    DGAlgebra ax = free_algebra(R, px), ay = free_algebra(R, py);
    Coproduct s = algebra_coproduct(ax, ay);
    for (int n = 0; n <= 6; ++n) CHECK(s.sum.complex.rank(n) == count_words({1, 2}, 3, n));
    CHECK(check_algebra(s.sum).empty());
    CHECK(check_algebra_map(s.in1, ax.window.meet(s.sum.window)).empty());
    CHECK(check_algebra_map(s.in2, ay.window.meet(s.sum.window)).empty());

    Coproduct e = algebra_coproduct(ax, unit_algebra(R));
    CHECK(e.sum.complex == ax.complex);
    CHECK(e.in1.map == ChainMap::identity(ax.complex));

    // associativity up to the basis bijection on names
    FreePresentation pz;
    pz.gens = {{"z", 1}};
    pz.d = {{}};
    pz.trunc = {3, 0, 6};
    DGAlgebra az = free_algebra(R, pz);
    DGAlgebra l = algebra_coproduct(algebra_coproduct(ax, ay).sum, az).sum;
    DGAlgebra r = algebra_coproduct(ax, algebra_coproduct(ay, az).sum).sum;
    CHECK(l.complex == r.complex);
    for (Cell c : cells_of(l.complex)) CHECK(l.name(c) == r.name(c));
  }

  TEST_CASE("acyclicity factorization of the identity of R") {
    for (Ring R : {Ring::fp(2), Ring::rationals(), Ring::integers()}) {
      DGAlgebra u = unit_algebra(R);
      AlgebraMap id{u, u, ChainMap::identity(u.complex)};
      AlgebraFactorization f = acyclicity_factorization(id, {3, -3, 3});
      CHECK(f.window.contains(0));
      CHECK(f.mid.presentation->gens.size() == 2);
      CHECK(check_algebra(f.mid).empty());
      CHECK(quasi_iso_in(f.left.map, f.window));
      CHECK(contractible_in(f.mid.complex, f.mid.window));
      CHECK(compose(f.right.map, f.left.map) == id.map);
    }
  }

  TEST_CASE("acyclicity factorization for random targets") {
    std::mt19937_64 rng(case_seed(11, 0));
    for (int k = 0; k < 10; ++k) {
      Ring R = k % 2 ? Ring::rationals() : Ring::fp(3);
      DGAlgebra b = random_linear_algebra(rng, R);
      REQUIRE(check_algebra(b).empty());
      DGAlgebra u = unit_algebra(R);
      AlgebraMap i{u, b, b.unit_map()};
      AlgebraFactorization f = acyclicity_factorization(i, {2, -2, 4});
      CHECK(contractible_in(f.mid.complex, f.mid.window));
      CHECK(quasi_iso_in(f.left.map, f.window));
      CHECK(check_algebra_map(f.left, f.window).empty());
      auto bad = check_algebra_map(f.right, f.window, false);
      CHECK_MESSAGE(bad.empty(), (bad.empty() ? "" : bad.front()));
      Matrix ri = compose(f.right.map, f.left.map).at(0);
      CHECK(ri == i.map.at(0));
      for (int n = f.window.lo; n <= f.window.hi; ++n)
        CHECK(rank(f.right.map.at(n)) == b.complex.rank(n));
    }
  }

  TEST_CASE("acyclicity factorization over a presented source") {
    Ring R = Ring::rationals();
    FreePresentation px;
    px.gens = {{"x", 1}};
    px.trunc = {2, 0, 2};
    px.quotient = true;
    DGAlgebra a = free_algebra(R, px);
    AlgebraMap id{a, a, ChainMap::identity(a.complex)};
    AlgebraFactorization f = acyclicity_factorization(id, {3, -3, 6});
    CHECK_FALSE(f.window.empty());
    CHECK(quasi_iso_in(f.left.map, f.window));
    ChainMap back = compose(f.right.map, f.left.map);
    for (int n = f.window.lo; n <= f.window.hi; ++n) {
      CHECK(back.at(n) == id.map.at(n));
      CHECK(rank(f.right.map.at(n)) == a.complex.rank(n));
    }
  }

  TEST_CASE("too small a truncation is rejected") {
    Ring R = Ring::rationals();
    DGAlgebra u = unit_algebra(R);
    AlgebraMap id{u, u, ChainMap::identity(u.complex)};
    CHECK_THROWS_AS(acyclicity_factorization(id, {1, 0, 0}), InputError);
  }

  TEST_CASE("module cylinder") {
    for (Ring R : {Ring::fp(2), Ring::fp(3), Ring::rationals()}) {
      FreePresentation p;
      p.gens = {{"x", 1}, {"y", 2}};
      p.d = {{}, {{Word{0}, Scalar(1)}}};
      p.trunc = {2, 0, 4};
      p.quotient = true;
      DGAlgebra a = free_algebra(R, p);
      REQUIRE(check_algebra(a).empty());
      DGModule m = free_module(a);
      CHECK(check_module(m).empty());
      ModuleCylinder c = module_cylinder(m);
      CHECK(c.cyl.complex == cylinder(m.complex).cyl);
      auto problems = check_module(c.cyl);
      CHECK_MESSAGE(problems.empty(), (problems.empty() ? "" : problems.front()));
      CHECK(check_module(c.doubled).empty());
      CHECK(check_module_map(c.i).empty());
      CHECK(check_module_map(c.q).empty());
      DirectSum ds = direct_sum(m.complex, m.complex);
      ChainMap fold = compose(ChainMap::identity(m.complex), ds.pr1) + ds.pr2;
      CHECK(compose(c.q.map, c.i.map) == fold);
    }
  }
}
