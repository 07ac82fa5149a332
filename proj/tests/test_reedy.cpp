#include <random>

#include "doctest.h"
#include "dgw/reedy.hpp"
#include "dgw/wfs.hpp"

using namespace dgw;

namespace {

std::string first(const std::vector<std::string>& v) { return v.empty() ? "" : v.front(); }

std::size_t count_tag(const ReedyCategory& c, MorTag t) {
  std::size_t n = 0;
  for (std::size_t f = 0; f < c.morphism_count(); ++f)
    if (c.morphism(static_cast<int>(f)).tag == t) ++n;
  return n;
}

std::vector<ChainComplex> small_family(std::mt19937_64& rng, std::size_t n, Ring R) {
  std::vector<ChainComplex> fam;
  for (std::size_t x = 0; x < n; ++x) fam.push_back(random_complex(rng, R, {0, 1, 1, 2}));
  return fam;
}

}  // namespace

TEST_SUITE("reedy") {
  TEST_CASE("truncated simplex categories") {
    ReedyCategory d1 = truncated_delta(1);
    CHECK(d1.object_count() == 2);
    CHECK(d1.morphism_count() == 7);
    CHECK(count_tag(d1, MorTag::identity) == 2);
    CHECK(count_tag(d1, MorTag::plus) == 2);
    CHECK(count_tag(d1, MorTag::minus) == 1);
    CHECK(count_tag(d1, MorTag::mixed) == 2);
    ReedyCategory d2 = truncated_delta(2);
    CHECK(d2.morphism_count() == 31);
    CHECK(d2.hom(2, 1).size() == 4);
    CHECK_THROWS_AS(truncated_delta(4), InputError);
    CHECK_THROWS_AS(truncated_delta(-1), InputError);
  }

  TEST_CASE("factorizations are minus then plus") {
    for (int n : {1, 2, 3}) {
      ReedyCategory c = truncated_delta(n);
      for (int f = 0; f < static_cast<int>(c.morphism_count()); ++f) {
        const auto [q, i] = c.factor(f);
        CHECK(c.is_minus(q));
        CHECK(c.is_plus(i));
        CHECK(c.compose(i, q) == f);
      }
    }
  }

  TEST_CASE("opposite swaps plus and minus") {
    ReedyCategory c = truncated_delta(2), op = truncated_delta_op(2);
    CHECK(count_tag(op, MorTag::plus) == count_tag(c, MorTag::minus));
    CHECK(count_tag(op, MorTag::minus) == count_tag(c, MorTag::plus));
    int s0 = op.find_morphism("1->0:00");
    CHECK(op.morphism(s0).src == 0);
    CHECK(op.morphism(s0).dst == 1);
    CHECK(op.is_plus(s0));
  }

  TEST_CASE("hand-built categories are validated") {
    std::vector<ReedyObject> objs{{"a", 0}, {"b", 1}};
    CHECK_NOTHROW(ReedyCategory(objs, {{"f", 0, 1, MorTag::plus}}, {}, {}));
    CHECK_THROWS_AS(ReedyCategory(objs, {{"f", 1, 0, MorTag::plus}}, {}, {}), InputError);
    CHECK_THROWS_AS(ReedyCategory(objs, {{"f", 0, 1, MorTag::mixed}}, {}, {}), InputError);
    CHECK_THROWS_AS(ReedyCategory(objs, {{"f", 0, 1, MorTag::plus}, {"f", 0, 1, MorTag::plus}}, {}, {}), InputError);
    // composites r∘f and f∘r are not tabulated
    CHECK_THROWS_AS(ReedyCategory(objs, {{"f", 0, 1, MorTag::plus}, {"r", 1, 0, MorTag::minus}}, {}, {}), InputError);
    ReedyCategory d = discrete_category(3);
    CHECK(d.morphism_count() == 3);
    CHECK(d.opposite().morphism_count() == 3);
  }

  TEST_CASE("latching and matching objects at [1] of a simplicial object") {
    ReedyCategory c = truncated_delta_op(1);
    std::mt19937_64 rng(7);
    for (int k = 0; k < 10; ++k) {
      Diagram x = random_diagram(rng, c, Ring::fp(3));
      REQUIRE(first(check_diagram(x)) == "");
      Latching l = latching(x, 1);
      CHECK(l.slice.size() == 1);
      CHECK(l.object.ranks() == x.at[0].ranks());
      CHECK(l.canonical == x.of(l.slice[0]));
      Matching m = matching(x, 1);
      CHECK(m.slice.size() == 2);
      CHECK(m.object.total_rank() == 2 * x.at[0].total_rank());
      CHECK(latching(x, 0).object.is_zero());
      CHECK(matching(x, 0).object.is_zero());
    }
  }

  TEST_CASE("latching and matching against the simplicial formulas") {
    ReedyCategory c = truncated_delta_op(2);
    const Ring R = Ring::fp(3);
    const int s0 = c.find_morphism("2->1:001"), s1 = c.find_morphism("2->1:011");
    // faces X2 -> X1 and X1 -> X0
    const std::vector<int> d2{c.find_morphism("1->2:12"), c.find_morphism("1->2:02"), c.find_morphism("1->2:01")};
    const std::vector<int> d1{c.find_morphism("0->1:1"), c.find_morphism("0->1:0")};
    std::mt19937_64 rng(11);
    for (int k = 0; k < 50; ++k) {
      Diagram x = random_diagram(rng, c, R);
      Latching l = latching(x, 2);
      CHECK(l.slice.size() == 3);
      Matching m = matching(x, 2);
      for (int n = x.at[2].lo(); n <= x.at[2].hi(); ++n) {
        Matrix degen = x.of(s0).at(n).hcat(x.of(s1).at(n));
        CHECK(rank(l.canonical.at(n)) == l.object.rank(n));
        CHECK(rank(degen) == l.object.rank(n));
        CHECK(rank(degen.hcat(l.canonical.at(n))) == rank(degen));
        // (y0, y1, y2) with d_i y_j = d_{j-1} y_i for i < j
        const std::size_t r1 = x.at[1].rank(n), r0 = x.at[0].rank(n);
        Matrix cons(R, 3 * r0, 3 * r1);
        std::size_t row = 0;
        for (int i = 0; i < 3; ++i)
          for (int j = i + 1; j < 3; ++j) {
            cons.add_block(row, j * r1, x.of(d1[i]).at(n), 1);
            cons.add_block(row, i * r1, x.of(d1[j - 1]).at(n), -1);
            row += r0;
          }
        std::size_t offset = 0;
        std::vector<std::size_t> where(m.slice.size());
        for (std::size_t a = 0; a < m.slice.size(); ++a) {
          where[a] = offset;
          offset += x.at[c.morphism(m.slice[a]).dst].rank(n);
        }
        Matrix pick(R, 3 * r1, offset);
        for (int i = 0; i < 3; ++i) {
          std::size_t a = std::find(m.slice.begin(), m.slice.end(), d2[i]) - m.slice.begin();
          REQUIRE(a < m.slice.size());
          pick.add_block(i * r1, where[a], Matrix::identity(R, r1), 1);
        }
        Matrix faces = pick * m.inclusion.at(n);
        CHECK(kernel_basis(cons).cols() == m.object.rank(n));
        CHECK(rank(faces) == m.object.rank(n));
        CHECK((cons * faces).is_zero());
        // the canonical map is the tuple of faces
        Matrix stacked = x.of(d2[0]).at(n).vcat(x.of(d2[1]).at(n)).vcat(x.of(d2[2]).at(n));
        CHECK(faces * m.canonical.at(n) == stacked);
      }
    }
  }

  TEST_CASE("exact squares LV=VL and RU=UR") {
    std::mt19937_64 rng(23);
    for (auto c : {truncated_delta_op(2), truncated_delta(2)}) {
      for (int k = 0; k < 25; ++k) {
        Diagram x = random_diagram(rng, c, k % 2 ? Ring::fp(3) : Ring::rationals());
        ExactSquareReport lv = check_exact_square_lv(restrict_to(x, Sub::minus));
        ExactSquareReport ru = check_exact_square_ru(restrict_to(x, Sub::plus));
        CHECK_MESSAGE(lv.ok(), first(lv.failures));
        CHECK_MESSAGE(ru.ok(), first(ru.failures));
        CHECK(lv.ranks.at("LV [2]") == lv.ranks.at("VL [2]"));
      }
      Diagram free_minus = free_diagram(c, small_family(rng, 3, Ring::fp(5)), Sub::minus);
      CHECK(check_exact_square_lv(free_minus).ok());
      Diagram free_plus = free_diagram(c, small_family(rng, 3, Ring::fp(5)), Sub::plus);
      CHECK(check_exact_square_ru(free_plus).ok());
    }
  }

  TEST_CASE("Kan extensions of free diagrams") {
    std::mt19937_64 rng(5);
    ReedyCategory c = truncated_delta_op(2);
    auto fam = small_family(rng, 3, Ring::rationals());
    Diagram objects = restrict_to(free_diagram(c, fam, Sub::objects), Sub::objects);
    Diagram lan = lan_along(Inclusion::objects_into_plus, objects);
    Diagram direct = free_diagram(c, fam, Sub::plus);
    CHECK(first(check_diagram(lan)) == "");
    for (int r = 0; r < 3; ++r) CHECK(lan.at[r].ranks() == direct.at[r].ranks());
    Diagram ran = ran_along(Inclusion::objects_into_minus, objects);
    CHECK(first(check_diagram(ran)) == "");
  }

  TEST_CASE("classification of hand-made maps") {
    ReedyCategory c = truncated_delta_op(1);
    const Ring R = Ring::rationals();
    std::mt19937_64 rng(3);
    Diagram x = random_diagram(rng, c, R);
    ReedyVerdict id = reedy_classify(identity_nat(x));
    CHECK(id.cofibration);
    CHECK(id.fibration);
    CHECK(id.weak_equivalence);

    Diagram s = constant_diagram(c, sphere(0, R)), d = constant_diagram(c, disk(1, R));
    ChainMap incl(sphere(0, R), disk(1, R), {{0, Matrix::identity(R, 1)}});
    NatTrans t{s, d, {incl, incl}};
    REQUIRE(first(check_natural(t)) == "");
    ReedyVerdict v = reedy_classify(t);
    CHECK(v.cofibration);
    CHECK(!v.fibration);
    CHECK(!v.weak_equivalence);

    Diagram zero = zero_diagram(c, R);
    NatTrans collapse{d, zero, {ChainMap::zero(disk(1, R), ChainComplex(R)), ChainMap::zero(disk(1, R), ChainComplex(R))}};
    v = reedy_classify(collapse);
    CHECK(!v.cofibration);
    CHECK(!v.fibration);
    CHECK(v.weak_equivalence);
    CHECK(v.failing_matching == std::vector<int>{1});

    Diagram f = free_diagram(c, {ChainComplex(R), sphere(0, R)});
    NatTrans into{zero, f, {ChainMap::zero(ChainComplex(R), f.at[0]), ChainMap::zero(ChainComplex(R), f.at[1])}};
    v = reedy_classify(into);
    CHECK(v.cofibration);
    CHECK(!v.fibration);
    CHECK(!v.weak_equivalence);
  }

  TEST_CASE("relative latching and matching maps against direct rank checks") {
    ReedyCategory c = truncated_delta_op(2);
    std::mt19937_64 rng(31);
    std::size_t cof = 0, noncof = 0, fib = 0, nonfib = 0;
    for (int k = 0; k < 50; ++k) {
      Diagram x = random_diagram(rng, c, Ring::fp(3));
      NatTrans t = k % 2 ? random_nat(rng, x, {{0, 1, 1, 2}, k % 4 == 1 ? 0 : 1}) : cokernel_nat(random_nat(rng, x));
      REQUIRE(first(check_natural(t)) == "");
      for (int r = 0; r < 3; ++r) {
        bool a = is_cofibration(relative_latching(t, r)), b = relative_latching_injective(t, r);
        CHECK(a == b);
        (a ? cof : noncof)++;
        a = is_fibration(relative_matching(t, r));
        b = relative_matching_surjective(t, r);
        CHECK(a == b);
        (a ? fib : nonfib)++;
      }
    }
    CHECK(cof > 0);
    CHECK(noncof > 0);
    CHECK(fib > 0);
    CHECK(nonfib > 0);
  }

  TEST_CASE("composites of Reedy cofibrations") {
    ReedyCategory c = truncated_delta_op(2);
    std::mt19937_64 rng(41);
    for (int k = 0; k < 10; ++k) {
      Diagram x = random_diagram(rng, c, Ring::fp(5));
      NatTrans f = random_nat(rng, x, {{0, 1, 1, 2}, 0});
      NatTrans g = random_nat(rng, f.dst, {{0, 1, 1, 2}, 0});
      CHECK(reedy_classify(f).cofibration);
      CHECK(reedy_classify(g).cofibration);
      NatTrans gf = compose_nat(g, f);
      CHECK(first(check_natural(gf)) == "");
      CHECK(reedy_classify(gf).cofibration);
    }
  }

  TEST_CASE("the Reedy distributive law") {
    std::mt19937_64 rng(13);
    for (auto c : {truncated_delta(1), truncated_delta_op(1), truncated_delta(2), truncated_delta_op(2)}) {
      for (Ring R : {Ring::fp(2), Ring::rationals()}) {
        auto fam = small_family(rng, c.object_count(), R);
        auto other = small_family(rng, c.object_count(), R);
        std::vector<ChainMap> maps;
        for (std::size_t x = 0; x < fam.size(); ++x) maps.push_back(random_chain_map(rng, fam[x], other[x]));
        auto rep = check_distributive_law(reedy_distributive_law(c, fam, other, maps));
        CHECK(rep.size() == 5);
        for (const auto& d : rep) CHECK_MESSAGE(d.ok(), (d.diagram + ": " + first(d.failures)));
        for (int r = 0; r < static_cast<int>(c.object_count()); ++r) CHECK_NOTHROW(reedy_chi_component(c, fam, r));
      }
    }
  }

  TEST_CASE("on a discrete category χ is the identity") {
    std::mt19937_64 rng(17);
    ReedyCategory c = discrete_category(3);
    auto fam = small_family(rng, 3, Ring::fp(5));
    for (int r = 0; r < 3; ++r) CHECK(reedy_chi_component(c, fam, r) == ChainMap::identity(fam[r]));
    DistributiveLaw law = reedy_distributive_law(c, fam);
    for (const Term& a : law.base) {
      Term tk{Term::monad, c.identity(a.tag), {}, {Term{Term::comonad, c.identity(a.tag), {}, {a}}}};
      Term kt{Term::comonad, c.identity(a.tag), {}, {Term{Term::monad, c.identity(a.tag), {}, {a}}}};
      CHECK(law.chi(tk) == TermVec{{kt, Scalar(1)}});
    }
  }

  TEST_CASE("diagrams as compatible pairs") {
    std::mt19937_64 rng(19);
    ReedyCategory c = truncated_delta_op(2);
    for (int k = 0; k < 10; ++k) {
      Diagram x = random_diagram(rng, c, Ring::fp(3));
      Diagram p = restrict_to(x, Sub::plus), m = restrict_to(x, Sub::minus);
      CHECK(first(check_bialgebra_pair(p, m)) == "");
      Diagram back = diagram_from_pair(p, m);
      CHECK(first(check_diagram(back)) == "");
      for (const auto& [f, phi] : x.map) CHECK(back.of(f) == phi);
      if (x.at[0].total_rank() == 0) continue;
      Diagram trivial = m;
      for (auto& [f, phi] : trivial.map)
        if (c.morphism(f).tag != MorTag::identity) phi = ChainMap::zero(phi.src(), phi.dst());
      REQUIRE(first(check_diagram(trivial)) == "");
      CHECK(!check_bialgebra_pair(p, trivial).empty());
      CHECK_THROWS_AS(diagram_from_pair(p, trivial), InputError);
    }
  }

  TEST_CASE("integers are rejected for colimits") {
    std::mt19937_64 rng(1);
    CHECK_THROWS_AS(random_diagram(rng, truncated_delta_op(1), Ring::integers()), InputError);
  }
}
