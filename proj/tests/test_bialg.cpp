#include <random>

#include "doctest.h"
#include "dgw/bialg.hpp"
#include "dgw/distlaw.hpp"

using namespace dgw;

namespace {

std::string first(const std::vector<std::string>& v) { return v.empty() ? "" : v.front(); }

ChainComplex small_complex(std::mt19937_64& rng, Ring R) {
  for (;;) {
    ChainComplex x = random_complex(rng, R, {0, 2, 1, 2});
    if (x.total_rank() > 0) return x;
  }
}

Word random_word(std::mt19937_64& rng, std::size_t letters, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  std::uniform_int_distribution<int> letter(0, static_cast<int>(letters) - 1);
  Word w(len(rng));
  for (int& l : w) l = letter(rng);
  return w;
}

}  // namespace

TEST_SUITE("bialg") {
  TEST_CASE("cofree product with zero corestriction on an even generator") {
    for (Ring R : {Ring::fp(3), Ring::rationals()}) {
      for (int m : {2, 4}) {
        CHECK(cofree_product({m}, {}, {0}, {0}, R) == WordVec{{Word{0, 0}, Scalar(2)}});
        // shuffle product: (x)·(x|x) = 3 x|x|x
        WordVec three;
        accumulate(three, Word{0, 0, 0}, Scalar(3), R);
        CHECK(cofree_product({m}, {}, {0}, {0, 0}, R) == three);
        CHECK(cofree_product({m}, {}, {}, {0, 0}, R) == WordVec{{Word{0, 0}, Scalar(1)}});
      }
    }
    // odd generators anticommute: x·x = 0
    CHECK(cofree_product({1}, {}, {0}, {0}, Ring::rationals()).empty());
  }

  TEST_CASE("cofree product is independent of the peeling order") {
    Ring R = Ring::rationals();
    std::vector<int> deg{1, 2, 3};
    // x|y -> z, x·x corestricts to zero
    CorestrictedProduct pi = [](const Word& u, const Word& v) {
      return (u == Word{0} && v == Word{1}) ? LetterVec{{2, Scalar(1)}} : LetterVec{};
    };
    std::mt19937_64 rng(case_seed(5, 0));
    for (int k = 0; k < 60; ++k) {
      Word u = random_word(rng, 3, 3), v = random_word(rng, 3, 3);
      CHECK(cofree_product(deg, pi, u, v, R, Peel::front) == cofree_product(deg, pi, u, v, R, Peel::back));
    }
  }

  TEST_CASE("bialgebra laws on the standard examples") {
    for (Ring R : {Ring::fp(2), Ring::fp(5), Ring::rationals()}) {
      std::vector<Bialgebra> hs{group_bialgebra(R, 3), exterior_bialgebra(R, 1), exterior_bialgebra(R, 3),
                                tensor_bialgebra(exterior_bialgebra(R, 1), group_bialgebra(R, 2))};
      CofreeBialgebraSpec spec;
      spec.letter_deg = {2};
      spec.letter_name = {"x"};
      spec.deg_hi = 8;
      hs.push_back(cofree_bialgebra_product(R, spec));
      for (const Bialgebra& h : hs) {
        auto bad = check_bialgebra(h);
        CHECK_MESSAGE(bad.empty(), h.name << ": " << first(bad));
      }
    }
  }

  TEST_CASE("corestriction with the wrong degree is rejected") {
    CofreeBialgebraSpec spec;
    spec.letter_deg = {1, 2};
    spec.letter_name = {"x", "y"};
    spec.pi = [](const Word& u, const Word& v) {
      return (u == Word{0} && v == Word{0}) ? LetterVec{{0, Scalar(1)}} : LetterVec{};
    };
    CHECK_THROWS_AS(cofree_bialgebra_product(Ring::rationals(), spec), InputError);
  }

  TEST_CASE("corestriction violating Leibniz is rejected") {
    CofreeBialgebraSpec spec;
    spec.letter_deg = {1, 2, 2};
    spec.letter_name = {"x", "y", "z"};
    spec.d = {LetterVec{}, LetterVec{}, LetterVec{{0, Scalar(1)}}};  // dz = x
    // x·x = z, so d(x·x) = 0 but dz = x
    spec.pi = [](const Word& u, const Word& v) {
      return (u == Word{0} && v == Word{0}) ? LetterVec{{2, Scalar(1)}} : LetterVec{};
    };
    CHECK_THROWS_AS(cofree_bialgebra_product(Ring::rationals(), spec), InputError);
  }

  TEST_CASE("chi in lengths zero and one is the canonical isomorphism") {
    Ring R = Ring::fp(5);
    ChainComplex x(R, {{1, 1}, {2, 1}});
    Bialgebra h = tensor_bialgebra(exterior_bialgebra(R, 1), group_bialgebra(R, 2));
    ChiMap chi = comodule_algebra_chi(x, h, 2);
    const TensorLayout xh = tensor_layout(x, h.algebra.complex);
    const std::vector<Cell> letters = cells_of(tensor(x, h.algebra.complex));
    auto letter = [&](Cell xc, Cell hc) {
      Cell c = tensor_cell(xh, h.algebra.complex, xc, hc);
      return static_cast<int>(std::find(letters.begin(), letters.end(), c) - letters.begin());
    };
    auto target = [&](const Word& w, Cell hc) {
      return tensor_cell(chi.layout, h.algebra.complex, *chi.tx.words->find(w), hc);
    };
    // empty word goes to 1⊗1
    CHECK(dgw::apply(chi.map, unit_vec(chi.source.unit)) == Vec{{target({}, h.algebra.unit), Scalar(1)}});
    const std::vector<Cell> xs = cells_of(x), hcs = cells_of(h.algebra.complex);
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (Cell hc : hcs) {
        Cell src = *chi.source.words->find({letter(xs[i], hc)});
        CHECK(dgw::apply(chi.map, unit_vec(src)) == Vec{{target({static_cast<int>(i)}, hc), Scalar(1)}});
      }
  }

  TEST_CASE("chi in length two carries the Koszul sign of h1 past x2") {
    Ring R = Ring::rationals();
    ChainComplex x(R, {{1, 1}, {2, 1}});
    Bialgebra h = tensor_bialgebra(exterior_bialgebra(R, 1), group_bialgebra(R, 2));
    ChiMap chi = comodule_algebra_chi(x, h, 2);
    const TensorLayout xh = tensor_layout(x, h.algebra.complex);
    const std::vector<Cell> letters = cells_of(tensor(x, h.algebra.complex));
    const std::vector<Cell> xs = cells_of(x), hcs = cells_of(h.algebra.complex);
    auto letter = [&](std::size_t xi, Cell hc) {
      Cell c = tensor_cell(xh, h.algebra.complex, xs[xi], hc);
      return static_cast<int>(std::find(letters.begin(), letters.end(), c) - letters.begin());
    };
    std::size_t checked = 0;
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (std::size_t j = 0; j < xs.size(); ++j)
        for (Cell h1 : hcs)
          for (Cell h2 : hcs) {
            Cell src = *chi.source.words->find({letter(i, h1), letter(j, h2)});
            Cell xw = *chi.tx.words->find({static_cast<int>(i), static_cast<int>(j)});
            // (x_i⊗h1)|(x_j⊗h2) ↦ (-1)^{|h1||x_j|} (x_i|x_j)⊗h1h2
            Vec want;
            const Vec prod = h.algebra.product(unit_vec(h1), unit_vec(h2)).value();
            for (const auto& [q, c] : prod)
              accumulate(want, tensor_cell(chi.layout, h.algebra.complex, xw, q),
                         c * koszul(static_cast<long>(h1.deg) * xs[j].deg), R);
            CHECK(dgw::apply(chi.map, unit_vec(src)) == want);
            ++checked;
          }
    CHECK(checked == 64);
    // (x⊗e)|(x⊗1) with |x| = 1: the sign is -1
    const Cell e = *std::find_if(hcs.begin(), hcs.end(), [](Cell c) { return c.deg == 1; });
    Cell src = *chi.source.words->find({letter(0, e), letter(0, h.algebra.unit)});
    Vec got = dgw::apply(chi.map, unit_vec(src));
    REQUIRE(got.size() == 1);
    CHECK(got.begin()->second == -1);
  }

  TEST_CASE("free comodule algebra satisfies the comodule algebra laws") {
    for (Ring R : {Ring::fp(3), Ring::rationals()}) {
      std::mt19937_64 rng(case_seed(11, R.characteristic()));
      for (int k = 0; k < 3; ++k) {
        ChainComplex x = small_complex(rng, R);
        Bialgebra h = k == 0 ? group_bialgebra(R, 2) : exterior_bialgebra(R, 1);
        ComoduleAlgebra ca = free_comodule_algebra(x, h, 2);
        auto bad = check_comodule_algebra(ca);
        CHECK_MESSAGE(bad.empty(), first(bad));
      }
    }
  }

  TEST_CASE("identity distributive law passes") {
    Ring R = Ring::fp(3);
    std::vector<Term> base;
    for (std::size_t i = 0; i < 3; ++i) base.push_back(Term{Term::leaf, 0, Cell{static_cast<int>(i), 0}, {}});
    auto rep = check_distributive_law(identity_law(R, base));
    CHECK(rep.size() == 4);
    CHECK(all_ok(rep));
    for (const auto& d : rep) CHECK(d.checked == 3);
  }

  TEST_CASE("chi passes all diagrams on seeded samples") {
    for (std::size_t s = 0; s < 20; ++s) {
      std::mt19937_64 rng(case_seed(77, s));
      Ring R = s % 2 ? Ring::rationals() : Ring::fp(5);
      ChainComplex x = small_complex(rng, R);
      ChainComplex y = small_complex(rng, R);
      ChainMap f = random_chain_map(rng, x, y);
      Bialgebra h = s % 3 == 0 ? group_bialgebra(R, 2) : exterior_bialgebra(R, s % 3 == 1 ? 1 : 3);
      auto rep = check_distributive_law(comodule_algebra_law(x, h, 3, f));
      REQUIRE(rep.size() == 5);
      for (const auto& d : rep) CHECK_MESSAGE(d.ok(), "sample " << s << " " << d.diagram << ": " << first(d.failures));
    }
  }

  TEST_CASE("every single-sign mutation of chi fails a diagram") {
    Ring R = Ring::fp(5);
    ChainComplex x(R, {{1, 1}, {2, 1}});
    Bialgebra h = exterior_bialgebra(R, 1);
    auto muts = chi_mutations();
    CHECK(muts.size() == 8);
    for (const ChiVariant& v : muts) {
      auto rep = check_distributive_law(comodule_algebra_law(x, h, 3, v));
      CHECK_MESSAGE(!all_ok(rep), v.name());
    }
  }

  TEST_CASE("a flipped sign in length two breaks the multiplication diagram") {
    Ring R = Ring::rationals();
    ChainComplex x(R, {{0, 1}});
    auto rep = check_distributive_law(comodule_algebra_law(x, group_bialgebra(R, 2), 3, ChiVariant{ChiMutation::flip, 2, 0}));
    CHECK(rep[0].ok());
    CHECK_FALSE(rep[1].ok());
  }

  TEST_CASE("counterexample difference tensor matches the hand computation") {
    // D(a) = (4a^2 - 4)(x|x)⊗(x|x) + (6a - 6)(x⊗x|x|x + x|x|x⊗x)
    for (int m : {2, 4}) {
      ObstructionReport r = counterexample_obstruction(m, Ring::rationals());
      CHECK(r.p_respects_structure);
      REQUIRE(r.a_forced_by_counit);
      CHECK(*r.a_forced_by_counit == 1);
      REQUIRE(r.coefficients.size() == 3);
      const Word x{0}, xx{0, 0}, xxx{0, 0, 0};
      CHECK(r.coefficient(r.coefficients[0], xx, xx) == -4);
      CHECK(r.coefficient(r.coefficients[0], x, xxx) == -6);
      CHECK(r.coefficient(r.coefficients[0], xxx, x) == -6);
      CHECK(r.coefficient(r.coefficients[1], x, xxx) == 6);
      CHECK(r.coefficient(r.coefficients[1], xx, xx) == 0);
      CHECK(r.coefficient(r.coefficients[2], xx, xx) == 4);
      CHECK(r.coefficients[2].size() == 1);
      CHECK(r.vanishing_at == std::vector<Scalar>{Scalar(1)});
      CHECK(r.at(Scalar(1)).empty());
    }
  }

  TEST_CASE("counterexample over small fields") {
    ObstructionReport f2 = counterexample_obstruction(2, Ring::fp(2));
    CHECK(f2.identically_zero());
    ObstructionReport f3 = counterexample_obstruction(2, Ring::fp(3));
    REQUIRE(f3.sweep.size() == 3);
    CHECK(f3.sweep[0].second);
    CHECK_FALSE(f3.sweep[1].second);
    CHECK_FALSE(f3.sweep[2].second);
    CHECK(f3.vanishing_at == std::vector<Scalar>{Scalar(1), Scalar(2)});
    CHECK_THROWS_AS(counterexample_obstruction(3, Ring::fp(3)), InputError);
    CHECK_THROWS_AS(counterexample_obstruction(2, Ring::integers()), InputError);
  }

  TEST_CASE("the corestricted multiplication on the enlarged bialgebra is not associative when 2 is invertible") {
    CHECK(check_bialgebra(counterexample_obstruction(2, Ring::fp(2)).hhat).empty());
    CHECK_FALSE(check_bialgebra(counterexample_obstruction(2, Ring::fp(3)).hhat).empty());
  }
}
