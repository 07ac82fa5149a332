#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dgw/barcobar.hpp"

namespace dgw {

struct Bialgebra {
  DGAlgebra algebra;
  DGCoalgebra coalgebra;  // same underlying complex
  std::string name;
  const Ring& ring() const { return algebra.ring(); }
};

// compatibility of Δ with products, counit multiplicative, unit a coalgebra map, plus the algebra and coalgebra laws
std::vector<std::string> check_bialgebra(const Bialgebra& h);

Bialgebra group_bialgebra(Ring ring, std::size_t order);      // R[Z/order], grouplike basis
Bialgebra exterior_bialgebra(Ring ring, int degree);          // Λ(e), e primitive of odd degree
Bialgebra tensor_bialgebra(const Bialgebra& a, const Bialgebra& b);

// value of π∘μ on two nonempty words
using CorestrictedProduct = std::function<LetterVec(const Word&, const Word&)>;

struct CofreeBialgebraSpec {
  std::vector<int> letter_deg;  // all >= 1
  std::vector<std::string> letter_name;
  std::vector<LetterVec> d;     // linear differential on letters; empty: zero
  CorestrictedProduct pi;       // empty: zero
  int deg_hi = 8;
};

enum class Peel { front, back };

// product of two words in T^co by corecursion on word length, splitting off the first or the last letter
WordVec cofree_product(const std::vector<int>& letter_deg, const CorestrictedProduct& pi, const Word& u, const Word& v,
                       const Ring& ring, Peel peel = Peel::front);

Bialgebra cofree_bialgebra_product(Ring ring, const CofreeBialgebraSpec& spec);

struct ComoduleAlgebra {
  Bialgebra bialgebra;
  DGAlgebra algebra;
  Comodule coaction;  // over bialgebra.coalgebra, on algebra.complex
};
std::vector<std::string> check_comodule_algebra(const ComoduleAlgebra& a);

// χ_X : T(X⊗H) -> (TX)⊗H on words of length <= max_weight, verified to be a chain map
struct ChiMap {
  DGAlgebra source;  // T(X⊗H)
  DGAlgebra tx;      // TX
  ChainComplex target;
  TensorLayout layout;
  ChainMap map;
};
ChiMap comodule_algebra_chi(const ChainComplex& x, const Bialgebra& h, std::size_t max_weight);

// T(X⊗H) with the coaction χ∘T(id⊗Δ)
ComoduleAlgebra free_comodule_algebra(const ChainComplex& x, const Bialgebra& h, std::size_t max_weight);

struct ObstructionReport {
  Ring ring = Ring::rationals();
  int m = 2;
  Bialgebra h, hhat;
  bool p_respects_structure = false;
  std::vector<std::pair<std::string, std::string>> forced;  // cobar generator -> value of ε̂
  std::optional<Scalar> a_forced_by_counit;                 // a making ε_H a coalgebra map on s^-1 s(x|x)
  // D(a) = (ε̂⊗ε̂)Δ(e) - Δ̂ε̂(e) on e = s^-1 s(x|x) | s^-1 s(x|x); entry k is the coefficient of a^k
  std::vector<Vec2> coefficients;
  std::vector<std::pair<Scalar, bool>> sweep;  // (a, D(a) != 0), finite fields only
  std::vector<Scalar> vanishing_at;            // every a with D(a) = 0
  Vec2 at(const Scalar& a) const;
  std::string tensor_string(const Vec2& v) const;
  Scalar coefficient(const Vec2& v, const Word& left, const Word& right) const;
  bool identically_zero() const { return coefficients.empty(); }
  bool lift_obstructed() const { return !identically_zero() && vanishing_at.empty(); }
};
ObstructionReport counterexample_obstruction(int m, Ring ring);

}  // namespace dgw
