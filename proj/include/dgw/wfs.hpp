#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dgw/chain.hpp"

namespace dgw {

enum class MapClass { Cof, AcyclicCof, Fib, AcyclicFib };
std::string class_name(MapClass c);

struct Factorization {
  ChainMap left;
  ChainComplex mid;
  ChainMap right;
  MapClass left_class, right_class;
};

struct LiftingProblem {
  ChainMap left;    // i: A -> B
  ChainMap right;   // p: X -> Y
  ChainMap top;     // A -> X
  ChainMap bottom;  // B -> Y
  bool commutes() const;
};

bool is_cofibration(const ChainMap& f);
bool is_fibration(const ChainMap& f);
bool is_homotopy_equivalence(const ChainMap& f);
bool in_class(const ChainMap& f, MapClass c);

// X -> Mf -> Y; Mf_n = X_n (x⊗d1t) ⊕ X_{n-1} (x⊗t) ⊕ Y_n
Factorization factor_cof_then_acyclic_fib(const ChainMap& f);
// X -> Nf -> Y; Nf_n = X_n ⊕ Y_n ⊕ Y_{n+1} (point, end of path, path)
Factorization factor_acyclic_cof_then_fib(const ChainMap& f);
// induced maps on middles for a square g∘a = b∘f
ChainMap cylinder_functor(const ChainMap& f, const ChainMap& g, const ChainMap& a, const ChainMap& b);
ChainMap cocylinder_functor(const ChainMap& f, const ChainMap& g, const ChainMap& a, const ChainMap& b);

std::optional<ChainMap> solve_lift(const LiftingProblem& p);

struct TwoOfSixReport {
  bool hypothesis_met = false;
  bool f = false, g = false, h = false, hgf = false;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};
TwoOfSixReport check_two_of_six(const ChainMap& f, const ChainMap& g, const ChainMap& h);

struct RetractWitness {
  Factorization factorization;
  ChainMap lift;  // B -> Mf
  bool ok = false;
  std::string failure;
};
// the retract argument for a map with the left lifting property against acyclic fibrations
RetractWitness retract_argument(const ChainMap& f);

struct SampleSpec {
  Ring ring = Ring::fp(2);
  std::size_t count = 10;
  std::uint64_t seed = 1;
  RandomSpec shape;
};

struct PropertyReport {
  std::size_t cases = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};
PropertyReport check_retract_closure(const SampleSpec& s);
PropertyReport check_factorization_axioms(const SampleSpec& s);

// generators shared by tests and suites
ChainMap random_cofibration(std::mt19937_64& rng, Ring ring, const RandomSpec& spec);
ChainMap random_acyclic_cofibration(std::mt19937_64& rng, Ring ring, const RandomSpec& spec);
ChainMap random_acyclic_fibration(std::mt19937_64& rng, Ring ring, const RandomSpec& spec);
ChainMap random_fibration(std::mt19937_64& rng, Ring ring, const RandomSpec& spec);
// homotopy equivalence with prescribed source
ChainMap random_equivalence_from(std::mt19937_64& rng, const ChainComplex& x, const RandomSpec& spec);
ChainMap random_automorphism(std::mt19937_64& rng, const ChainComplex& x);
// a lifting problem with a known solution c0 (top = c0 i, bottom = p c0)
LiftingProblem random_solvable_problem(std::mt19937_64& rng, Ring ring, const RandomSpec& spec);
// S^{n-1} -> D^n against X -> 0 with top hitting a non-boundary cycle
std::optional<LiftingProblem> random_unsolvable_problem(std::mt19937_64& rng, Ring ring, const RandomSpec& spec);

}  // namespace dgw
