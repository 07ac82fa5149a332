#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dgw/dga.hpp"

namespace dgw {

using Comult = std::function<Vec2(Cell)>;
// a combination of letters, keyed by letter index
using LetterVec = std::map<int, Scalar>;
// corestriction of a coderivation of degree -1: words -> letters
using Corestriction = std::function<LetterVec(const Word&)>;

struct DGCoalgebra {
  ChainComplex complex;
  Comult comult;
  Vec counit;  // coefficients on degree-0 cells
  std::optional<Cell> coaugmentation;
  std::optional<std::size_t> conilpotency_bound;  // reduced iterate into bound+1 factors vanishes
  Window window;
  Namer name;
  std::shared_ptr<const WordBasis> words;

  const Ring& ring() const { return complex.ring(); }
  Scalar counit_of(Cell c) const;
  Vec2 comult_vec(const Vec& v) const;
  // (π⊗π)Δ with π = id - η∘ε
  Vec2 reduced(Cell c) const;
  ChainMap comult_map() const;
  ChainMap counit_map() const;
  std::vector<Cell> reduced_cells() const;  // all cells but the coaugmentation
};

DGCoalgebra unit_coalgebra(Ring ring);

struct CofreeSpec {
  std::vector<int> letter_deg;
  std::vector<std::string> letter_name;
  Corestriction coderivation;  // empty: zero differential
  TruncationPolicy trunc;
};
Window cofree_window(const std::vector<int>& letter_deg, const TruncationPolicy& t);
// words in the letters with deconcatenation; the differential is the coderivation with the given corestriction
DGCoalgebra cofree_on_letters(Ring ring, const CofreeSpec& spec);
// letters = cells of x in cells_of order
DGCoalgebra cofree_coalgebra(const ChainComplex& x, std::size_t max_weight, const Namer& letter = {});
DGCoalgebra interval_coalgebra(Ring ring);
// subcoalgebra of cells in degrees <= hi
DGCoalgebra truncate_coalgebra(const DGCoalgebra& c, int hi);

std::vector<std::string> check_coalgebra(const DGCoalgebra& c);
// Δ̄ iterated into k factors, starting from the projection onto the reduced part
TVec iterated_reduced(const DGCoalgebra& c, Cell cell, std::size_t k);

struct CoalgebraMap {
  DGCoalgebra src, dst;
  ChainMap map;
};
std::vector<std::string> check_coalgebra_map(const CoalgebraMap& f, const Window& w);
// the unique coalgebra map into a cofree coalgebra with the given corestriction
CoalgebraMap coalgebra_map_from_corestriction(const DGCoalgebra& src, const DGCoalgebra& cofree,
                                              const std::function<LetterVec(Cell)>& f);
CoalgebraMap coalgebra_map_from_corestriction(const DGCoalgebra& src, const DGCoalgebra& cofree, const ChainMap& f);
// length-one component of a map into a cofree coalgebra
LetterVec corestriction_of(const CoalgebraMap& f, Cell c);

struct Comodule {
  DGCoalgebra coalgebra;
  ChainComplex complex;
  std::function<Vec2(Cell)> coaction;  // pairs (m, c)
  Namer name;
  ChainMap coaction_map() const;
};

Comodule cofree_comodule(const ChainComplex& x, const DGCoalgebra& c);
Comodule direct_sum_comodule(const Comodule& m, const Comodule& n);
std::vector<std::string> check_comodule(const Comodule& m);

struct ComoduleMap {
  Comodule src, dst;
  ChainMap map;
};
std::vector<std::string> check_comodule_map(const ComoduleMap& f);
// (g⊗id)∘ρ : M -> X⊗C for a chain map g : M -> X
ComoduleMap induced_comodule_map(const Comodule& m, const ChainMap& g);

struct ComoduleCylinder {
  Comodule doubled;  // M ⊕ M
  Comodule cyl;      // M ⊗ I
  ComoduleMap i, q;
  Cylinder chain;
};
ComoduleCylinder comodule_cylinder(const Comodule& m);

}  // namespace dgw
