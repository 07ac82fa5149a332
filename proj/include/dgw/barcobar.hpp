#pragma once

#include <optional>
#include <vector>

#include "dgw/coalg.hpp"

namespace dgw {

struct BarObject {
  DGAlgebra source;
  DGCoalgebra coalgebra;
  Window window;
  std::vector<Cell> letters;  // letter l is s(letters[l])
};

struct CobarObject {
  DGCoalgebra source;
  DGAlgebra algebra;
  Window window;
  std::vector<Cell> letters;  // letter l is s^-1(letters[l])
};

BarObject bar(const DGAlgebra& a, const TruncationPolicy& t);
CobarObject cobar(const DGCoalgebra& c, const TruncationPolicy& t);

struct CounitResult {
  BarObject bar;
  CobarObject cobar;
  AlgebraMap eps;  // ΩBarA -> A
  Window window;
};
// the truncations are derived from max_weight and the connectivity of Ā
CounitResult counit_eps(const DGAlgebra& a, std::size_t max_weight);

struct UnitResult {
  CobarObject cobar;
  BarObject bar;
  CoalgebraMap eta;  // C -> BarΩC
  Window window;
};
UnitResult unit_eta(const DGCoalgebra& c, std::size_t max_weight);

struct FiltrationStage {
  std::size_t length = 0;
  std::map<int, std::size_t> ranks;   // ranks of the layer of this length
  bool map_split = false;             // inclusion split mono, or quotient split epi
  bool layer_trivial = false;         // trivial reduced comultiplication, or square-zero layer
};

struct FiltrationReport {
  std::vector<FiltrationStage> stages;
  bool ok() const;
};

FiltrationReport split_filtration(const BarObject& b);
FiltrationReport split_filtration(const CobarObject& c);

// an A-module X together with a D-coaction that is A-linear
struct CoringComodule {
  DGModule module;
  Comodule comodule;
};
// Y⊗D with (y⊗e)·a = (-1)^{|e||a|}(y·a)⊗e and coaction id⊗Δ
CoringComodule tensor_with_coalgebra(const DGModule& y, const DGCoalgebra& d);

struct TwoSidedBar {
  DGModule module;  // Bar(X,A,A)
  ModuleMap aug;    // to X
  std::optional<Comodule> coaction;
  std::optional<Comodule> target_coaction;
  Window window;
  BarObject bar;
};
TwoSidedBar two_sided_bar(const DGModule& x, const TruncationPolicy& t);
TwoSidedBar two_sided_bar(const CoringComodule& x, const TruncationPolicy& t);

}  // namespace dgw
