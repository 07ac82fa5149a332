#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dgw/chain.hpp"
#include "dgw/words.hpp"

namespace dgw {

struct TruncationPolicy {
  std::size_t max_weight = 4;
  int deg_lo = 0, deg_hi = 12;
};

struct Window {
  int lo = 1, hi = 0;
  bool empty() const { return lo > hi; }
  bool contains(int n) const { return n >= lo && n <= hi; }
  Window meet(const Window& o) const { return {std::max(lo, o.lo), std::min(hi, o.hi)}; }
  bool operator==(const Window&) const = default;
};

struct Generator {
  std::string name;
  int degree = 0;
};

struct FreePresentation {
  std::vector<Generator> gens;
  std::vector<WordVec> d;  // d(gen) as a combination of words in the generators
  TruncationPolicy trunc;
  bool quotient = false;  // products longer than max_weight vanish instead of leaving the window
  bool linear() const;
};

// nullopt: the product leaves the truncated basis
using Product = std::function<std::optional<Vec>(Cell, Cell)>;
using Namer = std::function<std::string(Cell)>;

struct DGAlgebra {
  ChainComplex complex;
  Product mul;
  Cell unit;
  bool augmented = false;  // augmentation = coefficient of the unit cell
  Window window;
  Namer name;
  std::shared_ptr<const FreePresentation> presentation;
  std::shared_ptr<const WordBasis> words;

  const Ring& ring() const { return complex.ring(); }
  std::optional<Vec> product(const Vec& a, const Vec& b) const;
  ChainMap mult_map() const;
  ChainMap unit_map() const;
  std::optional<ChainMap> augmentation_map() const;
  std::vector<Cell> reduced_cells() const;  // all cells but the unit
};

DGAlgebra unit_algebra(Ring ring);
WordVec word_differential(const FreePresentation& p, const Word& w, const Ring& ring);
Window free_window(const FreePresentation& p);
DGAlgebra free_algebra(Ring ring, FreePresentation p);
// T(V)/T^{>W}: an honest finite algebra
// deg_hi extends the certified window past the top word when the quotient is the object of interest
DGAlgebra truncated_tensor_algebra(Ring ring, std::vector<Generator> gens, std::vector<WordVec> d, std::size_t max_weight,
                                   std::optional<int> deg_hi = std::nullopt);
// tensor algebra on a chain complex, letters = cells of x
FreePresentation presentation_on(const ChainComplex& x, const TruncationPolicy& t, const std::string& prefix = "v");

struct AlgebraMap {
  DGAlgebra src, dst;
  ChainMap map;
};

std::vector<std::string> check_algebra(const DGAlgebra& a);
std::vector<std::string> check_algebra_map(const AlgebraMap& f, const Window& w, bool augmentation = true);
// extend generator images multiplicatively; columns outside both windows may be left zero
AlgebraMap algebra_map_from_generators(const DGAlgebra& src, const DGAlgebra& dst, const std::vector<Vec>& images);

struct Coproduct {
  DGAlgebra sum;
  AlgebraMap in1, in2;
};
Coproduct algebra_coproduct(const DGAlgebra& a, const DGAlgebra& b);

struct AlgebraFactorization {
  AlgebraMap left;
  DGAlgebra mid;
  AlgebraMap right;
  Window window;
};
AlgebraFactorization acyclicity_factorization(const AlgebraMap& i, const TruncationPolicy& t);

struct DGModule {
  DGAlgebra algebra;
  ChainComplex complex;
  Product act;  // (m, a) -> m·a
  Window window;
  Namer name;
};

DGModule free_module(const DGAlgebra& a);
DGModule direct_sum_module(const DGModule& m, const DGModule& n);
std::vector<std::string> check_module(const DGModule& m);

struct ModuleMap {
  DGModule src, dst;
  ChainMap map;
};
std::vector<std::string> check_module_map(const ModuleMap& f);

struct ModuleCylinder {
  DGModule doubled;  // M ⊕ M
  DGModule cyl;      // M ⊗ I
  ModuleMap i, q;
  Cylinder chain;
};
ModuleCylinder module_cylinder(const DGModule& m);

bool quasi_iso_in(const ChainMap& f, const Window& w);

}  // namespace dgw
