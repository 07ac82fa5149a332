#pragma once

#include <string>
#include <vector>

#include "dgw/coalg.hpp"

namespace dgw {

struct NamedAlgebra {
  std::string name;
  DGAlgebra algebra;
};
struct NamedCoalgebra {
  std::string name;
  DGCoalgebra coalgebra;
};

// fixed regression sets for the bar/cobar checks
std::vector<NamedAlgebra> regression_algebras(Ring ring);
std::vector<NamedCoalgebra> regression_coalgebras(Ring ring);

DGAlgebra dual_numbers(Ring ring, int degree);
// cofree coalgebra on cells named by `names`, one per cell of x in cells_of order
DGCoalgebra named_cofree(const ChainComplex& x, std::size_t max_weight, const std::vector<std::string>& names);

}  // namespace dgw
