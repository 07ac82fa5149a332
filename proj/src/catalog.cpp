#include "dgw/catalog.hpp"

namespace dgw {

namespace {

constexpr int kCatalogDegHi = 24;

DGAlgebra quotient(Ring R, std::vector<Generator> gens, std::vector<WordVec> d, std::size_t w) {
  return truncated_tensor_algebra(R, std::move(gens), std::move(d), w, kCatalogDegHi);
}

}  // namespace

DGAlgebra dual_numbers(Ring ring, int degree) { return quotient(ring, {{"x", degree}}, {}, 1); }

DGCoalgebra named_cofree(const ChainComplex& x, std::size_t max_weight, const std::vector<std::string>& names) {
  std::map<Cell, std::string> by_cell;
  std::size_t i = 0;
  for (Cell c : cells_of(x)) by_cell[c] = names.at(i++);
  return cofree_coalgebra(x, max_weight, [by_cell](Cell c) { return by_cell.at(c); });
}

std::vector<NamedAlgebra> regression_algebras(Ring R) {
  const WordVec dy_is_x{{Word{0}, Scalar(1)}};
  return {
      {"unit", quotient(R, {}, {}, 1)},
      {"dual_odd_1", dual_numbers(R, 1)},
      {"dual_even_2", dual_numbers(R, 2)},
      {"dual_odd_3", dual_numbers(R, 3)},
      {"x1_cubed", quotient(R, {{"x", 1}}, {}, 3)},
      {"x2_squared", quotient(R, {{"x", 2}}, {}, 2)},
      {"free_x1_y1_w2", quotient(R, {{"x", 1}, {"y", 1}}, {}, 2)},
      {"free_x1_y2_w2", quotient(R, {{"x", 1}, {"y", 2}}, {}, 2)},
      {"acyclic_x1_y2_w2", quotient(R, {{"x", 1}, {"y", 2}}, {{}, dy_is_x}, 2)},
      {"square_zero_x1_y3", quotient(R, {{"x", 1}, {"y", 3}}, {}, 1)},
      {"free_x2_y2_w2", quotient(R, {{"x", 2}, {"y", 2}}, {}, 2)},
  };
}

std::vector<NamedCoalgebra> regression_coalgebras(Ring R) {
  // the weight truncation is itself a subcoalgebra, exact in every degree
  auto whole = [](DGCoalgebra c) {
    c.window = {0, kCatalogDegHi};
    return c;
  };
  auto one = [&](int deg, std::size_t w) { return whole(named_cofree(ChainComplex(R, {{deg, 1}}), w, {"x"})); };
  auto two = [&](int a, int b, std::size_t w) {
    std::map<int, std::size_t> ranks{{a, 1}};
    ranks[b] += 1;
    return whole(named_cofree(ChainComplex(R, ranks), w, {"x", "y"}));
  };
  ChainComplex disk32(R, {{2, 1}, {3, 1}}, {{3, Matrix::identity(R, 1)}});
  return {
      {"unit", whole(unit_coalgebra(R))},
      {"dual_even_2", one(2, 1)},
      {"dual_odd_3", one(3, 1)},
      {"tco_x2_w3", one(2, 3)},
      {"tco_x3_w2", one(3, 2)},
      {"tco_x4_w2", one(4, 2)},
      {"free_x2_y2_w2", two(2, 2, 2)},
      {"free_x2_y3_w2", two(2, 3, 2)},
      {"dual_x2_y4", two(2, 4, 1)},
      {"disk_w2", whole(named_cofree(disk32, 2, {"y", "x"}))},
  };
}

}  // namespace dgw
