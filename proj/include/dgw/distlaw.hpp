#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "dgw/bialg.hpp"

namespace dgw {

// basis element of a composite of functors applied to a graded family
struct Term {
  enum Kind { leaf = 0, monad = 1, comonad = 2 };
  int kind = leaf;
  int tag = 0;   // leaf: object; nodes: layer-defined label
  Cell cell{};   // leaf: cell of the family; nodes: extra tensor factor, degree 0 cell if none
  std::vector<Term> kids;
  bool operator==(const Term& o) const {
    return kind == o.kind && tag == o.tag && cell == o.cell && kids == o.kids;
  }
  bool operator<(const Term& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (tag != o.tag) return tag < o.tag;
    if (cell != o.cell) return cell < o.cell;
    return std::lexicographical_compare(kids.begin(), kids.end(), o.kids.begin(), o.kids.end());
  }
};

using TermVec = std::map<Term, Scalar>;
using TermMap = std::function<TermVec(const Term&)>;

int term_degree(const Term& t);
std::size_t term_leaves(const Term& t);

struct Layer {
  // F(f): apply f to everything below this layer
  std::function<TermVec(const Term&, const TermMap&)> fmap;
  // basis of F applied to a family with the given basis, keeping terms with at most `budget` leaves
  std::function<std::vector<Term>(const std::vector<Term>&, std::size_t budget)> expand;
};

struct MonadData {
  Layer layer;
  TermMap unit, mult;
};

struct ComonadData {
  Layer layer;
  TermMap counit, comult;
};

struct DistributiveLaw {
  std::string name;
  Ring ring = Ring::rationals();
  MonadData t;
  ComonadData k;
  TermMap chi;             // TK -> KT
  std::vector<Term> base;  // basis of the sampled object
  std::size_t budget = 3;
  // optional sampled morphism of base objects, for naturality of χ
  std::vector<Term> other_base;
  TermMap morphism;
};

struct DiagramReport {
  std::string diagram;
  std::size_t checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// unit, multiplication, counit and comultiplication compatibilities, plus naturality when a morphism is given
std::vector<DiagramReport> check_distributive_law(const DistributiveLaw& law);
bool all_ok(const std::vector<DiagramReport>& r);

// apply f at the given depth below a stack of layers
TermVec apply_at(const Term& t, const std::vector<const Layer*>& above, const TermMap& f);
TermVec apply_linear(const TermVec& v, const TermMap& f, const Ring& ring);
std::string term_string(const Term& t);

DistributiveLaw identity_law(Ring ring, const std::vector<Term>& base);

// χ of T over -⊗H on the cells of x
enum class ChiMutation { none, flip, empty_word, no_koszul };
struct ChiVariant {
  ChiMutation kind = ChiMutation::none;
  std::size_t length = 0;  // flip: word length whose sign is flipped
  int parity = 0;          // flip: parity of the degree of h1⋯hn
  std::string name() const;
};
// sign flips on words of length 1..3 split by parity of |h1⋯hn|, on the empty word, and dropping the Koszul sign
std::vector<ChiVariant> chi_mutations();
DistributiveLaw comodule_algebra_law(const ChainComplex& x, const Bialgebra& h, std::size_t budget,
                                     const ChiVariant& variant = {});
// with a random chain map x -> y for the naturality square
DistributiveLaw comodule_algebra_law(const ChainComplex& x, const Bialgebra& h, std::size_t budget,
                                     const ChainMap& f, const ChiVariant& variant = {});

}  // namespace dgw
