#pragma once

#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "dgw/chain.hpp"
#include "dgw/distlaw.hpp"

namespace dgw {

enum class MorTag { identity, plus, minus, mixed };
std::string tag_name(MorTag t);
MorTag parse_tag(const std::string& s);

struct ReedyObject {
  std::string name;
  int degree = 0;
};

struct ReedyMorphism {
  std::string name;
  int src = 0, dst = 0;
  MorTag tag = MorTag::mixed;
};

// finite category with a degree function, given by explicit tables
class ReedyCategory {
 public:
  ReedyCategory() = default;
  // compose[{g, f}] = g∘f for every composable pair; factor[f] = {minus part, plus part}
  // identities may be omitted; validation throws InputError
  ReedyCategory(std::vector<ReedyObject> objects, std::vector<ReedyMorphism> morphisms,
                std::map<std::pair<int, int>, int> compose, std::map<int, std::pair<int, int>> factor);

  std::size_t object_count() const { return d_->objects.size(); }
  std::size_t morphism_count() const { return d_->morphisms.size(); }
  const ReedyObject& object(int x) const { return d_->objects.at(x); }
  const ReedyMorphism& morphism(int f) const { return d_->morphisms.at(f); }
  int identity(int x) const { return d_->identity.at(x); }
  int compose(int g, int f) const;
  std::pair<int, int> factor(int f) const { return d_->factor.at(f); }
  bool is_plus(int f) const;   // identities included
  bool is_minus(int f) const;  // identities included
  const std::vector<int>& hom(int x, int y) const;
  std::vector<int> into(int r) const;   // all morphisms with target r
  std::vector<int> out_of(int r) const; // all morphisms with source r
  int find_object(const std::string& name) const;
  int find_morphism(const std::string& name) const;
  ReedyCategory opposite() const;

 private:
  struct Data {
    std::vector<ReedyObject> objects;
    std::vector<ReedyMorphism> morphisms;
    std::map<std::pair<int, int>, int> compose;
    std::vector<std::pair<int, int>> factor;
    std::vector<int> identity;
    std::map<std::pair<int, int>, std::vector<int>> hom;
  };
  std::shared_ptr<const Data> d_;
};

ReedyCategory truncated_delta(int n);
ReedyCategory truncated_delta_op(int n);
ReedyCategory discrete_category(std::size_t objects);

// which morphisms a diagram is defined on
enum class Sub { objects, plus, minus, full };
bool in_sub(const ReedyCategory& c, Sub s, int f);

struct Diagram {
  ReedyCategory shape;
  Sub sub = Sub::full;
  std::vector<ChainComplex> at;
  std::map<int, ChainMap> map;  // every morphism in sub, identities included
  const ChainMap& of(int f) const;
};
std::vector<std::string> check_diagram(const Diagram& d);
Diagram restrict_to(const Diagram& d, Sub s);
Diagram zero_diagram(const ReedyCategory& c, Ring ring, Sub s = Sub::full);
Diagram constant_diagram(const ReedyCategory& c, const ChainComplex& x);

struct NatTrans {
  Diagram src, dst;
  std::vector<ChainMap> at;
};
std::vector<std::string> check_natural(const NatTrans& t);
NatTrans identity_nat(const Diagram& d);
NatTrans compose_nat(const NatTrans& g, const NatTrans& f);

// free diagram on a family: Lan along Ob ↪ sub, value ⊕_{x, sub(x,r)} Φ(x)
Diagram free_diagram(const ReedyCategory& c, const std::vector<ChainComplex>& family, Sub s = Sub::full);
// the map out of a free diagram determined by family maps Φ(x) -> Ψ(x)
NatTrans free_extension(const Diagram& free, const std::vector<ChainComplex>& family, const Diagram& target,
                        const std::vector<ChainMap>& on_family);
// objectwise cokernel of τ, with the projection
NatTrans cokernel_nat(const NatTrans& t);
NatTrans direct_sum_inclusion(const Diagram& a, const Diagram& b);  // a -> a ⊕ b

struct DiagramSpec {
  RandomSpec family{0, 1, 1, 2};
  int relations = 1;  // 0: free diagrams only
};
Diagram random_diagram(std::mt19937_64& rng, const ReedyCategory& c, Ring ring, const DiagramSpec& spec = {});
// Φ -> (Φ ⊕ free) / random image
NatTrans random_nat(std::mt19937_64& rng, const Diagram& src, const DiagramSpec& spec = {});

struct Latching {
  std::vector<int> slice;    // plus morphisms f: x -> r, x of lower degree
  ChainComplex object;
  ChainMap canonical;        // L_rΦ -> Φ(r)
  ChainMap quotient;         // ⊕_f Φ(dom f) -> L_rΦ
  std::map<int, Matrix> section;
};
struct Matching {
  std::vector<int> slice;    // minus morphisms g: r -> y, y of lower degree
  ChainComplex object;
  ChainMap canonical;        // Φ(r) -> M_rΦ
  ChainMap inclusion;        // M_rΦ -> ⊕_g Φ(cod g)
};
Latching latching(const Diagram& d, int r);
Matching matching(const Diagram& d, int r);
ChainMap latching_map(const NatTrans& t, int r);  // L_rΦ -> L_rΨ
ChainMap matching_map(const NatTrans& t, int r);  // M_rΦ -> M_rΨ

ChainMap relative_latching(const NatTrans& t, int r);  // Φ(r) ⊔_{L_rΦ} L_rΨ -> Ψ(r)
ChainMap relative_matching(const NatTrans& t, int r);  // Φ(r) -> Ψ(r) ×_{M_rΨ} M_rΦ
// injectivity of ℓ_r by comparing ker[τ_r, L_rΨ -> Ψ(r)] with the image of L_rΦ, without forming the pushout
bool relative_latching_injective(const NatTrans& t, int r);
bool relative_matching_surjective(const NatTrans& t, int r);

struct ReedyVerdict {
  bool cofibration = false, fibration = false, weak_equivalence = false;
  std::vector<int> failing_latching, failing_matching, failing_objects;
};
ReedyVerdict reedy_classify(const NatTrans& t);

enum class Inclusion { objects_into_plus, objects_into_minus, minus_into_full, plus_into_full };
Diagram lan_along(Inclusion inc, const Diagram& d);
Diagram ran_along(Inclusion inc, const Diagram& d);

struct ExactSquareReport {
  std::string which;  // "LV=VL" or "RU=UR"
  std::vector<std::string> failures;
  std::map<std::string, std::size_t> ranks;  // object name -> total rank of each side
  bool ok() const { return failures.empty(); }
};
// Φ on R⁻: LV(Φ) against VL(Φ) through the factorization comparison
ExactSquareReport check_exact_square_lv(const Diagram& minus_diagram);
// Ψ on R⁺: RU(Ψ) against UR(Ψ)
ExactSquareReport check_exact_square_ru(const Diagram& plus_diagram);

// the Lemma-style χ: T = U∘Lan along Ob ↪ R⁺, K = V∘Ran along Ob ↪ R⁻, on an Ob-indexed family
DistributiveLaw reedy_distributive_law(const ReedyCategory& c, const std::vector<ChainComplex>& family);
DistributiveLaw reedy_distributive_law(const ReedyCategory& c, const std::vector<ChainComplex>& family,
                                       const std::vector<ChainComplex>& other, const std::vector<ChainMap>& morphism);
// component at r as a chain map TKΦ(r) -> KTΦ(r)
ChainMap reedy_chi_component(const ReedyCategory& c, const std::vector<ChainComplex>& family, int r);

// diagrams on R versus compatible pairs of R⁺- and R⁻-diagrams on the same family
std::vector<std::string> check_bialgebra_pair(const Diagram& plus, const Diagram& minus);
Diagram diagram_from_pair(const Diagram& plus, const Diagram& minus);

}  // namespace dgw
