#pragma once

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "dgw/linalg.hpp"

namespace dgw {

inline int koszul(long e) { return (e % 2 == 0) ? 1 : -1; }

// Bounded complex of finite-rank free modules; d(n): rank(n) -> rank(n-1).
class ChainComplex {
 public:
  ChainComplex() : ChainComplex(Ring::rationals()) {}
  explicit ChainComplex(Ring ring);
  // missing differentials are zero; validates shapes and d*d = 0
  ChainComplex(Ring ring, std::map<int, std::size_t> ranks, std::map<int, Matrix> d = {});

  const Ring& ring() const { return p_->ring; }
  // support bounds; lo() > hi() for the zero complex
  int lo() const { return p_->lo; }
  int hi() const { return p_->hi; }
  bool is_zero() const { return lo() > hi(); }
  std::size_t rank(int n) const;
  const Matrix& d(int n) const;
  std::size_t total_rank() const;
  std::map<int, std::size_t> ranks() const;

  bool operator==(const ChainComplex& o) const;

 private:
  struct Data {
    Ring ring;
    int lo = 1, hi = 0;
    std::vector<std::size_t> rank;
    std::vector<Matrix> d;  // d[n - lo]
    std::map<int, Matrix> zeros;
  };
  std::shared_ptr<Data> p_;
  const Matrix& zero_d(int n) const;
};

// f(n): src_n -> dst_{n+degree}; no compatibility with d assumed
struct GradedMap {
  ChainComplex src, dst;
  int degree = 0;
  std::map<int, Matrix> f;

  GradedMap() = default;
  GradedMap(ChainComplex s, ChainComplex t, int deg);  // zero map
  Matrix at(int n) const;
  void set(int n, Matrix m);
  GradedMap operator+(const GradedMap& o) const;
  GradedMap operator-(const GradedMap& o) const;
  GradedMap scaled(const Scalar& s) const;
  bool operator==(const GradedMap& o) const;
  bool is_zero() const;
};

GradedMap compose(const GradedMap& g, const GradedMap& f);
// d o f - (-1)^deg f o d
GradedMap graded_boundary(const GradedMap& f);

class ChainMap {
 public:
  ChainMap() = default;
  ChainMap(ChainComplex src, ChainComplex dst, std::map<int, Matrix> f, bool check = true);
  explicit ChainMap(const GradedMap& g, bool check = true);

  static ChainMap identity(const ChainComplex& x);
  static ChainMap zero(const ChainComplex& x, const ChainComplex& y);

  const ChainComplex& src() const { return g_.src; }
  const ChainComplex& dst() const { return g_.dst; }
  Matrix at(int n) const { return g_.at(n); }
  const GradedMap& graded() const { return g_; }

  ChainMap operator+(const ChainMap& o) const { return ChainMap(g_ + o.g_, false); }
  ChainMap operator-(const ChainMap& o) const { return ChainMap(g_ - o.g_, false); }
  ChainMap scaled(const Scalar& s) const { return ChainMap(g_.scaled(s), false); }
  bool operator==(const ChainMap& o) const { return g_ == o.g_; }

 private:
  GradedMap g_;
};

ChainMap compose(const ChainMap& g, const ChainMap& f);

// d h + h d = from - to
struct ChainHomotopy {
  ChainMap from, to;
  GradedMap h;
  bool valid() const;
};

struct HomologyGroup {
  std::size_t free_rank = 0;
  std::vector<Scalar> torsion;
  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  bool operator==(const HomologyGroup&) const = default;
};

HomologyGroup homology(const ChainComplex& x, int n);
bool is_acyclic(const ChainComplex& x);

ChainComplex unit_complex(Ring ring);
ChainComplex sphere(int n, Ring ring);
ChainComplex disk(int n, Ring ring);
ChainComplex interval(Ring ring);  // degree 0 basis [d0 t, d1 t], degree 1 basis [t]

struct DirectSum {
  ChainComplex sum;
  ChainMap in1, in2, pr1, pr2;
};
DirectSum direct_sum(const ChainComplex& x, const ChainComplex& y);
ChainMap direct_sum_map(const ChainMap& f, const ChainMap& g);

// basis of (X⊗Y)_n ordered by (i, a, b)
struct TensorLayout {
  std::map<int, std::map<int, std::size_t>> offset;  // offset[n][i]
  std::size_t index(const ChainComplex& y, int n, int i, std::size_t a, std::size_t b) const {
    return offset.at(n).at(i) + a * y.rank(n - i) + b;
  }
};
TensorLayout tensor_layout(const ChainComplex& x, const ChainComplex& y);
ChainComplex tensor(const ChainComplex& x, const ChainComplex& y);
ChainMap tensor_map(const ChainMap& f, const ChainMap& g);
GradedMap tensor_graded(const GradedMap& f, const GradedMap& g);
ChainMap swap_map(const ChainComplex& x, const ChainComplex& y);
ChainMap associator(const ChainComplex& x, const ChainComplex& y, const ChainComplex& z);
ChainMap right_unitor(const ChainComplex& x);  // X⊗R -> X
ChainMap left_unitor(const ChainComplex& x);   // R⊗X -> X

ChainComplex hom_complex(const ChainComplex& x, const ChainComplex& y);
// coordinates of a graded map in hom(X,Y)_deg, and back
Matrix hom_vector(const GradedMap& f);
GradedMap hom_element(const ChainComplex& x, const ChainComplex& y, int deg, const Matrix& v, std::size_t col = 0);

struct Cylinder {
  ChainMap i;  // X⊕X -> X⊗I
  ChainComplex cyl;
  ChainMap q;  // X⊗I -> X
  ChainMap i0, i1;
};
Cylinder cylinder(const ChainComplex& x);

ChainComplex suspension(const ChainComplex& x, int k);
ChainComplex cone(const ChainMap& f);

std::optional<ChainHomotopy> find_homotopy(const ChainMap& f, const ChainMap& g);
bool is_chain_map(const GradedMap& f);

// random generation used by property suites
struct RandomSpec {
  int deg_lo = -1, deg_hi = 2;
  std::size_t max_rank = 3;
  int entry_bound = 2;  // entries in [-bound, bound] before reduction
};
ChainComplex random_complex(std::mt19937_64& rng, Ring ring, const RandomSpec& spec);
ChainMap random_chain_map(std::mt19937_64& rng, const ChainComplex& x, const ChainComplex& y, int entry_bound = 2);
Matrix random_matrix(std::mt19937_64& rng, Ring ring, std::size_t rows, std::size_t cols, int bound);
Matrix random_invertible(std::mt19937_64& rng, Ring ring, std::size_t n);
std::uint64_t case_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace dgw
