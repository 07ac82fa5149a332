#pragma once

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dgw/chain.hpp"

namespace dgw {

// basis element of a graded free module: degree and index within that degree
struct Cell {
  int deg = 0;
  std::size_t idx = 0;
  auto operator<=>(const Cell&) const = default;
};

using Vec = std::map<Cell, Scalar>;
using Vec2 = std::map<std::pair<Cell, Cell>, Scalar>;
using Word = std::vector<int>;
using WordVec = std::map<Word, Scalar>;

template <class K>
void accumulate(std::map<K, Scalar>& v, const K& k, const Scalar& c, const Ring& ring) {
  if (c == 0) return;
  auto it = v.find(k);
  Scalar s = ring.normalize(it == v.end() ? c : it->second + c);
  if (s == 0) {
    if (it != v.end()) v.erase(it);
  } else if (it == v.end()) {
    v.emplace(k, s);
  } else {
    it->second = s;
  }
}

template <class K>
void add_scaled(std::map<K, Scalar>& acc, const std::map<K, Scalar>& v, const Scalar& c, const Ring& ring) {
  for (const auto& [k, x] : v) accumulate(acc, k, x * c, ring);
}

// tensor words over a graded alphabet, bounded in length and degree
class WordBasis {
 public:
  WordBasis() = default;
  WordBasis(std::vector<int> letter_deg, std::size_t max_len, int deg_lo, int deg_hi);

  std::size_t letters() const { return letter_deg_.size(); }
  int letter_degree(int l) const { return letter_deg_[l]; }
  const std::vector<int>& letter_degrees() const { return letter_deg_; }
  int degree(const Word& w) const;
  std::optional<Cell> find(const Word& w) const;
  const Word& word(Cell c) const { return by_deg_.at(c.deg)[c.idx]; }
  std::size_t rank(int n) const;
  std::map<int, std::size_t> ranks() const;
  std::size_t max_len() const { return max_len_; }
  int deg_lo() const { return lo_; }
  int deg_hi() const { return hi_; }
  const std::map<int, std::vector<Word>>& words() const { return by_deg_; }

 private:
  std::vector<int> letter_deg_;
  std::size_t max_len_ = 0;
  int lo_ = 0, hi_ = 0;
  std::map<int, std::vector<Word>> by_deg_;
  std::map<Word, Cell> index_;
};

std::string word_name(const Word& w, const std::function<std::string(int)>& letter);

// Leibniz extension of a letter map of degree k over concatenation, with Koszul signs
WordVec leibniz(const Word& w, const std::function<WordVec(int)>& on_letter, int k,
                const std::vector<int>& letter_deg, const Ring& ring);

ChainComplex complex_from(const Ring& ring, const std::map<int, std::size_t>& ranks,
                          const std::function<Vec(Cell)>& d);
GradedMap graded_from(const ChainComplex& s, const ChainComplex& t, int degree, const std::function<Vec(Cell)>& f);
ChainMap map_from(const ChainComplex& s, const ChainComplex& t, const std::function<Vec(Cell)>& f,
                  bool check = true);

Vec column_of(const Matrix& m, int deg, std::size_t col);
Vec apply(const GradedMap& f, const Vec& v);
Vec apply(const ChainMap& f, const Vec& v);
Vec differential(const ChainComplex& x, const Vec& v);
Vec unit_vec(Cell c);

// (a, b) -> cell of X⊗Y and back
Cell tensor_cell(const TensorLayout& l, const ChainComplex& y, Cell a, Cell b);
Vec tensor_vec(const TensorLayout& l, const ChainComplex& y, const Vec2& v);
std::pair<Cell, Cell> split_tensor_cell(const TensorLayout& l, const ChainComplex& x, const ChainComplex& y, Cell c);

// elements of multiple tensor products, one cell per factor
using Tensor = std::vector<Cell>;
using TVec = std::map<Tensor, Scalar>;

TVec to_tvec(const Vec& v);
TVec to_tvec(const Vec2& v);
// replace factor `pos` by the two factors of f(cell); f has degree 0
TVec expand_at(const TVec& v, std::size_t pos, const std::function<Vec2(Cell)>& f, const Ring& ring);
// replace factor `pos` by f(cell) for f of degree k, with the Koszul sign of moving f past earlier factors
TVec map_at(const TVec& v, std::size_t pos, const std::function<Vec(Cell)>& f, int k, const Ring& ring);
// total differential, one complex per factor
TVec tensor_differential(const TVec& v, const std::vector<const ChainComplex*>& factors, const Ring& ring);

ChainComplex truncate_above(const ChainComplex& x, int hi);
std::vector<Cell> cells_of(const ChainComplex& x);

}  // namespace dgw
