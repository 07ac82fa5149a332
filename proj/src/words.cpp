#include "dgw/words.hpp"

#include <algorithm>

namespace dgw {

WordBasis::WordBasis(std::vector<int> letter_deg, std::size_t max_len, int deg_lo, int deg_hi)
    : letter_deg_(std::move(letter_deg)), max_len_(max_len), lo_(deg_lo), hi_(deg_hi) {
  int mn = 0, mx = 0;
  for (int d : letter_deg_) {
    mn = std::min(mn, d);
    mx = std::max(mx, d);
  }
  auto reachable = [&](int deg, std::size_t len) {
    long rest = static_cast<long>(max_len_ - len);
    return deg + rest * mn <= hi_ && deg + rest * mx >= lo_;
  };
  std::vector<std::pair<Word, int>> level{{Word{}, 0}};
  for (std::size_t len = 0;; ++len) {
    for (const auto& [w, deg] : level) {
      if (deg >= lo_ && deg <= hi_) {
        auto& bucket = by_deg_[deg];
        index_.emplace(w, Cell{deg, bucket.size()});
        bucket.push_back(w);
      }
    }
    if (len == max_len_) break;
    std::vector<std::pair<Word, int>> next;
    for (const auto& [w, deg] : level)
      for (std::size_t l = 0; l < letter_deg_.size(); ++l) {
        int nd = deg + letter_deg_[l];
        if (!reachable(nd, len + 1)) continue;
        Word v = w;
        v.push_back(static_cast<int>(l));
        next.emplace_back(std::move(v), nd);
      }
    if (next.empty()) break;
    level = std::move(next);
  }
}

int WordBasis::degree(const Word& w) const {
  int d = 0;
  for (int l : w) d += letter_deg_[l];
  return d;
}

std::optional<Cell> WordBasis::find(const Word& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t WordBasis::rank(int n) const {
  auto it = by_deg_.find(n);
  return it == by_deg_.end() ? 0 : it->second.size();
}

std::map<int, std::size_t> WordBasis::ranks() const {
  std::map<int, std::size_t> r;
  for (const auto& [d, ws] : by_deg_) r[d] = ws.size();
  return r;
}

std::string word_name(const Word& w, const std::function<std::string(int)>& letter) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += "|";
    s += letter(w[i]);
  }
  return s;
}

WordVec leibniz(const Word& w, const std::function<WordVec(int)>& on_letter, int k,
                const std::vector<int>& letter_deg, const Ring& ring) {
  WordVec out;
  long before = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const int s = koszul(static_cast<long>(k) * before);
    for (const auto& [mid, c] : on_letter(w[i])) {
      Word v(w.begin(), w.begin() + i);
      v.insert(v.end(), mid.begin(), mid.end());
      v.insert(v.end(), w.begin() + i + 1, w.end());
      accumulate(out, v, c * s, ring);
    }
    before += letter_deg[w[i]];
  }
  return out;
}

ChainComplex complex_from(const Ring& ring, const std::map<int, std::size_t>& ranks,
                          const std::function<Vec(Cell)>& d) {
  std::map<int, Matrix> mats;
  for (const auto& [n, r] : ranks) {
    if (!r) continue;
    auto below = ranks.find(n - 1);
    std::size_t rb = below == ranks.end() ? 0 : below->second;
    if (!rb) continue;
    Matrix m(ring, rb, r);
    for (std::size_t j = 0; j < r; ++j)
      for (const auto& [c, x] : d(Cell{n, j})) {
        if (c.deg != n - 1) throw Error("differential leaves its degree");
        m.add_to(c.idx, j, x);
      }
    mats.emplace(n, std::move(m));
  }
  return ChainComplex(ring, ranks, mats);
}

GradedMap graded_from(const ChainComplex& s, const ChainComplex& t, int degree, const std::function<Vec(Cell)>& f) {
  GradedMap g(s, t, degree);
  for (int n = s.lo(); n <= s.hi(); ++n) {
    if (!s.rank(n) || !t.rank(n + degree)) continue;
    Matrix m(s.ring(), t.rank(n + degree), s.rank(n));
    for (std::size_t j = 0; j < s.rank(n); ++j)
      for (const auto& [c, x] : f(Cell{n, j})) {
        if (c.deg != n + degree) throw Error("graded map leaves its degree");
        m.add_to(c.idx, j, x);
      }
    g.set(n, std::move(m));
  }
  return g;
}

ChainMap map_from(const ChainComplex& s, const ChainComplex& t, const std::function<Vec(Cell)>& f, bool check) {
  return ChainMap(graded_from(s, t, 0, f), check);
}

Vec column_of(const Matrix& m, int deg, std::size_t col) {
  Vec v;
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (!m.is_zero_at(r, col)) v.emplace(Cell{deg, r}, m.at(r, col));
  return v;
}

Vec apply(const GradedMap& f, const Vec& v) {
  Vec out;
  const Ring& R = f.src.ring();
  std::map<int, Matrix> cache;
  for (const auto& [c, x] : v) {
    if (!f.dst.rank(c.deg + f.degree)) continue;
    auto it = cache.find(c.deg);
    if (it == cache.end()) it = cache.emplace(c.deg, f.at(c.deg)).first;
    const Matrix& m = it->second;
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (!m.is_zero_at(r, c.idx)) accumulate(out, Cell{c.deg + f.degree, r}, m.at(r, c.idx) * x, R);
  }
  return out;
}

Vec apply(const ChainMap& f, const Vec& v) { return apply(f.graded(), v); }

Vec differential(const ChainComplex& x, const Vec& v) {
  Vec out;
  for (const auto& [c, a] : v) {
    if (!x.rank(c.deg - 1)) continue;
    const Matrix& m = x.d(c.deg);
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (!m.is_zero_at(r, c.idx)) accumulate(out, Cell{c.deg - 1, r}, m.at(r, c.idx) * a, x.ring());
  }
  return out;
}

Vec unit_vec(Cell c) { return Vec{{c, Scalar(1)}}; }

Cell tensor_cell(const TensorLayout& l, const ChainComplex& y, Cell a, Cell b) {
  int n = a.deg + b.deg;
  return Cell{n, l.index(y, n, a.deg, a.idx, b.idx)};
}

Vec tensor_vec(const TensorLayout& l, const ChainComplex& y, const Vec2& v) {
  Vec out;
  for (const auto& [ab, x] : v) accumulate(out, tensor_cell(l, y, ab.first, ab.second), x, y.ring());
  return out;
}

std::pair<Cell, Cell> split_tensor_cell(const TensorLayout& l, const ChainComplex& x, const ChainComplex& y, Cell c) {
  const auto& offs = l.offset.at(c.deg);
  for (const auto& [i, off] : offs) {
    std::size_t sz = x.rank(i) * y.rank(c.deg - i);
    if (c.idx >= off && c.idx < off + sz) {
      std::size_t k = c.idx - off, ry = y.rank(c.deg - i);
      return {Cell{i, k / ry}, Cell{c.deg - i, k % ry}};
    }
  }
  throw Error("cell outside tensor layout");
}

TVec to_tvec(const Vec& v) {
  TVec out;
  for (const auto& [c, x] : v) out.emplace(Tensor{c}, x);
  return out;
}

TVec to_tvec(const Vec2& v) {
  TVec out;
  for (const auto& [ab, x] : v) out.emplace(Tensor{ab.first, ab.second}, x);
  return out;
}

TVec expand_at(const TVec& v, std::size_t pos, const std::function<Vec2(Cell)>& f, const Ring& ring) {
  TVec out;
  for (const auto& [t, x] : v)
    for (const auto& [ab, y] : f(t[pos])) {
      Tensor u(t.begin(), t.begin() + pos);
      u.push_back(ab.first);
      u.push_back(ab.second);
      u.insert(u.end(), t.begin() + pos + 1, t.end());
      accumulate(out, u, x * y, ring);
    }
  return out;
}

TVec map_at(const TVec& v, std::size_t pos, const std::function<Vec(Cell)>& f, int k, const Ring& ring) {
  TVec out;
  for (const auto& [t, x] : v) {
    long before = 0;
    for (std::size_t i = 0; i < pos; ++i) before += t[i].deg;
    const int s = koszul(static_cast<long>(k) * before);
    for (const auto& [c, y] : f(t[pos])) {
      Tensor u = t;
      u[pos] = c;
      accumulate(out, u, x * y * s, ring);
    }
  }
  return out;
}

TVec tensor_differential(const TVec& v, const std::vector<const ChainComplex*>& factors, const Ring& ring) {
  TVec out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const ChainComplex* x = factors[i];
    add_scaled(out, map_at(v, i, [x](Cell c) { return differential(*x, unit_vec(c)); }, 1, ring), Scalar(1), ring);
  }
  return out;
}

ChainComplex truncate_above(const ChainComplex& x, int hi) {
  std::map<int, std::size_t> ranks;
  std::map<int, Matrix> d;
  for (int n = x.lo(); n <= std::min(x.hi(), hi); ++n) {
    ranks[n] = x.rank(n);
    if (n > x.lo()) d.emplace(n, x.d(n));
  }
  return ChainComplex(x.ring(), ranks, d);
}

std::vector<Cell> cells_of(const ChainComplex& x) {
  std::vector<Cell> out;
  for (int n = x.lo(); n <= x.hi(); ++n)
    for (std::size_t i = 0; i < x.rank(n); ++i) out.push_back(Cell{n, i});
  return out;
}

}  // namespace dgw
