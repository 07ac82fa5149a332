#include "dgw/bialg.hpp"

#include <algorithm>
#include <mutex>

namespace dgw {

namespace {

void report(std::vector<std::string>& out, const std::string& msg) {
  if (out.size() < 20) out.push_back(msg);
}

void report_all(std::vector<std::string>& out, const std::string& prefix, const std::vector<std::string>& more) {
  for (const auto& m : more) report(out, prefix + m);
}

int word_degree(const std::vector<int>& letter_deg, const Word& w, std::size_t from, std::size_t to) {
  int s = 0;
  for (std::size_t i = from; i < to; ++i) s += letter_deg[w[i]];
  return s;
}

Word slice(const Word& w, std::size_t from, std::size_t to) { return Word(w.begin() + from, w.begin() + to); }

// π extended by the unit laws: π(u⊗1) = u when u is a letter
LetterVec pi_ext(const CorestrictedProduct& pi, const Word& u, const Word& v) {
  if (u.empty() && v.empty()) return {};
  if (u.empty()) return v.size() == 1 ? LetterVec{{v[0], Scalar(1)}} : LetterVec{};
  if (v.empty()) return u.size() == 1 ? LetterVec{{u[0], Scalar(1)}} : LetterVec{};
  return pi ? pi(u, v) : LetterVec{};
}

using ProductMemo = std::map<std::pair<Word, Word>, WordVec>;

WordVec product_rec(const std::vector<int>& deg, const CorestrictedProduct& pi, const Word& u, const Word& v,
                    const Ring& R, Peel peel, ProductMemo& memo) {
  if (u.empty()) return {{v, Scalar(1)}};
  if (v.empty()) return {{u, Scalar(1)}};
  auto key = std::make_pair(u, v);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  WordVec out;
  for (std::size_t a = 0; a <= u.size(); ++a)
    for (std::size_t b = 0; b <= v.size(); ++b) {
      const Word u1 = slice(u, 0, a), u2 = slice(u, a, u.size());
      const Word v1 = slice(v, 0, b), v2 = slice(v, b, v.size());
      const int sign = koszul(static_cast<long>(word_degree(deg, u2, 0, u2.size())) *
                              word_degree(deg, v1, 0, v1.size()));
      if (peel == Peel::front) {
        if (a == 0 && b == 0) continue;
        LetterVec p = pi_ext(pi, u1, v1);
        if (p.empty()) continue;
        WordVec rest = (u2.empty() && v2.empty()) ? WordVec{{Word{}, Scalar(1)}}
                                                   : product_rec(deg, pi, u2, v2, R, peel, memo);
        for (const auto& [l, c] : p)
          for (const auto& [w, s] : rest) {
            Word full{l};
            full.insert(full.end(), w.begin(), w.end());
            accumulate(out, full, c * s * sign, R);
          }
      } else {
        if (a == u.size() && b == v.size()) continue;
        LetterVec p = pi_ext(pi, u2, v2);
        if (p.empty()) continue;
        WordVec rest = (u1.empty() && v1.empty()) ? WordVec{{Word{}, Scalar(1)}}
                                                   : product_rec(deg, pi, u1, v1, R, peel, memo);
        for (const auto& [l, c] : p)
          for (const auto& [w, s] : rest) {
            Word full = w;
            full.push_back(l);
            accumulate(out, full, c * s * sign, R);
          }
      }
    }
  memo.emplace(key, out);
  return out;
}

}  // namespace

std::vector<std::string> check_bialgebra(const Bialgebra& h) {
  std::vector<std::string> out;
  const DGAlgebra& A = h.algebra;
  const DGCoalgebra& C = h.coalgebra;
  const Ring& R = h.ring();
  if (!(A.complex == C.complex)) {
    report(out, "algebra and coalgebra live on different complexes");
    return out;
  }
  report_all(out, "algebra: ", check_algebra(A));
  report_all(out, "coalgebra: ", check_coalgebra(C));
  const Cell one = A.unit;
  if (C.comult(one) != Vec2{{{one, one}, Scalar(1)}}) report(out, "unit is not grouplike");
  if (C.counit_of(one) != 1) report(out, "counit of the unit is not 1");
  const std::vector<Cell> cells = cells_of(A.complex);
  for (Cell x : cells)
    for (Cell y : cells) {
      auto xy = A.mul(x, y);
      if (!xy) continue;
      Scalar e = 0;
      for (const auto& [c, s] : *xy) e += s * C.counit_of(c);
      if (R.normalize(e - C.counit_of(x) * C.counit_of(y)) != 0)
        report(out, "counit not multiplicative on " + A.name(x) + " * " + A.name(y));
      Vec2 rhs;
      bool defined = true;
      for (const auto& [x12, s] : C.comult(x)) {
        for (const auto& [y12, t] : C.comult(y)) {
          auto l = A.mul(x12.first, y12.first);
          auto r = A.mul(x12.second, y12.second);
          if (!l || !r) {
            defined = false;
            break;
          }
          const int sign = koszul(static_cast<long>(x12.second.deg) * y12.first.deg);
          for (const auto& [p, u] : *l)
            for (const auto& [q, v] : *r) accumulate(rhs, std::make_pair(p, q), s * t * u * v * sign, R);
        }
        if (!defined) break;
      }
      if (!defined) continue;
      if (C.comult_vec(*xy) != rhs) report(out, "comultiplication not multiplicative on " + A.name(x) + " * " + A.name(y));
    }
  return out;
}

Bialgebra group_bialgebra(Ring ring, std::size_t order) {
  if (order == 0) throw InputError("group order must be positive");
  Bialgebra h;
  h.name = "R[Z/" + std::to_string(order) + "]";
  ChainComplex x(ring, {{0, order}});
  auto name = [](Cell c) { return "g^" + std::to_string(c.idx); };
  h.algebra.complex = x;
  h.algebra.unit = Cell{0, 0};
  h.algebra.mul = [order](Cell a, Cell b) -> std::optional<Vec> {
    return Vec{{Cell{0, (a.idx + b.idx) % order}, Scalar(1)}};
  };
  h.algebra.window = {0, 0};
  h.algebra.name = name;
  h.coalgebra.complex = x;
  h.coalgebra.comult = [](Cell c) { return Vec2{{{c, c}, Scalar(1)}}; };
  for (std::size_t i = 0; i < order; ++i) h.coalgebra.counit[Cell{0, i}] = 1;
  h.coalgebra.window = {0, 0};
  h.coalgebra.name = name;
  return h;
}

Bialgebra exterior_bialgebra(Ring ring, int degree) {
  if (degree % 2 == 0) throw InputError("exterior generator must have odd degree");
  if (degree <= 0) throw InputError("exterior generator must have positive degree");
  Bialgebra h;
  h.name = "Λ(e" + std::to_string(degree) + ")";
  ChainComplex x(ring, {{0, 1}, {degree, 1}});
  const Cell one{0, 0}, e{degree, 0};
  auto name = [one](Cell c) { return c == one ? std::string("1") : std::string("e"); };
  h.algebra.complex = x;
  h.algebra.unit = one;
  h.algebra.augmented = true;
  h.algebra.mul = [one](Cell a, Cell b) -> std::optional<Vec> {
    if (a == one) return unit_vec(b);
    if (b == one) return unit_vec(a);
    return Vec{};
  };
  h.algebra.window = {0, degree};
  h.algebra.name = name;
  h.coalgebra.complex = x;
  h.coalgebra.comult = [one, e](Cell c) {
    if (c == one) return Vec2{{{one, one}, Scalar(1)}};
    return Vec2{{{e, one}, Scalar(1)}, {{one, e}, Scalar(1)}};
  };
  h.coalgebra.counit = {{one, Scalar(1)}};
  h.coalgebra.coaugmentation = one;
  h.coalgebra.conilpotency_bound = 1;
  h.coalgebra.window = {0, degree};
  h.coalgebra.name = name;
  return h;
}

Bialgebra tensor_bialgebra(const Bialgebra& a, const Bialgebra& b) {
  const ChainComplex& x = a.algebra.complex;
  const ChainComplex& y = b.algebra.complex;
  const Ring R = a.ring();
  auto layout = std::make_shared<TensorLayout>(tensor_layout(x, y));
  ChainComplex xy = tensor(x, y);
  auto cell = [layout, y](Cell p, Cell q) { return tensor_cell(*layout, y, p, q); };
  auto split = [layout, x, y](Cell c) { return split_tensor_cell(*layout, x, y, c); };
  Bialgebra h;
  h.name = a.name + "⊗" + b.name;
  Namer an = a.algebra.name, bn = b.algebra.name;
  Namer name = [split, an, bn](Cell c) {
    auto [p, q] = split(c);
    return an(p) + "⊗" + bn(q);
  };
  Product am = a.algebra.mul, bm = b.algebra.mul;
  h.algebra.complex = xy;
  h.algebra.unit = cell(a.algebra.unit, b.algebra.unit);
  h.algebra.augmented = a.algebra.augmented && b.algebra.augmented;
  h.algebra.mul = [=](Cell u, Cell v) -> std::optional<Vec> {
    auto [p, q] = split(u);
    auto [r, s] = split(v);
    auto pr = am(p, r);
    auto qs = bm(q, s);
    if (!pr || !qs) return std::nullopt;
    const int sign = koszul(static_cast<long>(q.deg) * r.deg);
    Vec out;
    for (const auto& [c1, s1] : *pr)
      for (const auto& [c2, s2] : *qs) accumulate(out, cell(c1, c2), s1 * s2 * sign, R);
    return out;
  };
  h.algebra.window = {xy.lo(), std::min(a.algebra.window.hi + y.lo(), b.algebra.window.hi + x.lo())};
  h.algebra.name = name;
  Comult ac = a.coalgebra.comult, bc = b.coalgebra.comult;
  DGCoalgebra ca = a.coalgebra, cb = b.coalgebra;
  h.coalgebra.complex = xy;
  h.coalgebra.comult = [=](Cell u) {
    auto [p, q] = split(u);
    Vec2 out;
    for (const auto& [p12, s1] : ac(p))
      for (const auto& [q12, s2] : bc(q)) {
        const int sign = koszul(static_cast<long>(p12.second.deg) * q12.first.deg);
        accumulate(out, std::make_pair(cell(p12.first, q12.first), cell(p12.second, q12.second)), s1 * s2 * sign, R);
      }
    return out;
  };
  for (const auto& [p, s] : ca.counit)
    for (const auto& [q, t] : cb.counit) accumulate(h.coalgebra.counit, cell(p, q), s * t, R);
  if (ca.coaugmentation && cb.coaugmentation) h.coalgebra.coaugmentation = cell(*ca.coaugmentation, *cb.coaugmentation);
  if (ca.conilpotency_bound && cb.conilpotency_bound)
    h.coalgebra.conilpotency_bound = *ca.conilpotency_bound + *cb.conilpotency_bound;
  h.coalgebra.window = h.algebra.window;
  h.coalgebra.name = name;
  return h;
}

WordVec cofree_product(const std::vector<int>& letter_deg, const CorestrictedProduct& pi, const Word& u, const Word& v,
                       const Ring& ring, Peel peel) {
  ProductMemo memo;
  return product_rec(letter_deg, pi, u, v, ring, peel, memo);
}

Bialgebra cofree_bialgebra_product(Ring ring, const CofreeBialgebraSpec& spec) {
  if (spec.letter_deg.empty()) throw InputError("cofree bialgebra needs at least one generator");
  for (int d : spec.letter_deg)
    if (d < 1) throw InputError("cofree bialgebra generators must have positive degree");
  if (!spec.d.empty() && spec.d.size() != spec.letter_deg.size())
    throw InputError("one differential per generator required");
  const int gmin = *std::min_element(spec.letter_deg.begin(), spec.letter_deg.end());
  const std::size_t max_len = static_cast<std::size_t>(std::max(0, spec.deg_hi) / gmin);

  CofreeSpec cs;
  cs.letter_deg = spec.letter_deg;
  cs.letter_name = spec.letter_name;
  if (!spec.d.empty()) {
    std::vector<LetterVec> dl = spec.d;
    cs.coderivation = [dl](const Word& w) { return w.size() == 1 ? dl[w[0]] : LetterVec{}; };
  }
  cs.trunc = {max_len, 0, spec.deg_hi};
  Bialgebra h;
  h.coalgebra = cofree_on_letters(ring, cs);
  h.name = "T^co";
  auto wb = h.coalgebra.words;
  const std::vector<int> deg = spec.letter_deg;
  const CorestrictedProduct pi = spec.pi;
  const int top = spec.deg_hi;

  for (const auto& [n, words] : wb->words())
    for (const Word& u : words) {
      if (u.empty()) continue;
      for (const auto& [k, others] : wb->words())
        for (const Word& v : others) {
          if (v.empty() || n + k > top) continue;
          for (const auto& [l, c] : pi_ext(pi, u, v))
            if (deg.at(l) != n + k)
              throw InputError("corestricted product has the wrong degree on " + h.coalgebra.name(*wb->find(u)) +
                               " ⊗ " + h.coalgebra.name(*wb->find(v)));
        }
    }

  struct Cache {
    std::mutex lock;
    ProductMemo memo;
  };
  auto cache = std::make_shared<Cache>();
  DGAlgebra& a = h.algebra;
  a.complex = h.coalgebra.complex;
  a.unit = *wb->find(Word{});
  a.augmented = true;
  a.words = wb;
  a.name = h.coalgebra.name;
  a.window = h.coalgebra.window;
  a.mul = [wb, deg, pi, top, cache, ring](Cell x, Cell y) -> std::optional<Vec> {
    if (x.deg + y.deg > top) return std::nullopt;
    WordVec p;
    {
      std::lock_guard<std::mutex> g(cache->lock);
      p = product_rec(deg, pi, wb->word(x), wb->word(y), ring, Peel::front, cache->memo);
    }
    Vec out;
    for (const auto& [w, s] : p) {
      auto c = wb->find(w);
      if (!c) return std::nullopt;
      accumulate(out, *c, s, ring);
    }
    return out;
  };

  const ChainComplex& X = a.complex;
  for (Cell x : cells_of(X))
    for (Cell y : cells_of(X)) {
      if (x.deg + y.deg > top) continue;
      auto xy = a.mul(x, y);
      auto l1 = a.product(differential(X, unit_vec(x)), unit_vec(y));
      auto l2 = a.product(unit_vec(x), differential(X, unit_vec(y)));
      if (!xy || !l1 || !l2) continue;
      Vec rhs = *l1;
      add_scaled(rhs, *l2, Scalar(koszul(x.deg)), ring);
      if (differential(X, *xy) != rhs)
        throw InputError("corestricted product fails Leibniz on " + a.name(x) + " ⊗ " + a.name(y));
    }
  return h;
}

std::vector<std::string> check_comodule_algebra(const ComoduleAlgebra& ca) {
  std::vector<std::string> out;
  const DGAlgebra& A = ca.algebra;
  const Bialgebra& H = ca.bialgebra;
  const Ring& R = A.ring();
  report_all(out, "comodule: ", check_comodule(ca.coaction));
  if (ca.coaction.coaction(A.unit) != Vec2{{{A.unit, H.algebra.unit}, Scalar(1)}}) report(out, "coaction of 1 is not 1⊗1");
  const std::vector<Cell> cells = cells_of(A.complex);
  for (Cell x : cells)
    for (Cell y : cells) {
      if (!A.window.contains(x.deg + y.deg)) continue;
      auto xy = A.mul(x, y);
      if (!xy) continue;
      Vec2 lhs;
      for (const auto& [c, s] : *xy) add_scaled(lhs, ca.coaction.coaction(c), s, R);
      Vec2 rhs;
      bool defined = true;
      for (const auto& [ah, s] : ca.coaction.coaction(x))
        for (const auto& [bk, t] : ca.coaction.coaction(y)) {
          auto ab = A.mul(ah.first, bk.first);
          auto hk = H.algebra.mul(ah.second, bk.second);
          if (!ab || !hk) {
            defined = false;
            continue;
          }
          const int sign = koszul(static_cast<long>(ah.second.deg) * bk.first.deg);
          for (const auto& [p, u] : *ab)
            for (const auto& [q, v] : *hk) accumulate(rhs, std::make_pair(p, q), s * t * u * v * sign, R);
        }
      if (defined && lhs != rhs) report(out, "coaction not multiplicative on " + A.name(x) + " * " + A.name(y));
    }
  return out;
}

namespace {

struct XH {
  ChainComplex xh;
  std::shared_ptr<TensorLayout> layout;
  std::vector<Cell> xcells, xhcells;
  std::map<Cell, int> xletter;
};

XH make_xh(const ChainComplex& x, const Bialgebra& h) {
  XH o;
  o.xh = tensor(x, h.algebra.complex);
  o.layout = std::make_shared<TensorLayout>(tensor_layout(x, h.algebra.complex));
  o.xcells = cells_of(x);
  o.xhcells = cells_of(o.xh);
  for (std::size_t i = 0; i < o.xcells.size(); ++i) o.xletter[o.xcells[i]] = static_cast<int>(i);
  return o;
}

DGAlgebra tensor_algebra_on(const ChainComplex& x, const std::vector<std::string>& names, std::size_t max_weight) {
  FreePresentation p = presentation_on(x, {max_weight, 0, 0}, "x");
  for (std::size_t i = 0; i < names.size(); ++i) p.gens[i].name = names[i];
  return truncated_tensor_algebra(x.ring(), p.gens, p.d, max_weight);
}

std::string cell_name(const std::string& prefix, Cell c) {
  return prefix + std::to_string(c.deg) + "_" + std::to_string(c.idx);
}

}  // namespace

ChiMap comodule_algebra_chi(const ChainComplex& x, const Bialgebra& h, std::size_t max_weight) {
  const Ring& R = x.ring();
  XH o = make_xh(x, h);
  std::vector<std::string> xnames, xhnames;
  for (Cell c : o.xcells) xnames.push_back(cell_name("x", c));
  for (Cell c : o.xhcells) {
    auto [p, q] = split_tensor_cell(*o.layout, x, h.algebra.complex, c);
    xhnames.push_back("(" + cell_name("x", p) + "⊗" + h.algebra.name(q) + ")");
  }
  ChiMap out;
  out.source = tensor_algebra_on(o.xh, xhnames, max_weight);
  out.tx = tensor_algebra_on(x, xnames, max_weight);
  out.target = tensor(out.tx.complex, h.algebra.complex);
  out.layout = tensor_layout(out.tx.complex, h.algebra.complex);
  const WordBasis& sw = *out.source.words;
  const WordBasis& tw = *out.tx.words;
  out.map = map_from(out.source.complex, out.target, [&](Cell c) {
    const Word& w = sw.word(c);
    Word xs;
    std::vector<Cell> hs, xcs;
    for (int l : w) {
      auto [p, q] = split_tensor_cell(*o.layout, x, h.algebra.complex, o.xhcells[l]);
      xs.push_back(o.xletter.at(p));
      xcs.push_back(p);
      hs.push_back(q);
    }
    long e = 0;
    for (std::size_t i = 0; i < hs.size(); ++i)
      for (std::size_t j = i + 1; j < hs.size(); ++j) e += static_cast<long>(hs[i].deg) * xcs[j].deg;
    Vec prod = unit_vec(h.algebra.unit);
    for (Cell q : hs) {
      auto p = h.algebra.product(prod, unit_vec(q));
      if (!p) throw OutOfWindow("product in H leaves the window");
      prod = *p;
    }
    Cell tc = *tw.find(xs);
    Vec v;
    for (const auto& [q, s] : prod) accumulate(v, tensor_cell(out.layout, h.algebra.complex, tc, q), s * koszul(e), R);
    return v;
  });
  return out;
}

ComoduleAlgebra free_comodule_algebra(const ChainComplex& x, const Bialgebra& h, std::size_t max_weight) {
  const Ring R = x.ring();
  ChiMap chi = comodule_algebra_chi(x, h, max_weight);
  XH o = make_xh(x, h);
  std::map<Cell, int> xhletter;
  for (std::size_t i = 0; i < o.xhcells.size(); ++i) xhletter[o.xhcells[i]] = static_cast<int>(i);
  auto wb = chi.source.words;
  const ChainComplex hc = h.algebra.complex;
  const ChainComplex xc = x;
  auto layout = o.layout;
  auto xhcells = std::make_shared<std::vector<Cell>>(o.xhcells);
  Comult delta = h.coalgebra.comult;
  DGAlgebra hal = h.algebra;

  ComoduleAlgebra ca;
  ca.bialgebra = h;
  ca.algebra = chi.source;
  ca.coaction.coalgebra = h.coalgebra;
  ca.coaction.complex = chi.source.complex;
  ca.coaction.name = chi.source.name;
  ca.coaction.coaction = [=](Cell c) {
    // partial terms: word built so far, product of the right-hand factors, exponent of the sign
    struct Partial {
      Word w;
      Vec h;
      Scalar coeff;
      long sign;
    };
    std::vector<Partial> acc{{Word{}, unit_vec(hal.unit), Scalar(1), 0}};
    for (int l : wb->word(c)) {
      auto [p, q] = split_tensor_cell(*layout, xc, hc, (*xhcells)[l]);
      std::vector<Partial> next;
      for (const Partial& part : acc)
        for (const auto& [q12, s] : delta(q)) {
          const Cell letter = tensor_cell(*layout, hc, p, q12.first);
          auto prod = hal.product(part.h, unit_vec(q12.second));
          if (!prod) throw OutOfWindow("product in H leaves the window");
          Partial n = part;
          n.w.push_back(xhletter.at(letter));
          n.h = *prod;
          n.coeff *= s;
          // move the accumulated right factors past the new letter p⊗q'
          int hdeg = 0;
          for (const auto& [hcell, t] : part.h) hdeg = hcell.deg;
          n.sign += static_cast<long>(hdeg) * (p.deg + q12.first.deg);
          next.push_back(n);
        }
      acc = std::move(next);
    }
    Vec2 out;
    for (const Partial& part : acc) {
      auto w = wb->find(part.w);
      if (!w) throw OutOfWindow("coaction leaves the truncation");
      for (const auto& [q, t] : part.h) accumulate(out, std::make_pair(*w, q), part.coeff * t * koszul(part.sign), R);
    }
    return out;
  };
  return ca;
}

Vec2 ObstructionReport::at(const Scalar& a) const {
  Vec2 out;
  Scalar power = 1;
  for (const Vec2& c : coefficients) {
    add_scaled(out, c, power, ring);
    power = ring.normalize(power * a);
  }
  return out;
}

std::string ObstructionReport::tensor_string(const Vec2& v) const {
  if (v.empty()) return "0";
  std::string s;
  for (const auto& [pq, c] : v) {
    if (!s.empty()) s += " + ";
    s += scalar_to_string(c) + "*(" + hhat.coalgebra.name(pq.first) + ")⊗(" + hhat.coalgebra.name(pq.second) + ")";
  }
  return s;
}

Scalar ObstructionReport::coefficient(const Vec2& v, const Word& left, const Word& right) const {
  auto l = hhat.coalgebra.words->find(left);
  auto r = hhat.coalgebra.words->find(right);
  if (!l || !r) return 0;
  auto it = v.find({*l, *r});
  return it == v.end() ? Scalar(0) : it->second;
}

namespace {

// polynomial in a with coefficients in a map
template <class K>
using Poly = std::vector<std::map<K, Scalar>>;

template <class K>
void poly_add(Poly<K>& p, std::size_t k, const K& key, const Scalar& c, const Ring& R) {
  if (p.size() <= k) p.resize(k + 1);
  accumulate(p[k], key, c, R);
}

bool perfect_square(const Scalar& q, Scalar& root) {
  if (q < 0) return false;
  mpz_class n = q.get_num(), d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  root = Scalar(rn, rd);
  root.canonicalize();
  return true;
}

}  // namespace

ObstructionReport counterexample_obstruction(int m, Ring ring) {
  if (m < 2 || m % 2 != 0) throw InputError("m must be an even integer >= 2");
  if (!ring.is_field()) throw InputError("the obstruction is computed over a field");
  const Ring& R = ring;
  ObstructionReport rep;
  rep.ring = ring;
  rep.m = m;
  const int top = 4 * m + 2;

  CofreeBialgebraSpec hs;
  hs.letter_deg = {m};
  hs.letter_name = {"x"};
  hs.deg_hi = top;
  rep.h = cofree_bialgebra_product(R, hs);
  rep.h.name = "H";

  CofreeBialgebraSpec ks;
  ks.letter_deg = {m, 4 * m, 4 * m + 1};
  ks.letter_name = {"x", "y", "z"};
  ks.d = {{}, {}, {{1, Scalar(1)}}};
  const Word xx{0, 0};
  ks.pi = [xx](const Word& u, const Word& v) { return u == xx && v == xx ? LetterVec{{1, Scalar(1)}} : LetterVec{}; };
  ks.deg_hi = top;
  rep.hhat = cofree_bialgebra_product(R, ks);
  rep.hhat.name = "Ĥ";

  const WordBasis& hw = *rep.h.coalgebra.words;
  const WordBasis& kw = *rep.hhat.coalgebra.words;
  CoalgebraMap p = coalgebra_map_from_corestriction(rep.hhat.coalgebra, rep.h.coalgebra, [&](Cell c) {
    return kw.word(c) == Word{0} ? LetterVec{{0, Scalar(1)}} : LetterVec{};
  });
  const Window pw{0, top - 1};
  rep.p_respects_structure = check_coalgebra_map(p, pw).empty() &&
                             check_algebra_map(AlgebraMap{rep.hhat.algebra, rep.h.algebra, p.map}, pw).empty();

  // ΩBarH and ε_H through degree 4m
  CounitResult cr = counit_eps(rep.h.algebra, 4);
  const DGAlgebra& omega = cr.cobar.algebra;
  const FreePresentation& op = *omega.presentation;
  const WordBasis& bw = *cr.bar.coalgebra.words;

  // lift of a combination of words in x from H to Ĥ
  auto lift = [&](const Vec& v) {
    WordVec out;
    for (const auto& [c, s] : v) accumulate(out, hw.word(c), s, R);
    return out;
  };
  std::optional<int> g, g1;
  std::map<int, WordVec> eps_hat;
  for (std::size_t l = 0; l < op.gens.size(); ++l) {
    if (op.gens[l].degree >= 4 * m) continue;
    Cell letter_cell = *omega.words->find(Word{static_cast<int>(l)});
    Vec img = dgw::apply(cr.eps.map, unit_vec(letter_cell));
    eps_hat[static_cast<int>(l)] = lift(img);
    std::string val;
    for (const auto& [w, s] : eps_hat[static_cast<int>(l)]) {
      if (!val.empty()) val += " + ";
      val += scalar_to_string(s) + "*" + rep.hhat.coalgebra.name(*kw.find(w));
    }
    rep.forced.emplace_back(op.gens[l].name, val.empty() ? "0" : val);
    const Word& bword = bw.word(cr.cobar.letters[l]);
    if (bword.size() != 1) continue;
    const Word& hword = hw.word(cr.bar.letters[bword[0]]);
    if (hword == Word{0}) g1 = static_cast<int>(l);
    if (hword == xx) g = static_cast<int>(l);
  }
  if (!g || !g1) throw Error("cobar generators s^-1 s x and s^-1 s(x|x) not found");

  auto gen_deg = [&](const Word& w) {
    int s = 0;
    for (int l : w) s += op.gens[l].degree;
    return s;
  };
  using WordPair = std::pair<Word, Word>;
  // Δ(g) = g⊗1 + a·g1⊗g1 + 1⊗g
  Poly<WordPair> dg;
  poly_add(dg, 0, WordPair{Word{*g}, Word{}}, 1, R);
  poly_add(dg, 0, WordPair{Word{}, Word{*g}}, 1, R);
  poly_add(dg, 1, WordPair{Word{*g1}, Word{*g1}}, 1, R);
  // Δ(g|g) = Δ(g)·Δ(g) in ΩBarH⊗ΩBarH
  Poly<WordPair> de;
  for (std::size_t i = 0; i < dg.size(); ++i)
    for (std::size_t j = 0; j < dg.size(); ++j)
      for (const auto& [pq, s] : dg[i])
        for (const auto& [rs, t] : dg[j]) {
          Word left = pq.first, right = pq.second;
          left.insert(left.end(), rs.first.begin(), rs.first.end());
          right.insert(right.end(), rs.second.begin(), rs.second.end());
          const int sign = koszul(static_cast<long>(gen_deg(pq.second)) * gen_deg(rs.first));
          poly_add(de, i + j, WordPair{left, right}, s * t * sign, R);
        }

  const std::vector<int>& kdeg = ks.letter_deg;
  auto khat_product = [&](const WordVec& a, const WordVec& b) {
    WordVec out;
    for (const auto& [u, s] : a)
      for (const auto& [v, t] : b) add_scaled(out, cofree_product(kdeg, ks.pi, u, v, R), s * t, R);
    return out;
  };
  auto eps_hat_word = [&](const Word& w) {
    WordVec acc{{Word{}, Scalar(1)}};
    for (int l : w) acc = khat_product(acc, eps_hat.at(l));
    return acc;
  };
  auto to_cells = [&](const WordVec& a, const WordVec& b, const Scalar& c, Vec2& out) {
    for (const auto& [u, s] : a)
      for (const auto& [v, t] : b) {
        auto cu = kw.find(u), cv = kw.find(v);
        if (!cu || !cv) throw OutOfWindow("obstruction leaves the truncation of Ĥ");
        accumulate(out, std::make_pair(*cu, *cv), c * s * t, R);
      }
  };
  rep.coefficients.assign(de.size(), Vec2{});
  for (std::size_t k = 0; k < de.size(); ++k)
    for (const auto& [pq, s] : de[k]) to_cells(eps_hat_word(pq.first), eps_hat_word(pq.second), s, rep.coefficients[k]);
  Vec image;
  for (const auto& [w, s] : eps_hat_word(Word{*g, *g})) accumulate(image, *kw.find(w), s, R);
  Vec2 rhs = rep.hhat.coalgebra.comult_vec(image);
  add_scaled(rep.coefficients[0], rhs, Scalar(-1), R);
  while (!rep.coefficients.empty() && rep.coefficients.back().empty()) rep.coefficients.pop_back();

  // a for which ε_H is a coalgebra map on g
  {
    Vec2 c0, c1;
    auto eps_cell = [&](const Word& w) {
      if (w.empty()) return unit_vec(rep.h.algebra.unit);
      return dgw::apply(cr.eps.map, unit_vec(*omega.words->find(w)));
    };
    for (std::size_t k = 0; k < dg.size(); ++k)
      for (const auto& [pq, s] : dg[k])
        for (const auto& [u, a] : eps_cell(pq.first))
          for (const auto& [v, b] : eps_cell(pq.second)) accumulate(k == 0 ? c0 : c1, std::make_pair(u, v), s * a * b, R);
    add_scaled(c0, rep.h.coalgebra.comult_vec(eps_cell(Word{*g})), Scalar(-1), R);
    if (!c1.empty()) {
      const auto& [key, lead] = *c1.begin();
      auto it = c0.find(key);
      Scalar a = R.normalize(-(it == c0.end() ? Scalar(0) : it->second) / lead);
      Vec2 check = c0;
      add_scaled(check, c1, a, R);
      if (check.empty()) rep.a_forced_by_counit = a;
    }
  }

  if (R.is_fp()) {
    for (std::int64_t a = 0; a < R.characteristic(); ++a) {
      bool nz = !rep.at(Scalar(a)).empty();
      rep.sweep.emplace_back(Scalar(a), nz);
      if (!nz) rep.vanishing_at.push_back(Scalar(a));
    }
  } else if (!rep.coefficients.empty()) {
    // common rational roots of the coefficient polynomials
    std::map<std::pair<Cell, Cell>, std::vector<Scalar>> polys;
    for (std::size_t k = 0; k < rep.coefficients.size(); ++k)
      for (const auto& [key, c] : rep.coefficients[k]) {
        auto& v = polys[key];
        v.resize(rep.coefficients.size());
        v[k] = c;
      }
    const std::vector<Scalar>& f = polys.begin()->second;
    std::vector<Scalar> candidates;
    std::size_t degree = f.size();
    while (degree > 0 && f[degree - 1] == 0) --degree;
    if (degree == 2) {
      candidates.push_back(-f[0] / f[1]);
    } else if (degree == 3) {
      Scalar disc = f[1] * f[1] - 4 * f[2] * f[0], root;
      if (perfect_square(disc, root)) {
        candidates.push_back((-f[1] + root) / (2 * f[2]));
        candidates.push_back((-f[1] - root) / (2 * f[2]));
      }
    } else if (degree > 3) {
      throw Error("obstruction polynomial of unexpected degree");
    }
    for (Scalar a : candidates) {
      a.canonicalize();
      if (rep.at(a).empty() &&
          std::find(rep.vanishing_at.begin(), rep.vanishing_at.end(), a) == rep.vanishing_at.end())
        rep.vanishing_at.push_back(a);
    }
    std::sort(rep.vanishing_at.begin(), rep.vanishing_at.end());
  }
  return rep;
}

}  // namespace dgw
