#include "dgw/coalg.hpp"

#include <algorithm>

namespace dgw {

namespace {

constexpr std::size_t kMaxReported = 20;

void report(std::vector<std::string>& out, const std::string& s) {
  if (out.size() < kMaxReported) out.push_back(s);
}

std::string cell_name(Cell c) { return "(" + std::to_string(c.deg) + "," + std::to_string(c.idx) + ")"; }

Namer name_or_default(const Namer& n) {
  if (n) return n;
  return [](Cell c) { return "v" + std::to_string(c.deg) + "_" + std::to_string(c.idx); };
}

}  // namespace

Scalar DGCoalgebra::counit_of(Cell c) const {
  auto it = counit.find(c);
  return it == counit.end() ? Scalar(0) : it->second;
}

Vec2 DGCoalgebra::comult_vec(const Vec& v) const {
  Vec2 out;
  for (const auto& [c, x] : v) add_scaled(out, comult(c), x, ring());
  return out;
}

Vec2 DGCoalgebra::reduced(Cell c) const {
  if (!coaugmentation) throw InputError("reduced comultiplication needs a coaugmentation");
  const Cell one = *coaugmentation;
  const Ring& R = ring();
  Vec2 out = comult(c);
  accumulate(out, std::make_pair(c, one), Scalar(-1), R);
  accumulate(out, std::make_pair(one, c), Scalar(-1), R);
  accumulate(out, std::make_pair(one, one), counit_of(c), R);
  return out;
}

ChainMap DGCoalgebra::comult_map() const {
  ChainComplex t = tensor(complex, complex);
  TensorLayout L = tensor_layout(complex, complex);
  return map_from(complex, t, [&](Cell c) { return tensor_vec(L, complex, comult(c)); });
}

ChainMap DGCoalgebra::counit_map() const {
  ChainComplex u = unit_complex(ring());
  return map_from(complex, u, [&](Cell c) {
    Scalar e = counit_of(c);
    return e == 0 ? Vec{} : Vec{{Cell{0, 0}, e}};
  });
}

std::vector<Cell> DGCoalgebra::reduced_cells() const {
  std::vector<Cell> out;
  for (Cell c : cells_of(complex))
    if (!coaugmentation || c != *coaugmentation) out.push_back(c);
  return out;
}

DGCoalgebra unit_coalgebra(Ring ring) {
  CofreeSpec s;
  s.trunc = {0, 0, 0};
  return cofree_on_letters(ring, s);
}

Window cofree_window(const std::vector<int>& letter_deg, const TruncationPolicy& t) {
  if (letter_deg.empty()) return {std::max(0, t.deg_lo), t.deg_hi};
  const int g = *std::min_element(letter_deg.begin(), letter_deg.end());
  const int mx = *std::max_element(letter_deg.begin(), letter_deg.end());
  if (g < 1) return {};
  const long W = static_cast<long>(t.max_weight);
  int hi = static_cast<int>(g * (W + 1) - 2);
  if (t.deg_hi < W * mx) hi = std::min(hi, t.deg_hi - 1);
  return {std::max(0, t.deg_lo), hi};
}

DGCoalgebra cofree_on_letters(Ring ring, const CofreeSpec& spec) {
  const TruncationPolicy& t = spec.trunc;
  if (t.deg_lo > 0 || t.deg_hi < 0) throw InputError("truncation excludes the counit");
  if (!spec.letter_name.empty() && spec.letter_name.size() != spec.letter_deg.size())
    throw InputError("one name per letter required");
  auto wb = std::make_shared<const WordBasis>(spec.letter_deg, t.max_weight, t.deg_lo, t.deg_hi);
  const Corestriction phi = spec.coderivation;
  DGCoalgebra c;
  c.words = wb;
  c.complex = complex_from(ring, wb->ranks(), [&](Cell cell) {
    Vec out;
    if (!phi) return out;
    const Word& w = wb->word(cell);
    long before = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const int s = koszul(before);
      for (std::size_t j = i + 1; j <= w.size(); ++j) {
        for (const auto& [l, x] : phi(Word(w.begin() + i, w.begin() + j))) {
          Word v(w.begin(), w.begin() + i);
          v.push_back(l);
          v.insert(v.end(), w.begin() + j, w.end());
          if (auto tc = wb->find(v)) accumulate(out, *tc, x * s, ring);
        }
      }
      before += spec.letter_deg[w[i]];
    }
    return out;
  });
  c.comult = [wb](Cell cell) {
    const Word& w = wb->word(cell);
    Vec2 out;
    for (std::size_t i = 0; i <= w.size(); ++i) {
      auto a = wb->find(Word(w.begin(), w.begin() + i));
      auto b = wb->find(Word(w.begin() + i, w.end()));
      if (!a || !b) throw OutOfWindow("deconcatenation leaves the truncated basis");
      out.emplace(std::make_pair(*a, *b), Scalar(1));
    }
    return out;
  };
  const Cell one = *wb->find(Word{});
  c.counit = {{one, Scalar(1)}};
  c.coaugmentation = one;
  c.conilpotency_bound = t.max_weight;
  c.window = cofree_window(spec.letter_deg, t);
  auto names = std::make_shared<const std::vector<std::string>>(spec.letter_name);
  c.name = [wb, names](Cell cell) {
    return word_name(wb->word(cell), [&](int l) {
      return names->empty() ? "l" + std::to_string(l) : (*names)[l];
    });
  };
  return c;
}

DGCoalgebra cofree_coalgebra(const ChainComplex& x, std::size_t max_weight, const Namer& letter) {
  const Namer nm = name_or_default(letter);
  CofreeSpec s;
  std::map<Cell, int> index;
  int mn = 0, mx = 0;
  for (Cell c : cells_of(x)) {
    index[c] = static_cast<int>(s.letter_deg.size());
    s.letter_deg.push_back(c.deg);
    s.letter_name.push_back(nm(c));
    mn = std::min(mn, c.deg);
    mx = std::max(mx, c.deg);
  }
  std::vector<LetterVec> dl;
  for (Cell c : cells_of(x)) {
    LetterVec v;
    for (const auto& [t, a] : differential(x, unit_vec(c))) v[index.at(t)] = a;
    dl.push_back(v);
  }
  s.coderivation = [dl](const Word& w) { return w.size() == 1 ? dl[w[0]] : LetterVec{}; };
  const long W = static_cast<long>(max_weight);
  s.trunc = {max_weight, static_cast<int>(W * mn), static_cast<int>(W * mx)};
  return cofree_on_letters(x.ring(), s);
}

DGCoalgebra interval_coalgebra(Ring ring) {
  DGCoalgebra c;
  c.complex = interval(ring);
  const Cell e0{0, 0}, e1{0, 1}, t{1, 0};
  c.comult = [=](Cell x) -> Vec2 {
    if (x == t) return {{{e0, t}, Scalar(1)}, {{t, e1}, Scalar(1)}};
    return {{{x, x}, Scalar(1)}};
  };
  c.counit = {{e0, Scalar(1)}, {e1, Scalar(1)}};
  c.window = {0, 1};
  c.name = [=](Cell x) { return x == t ? std::string("t") : x == e0 ? std::string("d0t") : std::string("d1t"); };
  return c;
}

DGCoalgebra truncate_coalgebra(const DGCoalgebra& c, int hi) {
  DGCoalgebra out = c;
  out.complex = truncate_above(c.complex, hi);
  out.window = c.window.meet({c.window.lo, hi - 1});
  Comult inner = c.comult;
  out.comult = [inner, hi](Cell x) {
    Vec2 v = inner(x);
    for (const auto& [ab, s] : v)
      if (ab.first.deg > hi || ab.second.deg > hi) throw OutOfWindow("comultiplication leaves the truncation");
    return v;
  };
  return out;
}

TVec iterated_reduced(const DGCoalgebra& c, Cell cell, std::size_t k) {
  if (!c.coaugmentation) throw InputError("reduced comultiplication needs a coaugmentation");
  const Ring& R = c.ring();
  if (k == 0) throw InputError("at least one factor required");
  if (k == 1) {
    TVec v{{Tensor{cell}, Scalar(1)}};
    accumulate(v, Tensor{*c.coaugmentation}, -c.counit_of(cell), R);
    return v;
  }
  TVec v = to_tvec(c.reduced(cell));
  for (std::size_t f = 2; f < k && !v.empty(); ++f)
    v = expand_at(v, f - 1, [&](Cell x) { return c.reduced(x); }, R);
  return v;
}

std::vector<std::string> check_coalgebra(const DGCoalgebra& c) {
  std::vector<std::string> out;
  const Ring& R = c.ring();
  const ChainComplex& X = c.complex;
  auto delta = [&](Cell x) { return c.comult(x); };
  for (Cell x : cells_of(X)) {
    Vec2 d;
    try {
      d = c.comult(x);
    } catch (const OutOfWindow&) {
      report(out, "comultiplication of " + c.name(x) + " leaves the basis");
      continue;
    }
    for (const auto& [ab, s] : d)
      if (ab.first.deg + ab.second.deg != x.deg || ab.first.idx >= X.rank(ab.first.deg) ||
          ab.second.idx >= X.rank(ab.second.deg))
        report(out, "comultiplication of " + c.name(x) + " is not a degree 0 map into C⊗C");
    TVec v = to_tvec(d);
    if (expand_at(v, 0, delta, R) != expand_at(v, 1, delta, R)) report(out, "coassociativity fails on " + c.name(x));
    Vec l, r;
    for (const auto& [ab, s] : d) {
      accumulate(l, ab.second, s * c.counit_of(ab.first), R);
      accumulate(r, ab.first, s * c.counit_of(ab.second), R);
    }
    if (l != unit_vec(x) || r != unit_vec(x)) report(out, "counit law fails on " + c.name(x));
    TVec lhs = to_tvec(c.comult_vec(differential(X, unit_vec(x))));
    if (lhs != tensor_differential(v, {&X, &X}, R)) report(out, "comultiplication not a chain map at " + c.name(x));
    if (x.deg == 1) {
      Scalar e = 0;
      for (const auto& [y, s] : differential(X, unit_vec(x))) e += s * c.counit_of(y);
      if (R.normalize(e) != 0) report(out, "counit not a chain map at " + c.name(x));
    }
    if (c.conilpotency_bound && !iterated_reduced(c, x, *c.conilpotency_bound + 1).empty())
      report(out, "not conilpotent at " + c.name(x));
  }
  for (const auto& [x, s] : c.counit)
    if (x.deg != 0) report(out, "counit has nonzero degree");
  if (c.coaugmentation) {
    Cell one = *c.coaugmentation;
    if (c.counit_of(one) != 1) report(out, "coaugmentation not counital");
    if (c.comult(one) != Vec2{{{one, one}, Scalar(1)}}) report(out, "coaugmentation not a coalgebra map");
    if (!differential(X, unit_vec(one)).empty()) report(out, "coaugmentation not a chain map");
  }
  return out;
}

std::vector<std::string> check_coalgebra_map(const CoalgebraMap& f, const Window& w) {
  std::vector<std::string> out;
  const DGCoalgebra& C = f.src;
  const DGCoalgebra& D = f.dst;
  const Ring& R = C.ring();
  auto F = [&](Cell x) { return dgw::apply(f.map, unit_vec(x)); };
  for (Cell x : cells_of(C.complex)) {
    if (!w.contains(x.deg)) continue;
    Vec fx = F(x);
    TVec lhs = to_tvec(D.comult_vec(fx));
    TVec rhs = map_at(map_at(to_tvec(C.comult(x)), 0, F, 0, R), 1, F, 0, R);
    if (lhs != rhs) report(out, "not comultiplicative at " + C.name(x));
    Scalar e = 0;
    for (const auto& [y, s] : fx) e += s * D.counit_of(y);
    if (R.normalize(e) != C.counit_of(x)) report(out, "counit not preserved at " + C.name(x));
    if (differential(D.complex, fx) != dgw::apply(f.map, differential(C.complex, unit_vec(x))))
      report(out, "not a chain map at " + C.name(x));
  }
  return out;
}

CoalgebraMap coalgebra_map_from_corestriction(const DGCoalgebra& src, const DGCoalgebra& cofree,
                                              const std::function<LetterVec(Cell)>& f) {
  if (!cofree.words) throw InputError("target must be cofree");
  if (!src.coaugmentation || !src.conilpotency_bound) throw InputError("source must be coaugmented and conilpotent");
  const Ring& R = src.ring();
  const WordBasis& wb = *cofree.words;
  GradedMap g = graded_from(src.complex, cofree.complex, 0, [&](Cell x) {
    Vec out;
    accumulate(out, *wb.find(Word{}), src.counit_of(x), R);
    for (std::size_t k = 1; k <= *src.conilpotency_bound; ++k) {
      for (const auto& [t, s] : iterated_reduced(src, x, k)) {
        WordVec words{{Word{}, s}};
        for (Cell piece : t) {
          WordVec next;
          for (const auto& [l, a] : f(piece))
            for (const auto& [w, b] : words) {
              Word v = w;
              v.push_back(l);
              accumulate(next, v, a * b, R);
            }
          words = std::move(next);
        }
        for (const auto& [w, a] : words) {
          auto cell = wb.find(w);
          if (!cell) throw OutOfWindow("coalgebra map leaves the truncated cofree coalgebra at " + src.name(x));
          accumulate(out, *cell, a, R);
        }
      }
    }
    return out;
  });
  return CoalgebraMap{src, cofree, ChainMap(g, false)};
}

CoalgebraMap coalgebra_map_from_corestriction(const DGCoalgebra& src, const DGCoalgebra& cofree, const ChainMap& f) {
  std::map<Cell, int> index;
  for (Cell c : cells_of(f.dst())) index.emplace(c, static_cast<int>(index.size()));
  if (!cofree.words || cofree.words->letters() != index.size())
    throw InputError("cofree coalgebra letters do not match the corestriction target");
  return coalgebra_map_from_corestriction(src, cofree, [&](Cell x) {
    LetterVec v;
    for (const auto& [c, a] : dgw::apply(f, unit_vec(x))) v[index.at(c)] = a;
    return v;
  });
}

LetterVec corestriction_of(const CoalgebraMap& f, Cell c) {
  LetterVec out;
  for (const auto& [t, a] : dgw::apply(f.map, unit_vec(c))) {
    const Word& w = f.dst.words->word(t);
    if (w.size() == 1) out[w[0]] = a;
  }
  return out;
}

ChainMap Comodule::coaction_map() const {
  ChainComplex t = tensor(complex, coalgebra.complex);
  TensorLayout L = tensor_layout(complex, coalgebra.complex);
  return map_from(complex, t, [&](Cell c) { return tensor_vec(L, coalgebra.complex, coaction(c)); });
}

Comodule cofree_comodule(const ChainComplex& x, const DGCoalgebra& c) {
  if (!(x.ring() == c.ring())) throw InputError("cofree comodule ring mismatch");
  Comodule m;
  m.coalgebra = c;
  m.complex = tensor(x, c.complex);
  TensorLayout L = tensor_layout(x, c.complex);
  ChainComplex cc = c.complex;
  Comult delta = c.comult;
  m.coaction = [=](Cell cell) {
    auto [a, b] = split_tensor_cell(L, x, cc, cell);
    Vec2 out;
    for (const auto& [pq, s] : delta(b)) out.emplace(std::make_pair(tensor_cell(L, cc, a, pq.first), pq.second), s);
    return out;
  };
  Namer cn = c.name;
  m.name = [=](Cell cell) {
    auto [a, b] = split_tensor_cell(L, x, cc, cell);
    return "x" + std::to_string(a.deg) + "_" + std::to_string(a.idx) + "⊗" + cn(b);
  };
  return m;
}

Comodule direct_sum_comodule(const Comodule& m, const Comodule& n) {
  DirectSum s = direct_sum(m.complex, n.complex);
  Comodule out;
  out.coalgebra = m.coalgebra;
  out.complex = s.sum;
  ChainComplex mc = m.complex;
  auto split = [mc](Cell c) -> std::pair<bool, Cell> {
    std::size_t r = mc.rank(c.deg);
    if (c.idx < r) return {true, c};
    return {false, Cell{c.deg, c.idx - r}};
  };
  auto mr = m.coaction, nr = n.coaction;
  out.coaction = [=](Cell x) {
    auto [first, c] = split(x);
    if (first) return mr(c);
    Vec2 shifted;
    for (const auto& [ab, v] : nr(c))
      shifted.emplace(std::make_pair(Cell{ab.first.deg, ab.first.idx + mc.rank(ab.first.deg)}, ab.second), v);
    return shifted;
  };
  Namer mn = m.name, nn = n.name;
  out.name = [=](Cell x) {
    auto [first, c] = split(x);
    return first ? "(" + mn(c) + ",0)" : "(0," + nn(c) + ")";
  };
  return out;
}

std::vector<std::string> check_comodule(const Comodule& m) {
  std::vector<std::string> out;
  const DGCoalgebra& C = m.coalgebra;
  const Ring& R = C.ring();
  auto rho = [&](Cell x) { return m.coaction(x); };
  auto delta = [&](Cell x) { return C.comult(x); };
  for (Cell x : cells_of(m.complex)) {
    TVec v = to_tvec(m.coaction(x));
    if (expand_at(v, 0, rho, R) != expand_at(v, 1, delta, R)) report(out, "coaction not coassociative on " + m.name(x));
    Vec back;
    for (const auto& [t, s] : v) accumulate(back, t[0], s * C.counit_of(t[1]), R);
    if (back != unit_vec(x)) report(out, "coaction not counital on " + m.name(x));
    TVec lhs;
    for (const auto& [y, s] : differential(m.complex, unit_vec(x))) add_scaled(lhs, to_tvec(m.coaction(y)), s, R);
    if (lhs != tensor_differential(v, {&m.complex, &C.complex}, R))
      report(out, "coaction not a chain map at " + m.name(x));
  }
  return out;
}

std::vector<std::string> check_comodule_map(const ComoduleMap& f) {
  std::vector<std::string> out;
  const Ring& R = f.src.coalgebra.ring();
  if (!is_chain_map(f.map.graded())) report(out, "not a chain map");
  auto F = [&](Cell x) { return dgw::apply(f.map, unit_vec(x)); };
  for (Cell x : cells_of(f.src.complex)) {
    TVec lhs;
    for (const auto& [y, s] : F(x)) add_scaled(lhs, to_tvec(f.dst.coaction(y)), s, R);
    TVec rhs = map_at(to_tvec(f.src.coaction(x)), 0, F, 0, R);
    if (lhs != rhs) report(out, "not colinear at " + f.src.name(x) + " " + cell_name(x));
  }
  return out;
}

ComoduleMap induced_comodule_map(const Comodule& m, const ChainMap& g) {
  const ChainComplex& x = g.dst();
  Comodule dst = cofree_comodule(x, m.coalgebra);
  TensorLayout L = tensor_layout(x, m.coalgebra.complex);
  const Ring& R = x.ring();
  ChainMap h = map_from(m.complex, dst.complex, [&](Cell c) {
    Vec out;
    for (const auto& [ab, s] : m.coaction(c))
      for (const auto& [y, t] : dgw::apply(g, unit_vec(ab.first)))
        accumulate(out, tensor_cell(L, m.coalgebra.complex, y, ab.second), s * t, R);
    return out;
  });
  return ComoduleMap{m, dst, h};
}

ComoduleCylinder comodule_cylinder(const Comodule& m) {
  ComoduleCylinder out;
  out.chain = cylinder(m.complex);
  out.doubled = direct_sum_comodule(m, m);
  const ChainComplex x = m.complex;
  const ChainComplex I = interval(x.ring());
  const TensorLayout L = tensor_layout(x, I);
  const DGCoalgebra ic = interval_coalgebra(x.ring());
  const Ring R = x.ring();
  Comodule cyl;
  cyl.coalgebra = m.coalgebra;
  cyl.complex = out.chain.cyl;
  auto rho = m.coaction;
  cyl.coaction = [=](Cell c) {
    auto [mc, e] = split_tensor_cell(L, x, I, c);
    // ρ⊗Δ_I, then the middle interchange, then the counit of I on the last factor
    Vec2 result;
    for (const auto& [ab, s] : rho(mc))
      for (const auto& [pq, t] : ic.comult(e)) {
        const Scalar eps = ic.counit_of(pq.second);
        if (eps == 0) continue;
        const int sign = koszul(static_cast<long>(ab.second.deg) * pq.first.deg);
        accumulate(result, std::make_pair(tensor_cell(L, I, ab.first, pq.first), ab.second), s * t * eps * sign, R);
      }
    return result;
  };
  Namer nm = m.name, inm = ic.name;
  cyl.name = [=](Cell c) {
    auto [mc, e] = split_tensor_cell(L, x, I, c);
    return nm(mc) + "⊗" + inm(e);
  };
  out.cyl = cyl;
  out.i = ComoduleMap{out.doubled, out.cyl, out.chain.i};
  out.q = ComoduleMap{out.cyl, m, out.chain.q};
  return out;
}

}  // namespace dgw
