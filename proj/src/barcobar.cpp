#include "dgw/barcobar.hpp"

#include <algorithm>
#include <tuple>

#include "dgw/wfs.hpp"

namespace dgw {

namespace {

int min_degree(const std::vector<Cell>& cells, int fallback) {
  if (cells.empty()) return fallback;
  int g = cells.front().deg;
  for (Cell c : cells) g = std::min(g, c.deg);
  return g;
}

// cells of `x` selected by `keep`, reindexed per degree
struct SubBasis {
  std::map<int, std::vector<Cell>> cells;
  std::map<Cell, Cell> index;
  std::map<int, std::size_t> ranks() const {
    std::map<int, std::size_t> r;
    for (const auto& [n, v] : cells) r[n] = v.size();
    return r;
  }
};

SubBasis sub_basis(const ChainComplex& x, const std::function<bool(Cell)>& keep) {
  SubBasis b;
  for (Cell c : cells_of(x)) {
    if (!keep(c)) continue;
    auto& v = b.cells[c.deg];
    b.index.emplace(c, Cell{c.deg, v.size()});
    v.push_back(c);
  }
  return b;
}

ChainComplex restricted(const ChainComplex& x, const SubBasis& b, bool require_closed) {
  return complex_from(x.ring(), b.ranks(), [&](Cell c) {
    Vec out;
    for (const auto& [t, s] : differential(x, unit_vec(b.cells.at(c.deg)[c.idx]))) {
      auto it = b.index.find(t);
      if (it != b.index.end())
        out.emplace(it->second, s);
      else if (require_closed)
        throw Error("filtration stage is not a subcomplex");
    }
    return out;
  });
}

}  // namespace

BarObject bar(const DGAlgebra& a, const TruncationPolicy& t) {
  if (!a.augmented) throw InputError("bar construction needs an augmented algebra");
  BarObject out;
  out.source = a;
  CofreeSpec spec;
  spec.trunc = t;
  std::map<Cell, int> index;
  for (Cell c : a.reduced_cells()) {
    if (c.deg < 0) throw InputError("bar construction needs a nonnegatively graded augmentation ideal");
    if (c.deg + 1 > t.deg_hi) continue;
    index.emplace(c, static_cast<int>(out.letters.size()));
    out.letters.push_back(c);
    spec.letter_deg.push_back(c.deg + 1);
    spec.letter_name.push_back("s[" + a.name(c) + "]");
  }
  auto letters = std::make_shared<const std::vector<Cell>>(out.letters);
  auto idx = std::make_shared<const std::map<Cell, int>>(index);
  const DGAlgebra A = a;
  auto letter_of = [idx, A](Cell c) {
    auto it = idx->find(c);
    if (it == idx->end()) {
      if (c == A.unit) throw InputError("augmentation ideal is not closed under d and products");
      throw OutOfWindow("bar differential leaves the letters");
    }
    return it->second;
  };
  spec.coderivation = [letters, letter_of, A](const Word& w) {
    LetterVec v;
    const Ring& R = A.ring();
    if (w.size() == 1) {
      for (const auto& [c, x] : differential(A.complex, unit_vec((*letters)[w[0]]))) accumulate(v, letter_of(c), -x, R);
    } else if (w.size() == 2) {
      const Cell p = (*letters)[w[0]], q = (*letters)[w[1]];
      auto prod = A.mul(p, q);
      if (!prod) throw OutOfWindow("product " + A.name(p) + " * " + A.name(q) + " leaves the algebra window");
      for (const auto& [c, x] : *prod) accumulate(v, letter_of(c), x * koszul(p.deg), R);
    }
    return v;
  };
  out.coalgebra = cofree_on_letters(a.ring(), spec);
  out.window = out.coalgebra.window.meet({0, a.window.hi + 1});
  if (out.window.empty()) throw InputError("truncation too small to certify any window");
  return out;
}

CobarObject cobar(const DGCoalgebra& c, const TruncationPolicy& t) {
  if (!c.coaugmentation || !c.conilpotency_bound)
    throw InputError("cobar construction needs a coaugmented conilpotent coalgebra");
  const Cell one = *c.coaugmentation;
  for (const auto& [x, e] : c.counit)
    if (x != one && e != 0) throw InputError("counit must be supported on the coaugmentation");
  CobarObject out;
  out.source = c;
  FreePresentation p;
  p.trunc = t;
  std::map<Cell, int> index;
  for (Cell x : c.reduced_cells()) {
    if (x.deg - 1 > t.deg_hi) continue;
    index.emplace(x, static_cast<int>(out.letters.size()));
    out.letters.push_back(x);
    p.gens.push_back({"s^-1[" + c.name(x) + "]", x.deg - 1});
  }
  const Ring& R = c.ring();
  auto letter_of = [&](Cell x) {
    auto it = index.find(x);
    if (it == index.end()) throw InputError("reduced coalgebra is not closed under d and Δ̄");
    return it->second;
  };
  for (Cell x : out.letters) {
    WordVec d;
    for (const auto& [y, s] : differential(c.complex, unit_vec(x))) accumulate(d, Word{letter_of(y)}, -s, R);
    for (const auto& [ab, s] : c.reduced(x))
      accumulate(d, Word{letter_of(ab.first), letter_of(ab.second)}, -s * koszul(ab.first.deg), R);
    p.d.push_back(d);
  }
  out.algebra = free_algebra(R, p);
  out.window = out.algebra.window;
  if (out.window.empty()) throw InputError("truncation too small to certify any window");
  return out;
}

CounitResult counit_eps(const DGAlgebra& a, std::size_t max_weight) {
  const int g = min_degree(a.reduced_cells(), 1);
  if (g < 1) throw InputError("augmentation ideal must live in positive degrees");
  const int top = g * static_cast<int>(max_weight);
  CounitResult r;
  r.bar = bar(a, {static_cast<std::size_t>(top / (g + 1) + 1), 0, top + 1});
  r.cobar = cobar(r.bar.coalgebra, {static_cast<std::size_t>(top / g), 0, top});
  const WordBasis& bw = *r.bar.coalgebra.words;
  std::vector<Vec> images;
  for (Cell c : r.cobar.letters) {
    const Word& w = bw.word(c);
    images.push_back(w.size() == 1 ? unit_vec(r.bar.letters[w[0]]) : Vec{});
  }
  r.eps = algebra_map_from_generators(r.cobar.algebra, a, images);
  r.window = Window{0, top - 1}.meet(a.window).meet(r.cobar.window).meet(r.bar.window);
  return r;
}

UnitResult unit_eta(const DGCoalgebra& c, std::size_t max_weight) {
  if (!c.coaugmentation || !c.conilpotency_bound)
    throw InputError("unit needs a coaugmented conilpotent coalgebra");
  const int gc = min_degree(c.reduced_cells(), 2);
  if (gc < 2) throw InputError("reduced coalgebra must live in degrees at least 2");
  const int gp = gc - 1;
  const int top = gp * static_cast<int>(max_weight);
  UnitResult r;
  r.cobar = cobar(truncate_coalgebra(c, top + 1), {static_cast<std::size_t>(top / gp + 1), 0, top});
  r.bar = bar(r.cobar.algebra, {static_cast<std::size_t>(top / 2 + 1), 0, top});
  std::map<Cell, int> bar_letter;
  for (std::size_t l = 0; l < r.bar.letters.size(); ++l) bar_letter.emplace(r.bar.letters[l], static_cast<int>(l));
  std::map<Cell, int> cobar_letter;
  for (std::size_t l = 0; l < r.cobar.letters.size(); ++l)
    cobar_letter.emplace(r.cobar.letters[l], static_cast<int>(l));
  const WordBasis& ow = *r.cobar.algebra.words;
  const Cell one = *c.coaugmentation;
  DGCoalgebra src = truncate_coalgebra(c, top);
  r.eta = coalgebra_map_from_corestriction(src, r.bar.coalgebra, [&](Cell x) {
    if (x == one) return LetterVec{};
    Cell w = *ow.find(Word{cobar_letter.at(x)});
    return LetterVec{{bar_letter.at(w), Scalar(1)}};
  });
  r.window = Window{0, top - 1}.meet(c.window).meet(r.cobar.window).meet(r.bar.window);
  return r;
}

bool FiltrationReport::ok() const {
  return std::all_of(stages.begin(), stages.end(), [](const FiltrationStage& s) { return s.map_split && s.layer_trivial; });
}

FiltrationReport split_filtration(const BarObject& b) {
  FiltrationReport rep;
  const DGCoalgebra& C = b.coalgebra;
  const WordBasis& wb = *C.words;
  std::size_t longest = 0;
  for (Cell c : cells_of(C.complex)) longest = std::max(longest, wb.word(c).size());
  std::optional<ChainComplex> prev;
  std::optional<SubBasis> prev_basis;
  for (std::size_t k = 0; k <= longest; ++k) {
    FiltrationStage st;
    st.length = k;
    SubBasis sb = sub_basis(C.complex, [&](Cell c) { return wb.word(c).size() <= k; });
    ChainComplex f = restricted(C.complex, sb, true);
    for (Cell c : cells_of(C.complex))
      if (wb.word(c).size() == k) ++st.ranks[c.deg];
    if (!prev) {
      st.map_split = true;
    } else {
      ChainMap incl = map_from(*prev, f, [&](Cell c) { return unit_vec(sb.index.at(prev_basis->cells.at(c.deg)[c.idx])); });
      st.map_split = is_cofibration(incl);
    }
    st.layer_trivial = true;
    if (k > 0)
      for (Cell c : cells_of(C.complex)) {
        if (wb.word(c).size() != k) continue;
        for (const auto& [ab, s] : C.reduced(c))
          if (wb.word(ab.first).size() >= k || wb.word(ab.second).size() >= k) st.layer_trivial = false;
      }
    rep.stages.push_back(st);
    prev = f;
    prev_basis = sb;
  }
  return rep;
}

FiltrationReport split_filtration(const CobarObject& o) {
  FiltrationReport rep;
  const DGAlgebra& A = o.algebra;
  const WordBasis& wb = *A.words;
  std::size_t longest = 0;
  for (Cell c : cells_of(A.complex)) longest = std::max(longest, wb.word(c).size());
  std::optional<ChainComplex> prev;
  std::optional<SubBasis> prev_basis;
  for (std::size_t k = 0; k <= longest; ++k) {
    FiltrationStage st;
    st.length = k;
    SubBasis sb = sub_basis(A.complex, [&](Cell c) { return wb.word(c).size() <= k; });
    // the quotient by words longer than k
    ChainComplex q = restricted(A.complex, sb, false);
    for (Cell c : cells_of(A.complex))
      if (wb.word(c).size() == k) ++st.ranks[c.deg];
    if (!prev) {
      st.map_split = true;
    } else {
      ChainMap proj = map_from(q, *prev, [&](Cell c) {
        auto it = prev_basis->index.find(sb.cells.at(c.deg)[c.idx]);
        return it == prev_basis->index.end() ? Vec{} : unit_vec(it->second);
      });
      st.map_split = is_fibration(proj);
    }
    st.layer_trivial = true;
    if (k > 0) {
      std::vector<Cell> layer;
      for (Cell c : cells_of(A.complex))
        if (wb.word(c).size() == k) layer.push_back(c);
      for (Cell x : layer)
        for (Cell y : layer) {
          auto p = A.mul(x, y);
          if (!p) continue;
          for (const auto& [z, s] : *p)
            if (wb.word(z).size() <= k) st.layer_trivial = false;
        }
    }
    rep.stages.push_back(st);
    prev = q;
    prev_basis = sb;
  }
  return rep;
}

CoringComodule tensor_with_coalgebra(const DGModule& y, const DGCoalgebra& d) {
  CoringComodule out;
  const ChainComplex yc = y.complex, dc = d.complex;
  const TensorLayout L = tensor_layout(yc, dc);
  const ChainComplex t = tensor(yc, dc);
  const Ring R = yc.ring();
  DGModule m;
  m.algebra = y.algebra;
  m.complex = t;
  m.window = y.window;
  Product act = y.act;
  m.act = [=](Cell c, Cell a) -> std::optional<Vec> {
    auto [yy, e] = split_tensor_cell(L, yc, dc, c);
    auto p = act(yy, a);
    if (!p) return std::nullopt;
    Vec r;
    const int s = koszul(static_cast<long>(e.deg) * a.deg);
    for (const auto& [z, v] : *p) accumulate(r, tensor_cell(L, dc, z, e), v * s, R);
    return r;
  };
  Namer yn = y.name, dn = d.name;
  m.name = [=](Cell c) {
    auto [yy, e] = split_tensor_cell(L, yc, dc, c);
    return yn(yy) + "⊗" + dn(e);
  };
  out.module = m;
  Comodule cm;
  cm.coalgebra = d;
  cm.complex = t;
  Comult delta = d.comult;
  cm.coaction = [=](Cell c) {
    auto [yy, e] = split_tensor_cell(L, yc, dc, c);
    Vec2 r;
    for (const auto& [pq, v] : delta(e)) r.emplace(std::make_pair(tensor_cell(L, dc, yy, pq.first), pq.second), v);
    return r;
  };
  cm.name = m.name;
  out.comodule = cm;
  return out;
}

namespace {

struct Triple {
  Cell x, w, b;
  auto operator<=>(const Triple&) const = default;
};

TwoSidedBar build_two_sided(const DGModule& X, const std::optional<Comodule>& coaction, const TruncationPolicy& t) {
  const DGAlgebra& A = X.algebra;
  const Ring& R = A.ring();
  if (X.complex.is_zero()) throw InputError("two-sided bar needs a nonzero module");
  const int xlo = X.complex.lo();
  TwoSidedBar out;
  out.bar = bar(A, {t.max_weight, 0, std::max(0, t.deg_hi - xlo)});
  const DGCoalgebra& B = out.bar.coalgebra;
  const WordBasis& wb = *B.words;
  const std::vector<Cell>& letters = out.bar.letters;

  auto basis = std::make_shared<std::map<int, std::vector<Triple>>>();
  auto index = std::make_shared<std::map<Triple, Cell>>();
  for (Cell x : cells_of(X.complex))
    for (Cell w : cells_of(B.complex))
      for (Cell b : cells_of(A.complex)) {
        const int n = x.deg + w.deg + b.deg;
        if (n > t.deg_hi) continue;
        auto& v = (*basis)[n];
        index->emplace(Triple{x, w, b}, Cell{n, v.size()});
        v.push_back(Triple{x, w, b});
      }
  std::map<int, std::size_t> ranks;
  for (const auto& [n, v] : *basis) ranks[n] = v.size();

  auto add = [&](Vec& out_vec, const Triple& tr, const Scalar& s) {
    auto it = index->find(tr);
    if (it == index->end()) throw OutOfWindow("two-sided bar differential leaves the truncation");
    accumulate(out_vec, it->second, s, R);
  };
  ChainComplex cx = complex_from(R, ranks, [&](Cell c) {
    const Triple tr = (*basis).at(c.deg)[c.idx];
    const Word& w = wb.word(tr.w);
    Vec out_vec;
    for (const auto& [y, s] : differential(X.complex, unit_vec(tr.x))) add(out_vec, {y, tr.w, tr.b}, s);
    const int sx = koszul(tr.x.deg);
    for (const auto& [v, s] : differential(B.complex, unit_vec(tr.w))) add(out_vec, {tr.x, v, tr.b}, s * sx);
    const int sxw = koszul(tr.x.deg + tr.w.deg);
    for (const auto& [b, s] : differential(A.complex, unit_vec(tr.b))) add(out_vec, {tr.x, tr.w, b}, s * sxw);
    if (!w.empty()) {
      auto xa = X.act(tr.x, letters[w.front()]);
      if (!xa) throw OutOfWindow("module action leaves the window");
      const Cell rest = *wb.find(Word(w.begin() + 1, w.end()));
      for (const auto& [y, s] : *xa) add(out_vec, {y, rest, tr.b}, -s * sx);
      auto ab = A.mul(letters[w.back()], tr.b);
      if (!ab) throw OutOfWindow("product leaves the algebra window");
      const Cell front = *wb.find(Word(w.begin(), w.end() - 1));
      const int sf = koszul(tr.x.deg + front.deg);
      for (const auto& [b, s] : *ab) add(out_vec, {tr.x, front, b}, s * sf);
    }
    return out_vec;
  });

  DGModule m;
  m.algebra = A;
  m.complex = cx;
  m.act = [basis, index, A](Cell c, Cell a) -> std::optional<Vec> {
    const Triple tr = basis->at(c.deg)[c.idx];
    auto p = A.mul(tr.b, a);
    if (!p) return std::nullopt;
    Vec r;
    for (const auto& [b, s] : *p) {
      auto it = index->find(Triple{tr.x, tr.w, b});
      if (it == index->end()) return std::nullopt;
      accumulate(r, it->second, s, A.ring());
    }
    return r;
  };
  Namer xn = X.name, bn = B.name, an = A.name;
  m.name = [basis, xn, bn, an](Cell c) {
    const Triple tr = basis->at(c.deg)[c.idx];
    return xn(tr.x) + "[" + bn(tr.w) + "]" + an(tr.b);
  };

  const int g = letters.empty() ? 1 : min_degree(letters, 1);
  int hi = xlo + (g + 1) * static_cast<int>(t.max_weight + 1) - 2;
  const int natural = X.complex.hi() + B.complex.hi() + A.complex.hi();
  if (t.deg_hi < natural) hi = std::min(hi, t.deg_hi - 1);
  m.window = {xlo, hi};
  out.window = m.window;
  if (out.window.empty()) throw InputError("truncation too small to certify any window");
  out.module = m;

  const Cell empty_word = *wb.find(Word{});
  ChainMap aug = map_from(cx, X.complex, [&](Cell c) {
    const Triple tr = basis->at(c.deg)[c.idx];
    if (tr.w != empty_word) return Vec{};
    auto p = X.act(tr.x, tr.b);
    if (!p) throw OutOfWindow("module action leaves the window");
    return *p;
  });
  out.aug = ModuleMap{m, X, aug};

  if (coaction) {
    Comodule cm;
    cm.coalgebra = coaction->coalgebra;
    cm.complex = cx;
    auto rho = coaction->coaction;
    cm.coaction = [basis, index, rho, R](Cell c) {
      const Triple tr = basis->at(c.deg)[c.idx];
      Vec2 r;
      for (const auto& [pq, s] : rho(tr.x)) {
        auto it = index->find(Triple{pq.first, tr.w, tr.b});
        if (it == index->end()) throw OutOfWindow("coaction leaves the truncation");
        const int sign = koszul(static_cast<long>(pq.second.deg) * (tr.w.deg + tr.b.deg));
        accumulate(r, std::make_pair(it->second, pq.second), s * sign, R);
      }
      return r;
    };
    cm.name = m.name;
    out.coaction = cm;
    out.target_coaction = *coaction;
  }
  return out;
}

}  // namespace

TwoSidedBar two_sided_bar(const DGModule& x, const TruncationPolicy& t) { return build_two_sided(x, std::nullopt, t); }

TwoSidedBar two_sided_bar(const CoringComodule& x, const TruncationPolicy& t) {
  return build_two_sided(x.module, x.comodule, t);
}

}  // namespace dgw
