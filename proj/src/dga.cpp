#include "dgw/dga.hpp"

#include <algorithm>

namespace dgw {

namespace {

constexpr std::size_t kMaxReported = 20;

void report(std::vector<std::string>& out, const std::string& s) {
  if (out.size() < kMaxReported) out.push_back(s);
}

std::vector<int> gen_degrees(const FreePresentation& p) {
  std::vector<int> d;
  for (const auto& g : p.gens) d.push_back(g.degree);
  return d;
}

Vec word_to_cells(const WordBasis& wb, const WordVec& v, const Ring& ring) {
  Vec out;
  for (const auto& [w, c] : v)
    if (auto cell = wb.find(w)) accumulate(out, *cell, c, ring);
  return out;
}

std::optional<Vec> product_of(const DGAlgebra& a, const Vec& x, const Vec& y) {
  Vec out;
  for (const auto& [cx, sx] : x)
    for (const auto& [cy, sy] : y) {
      auto p = a.mul(cx, cy);
      if (!p) return std::nullopt;
      add_scaled(out, *p, sx * sy, a.ring());
    }
  return out;
}

std::vector<Cell> cells_in(const ChainComplex& x, int lo, int hi) {
  std::vector<Cell> out;
  for (int n = std::max(lo, x.lo()); n <= std::min(hi, x.hi()); ++n)
    for (std::size_t i = 0; i < x.rank(n); ++i) out.push_back(Cell{n, i});
  return out;
}

std::string vec_string(const Vec& v) {
  std::string s;
  for (const auto& [c, x] : v) {
    if (!s.empty()) s += " + ";
    s += scalar_to_string(x) + "*(" + std::to_string(c.deg) + "," + std::to_string(c.idx) + ")";
  }
  return s.empty() ? "0" : s;
}

}  // namespace

bool FreePresentation::linear() const {
  for (const auto& dv : d)
    for (const auto& [w, c] : dv)
      if (w.size() != 1) return false;
  return true;
}

std::optional<Vec> DGAlgebra::product(const Vec& a, const Vec& b) const { return product_of(*this, a, b); }

std::vector<Cell> DGAlgebra::reduced_cells() const {
  std::vector<Cell> out;
  for (Cell c : cells_of(complex))
    if (c != unit) out.push_back(c);
  return out;
}

ChainMap DGAlgebra::mult_map() const {
  ChainComplex t = tensor(complex, complex);
  TensorLayout L = tensor_layout(complex, complex);
  return map_from(t, complex, [&](Cell c) {
    auto [a, b] = split_tensor_cell(L, complex, complex, c);
    auto p = mul(a, b);
    if (!p) throw OutOfWindow("product " + name(a) + " * " + name(b) + " leaves the window");
    return *p;
  });
}

ChainMap DGAlgebra::unit_map() const {
  ChainComplex u = unit_complex(ring());
  return map_from(u, complex, [&](Cell) { return unit_vec(unit); });
}

std::optional<ChainMap> DGAlgebra::augmentation_map() const {
  if (!augmented) return std::nullopt;
  ChainComplex u = unit_complex(ring());
  return map_from(complex, u, [&](Cell c) { return c == unit ? unit_vec(Cell{0, 0}) : Vec{}; });
}

DGAlgebra unit_algebra(Ring ring) {
  FreePresentation p;
  p.trunc = {0, 0, 0};
  p.quotient = true;
  return free_algebra(ring, p);
}

WordVec word_differential(const FreePresentation& p, const Word& w, const Ring& ring) {
  std::vector<int> degs = gen_degrees(p);
  return leibniz(w, [&](int l) { return p.d[l]; }, 1, degs, ring);
}

Window free_window(const FreePresentation& p) {
  const auto& t = p.trunc;
  const long W = static_cast<long>(t.max_weight);
  int mn = 0, mx = 0;
  bool any = false;
  int gmin = 0;
  for (const auto& g : p.gens) {
    mn = std::min(mn, g.degree);
    mx = std::max(mx, g.degree);
    gmin = any ? std::min(gmin, g.degree) : g.degree;
    any = true;
  }
  const int natural_lo = static_cast<int>(W * mn), natural_hi = static_cast<int>(W * mx);
  if (p.quotient)
    return {std::max(t.deg_lo, natural_lo), t.deg_hi >= natural_hi ? t.deg_hi : t.deg_hi - 1};
  const int lo = t.deg_lo <= natural_lo ? t.deg_lo : t.deg_lo + 1;
  if (!any || p.linear()) return {lo, t.deg_hi >= natural_hi ? t.deg_hi : t.deg_hi - 1};
  if (gmin < 1) return {};
  // every word of degree <= top has length <= W
  const int top = std::min(t.deg_hi, static_cast<int>(gmin * (W + 1) - 1));
  return {lo, top - 1};
}

DGAlgebra free_algebra(Ring ring, FreePresentation p) {
  if (p.d.size() < p.gens.size()) p.d.resize(p.gens.size());
  if (p.d.size() != p.gens.size()) throw InputError("differential given for unknown generators");
  const auto degs = gen_degrees(p);
  for (std::size_t g = 0; g < p.gens.size(); ++g) {
    WordVec clean;
    for (const auto& [w, c] : p.d[g]) {
      for (int l : w)
        if (l < 0 || static_cast<std::size_t>(l) >= p.gens.size())
          throw InputError("d of " + p.gens[g].name + " uses an unknown letter");
      if (w.empty()) throw InputError("d of " + p.gens[g].name + " has a constant term");
      int deg = 0;
      for (int l : w) deg += degs[l];
      if (deg != p.gens[g].degree - 1) throw InputError("d of " + p.gens[g].name + " has the wrong degree");
      accumulate(clean, w, c, ring);
    }
    p.d[g] = clean;
  }
  for (std::size_t g = 0; g < p.gens.size(); ++g) {
    WordVec dd;
    for (const auto& [w, c] : p.d[g]) add_scaled(dd, word_differential(p, w, ring), c, ring);
    if (!dd.empty()) throw InputError("d^2 != 0 on generator " + p.gens[g].name);
  }
  if (p.trunc.deg_lo > 0 || p.trunc.deg_hi < 0) throw InputError("truncation excludes the unit");
  auto pres = std::make_shared<const FreePresentation>(p);
  auto wb = std::make_shared<const WordBasis>(degs, p.trunc.max_weight, p.trunc.deg_lo, p.trunc.deg_hi);
  DGAlgebra a;
  a.presentation = pres;
  a.words = wb;
  a.complex = complex_from(ring, wb->ranks(), [&](Cell c) {
    return word_to_cells(*wb, word_differential(*pres, wb->word(c), ring), ring);
  });
  a.unit = *wb->find(Word{});
  a.augmented = true;
  a.window = free_window(p);
  const std::size_t W = p.trunc.max_weight;
  const bool quotient = p.quotient;
  a.mul = [wb, W, quotient](Cell x, Cell y) -> std::optional<Vec> {
    Word w = wb->word(x);
    const Word& v = wb->word(y);
    w.insert(w.end(), v.begin(), v.end());
    if (auto c = wb->find(w)) return unit_vec(*c);
    if (quotient && w.size() > W) return Vec{};
    return std::nullopt;
  };
  a.name = [wb, pres](Cell c) {
    return word_name(wb->word(c), [&](int l) { return pres->gens[l].name; });
  };
  return a;
}

DGAlgebra truncated_tensor_algebra(Ring ring, std::vector<Generator> gens, std::vector<WordVec> d,
                                   std::size_t max_weight, std::optional<int> deg_hi) {
  FreePresentation p;
  p.gens = std::move(gens);
  p.d = std::move(d);
  p.quotient = true;
  int mn = 0, mx = 0;
  for (const auto& g : p.gens) {
    mn = std::min(mn, g.degree);
    mx = std::max(mx, g.degree);
  }
  const long W = static_cast<long>(max_weight);
  p.trunc = {max_weight, static_cast<int>(W * mn), std::max(static_cast<int>(W * mx), deg_hi.value_or(0))};
  return free_algebra(ring, p);
}

FreePresentation presentation_on(const ChainComplex& x, const TruncationPolicy& t, const std::string& prefix) {
  FreePresentation p;
  p.trunc = t;
  std::map<Cell, int> letter;
  for (Cell c : cells_of(x)) {
    letter[c] = static_cast<int>(p.gens.size());
    p.gens.push_back({prefix + std::to_string(c.deg) + "_" + std::to_string(c.idx), c.deg});
  }
  for (Cell c : cells_of(x)) {
    WordVec dv;
    for (const auto& [t2, v] : differential(x, unit_vec(c))) dv[Word{letter.at(t2)}] = v;
    p.d.push_back(dv);
  }
  return p;
}

std::vector<std::string> check_algebra(const DGAlgebra& a) {
  std::vector<std::string> out;
  const Ring& R = a.ring();
  const Window& w = a.window;
  if (w.empty()) return out;
  const ChainComplex& X = a.complex;
  std::vector<Cell> cells = cells_in(X, X.lo(), w.hi);
  for (Cell c : cells) {
    auto l = a.mul(a.unit, c), r = a.mul(c, a.unit);
    if (!l || *l != unit_vec(c) || !r || *r != unit_vec(c)) report(out, "unit law fails on " + a.name(c));
    if (a.augmented && c != a.unit) {
      Vec dc = differential(X, unit_vec(c));
      if (dc.count(a.unit)) report(out, "augmentation not a chain map at " + a.name(c));
    }
  }
  for (Cell x : cells)
    for (Cell y : cells) {
      if (!w.contains(x.deg + y.deg)) continue;
      auto xy = a.mul(x, y);
      if (!xy) continue;
      if (a.augmented && x != a.unit && y != a.unit && xy->count(a.unit))
        report(out, "augmentation not multiplicative on " + a.name(x) + " * " + a.name(y));
      auto l1 = product_of(a, differential(X, unit_vec(x)), unit_vec(y));
      auto l2 = product_of(a, unit_vec(x), differential(X, unit_vec(y)));
      if (l1 && l2) {
        Vec rhs = *l1;
        add_scaled(rhs, *l2, Scalar(koszul(x.deg)), R);
        if (differential(X, *xy) != rhs) report(out, "Leibniz fails on " + a.name(x) + " * " + a.name(y));
      }
      for (Cell z : cells) {
        if (!w.contains(x.deg + y.deg + z.deg)) continue;
        auto left = product_of(a, *xy, unit_vec(z));
        auto yz = a.mul(y, z);
        if (!left || !yz) continue;
        auto right = product_of(a, unit_vec(x), *yz);
        if (right && *left != *right)
          report(out, "associativity fails on " + a.name(x) + ", " + a.name(y) + ", " + a.name(z) + ": " +
                          vec_string(*left) + " vs " + vec_string(*right));
      }
    }
  return out;
}

std::vector<std::string> check_algebra_map(const AlgebraMap& f, const Window& w, bool augmentation) {
  std::vector<std::string> out;
  const DGAlgebra& A = f.src;
  const DGAlgebra& B = f.dst;
  const Ring& R = A.ring();
  if (w.empty()) return out;
  if (dgw::apply(f.map, unit_vec(A.unit)) != unit_vec(B.unit)) report(out, "unit not preserved");
  std::vector<Cell> cells = cells_in(A.complex, A.complex.lo(), w.hi);
  std::map<Cell, Vec> img;
  for (Cell c : cells) img[c] = dgw::apply(f.map, unit_vec(c));
  for (Cell c : cells) {
    if (!w.contains(c.deg)) continue;
    Vec lhs = differential(B.complex, img[c]);
    Vec rhs = dgw::apply(f.map, differential(A.complex, unit_vec(c)));
    if (lhs != rhs) report(out, "not a chain map at " + A.name(c));
    if (augmentation && A.augmented && B.augmented) {
      auto it = img[c].find(B.unit);
      Scalar e = it == img[c].end() ? Scalar(0) : it->second;
      if (e != (c == A.unit ? Scalar(1) : Scalar(0))) report(out, "augmentation not preserved at " + A.name(c));
    }
  }
  for (Cell x : cells)
    for (Cell y : cells) {
      if (!w.contains(x.deg + y.deg)) continue;
      auto xy = A.mul(x, y);
      if (!xy) continue;
      auto rhs = product_of(B, img[x], img[y]);
      if (!rhs) continue;
      if (dgw::apply(f.map, *xy) != *rhs) report(out, "not multiplicative on " + A.name(x) + " * " + A.name(y));
    }
  (void)R;
  return out;
}

AlgebraMap algebra_map_from_generators(const DGAlgebra& src, const DGAlgebra& dst, const std::vector<Vec>& images) {
  if (!src.words || !src.presentation) throw InputError("algebra map source must be presented");
  if (images.size() != src.presentation->gens.size()) throw InputError("one image per generator required");
  for (std::size_t g = 0; g < images.size(); ++g)
    for (const auto& [c, x] : images[g])
      if (c.deg != src.presentation->gens[g].degree)
        throw InputError("image of " + src.presentation->gens[g].name + " has the wrong degree");
  const Window both = src.window.meet(dst.window);
  GradedMap g = graded_from(src.complex, dst.complex, 0, [&](Cell c) {
    Vec acc = unit_vec(dst.unit);
    for (int l : src.words->word(c)) {
      auto p = dst.product(acc, images[l]);
      if (!p) {
        if (both.contains(c.deg)) throw OutOfWindow("image of " + src.name(c) + " leaves the target window");
        return Vec{};
      }
      acc = std::move(*p);
    }
    return acc;
  });
  return AlgebraMap{src, dst, ChainMap(g, false)};
}

Coproduct algebra_coproduct(const DGAlgebra& a, const DGAlgebra& b) {
  if (!a.presentation || !b.presentation) throw InputError("coproduct needs presented algebras");
  if (!(a.ring() == b.ring())) throw InputError("coproduct ring mismatch");
  const FreePresentation& pa = *a.presentation;
  const FreePresentation& pb = *b.presentation;
  FreePresentation p;
  p.gens = pa.gens;
  p.d = pa.d;
  p.d.resize(p.gens.size());
  const int off = static_cast<int>(pa.gens.size());
  for (std::size_t g = 0; g < pb.gens.size(); ++g) {
    p.gens.push_back(pb.gens[g]);
    WordVec dv;
    if (g < pb.d.size())
      for (const auto& [w, c] : pb.d[g]) {
        Word v = w;
        for (int& l : v) l += off;
        dv[v] = c;
      }
    p.d.push_back(dv);
  }
  p.trunc = {std::max(pa.trunc.max_weight, pb.trunc.max_weight), std::min(pa.trunc.deg_lo, pb.trunc.deg_lo),
             std::max(pa.trunc.deg_hi, pb.trunc.deg_hi)};
  p.quotient = pa.quotient && pb.quotient;
  Coproduct out;
  out.sum = free_algebra(a.ring(), p);
  std::vector<Vec> ia, ib;
  for (std::size_t g = 0; g < pa.gens.size(); ++g)
    ia.push_back(unit_vec(*out.sum.words->find(Word{static_cast<int>(g)})));
  for (std::size_t g = 0; g < pb.gens.size(); ++g)
    ib.push_back(unit_vec(*out.sum.words->find(Word{static_cast<int>(g) + off})));
  out.in1 = algebra_map_from_generators(a, out.sum, ia);
  out.in2 = algebra_map_from_generators(b, out.sum, ib);
  return out;
}

AlgebraFactorization acyclicity_factorization(const AlgebraMap& i, const TruncationPolicy& t) {
  const DGAlgebra& A = i.src;
  const DGAlgebra& B = i.dst;
  if (!A.presentation) throw InputError("acyclicity factorization needs a presented source");
  const FreePresentation& pa = *A.presentation;
  FreePresentation p;
  p.gens = pa.gens;
  p.d = pa.d;
  p.d.resize(p.gens.size());
  p.trunc = t;
  std::vector<Cell> bcells = cells_of(B.complex);
  const int base = static_cast<int>(p.gens.size());
  for (std::size_t k = 0; k < bcells.size(); ++k) {
    Cell c = bcells[k];
    const int gb = base + 2 * static_cast<int>(k);
    p.gens.push_back({"b(" + B.name(c) + ")", c.deg});
    p.d.push_back(WordVec{{Word{gb + 1}, Scalar(1)}});
    p.gens.push_back({"s^-1 b(" + B.name(c) + ")", c.deg - 1});
    p.d.push_back(WordVec{});
  }
  if (free_window(p).empty()) throw InputError("truncation too small to certify any window");
  AlgebraFactorization out;
  out.mid = free_algebra(A.ring(), p);
  std::vector<Vec> left_img, right_img;
  for (std::size_t g = 0; g < pa.gens.size(); ++g) {
    Word w{static_cast<int>(g)};
    left_img.push_back(unit_vec(*out.mid.words->find(w)));
    right_img.push_back(dgw::apply(i.map, unit_vec(*A.words->find(w))));
  }
  for (Cell c : bcells) {
    right_img.push_back(unit_vec(c));
    right_img.push_back(differential(B.complex, unit_vec(c)));
  }
  out.left = algebra_map_from_generators(A, out.mid, left_img);
  out.right = algebra_map_from_generators(out.mid, B, right_img);
  FreePresentation unrelated = pa;
  unrelated.quotient = false;
  out.window = out.mid.window.meet(A.window).meet(B.window).meet(free_window(unrelated));
  if (out.window.empty()) throw InputError("truncation too small to certify any window");
  return out;
}

DGModule free_module(const DGAlgebra& a) {
  DGModule m;
  m.algebra = a;
  m.complex = a.complex;
  m.act = a.mul;
  m.window = a.window;
  m.name = a.name;
  return m;
}

DGModule direct_sum_module(const DGModule& m, const DGModule& n) {
  DirectSum s = direct_sum(m.complex, n.complex);
  DGModule out;
  out.algebra = m.algebra;
  out.complex = s.sum;
  out.window = m.window.meet(n.window);
  ChainComplex mc = m.complex, nc = n.complex;
  auto split = [mc](Cell c) -> std::pair<bool, Cell> {
    std::size_t r = mc.rank(c.deg);
    if (c.idx < r) return {true, c};
    return {false, Cell{c.deg, c.idx - r}};
  };
  Product ma = m.act, na = n.act;
  out.act = [=](Cell x, Cell a) -> std::optional<Vec> {
    auto [first, c] = split(x);
    auto p = first ? ma(c, a) : na(c, a);
    if (!p || first) return p;
    Vec shifted;
    for (const auto& [t, v] : *p) shifted[Cell{t.deg, t.idx + mc.rank(t.deg)}] = v;
    return shifted;
  };
  Namer mn = m.name, nn = n.name;
  out.name = [=](Cell x) {
    auto [first, c] = split(x);
    return first ? "(" + mn(c) + ",0)" : "(0," + nn(c) + ")";
  };
  return out;
}

std::vector<std::string> check_module(const DGModule& m) {
  std::vector<std::string> out;
  const DGAlgebra& A = m.algebra;
  const Ring& R = A.ring();
  const Window& w = m.window;
  if (w.empty()) return out;
  std::vector<Cell> mcells = cells_in(m.complex, m.complex.lo(), w.hi);
  std::vector<Cell> acells = cells_in(A.complex, A.complex.lo(), w.hi - m.complex.lo());
  auto act_vec = [&](const Vec& x, const Vec& a) -> std::optional<Vec> {
    Vec r;
    for (const auto& [cx, sx] : x)
      for (const auto& [ca, sa] : a) {
        auto p = m.act(cx, ca);
        if (!p) return std::nullopt;
        add_scaled(r, *p, sx * sa, R);
      }
    return r;
  };
  for (Cell x : mcells) {
    auto u = m.act(x, A.unit);
    if (!u || *u != unit_vec(x)) report(out, "unit does not act trivially on " + m.name(x));
    for (Cell a : acells) {
      if (!w.contains(x.deg + a.deg)) continue;
      auto xa = m.act(x, a);
      if (!xa) continue;
      auto l1 = act_vec(differential(m.complex, unit_vec(x)), unit_vec(a));
      auto l2 = act_vec(unit_vec(x), differential(A.complex, unit_vec(a)));
      if (l1 && l2) {
        Vec rhs = *l1;
        add_scaled(rhs, *l2, Scalar(koszul(x.deg)), R);
        if (differential(m.complex, *xa) != rhs) report(out, "action not a chain map on " + m.name(x));
      }
      for (Cell b : acells) {
        if (!w.contains(x.deg + a.deg + b.deg)) continue;
        auto ab = A.mul(a, b);
        if (!ab) continue;
        auto left = act_vec(*xa, unit_vec(b));
        auto right = act_vec(unit_vec(x), *ab);
        if (left && right && *left != *right) report(out, "action not associative on " + m.name(x));
      }
    }
  }
  return out;
}

std::vector<std::string> check_module_map(const ModuleMap& f) {
  std::vector<std::string> out;
  const DGModule& M = f.src;
  const DGModule& N = f.dst;
  const DGAlgebra& A = M.algebra;
  const Ring& R = A.ring();
  const Window w = M.window.meet(N.window);
  if (!is_chain_map(f.map.graded())) report(out, "not a chain map");
  for (Cell x : cells_in(M.complex, M.complex.lo(), w.hi))
    for (Cell a : cells_in(A.complex, A.complex.lo(), w.hi)) {
      if (!w.contains(x.deg + a.deg)) continue;
      auto xa = M.act(x, a);
      if (!xa) continue;
      Vec lhs = dgw::apply(f.map, *xa);
      Vec rhs;
      bool ok = true;
      for (const auto& [c, s] : dgw::apply(f.map, unit_vec(x))) {
        auto p = N.act(c, a);
        if (!p) {
          ok = false;
          break;
        }
        add_scaled(rhs, *p, s, R);
      }
      if (ok && lhs != rhs) report(out, "not A-linear on " + M.name(x) + " . " + A.name(a));
    }
  return out;
}

ModuleCylinder module_cylinder(const DGModule& m) {
  ModuleCylinder out;
  out.chain = cylinder(m.complex);
  out.doubled = direct_sum_module(m, m);
  ChainComplex x = m.complex;
  ChainComplex I = interval(x.ring());
  TensorLayout L = tensor_layout(x, I);
  DGModule cyl;
  cyl.algebra = m.algebra;
  cyl.complex = out.chain.cyl;
  cyl.window = m.window;
  Product act = m.act;
  cyl.act = [=](Cell c, Cell a) -> std::optional<Vec> {
    auto [mc, e] = split_tensor_cell(L, x, I, c);
    auto p = act(mc, a);
    if (!p) return std::nullopt;
    Vec r;
    const int s = koszul(static_cast<long>(e.deg) * a.deg);
    for (const auto& [t, v] : *p) r[tensor_cell(L, I, t, e)] = x.ring().normalize(v * s);
    return r;
  };
  Namer nm = m.name;
  cyl.name = [=](Cell c) {
    auto [mc, e] = split_tensor_cell(L, x, I, c);
    static const char* ends[] = {"d0t", "d1t"};
    return nm(mc) + "⊗" + (e.deg == 1 ? std::string("t") : std::string(ends[e.idx]));
  };
  out.cyl = cyl;
  out.i = ModuleMap{out.doubled, out.cyl, out.chain.i};
  out.q = ModuleMap{out.cyl, m, out.chain.q};
  return out;
}

bool quasi_iso_in(const ChainMap& f, const Window& w) {
  ChainComplex c = cone(f);
  for (int n = std::max(w.lo, c.lo() - 1); n <= std::min(w.hi, c.hi() + 1); ++n)
    if (!homology(c, n).is_zero()) return false;
  return true;
}

}  // namespace dgw
