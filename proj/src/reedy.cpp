#include "dgw/reedy.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "dgw/wfs.hpp"

namespace dgw {

std::string tag_name(MorTag t) {
  switch (t) {
    case MorTag::identity:
      return "identity";
    case MorTag::plus:
      return "plus";
    case MorTag::minus:
      return "minus";
    default:
      return "mixed";
  }
}

MorTag parse_tag(const std::string& s) {
  if (s == "identity") return MorTag::identity;
  if (s == "plus") return MorTag::plus;
  if (s == "minus") return MorTag::minus;
  if (s == "mixed") return MorTag::mixed;
  throw InputError("unknown morphism tag '" + s + "'");
}

// ---------------------------------------------------------------- categories

ReedyCategory::ReedyCategory(std::vector<ReedyObject> objects, std::vector<ReedyMorphism> morphisms,
                             std::map<std::pair<int, int>, int> compose, std::map<int, std::pair<int, int>> factor) {
  auto d = std::make_shared<Data>();
  const int nobj = static_cast<int>(objects.size());
  std::set<std::string> names;
  for (const auto& o : objects) {
    if (o.degree < 0) throw InputError("object '" + o.name + "' has negative degree");
    if (!names.insert(o.name).second) throw InputError("duplicate object name '" + o.name + "'");
  }
  d->identity.assign(nobj, -1);
  names.clear();
  for (std::size_t f = 0; f < morphisms.size(); ++f) {
    const auto& m = morphisms[f];
    if (m.src < 0 || m.src >= nobj || m.dst < 0 || m.dst >= nobj)
      throw InputError("morphism '" + m.name + "' has an unknown endpoint");
    if (!names.insert(m.name).second) throw InputError("duplicate morphism name '" + m.name + "'");
    if (m.tag == MorTag::identity) {
      if (m.src != m.dst) throw InputError("identity '" + m.name + "' is not an endomorphism");
      if (d->identity[m.src] >= 0) throw InputError("object '" + objects[m.src].name + "' has two identities");
      d->identity[m.src] = static_cast<int>(f);
    }
  }
  for (int x = 0; x < nobj; ++x)
    if (d->identity[x] < 0) {
      d->identity[x] = static_cast<int>(morphisms.size());
      morphisms.push_back({"id_" + objects[x].name, x, x, MorTag::identity});
    }
  const int nmor = static_cast<int>(morphisms.size());
  for (int f = 0; f < nmor; ++f) {
    compose[{d->identity[morphisms[f].dst], f}] = f;
    compose[{f, d->identity[morphisms[f].src]}] = f;
    d->hom[{morphisms[f].src, morphisms[f].dst}].push_back(f);
  }
  auto name = [&](int f) { return "'" + morphisms[f].name + "'"; };
  for (const auto& [gf, h] : compose) {
    const auto [g, f] = gf;
    if (g < 0 || g >= nmor || f < 0 || f >= nmor || h < 0 || h >= nmor)
      throw InputError("composition table refers to an unknown morphism");
    if (morphisms[g].src != morphisms[f].dst) throw InputError("composition of non-composable " + name(g) + " and " + name(f));
    if (morphisms[h].src != morphisms[f].src || morphisms[h].dst != morphisms[g].dst)
      throw InputError("composite " + name(g) + "∘" + name(f) + " has the wrong endpoints");
  }
  for (int g = 0; g < nmor; ++g)
    for (int f = 0; f < nmor; ++f)
      if (morphisms[g].src == morphisms[f].dst && !compose.count({g, f}))
        throw InputError("composition table misses " + name(g) + "∘" + name(f));
  for (const auto& [gf, h] : compose)
    for (int e = 0; e < nmor; ++e)
      if (morphisms[gf.second].src == morphisms[e].dst &&
          compose.at({h, e}) != compose.at({gf.first, compose.at({gf.second, e})}))
        throw InputError("composition is not associative on " + name(gf.first) + ", " + name(gf.second) + ", " + name(e));
  auto deg = [&](int x) { return objects[x].degree; };
  auto plus = [&](int f) { return morphisms[f].tag == MorTag::plus || morphisms[f].tag == MorTag::identity; };
  auto minus = [&](int f) { return morphisms[f].tag == MorTag::minus || morphisms[f].tag == MorTag::identity; };
  for (int f = 0; f < nmor; ++f) {
    const auto& m = morphisms[f];
    if (m.tag == MorTag::plus && deg(m.dst) <= deg(m.src)) throw InputError("plus morphism " + name(f) + " does not raise degree");
    if (m.tag == MorTag::minus && deg(m.dst) >= deg(m.src)) throw InputError("minus morphism " + name(f) + " does not lower degree");
  }
  for (const auto& [gf, h] : compose) {
    if (plus(gf.first) && plus(gf.second) && !plus(h)) throw InputError("plus morphisms are not closed under composition");
    if (minus(gf.first) && minus(gf.second) && !minus(h)) throw InputError("minus morphisms are not closed under composition");
  }
  d->factor.resize(nmor);
  for (int f = 0; f < nmor; ++f) {
    const auto& m = morphisms[f];
    std::pair<int, int> qi;
    if (auto it = factor.find(f); it != factor.end())
      qi = it->second;
    else if (plus(f))
      qi = {d->identity[m.src], f};
    else if (minus(f))
      qi = {f, d->identity[m.dst]};
    else
      throw InputError("no factorization given for " + name(f));
    const auto [q, i] = qi;
    if (q < 0 || q >= nmor || i < 0 || i >= nmor) throw InputError("factorization of " + name(f) + " is unknown");
    if (!minus(q) || !plus(i) || morphisms[q].dst != morphisms[i].src || compose.at({i, q}) != f)
      throw InputError("factorization of " + name(f) + " is not minus followed by plus");
    int count = 0;
    for (int a = 0; a < nmor; ++a)
      if (minus(a) && morphisms[a].src == m.src)
        for (int b : d->hom[{morphisms[a].dst, m.dst}])
          if (plus(b) && compose.at({b, a}) == f) ++count;
    if (count != 1) throw InputError("factorization of " + name(f) + " is not unique");
    d->factor[f] = qi;
  }
  d->objects = std::move(objects);
  d->morphisms = std::move(morphisms);
  d->compose = std::move(compose);
  d_ = d;
}

int ReedyCategory::compose(int g, int f) const {
  auto it = d_->compose.find({g, f});
  if (it == d_->compose.end()) throw InputError("morphisms are not composable");
  return it->second;
}

bool ReedyCategory::is_plus(int f) const {
  MorTag t = morphism(f).tag;
  return t == MorTag::plus || t == MorTag::identity;
}

bool ReedyCategory::is_minus(int f) const {
  MorTag t = morphism(f).tag;
  return t == MorTag::minus || t == MorTag::identity;
}

const std::vector<int>& ReedyCategory::hom(int x, int y) const {
  static const std::vector<int> none;
  auto it = d_->hom.find({x, y});
  return it == d_->hom.end() ? none : it->second;
}

std::vector<int> ReedyCategory::into(int r) const {
  std::vector<int> out;
  for (int f = 0; f < static_cast<int>(morphism_count()); ++f)
    if (morphism(f).dst == r) out.push_back(f);
  return out;
}

std::vector<int> ReedyCategory::out_of(int r) const {
  std::vector<int> out;
  for (int f = 0; f < static_cast<int>(morphism_count()); ++f)
    if (morphism(f).src == r) out.push_back(f);
  return out;
}

int ReedyCategory::find_object(const std::string& name) const {
  for (std::size_t x = 0; x < object_count(); ++x)
    if (object(static_cast<int>(x)).name == name) return static_cast<int>(x);
  throw InputError("unknown object '" + name + "'");
}

int ReedyCategory::find_morphism(const std::string& name) const {
  for (std::size_t f = 0; f < morphism_count(); ++f)
    if (morphism(static_cast<int>(f)).name == name) return static_cast<int>(f);
  throw InputError("unknown morphism '" + name + "'");
}

ReedyCategory ReedyCategory::opposite() const {
  std::vector<ReedyMorphism> ms = d_->morphisms;
  for (auto& m : ms) {
    std::swap(m.src, m.dst);
    if (m.tag == MorTag::plus)
      m.tag = MorTag::minus;
    else if (m.tag == MorTag::minus)
      m.tag = MorTag::plus;
  }
  std::map<std::pair<int, int>, int> comp;
  for (const auto& [gf, h] : d_->compose) comp[{gf.second, gf.first}] = h;
  std::map<int, std::pair<int, int>> fac;
  for (std::size_t f = 0; f < ms.size(); ++f) fac[static_cast<int>(f)] = {d_->factor[f].second, d_->factor[f].first};
  return ReedyCategory(d_->objects, ms, comp, fac);
}

ReedyCategory truncated_delta(int n) {
  if (n < 0 || n > 3) throw InputError("truncated Δ is limited to n <= 3");
  std::vector<ReedyObject> objs;
  for (int a = 0; a <= n; ++a) objs.push_back({"[" + std::to_string(a) + "]", a});
  using Key = std::pair<std::pair<int, int>, std::vector<int>>;
  std::map<Key, int> index;
  std::vector<ReedyMorphism> ms;
  std::vector<std::vector<int>> values;
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b) {
      std::vector<int> v(a + 1, 0);
      for (;;) {
        std::set<int> image(v.begin(), v.end());
        bool id = a == b && std::equal(v.begin(), v.end(), image.begin()) && static_cast<int>(image.size()) == a + 1;
        MorTag tag = id ? MorTag::identity
                        : static_cast<int>(image.size()) == a + 1 ? MorTag::plus
                        : static_cast<int>(image.size()) == b + 1 ? MorTag::minus
                                                                   : MorTag::mixed;
        std::string name = id ? "id[" + std::to_string(a) + "]" : std::to_string(a) + "->" + std::to_string(b) + ":";
        if (!id)
          for (int t : v) name += std::to_string(t);
        index[{{a, b}, v}] = static_cast<int>(ms.size());
        ms.push_back({name, a, b, tag});
        values.push_back(v);
        // next nondecreasing sequence in [0, b]
        int k = a;
        while (k >= 0 && v[k] == b) --k;
        if (k < 0) break;
        int nv = v[k] + 1;
        for (int j = k; j <= a; ++j) v[j] = nv;
      }
    }
  std::map<std::pair<int, int>, int> comp;
  std::map<int, std::pair<int, int>> fac;
  for (std::size_t g = 0; g < ms.size(); ++g)
    for (std::size_t f = 0; f < ms.size(); ++f) {
      if (ms[g].src != ms[f].dst) continue;
      std::vector<int> v;
      for (int t : values[f]) v.push_back(values[g][t]);
      comp[{static_cast<int>(g), static_cast<int>(f)}] = index.at({{ms[f].src, ms[g].dst}, v});
    }
  for (std::size_t f = 0; f < ms.size(); ++f) {
    std::vector<int> image(values[f]);
    image.erase(std::unique(image.begin(), image.end()), image.end());
    const int k = static_cast<int>(image.size()) - 1;
    std::vector<int> q;
    for (int t : values[f]) q.push_back(static_cast<int>(std::lower_bound(image.begin(), image.end(), t) - image.begin()));
    fac[static_cast<int>(f)] = {index.at({{ms[f].src, k}, q}), index.at({{k, ms[f].dst}, image})};
  }
  return ReedyCategory(objs, ms, comp, fac);
}

ReedyCategory truncated_delta_op(int n) { return truncated_delta(n).opposite(); }

ReedyCategory discrete_category(std::size_t objects) {
  std::vector<ReedyObject> objs;
  for (std::size_t x = 0; x < objects; ++x) objs.push_back({"o" + std::to_string(x), 0});
  return ReedyCategory(objs, {}, {}, {});
}

bool in_sub(const ReedyCategory& c, Sub s, int f) {
  switch (s) {
    case Sub::objects:
      return c.morphism(f).tag == MorTag::identity;
    case Sub::plus:
      return c.is_plus(f);
    case Sub::minus:
      return c.is_minus(f);
    default:
      return true;
  }
}

namespace {

bool sub_contains(Sub big, Sub small) {
  return big == small || big == Sub::full || small == Sub::objects;
}

std::vector<int> morphisms_in(const ReedyCategory& c, Sub s) {
  std::vector<int> out;
  for (int f = 0; f < static_cast<int>(c.morphism_count()); ++f)
    if (in_sub(c, s, f)) out.push_back(f);
  return out;
}

void need_field(const Ring& R) {
  if (!R.is_field()) throw InputError("Reedy colimits and limits need a field coefficient ring");
}

// direct sum of several complexes with degreewise offsets
struct Blocks {
  std::vector<ChainComplex> parts;
  ChainComplex sum;
  std::map<int, std::vector<std::size_t>> offset;
};

Blocks make_blocks(const Ring& R, std::vector<ChainComplex> parts) {
  Blocks b;
  b.parts = std::move(parts);
  int lo = 0, hi = -1;
  bool any = false;
  for (const auto& p : b.parts)
    if (!p.is_zero()) {
      lo = any ? std::min(lo, p.lo()) : p.lo();
      hi = any ? std::max(hi, p.hi()) : p.hi();
      any = true;
    }
  std::map<int, std::size_t> ranks;
  std::map<int, Matrix> d;
  for (int n = lo; n <= hi; ++n) {
    std::size_t r = 0;
    for (const auto& p : b.parts) {
      b.offset[n].push_back(r);
      r += p.rank(n);
    }
    ranks[n] = r;
  }
  for (int n = lo + 1; n <= hi; ++n) {
    Matrix m(R, ranks[n - 1], ranks[n]);
    for (std::size_t k = 0; k < b.parts.size(); ++k)
      if (b.parts[k].rank(n) && b.parts[k].rank(n - 1)) m.set_block(b.offset[n - 1][k], b.offset[n][k], b.parts[k].d(n));
    d[n] = m;
  }
  b.sum = any ? ChainComplex(R, ranks, d) : ChainComplex(R);
  return b;
}

std::size_t block_offset(const Blocks& b, int n, std::size_t k) {
  auto it = b.offset.find(n);
  return it == b.offset.end() ? 0 : it->second[k];
}

// degreewise matrices between two block sums
class BlockMatrix {
 public:
  BlockMatrix(const Blocks& rows, const Blocks& cols) : rows_(rows), cols_(cols) {}
  // f: cols.parts[j] -> rows.parts[i]
  void add(std::size_t i, std::size_t j, const GradedMap& f, const Scalar& c = 1) {
    const ChainComplex& s = cols_.parts[j];
    if (s.is_zero()) return;
    for (int n = s.lo(); n <= s.hi(); ++n) {
      if (!s.rank(n) || !rows_.parts[i].rank(n)) continue;
      add_block_at(n, block_offset(rows_, n, i), block_offset(cols_, n, j), f.at(n), c);
    }
  }
  void add_identity(std::size_t i, std::size_t j, const Scalar& c = 1) {
    add(i, j, ChainMap::identity(cols_.parts[j]).graded(), c);
  }
  Matrix at(int n) const {
    auto it = m_.find(n);
    if (it != m_.end()) return it->second;
    return Matrix(rows_.sum.ring(), rows_.sum.rank(n), cols_.sum.rank(n));
  }
  std::map<int, Matrix> all() const {
    std::map<int, Matrix> out;
    const ChainComplex& s = cols_.sum;
    if (!s.is_zero())
      for (int n = s.lo(); n <= s.hi(); ++n) out[n] = at(n);
    return out;
  }
  ChainMap chain(bool check = true) const { return ChainMap(cols_.sum, rows_.sum, all(), check); }

 private:
  void add_block_at(int n, std::size_t r0, std::size_t c0, const Matrix& b, const Scalar& c) {
    auto it = m_.find(n);
    if (it == m_.end()) it = m_.emplace(n, Matrix(rows_.sum.ring(), rows_.sum.rank(n), cols_.sum.rank(n))).first;
    it->second.add_block(r0, c0, b, c);
  }
  const Blocks& rows_;
  const Blocks& cols_;
  std::map<int, Matrix> m_;
};

struct Quot {
  ChainComplex q;
  ChainMap proj;
  std::map<int, Matrix> section;
};

Quot cokernel(const ChainMap& f) {
  const ChainComplex& w = f.dst();
  const Ring& R = w.ring();
  need_field(R);
  Quot out;
  if (w.is_zero()) {
    out.q = ChainComplex(R);
    out.proj = ChainMap::zero(w, out.q);
    return out;
  }
  std::map<int, Matrix> p;
  std::map<int, std::size_t> ranks;
  for (int n = w.lo(); n <= w.hi(); ++n) {
    p[n] = left_kernel(f.at(n));
    ranks[n] = p[n].rows();
    out.section[n] = solve_linear(p[n], Matrix::identity(R, p[n].rows())).value();
  }
  std::map<int, Matrix> d;
  for (int n = w.lo() + 1; n <= w.hi(); ++n) d[n] = p[n - 1] * w.d(n) * out.section[n];
  out.q = ChainComplex(R, ranks, d);
  out.proj = ChainMap(w, out.q, p);
  return out;
}

struct Kern {
  ChainComplex k;
  ChainMap incl;
};

Kern kernel(const ChainMap& f) {
  const ChainComplex& v = f.src();
  const Ring& R = v.ring();
  need_field(R);
  Kern out;
  if (v.is_zero()) {
    out.k = ChainComplex(R);
    out.incl = ChainMap::zero(out.k, v);
    return out;
  }
  std::map<int, Matrix> b;
  std::map<int, std::size_t> ranks;
  for (int n = v.lo(); n <= v.hi(); ++n) {
    b[n] = kernel_basis(f.at(n));
    ranks[n] = b[n].cols();
  }
  std::map<int, Matrix> d;
  for (int n = v.lo() + 1; n <= v.hi(); ++n) d[n] = solve_linear(b[n - 1], v.d(n) * b[n]).value();
  out.k = ChainComplex(R, ranks, d);
  out.incl = ChainMap(out.k, v, b);
  return out;
}

// matrices a -> c through a non-chain section, checked as a chain map
ChainMap through(const ChainComplex& src, const ChainComplex& dst, const std::function<Matrix(int)>& at) {
  std::map<int, Matrix> m;
  if (!src.is_zero())
    for (int n = src.lo(); n <= src.hi(); ++n) m[n] = at(n);
  return ChainMap(src, dst, m);
}

Matrix section_at(const std::map<int, Matrix>& s, const ChainComplex& q, const ChainComplex& w, int n) {
  auto it = s.find(n);
  if (it != s.end()) return it->second;
  return Matrix(w.ring(), w.rank(n), q.rank(n));
}

// lift a map into the kernel's ambient through the inclusion
ChainMap into_kernel(const ChainComplex& src, const Kern& k, const std::function<Matrix(int)>& ambient) {
  return through(src, k.k, [&](int n) {
    auto x = solve_linear(k.incl.at(n), ambient(n));
    if (!x) throw Error("map does not land in the kernel");
    return *x;
  });
}

std::size_t total_rank_of(const ChainComplex& x) { return x.total_rank(); }

}  // namespace

// ---------------------------------------------------------------- diagrams

const ChainMap& Diagram::of(int f) const {
  auto it = map.find(f);
  if (it == map.end()) throw InputError("diagram is not defined on morphism '" + shape.morphism(f).name + "'");
  return it->second;
}

std::vector<std::string> check_diagram(const Diagram& d) {
  std::vector<std::string> out;
  const ReedyCategory& c = d.shape;
  if (d.at.size() != c.object_count()) return {"diagram has the wrong number of objects"};
  for (int f : morphisms_in(c, d.sub)) {
    const auto& m = c.morphism(f);
    auto it = d.map.find(f);
    if (it == d.map.end()) {
      out.push_back("missing map for '" + m.name + "'");
      continue;
    }
    if (!(it->second.src() == d.at[m.src]) || !(it->second.dst() == d.at[m.dst]))
      out.push_back("map for '" + m.name + "' has the wrong endpoints");
    else if (m.tag == MorTag::identity && !(it->second == ChainMap::identity(d.at[m.src])))
      out.push_back("identity '" + m.name + "' is not sent to an identity");
  }
  if (!out.empty()) return out;
  for (int g : morphisms_in(c, d.sub))
    for (int f : morphisms_in(c, d.sub)) {
      if (c.morphism(g).src != c.morphism(f).dst) continue;
      int h = c.compose(g, f);
      if (!(d.of(h) == compose(d.of(g), d.of(f))))
        out.push_back("not functorial on '" + c.morphism(g).name + "'∘'" + c.morphism(f).name + "'");
    }
  return out;
}

Diagram restrict_to(const Diagram& d, Sub s) {
  if (!sub_contains(d.sub, s)) throw InputError("cannot restrict a diagram to a larger subcategory");
  Diagram out{d.shape, s, d.at, {}};
  for (int f : morphisms_in(d.shape, s)) out.map[f] = d.of(f);
  return out;
}

Diagram zero_diagram(const ReedyCategory& c, Ring ring, Sub s) {
  return constant_diagram(c, ChainComplex(ring)).sub == s ? constant_diagram(c, ChainComplex(ring))
                                                           : restrict_to(constant_diagram(c, ChainComplex(ring)), s);
}

Diagram constant_diagram(const ReedyCategory& c, const ChainComplex& x) {
  Diagram d{c, Sub::full, std::vector<ChainComplex>(c.object_count(), x), {}};
  for (int f = 0; f < static_cast<int>(c.morphism_count()); ++f) d.map[f] = ChainMap::identity(x);
  return d;
}

std::vector<std::string> check_natural(const NatTrans& t) {
  std::vector<std::string> out;
  const ReedyCategory& c = t.src.shape;
  if (t.at.size() != c.object_count()) return {"transformation has the wrong number of components"};
  for (std::size_t x = 0; x < c.object_count(); ++x)
    if (!(t.at[x].src() == t.src.at[x]) || !(t.at[x].dst() == t.dst.at[x]))
      out.push_back("component at '" + c.object(static_cast<int>(x)).name + "' has the wrong endpoints");
  if (!out.empty()) return out;
  for (int f : morphisms_in(c, t.src.sub)) {
    if (!in_sub(c, t.dst.sub, f)) continue;
    const auto& m = c.morphism(f);
    if (!(compose(t.dst.of(f), t.at[m.src]) == compose(t.at[m.dst], t.src.of(f))))
      out.push_back("not natural on '" + m.name + "'");
  }
  return out;
}

NatTrans identity_nat(const Diagram& d) {
  NatTrans t{d, d, {}};
  for (const auto& x : d.at) t.at.push_back(ChainMap::identity(x));
  return t;
}

NatTrans compose_nat(const NatTrans& g, const NatTrans& f) {
  NatTrans t{f.src, g.dst, {}};
  for (std::size_t x = 0; x < f.at.size(); ++x) t.at.push_back(compose(g.at[x], f.at[x]));
  return t;
}

namespace {

std::vector<int> components_into(const ReedyCategory& c, Sub s, int r) {
  std::vector<int> out;
  for (int h : c.into(r))
    if (in_sub(c, s, h)) out.push_back(h);
  return out;
}

std::vector<int> components_out_of(const ReedyCategory& c, Sub s, int r) {
  std::vector<int> out;
  for (int h : c.out_of(r))
    if (in_sub(c, s, h)) out.push_back(h);
  return out;
}

std::size_t position(const std::vector<int>& v, int x) {
  auto it = std::find(v.begin(), v.end(), x);
  if (it == v.end()) throw Error("component not found");
  return static_cast<std::size_t>(it - v.begin());
}

}  // namespace

Diagram free_diagram(const ReedyCategory& c, const std::vector<ChainComplex>& family, Sub s) {
  if (family.size() != c.object_count()) throw InputError("family has the wrong number of objects");
  const Ring R = family.empty() ? Ring::rationals() : family.front().ring();
  Diagram d{c, s, {}, {}};
  std::vector<Blocks> blocks;
  std::vector<std::vector<int>> comps;
  for (int r = 0; r < static_cast<int>(c.object_count()); ++r) {
    comps.push_back(components_into(c, s, r));
    std::vector<ChainComplex> parts;
    for (int h : comps.back()) parts.push_back(family[c.morphism(h).src]);
    blocks.push_back(make_blocks(R, parts));
    d.at.push_back(blocks.back().sum);
  }
  for (int b : morphisms_in(c, s)) {
    const int r = c.morphism(b).src, r2 = c.morphism(b).dst;
    BlockMatrix m(blocks[r2], blocks[r]);
    for (std::size_t k = 0; k < comps[r].size(); ++k) m.add_identity(position(comps[r2], c.compose(b, comps[r][k])), k);
    d.map[b] = m.chain();
  }
  return d;
}

NatTrans free_extension(const Diagram& free, const std::vector<ChainComplex>& family, const Diagram& target,
                        const std::vector<ChainMap>& on_family) {
  const ReedyCategory& c = free.shape;
  const Ring R = target.at.empty() ? Ring::rationals() : target.at.front().ring();
  NatTrans t{free, target, {}};
  for (int r = 0; r < static_cast<int>(c.object_count()); ++r) {
    std::vector<int> comps = components_into(c, free.sub, r);
    std::vector<ChainComplex> parts;
    for (int h : comps) parts.push_back(family[c.morphism(h).src]);
    Blocks src = make_blocks(R, parts), dst = make_blocks(R, {target.at[r]});
    BlockMatrix m(dst, src);
    for (std::size_t k = 0; k < comps.size(); ++k)
      m.add(0, k, compose(target.of(comps[k]), on_family[c.morphism(comps[k]).src]).graded());
    t.at.push_back(ChainMap(free.at[r], target.at[r], m.all()));
  }
  return t;
}

NatTrans cokernel_nat(const NatTrans& t) {
  const ReedyCategory& c = t.dst.shape;
  std::vector<Quot> qs;
  Diagram q{c, t.dst.sub, {}, {}};
  for (const ChainMap& f : t.at) {
    qs.push_back(cokernel(f));
    q.at.push_back(qs.back().q);
  }
  for (int f : morphisms_in(c, t.dst.sub)) {
    const int x = c.morphism(f).src, y = c.morphism(f).dst;
    const ChainMap& phi = t.dst.of(f);
    q.map[f] = through(q.at[x], q.at[y], [&](int n) {
      return qs[y].proj.at(n) * phi.at(n) * section_at(qs[x].section, q.at[x], t.dst.at[x], n);
    });
  }
  NatTrans out{t.dst, q, {}};
  for (const Quot& x : qs) out.at.push_back(x.proj);
  return out;
}

NatTrans direct_sum_inclusion(const Diagram& a, const Diagram& b) {
  Diagram s{a.shape, a.sub, {}, {}};
  NatTrans t{a, s, {}};
  for (std::size_t x = 0; x < a.at.size(); ++x) {
    DirectSum ds = direct_sum(a.at[x], b.at[x]);
    s.at.push_back(ds.sum);
    t.at.push_back(ds.in1);
  }
  for (const auto& [f, m] : a.map) s.map[f] = direct_sum_map(m, b.of(f));
  t.dst = s;
  return t;
}

namespace {

std::vector<ChainComplex> random_family(std::mt19937_64& rng, const ReedyCategory& c, Ring ring, const RandomSpec& spec) {
  std::vector<ChainComplex> fam;
  for (std::size_t x = 0; x < c.object_count(); ++x) fam.push_back(random_complex(rng, ring, spec));
  return fam;
}

NatTrans random_quotient(std::mt19937_64& rng, const Diagram& d, const DiagramSpec& spec) {
  const Ring ring = d.at.front().ring();
  std::vector<ChainComplex> rel = random_family(rng, d.shape, ring, spec.family);
  Diagram free = free_diagram(d.shape, rel, d.sub);
  std::vector<ChainMap> alpha;
  for (std::size_t x = 0; x < rel.size(); ++x) alpha.push_back(random_chain_map(rng, rel[x], d.at[x], spec.family.entry_bound));
  return cokernel_nat(free_extension(free, rel, d, alpha));
}

}  // namespace

Diagram random_diagram(std::mt19937_64& rng, const ReedyCategory& c, Ring ring, const DiagramSpec& spec) {
  need_field(ring);
  Diagram d = free_diagram(c, random_family(rng, c, ring, spec.family));
  for (int k = 0; k < spec.relations; ++k) d = random_quotient(rng, d, spec).dst;
  return d;
}

NatTrans random_nat(std::mt19937_64& rng, const Diagram& src, const DiagramSpec& spec) {
  const Ring ring = src.at.front().ring();
  NatTrans t = direct_sum_inclusion(src, free_diagram(src.shape, random_family(rng, src.shape, ring, spec.family), src.sub));
  for (int k = 0; k < spec.relations; ++k) t = compose_nat(random_quotient(rng, t.dst, spec), t);
  return t;
}

// ---------------------------------------------------------------- latching and matching

Latching latching(const Diagram& d, int r) {
  if (!sub_contains(d.sub, Sub::plus)) throw InputError("latching objects need the plus morphisms");
  const ReedyCategory& c = d.shape;
  const Ring R = d.at.at(r).ring();
  Latching out;
  for (int f : c.into(r))
    if (c.morphism(f).tag == MorTag::plus) out.slice.push_back(f);
  std::vector<ChainComplex> parts, rel_parts;
  std::vector<std::pair<std::size_t, std::pair<std::size_t, int>>> rels;  // (f, (f', g)) with f'∘g = f
  for (std::size_t a = 0; a < out.slice.size(); ++a) {
    const int f = out.slice[a];
    parts.push_back(d.at[c.morphism(f).src]);
    for (std::size_t b = 0; b < out.slice.size(); ++b)
      for (int g : c.hom(c.morphism(f).src, c.morphism(out.slice[b]).src))
        if (c.morphism(g).tag == MorTag::plus && c.compose(out.slice[b], g) == f) {
          rels.push_back({a, {b, g}});
          rel_parts.push_back(d.at[c.morphism(f).src]);
        }
  }
  Blocks sum = make_blocks(R, parts), relb = make_blocks(R, rel_parts);
  BlockMatrix rel(sum, relb);
  for (std::size_t k = 0; k < rels.size(); ++k) {
    rel.add_identity(rels[k].first, k);
    rel.add(rels[k].second.first, k, d.of(rels[k].second.second).graded(), -1);
  }
  Quot q = cokernel(rel.chain());
  Blocks target = make_blocks(R, {d.at[r]});
  BlockMatrix total(target, sum);
  for (std::size_t a = 0; a < out.slice.size(); ++a) total.add(0, a, d.of(out.slice[a]).graded());
  out.object = q.q;
  out.quotient = q.proj;
  out.section = q.section;
  out.canonical = through(q.q, d.at[r], [&](int n) { return total.at(n) * section_at(q.section, q.q, sum.sum, n); });
  return out;
}

Matching matching(const Diagram& d, int r) {
  if (!sub_contains(d.sub, Sub::minus)) throw InputError("matching objects need the minus morphisms");
  const ReedyCategory& c = d.shape;
  const Ring R = d.at.at(r).ring();
  Matching out;
  for (int g : c.out_of(r))
    if (c.morphism(g).tag == MorTag::minus) out.slice.push_back(g);
  std::vector<ChainComplex> parts, con_parts;
  std::vector<std::pair<std::size_t, std::pair<std::size_t, int>>> cons;  // (g, (g', h)) with h∘g = g'
  for (std::size_t a = 0; a < out.slice.size(); ++a) {
    const int g = out.slice[a];
    parts.push_back(d.at[c.morphism(g).dst]);
    for (std::size_t b = 0; b < out.slice.size(); ++b)
      for (int h : c.hom(c.morphism(g).dst, c.morphism(out.slice[b]).dst))
        if (c.morphism(h).tag == MorTag::minus && c.compose(h, g) == out.slice[b]) {
          cons.push_back({a, {b, h}});
          con_parts.push_back(d.at[c.morphism(out.slice[b]).dst]);
        }
  }
  Blocks prod = make_blocks(R, parts), conb = make_blocks(R, con_parts);
  BlockMatrix con(conb, prod);
  for (std::size_t k = 0; k < cons.size(); ++k) {
    con.add(k, cons[k].first, d.of(cons[k].second.second).graded());
    con.add_identity(k, cons[k].second.first, -1);
  }
  Kern k = kernel(con.chain());
  Blocks source = make_blocks(R, {d.at[r]});
  BlockMatrix stack(prod, source);
  for (std::size_t a = 0; a < out.slice.size(); ++a) stack.add(a, 0, d.of(out.slice[a]).graded());
  out.object = k.k;
  out.inclusion = k.incl;
  out.canonical = into_kernel(d.at[r], k, [&](int n) { return stack.at(n); });
  return out;
}

namespace {

Blocks slice_blocks(const Diagram& d, const std::vector<int>& slice, bool sources) {
  std::vector<ChainComplex> parts;
  for (int f : slice) parts.push_back(d.at[sources ? d.shape.morphism(f).src : d.shape.morphism(f).dst]);
  return make_blocks(d.at.front().ring(), parts);
}

BlockMatrix diagonal(const Blocks& rows, const Blocks& cols, const NatTrans& t, const std::vector<int>& slice,
                     bool sources) {
  BlockMatrix m(rows, cols);
  for (std::size_t k = 0; k < slice.size(); ++k) {
    const auto& mor = t.src.shape.morphism(slice[k]);
    m.add(k, k, t.at[sources ? mor.src : mor.dst].graded());
  }
  return m;
}

}  // namespace

ChainMap latching_map(const NatTrans& t, int r) {
  Latching a = latching(t.src, r), b = latching(t.dst, r);
  Blocks sa = slice_blocks(t.src, a.slice, true), sb = slice_blocks(t.dst, b.slice, true);
  BlockMatrix diag = diagonal(sb, sa, t, a.slice, true);
  return through(a.object, b.object, [&](int n) {
    return b.quotient.at(n) * diag.at(n) * section_at(a.section, a.object, sa.sum, n);
  });
}

ChainMap matching_map(const NatTrans& t, int r) {
  Matching a = matching(t.src, r), b = matching(t.dst, r);
  Blocks sa = slice_blocks(t.src, a.slice, false), sb = slice_blocks(t.dst, b.slice, false);
  BlockMatrix diag = diagonal(sb, sa, t, a.slice, false);
  return into_kernel(a.object, Kern{b.object, b.inclusion}, [&](int n) { return diag.at(n) * a.inclusion.at(n); });
}

ChainMap relative_latching(const NatTrans& t, int r) {
  const Ring R = t.src.at.at(r).ring();
  Latching a = latching(t.src, r), b = latching(t.dst, r);
  ChainMap lt = latching_map(t, r);
  Blocks top = make_blocks(R, {t.src.at[r], b.object});
  Blocks bottom = make_blocks(R, {a.object});
  BlockMatrix g(top, bottom);
  g.add(0, 0, a.canonical.graded());
  g.add(1, 0, lt.graded(), -1);
  Quot p = cokernel(g.chain());
  Blocks target = make_blocks(R, {t.dst.at[r]});
  BlockMatrix out(target, top);
  out.add(0, 0, t.at[r].graded());
  out.add(0, 1, b.canonical.graded());
  return through(p.q, t.dst.at[r], [&](int n) { return out.at(n) * section_at(p.section, p.q, top.sum, n); });
}

ChainMap relative_matching(const NatTrans& t, int r) {
  const Ring R = t.src.at.at(r).ring();
  Matching a = matching(t.src, r), b = matching(t.dst, r);
  ChainMap mt = matching_map(t, r);
  Blocks top = make_blocks(R, {t.dst.at[r], a.object});
  Blocks bottom = make_blocks(R, {b.object});
  BlockMatrix h(bottom, top);
  h.add(0, 0, b.canonical.graded());
  h.add(0, 1, mt.graded(), -1);
  Kern k = kernel(h.chain());
  Blocks source = make_blocks(R, {t.src.at[r]});
  BlockMatrix stack(top, source);
  stack.add(0, 0, t.at[r].graded());
  stack.add(1, 0, a.canonical.graded());
  return into_kernel(t.src.at[r], k, [&](int n) { return stack.at(n); });
}

bool relative_latching_injective(const NatTrans& t, int r) {
  const Ring R = t.src.at.at(r).ring();
  Latching a = latching(t.src, r), b = latching(t.dst, r);
  ChainMap lt = latching_map(t, r);
  Blocks top = make_blocks(R, {t.src.at[r], b.object});
  Blocks bottom = make_blocks(R, {a.object});
  Blocks target = make_blocks(R, {t.dst.at[r]});
  BlockMatrix g(top, bottom), sum(target, top);
  g.add(0, 0, a.canonical.graded());
  g.add(1, 0, lt.graded(), -1);
  sum.add(0, 0, t.at[r].graded());
  sum.add(0, 1, b.canonical.graded());
  if (top.sum.is_zero()) return true;
  for (int n = top.sum.lo(); n <= top.sum.hi(); ++n) {
    if (!(sum.at(n) * g.at(n)).is_zero()) return false;
    if (kernel_basis(sum.at(n)).cols() != rank(g.at(n))) return false;
  }
  return true;
}

bool relative_matching_surjective(const NatTrans& t, int r) {
  const Ring R = t.src.at.at(r).ring();
  Matching a = matching(t.src, r), b = matching(t.dst, r);
  ChainMap mt = matching_map(t, r);
  Blocks top = make_blocks(R, {t.dst.at[r], a.object});
  Blocks bottom = make_blocks(R, {b.object});
  Blocks source = make_blocks(R, {t.src.at[r]});
  BlockMatrix h(bottom, top), stack(top, source);
  h.add(0, 0, b.canonical.graded());
  h.add(0, 1, mt.graded(), -1);
  stack.add(0, 0, t.at[r].graded());
  stack.add(1, 0, a.canonical.graded());
  if (top.sum.is_zero()) return true;
  for (int n = top.sum.lo(); n <= top.sum.hi(); ++n)
    if (kernel_basis(h.at(n)).cols() != rank(stack.at(n))) return false;
  return true;
}

ReedyVerdict reedy_classify(const NatTrans& t) {
  ReedyVerdict v;
  for (int r = 0; r < static_cast<int>(t.src.shape.object_count()); ++r) {
    if (!is_cofibration(relative_latching(t, r))) v.failing_latching.push_back(r);
    if (!is_fibration(relative_matching(t, r))) v.failing_matching.push_back(r);
    if (!is_homotopy_equivalence(t.at[r])) v.failing_objects.push_back(r);
  }
  v.cofibration = v.failing_latching.empty();
  v.fibration = v.failing_matching.empty();
  v.weak_equivalence = v.failing_objects.empty();
  return v;
}

// ---------------------------------------------------------------- Kan extensions

namespace {

std::pair<Sub, Sub> inclusion_subs(Inclusion inc) {
  switch (inc) {
    case Inclusion::objects_into_plus:
      return {Sub::objects, Sub::plus};
    case Inclusion::objects_into_minus:
      return {Sub::objects, Sub::minus};
    case Inclusion::minus_into_full:
      return {Sub::minus, Sub::full};
    default:
      return {Sub::plus, Sub::full};
  }
}

struct LanData {
  Diagram result;
  std::vector<std::vector<int>> comps;
  std::vector<Blocks> sums;
  std::vector<ChainMap> relations;
  std::vector<Quot> quots;
};

LanData lan_impl(Inclusion inc, const Diagram& d0) {
  const auto [A, B] = inclusion_subs(inc);
  const Diagram d = restrict_to(d0, A);
  const ReedyCategory& c = d.shape;
  const Ring R = d.at.front().ring();
  LanData out;
  out.result = Diagram{c, B, {}, {}};
  for (int r = 0; r < static_cast<int>(c.object_count()); ++r) {
    out.comps.push_back(components_into(c, B, r));
    const auto& comps = out.comps.back();
    std::vector<ChainComplex> parts, rel_parts;
    std::vector<std::pair<std::size_t, int>> rels;  // (h, g): ι_{h∘g} - ι_h Φ(g)
    for (std::size_t k = 0; k < comps.size(); ++k) {
      parts.push_back(d.at[c.morphism(comps[k]).src]);
      for (int g : c.into(c.morphism(comps[k]).src))
        if (in_sub(c, A, g) && c.morphism(g).tag != MorTag::identity) {
          rels.push_back({k, g});
          rel_parts.push_back(d.at[c.morphism(g).src]);
        }
    }
    out.sums.push_back(make_blocks(R, parts));
    Blocks relb = make_blocks(R, rel_parts);
    BlockMatrix rel(out.sums.back(), relb);
    for (std::size_t k = 0; k < rels.size(); ++k) {
      const auto [h, g] = rels[k];
      rel.add_identity(position(comps, c.compose(comps[h], g)), k);
      rel.add(h, k, d.of(g).graded(), -1);
    }
    out.relations.push_back(rel.chain());
    out.quots.push_back(cokernel(out.relations.back()));
    out.result.at.push_back(out.quots.back().q);
  }
  for (int b : morphisms_in(c, B)) {
    const int r = c.morphism(b).src, r2 = c.morphism(b).dst;
    BlockMatrix move(out.sums[r2], out.sums[r]);
    for (std::size_t k = 0; k < out.comps[r].size(); ++k)
      move.add_identity(position(out.comps[r2], c.compose(b, out.comps[r][k])), k);
    out.result.map[b] = through(out.result.at[r], out.result.at[r2], [&](int n) {
      return out.quots[r2].proj.at(n) * move.at(n) *
             section_at(out.quots[r].section, out.result.at[r], out.sums[r].sum, n);
    });
  }
  return out;
}

struct RanData {
  Diagram result;
  std::vector<std::vector<int>> comps;
  std::vector<Blocks> prods;
  std::vector<ChainMap> constraints;
  std::vector<Kern> kerns;
};

RanData ran_impl(Inclusion inc, const Diagram& d0) {
  const auto [A, B] = inclusion_subs(inc);
  const Diagram d = restrict_to(d0, A);
  const ReedyCategory& c = d.shape;
  const Ring R = d.at.front().ring();
  RanData out;
  out.result = Diagram{c, B, {}, {}};
  for (int r = 0; r < static_cast<int>(c.object_count()); ++r) {
    out.comps.push_back(components_out_of(c, B, r));
    const auto& comps = out.comps.back();
    std::vector<ChainComplex> parts, con_parts;
    std::vector<std::pair<std::size_t, int>> cons;  // (h, g): a_{g∘h} - Φ(g) a_h
    for (std::size_t k = 0; k < comps.size(); ++k) {
      parts.push_back(d.at[c.morphism(comps[k]).dst]);
      for (int g : c.out_of(c.morphism(comps[k]).dst))
        if (in_sub(c, A, g) && c.morphism(g).tag != MorTag::identity) {
          cons.push_back({k, g});
          con_parts.push_back(d.at[c.morphism(g).dst]);
        }
    }
    out.prods.push_back(make_blocks(R, parts));
    Blocks conb = make_blocks(R, con_parts);
    BlockMatrix con(conb, out.prods.back());
    for (std::size_t k = 0; k < cons.size(); ++k) {
      const auto [h, g] = cons[k];
      con.add_identity(k, position(comps, c.compose(g, comps[h])));
      con.add(k, h, d.of(g).graded(), -1);
    }
    out.constraints.push_back(con.chain());
    out.kerns.push_back(kernel(out.constraints.back()));
    out.result.at.push_back(out.kerns.back().k);
  }
  for (int b : morphisms_in(c, B)) {
    const int r = c.morphism(b).src, r2 = c.morphism(b).dst;
    BlockMatrix move(out.prods[r2], out.prods[r]);
    for (std::size_t k = 0; k < out.comps[r2].size(); ++k)
      move.add_identity(k, position(out.comps[r], c.compose(out.comps[r2][k], b)));
    out.result.map[b] =
        into_kernel(out.result.at[r], out.kerns[r2], [&](int n) { return move.at(n) * out.kerns[r].incl.at(n); });
  }
  return out;
}

}  // namespace

Diagram lan_along(Inclusion inc, const Diagram& d) { return lan_impl(inc, d).result; }
Diagram ran_along(Inclusion inc, const Diagram& d) { return ran_impl(inc, d).result; }

namespace {

bool is_iso(const ChainMap& f) {
  const ChainComplex& s = f.src();
  const ChainComplex& t = f.dst();
  if (s.ranks() != t.ranks()) return false;
  if (s.is_zero()) return true;
  for (int n = s.lo(); n <= s.hi(); ++n)
    if (rank(f.at(n)) != s.rank(n)) return false;
  return true;
}

}  // namespace

ExactSquareReport check_exact_square_lv(const Diagram& phi) {
  ExactSquareReport rep;
  rep.which = "LV=VL";
  if (phi.sub != Sub::minus) throw InputError("LV=VL takes a diagram on the minus subcategory");
  const ReedyCategory& c = phi.shape;
  const Ring R = phi.at.front().ring();
  LanData lv = lan_impl(Inclusion::objects_into_plus, restrict_to(phi, Sub::objects));
  LanData full = lan_impl(Inclusion::minus_into_full, phi);
  const Diagram vl = restrict_to(full.result, Sub::plus);
  std::vector<ChainMap> comp;
  for (int r = 0; r < static_cast<int>(c.object_count()); ++r) {
    const std::string name = c.object(r).name;
    // component h = i∘q goes to component i through Φ(q)
    BlockMatrix m(lv.sums[r], full.sums[r]);
    for (std::size_t k = 0; k < full.comps[r].size(); ++k) {
      const auto [q, i] = c.factor(full.comps[r][k]);
      m.add(position(lv.comps[r], i), k, phi.of(q).graded());
    }
    const ChainMap rel = full.relations[r];
    if (!rel.src().is_zero())
      for (int n = rel.src().lo(); n <= rel.src().hi(); ++n)
        if (!(m.at(n) * rel.at(n)).is_zero()) rep.failures.push_back("comparison does not kill the relations at " + name);
    // LV(Φ)(r) is the plain coproduct, so its quotient is the identity
    ChainMap to_lv = through(vl.at[r], lv.result.at[r], [&](int n) {
      return lv.quots[r].proj.at(n) * m.at(n) * section_at(full.quots[r].section, vl.at[r], full.sums[r].sum, n);
    });
    if (!is_iso(to_lv)) rep.failures.push_back("comparison is not an isomorphism at " + name);
    rep.ranks["VL " + name] = total_rank_of(vl.at[r]);
    rep.ranks["LV " + name] = total_rank_of(lv.result.at[r]);
    comp.push_back(to_lv);
  }
  (void)R;
  for (int p : morphisms_in(c, Sub::plus)) {
    const int r = c.morphism(p).src, r2 = c.morphism(p).dst;
    if (!(compose(lv.result.of(p), comp[r]) == compose(comp[r2], vl.of(p))))
      rep.failures.push_back("comparison is not natural on '" + c.morphism(p).name + "'");
  }
  return rep;
}

ExactSquareReport check_exact_square_ru(const Diagram& psi) {
  ExactSquareReport rep;
  rep.which = "RU=UR";
  if (psi.sub != Sub::plus) throw InputError("RU=UR takes a diagram on the plus subcategory");
  const ReedyCategory& c = psi.shape;
  RanData ru = ran_impl(Inclusion::objects_into_minus, restrict_to(psi, Sub::objects));
  RanData full = ran_impl(Inclusion::plus_into_full, psi);
  const Diagram ur = restrict_to(full.result, Sub::minus);
  std::vector<ChainMap> comp;
  for (int r = 0; r < static_cast<int>(c.object_count()); ++r) {
    const std::string name = c.object(r).name;
    BlockMatrix proj(ru.prods[r], full.prods[r]), extend(full.prods[r], ru.prods[r]);
    for (std::size_t k = 0; k < ru.comps[r].size(); ++k)
      proj.add_identity(k, position(full.comps[r], ru.comps[r][k]));
    // b ↦ (Ψ(i) b_q)_{h = i∘q}
    for (std::size_t k = 0; k < full.comps[r].size(); ++k) {
      const auto [q, i] = c.factor(full.comps[r][k]);
      extend.add(k, position(ru.comps[r], q), psi.of(i).graded());
    }
    const ChainMap con = full.constraints[r];
    if (!con.src().is_zero())
      for (int n = con.src().lo(); n <= con.src().hi(); ++n)
        if (!(con.at(n) * extend.at(n) * ru.kerns[r].incl.at(n)).is_zero())
          rep.failures.push_back("extension does not satisfy the equalizer at " + name);
    ChainMap to_ru = into_kernel(ur.at[r], ru.kerns[r], [&](int n) { return proj.at(n) * full.kerns[r].incl.at(n); });
    if (!is_iso(to_ru)) rep.failures.push_back("comparison is not an isomorphism at " + name);
    rep.ranks["UR " + name] = total_rank_of(ur.at[r]);
    rep.ranks["RU " + name] = total_rank_of(ru.result.at[r]);
    comp.push_back(to_ru);
  }
  for (int m : morphisms_in(c, Sub::minus)) {
    const int r = c.morphism(m).src, r2 = c.morphism(m).dst;
    if (!(compose(ru.result.of(m), comp[r]) == compose(comp[r2], ur.of(m))))
      rep.failures.push_back("comparison is not natural on '" + c.morphism(m).name + "'");
  }
  return rep;
}

// ---------------------------------------------------------------- distributive law

namespace {

int term_object(const ReedyCategory& c, const Term& t) {
  if (t.kind == Term::leaf) return t.tag;
  if (t.kind == Term::monad) return c.morphism(t.tag).dst;
  return c.morphism(t.tag).src;
}

TermVec single_term(const Term& t) { return TermVec{{t, Scalar(1)}}; }

Layer reedy_layer(ReedyCategory c, Ring R, int kind) {
  Layer l;
  l.fmap = [R, kind](const Term& t, const TermMap& f) {
    TermVec out;
    for (const auto& [u, s] : f(t.kids.at(0))) accumulate(out, Term{kind, t.tag, {}, {u}}, s, R);
    return out;
  };
  l.expand = [c, kind](const std::vector<Term>& inner, std::size_t) {
    std::vector<Term> out;
    for (const Term& t : inner) {
      const int x = term_object(c, t);
      if (kind == Term::monad) {
        for (int f : c.out_of(x))
          if (c.is_plus(f)) out.push_back(Term{kind, f, {}, {t}});
      } else {
        for (int g : c.into(x))
          if (c.is_minus(g)) out.push_back(Term{kind, g, {}, {t}});
      }
    }
    return out;
  };
  return l;
}

}  // namespace

DistributiveLaw reedy_distributive_law(const ReedyCategory& c, const std::vector<ChainComplex>& family) {
  if (family.size() != c.object_count()) throw InputError("family has the wrong number of objects");
  const Ring R = family.empty() ? Ring::rationals() : family.front().ring();
  DistributiveLaw law;
  law.name = "Reedy";
  law.ring = R;
  for (std::size_t x = 0; x < family.size(); ++x)
    for (Cell cell : cells_of(family[x])) law.base.push_back(Term{Term::leaf, static_cast<int>(x), cell, {}});
  law.t.layer = reedy_layer(c, R, Term::monad);
  law.k.layer = reedy_layer(c, R, Term::comonad);
  law.t.unit = [c](const Term& t) { return single_term(Term{Term::monad, c.identity(term_object(c, t)), {}, {t}}); };
  law.t.mult = [c](const Term& t) {
    const Term& inner = t.kids.at(0);
    return single_term(Term{Term::monad, c.compose(t.tag, inner.tag), {}, inner.kids});
  };
  law.k.counit = [c](const Term& t) {
    return c.morphism(t.tag).tag == MorTag::identity ? single_term(t.kids.at(0)) : TermVec{};
  };
  law.k.comult = [c, R](const Term& t) {
    TermVec out;
    const int r = c.morphism(t.tag).src, y = c.morphism(t.tag).dst;
    for (int g1 : c.out_of(r)) {
      if (!c.is_minus(g1)) continue;
      for (int g2 : c.hom(c.morphism(g1).dst, y))
        if (c.is_minus(g2) && c.compose(g2, g1) == t.tag)
          accumulate(out, Term{Term::comonad, g1, {}, {Term{Term::comonad, g2, {}, t.kids}}}, Scalar(1), R);
    }
    return out;
  };
  law.chi = [c, R](const Term& t) {
    TermVec out;
    const int f = t.tag;
    const Term& k = t.kids.at(0);
    const int g = k.tag;
    for (int g2 : c.out_of(c.morphism(f).dst)) {
      if (!c.is_minus(g2)) continue;
      const auto [q, i] = c.factor(c.compose(g2, f));
      if (q == g) accumulate(out, Term{Term::comonad, g2, {}, {Term{Term::monad, i, {}, k.kids}}}, Scalar(1), R);
    }
    return out;
  };
  return law;
}

DistributiveLaw reedy_distributive_law(const ReedyCategory& c, const std::vector<ChainComplex>& family,
                                       const std::vector<ChainComplex>& other, const std::vector<ChainMap>& morphism) {
  DistributiveLaw law = reedy_distributive_law(c, family);
  if (other.size() != family.size() || morphism.size() != family.size())
    throw InputError("family morphism has the wrong number of components");
  for (std::size_t x = 0; x < other.size(); ++x)
    for (Cell cell : cells_of(other[x])) law.other_base.push_back(Term{Term::leaf, static_cast<int>(x), cell, {}});
  const Ring R = law.ring;
  law.morphism = [morphism, R](const Term& t) {
    TermVec out;
    for (const auto& [cell, s] : dgw::apply(morphism.at(t.tag), unit_vec(t.cell)))
      accumulate(out, Term{Term::leaf, t.tag, cell, {}}, s, R);
    return out;
  };
  return law;
}

ChainMap reedy_chi_component(const ReedyCategory& c, const std::vector<ChainComplex>& family, int r) {
  const Ring R = family.empty() ? Ring::rationals() : family.front().ring();
  // TK(r) = ⊕_{f ∈ R⁺(x,r)} ⊕_{g ∈ R⁻(x,y)} Φ(y); KT(r) = ⊕_{g ∈ R⁻(r,y)} ⊕_{f ∈ R⁺(x,y)} Φ(x)
  std::vector<std::pair<int, int>> tk, kt;
  std::vector<ChainComplex> tk_parts, kt_parts;
  for (int f : c.into(r))
    if (c.is_plus(f))
      for (int g : c.out_of(c.morphism(f).src))
        if (c.is_minus(g)) {
          tk.push_back({f, g});
          tk_parts.push_back(family[c.morphism(g).dst]);
        }
  for (int g : c.out_of(r))
    if (c.is_minus(g))
      for (int f : c.into(c.morphism(g).dst))
        if (c.is_plus(f)) {
          kt.push_back({g, f});
          kt_parts.push_back(family[c.morphism(f).src]);
        }
  Blocks src = make_blocks(R, tk_parts), dst = make_blocks(R, kt_parts);
  BlockMatrix m(dst, src);
  for (std::size_t k = 0; k < tk.size(); ++k) {
    const auto [f, g] = tk[k];
    for (int g2 : c.out_of(r)) {
      if (!c.is_minus(g2)) continue;
      const auto [q, i] = c.factor(c.compose(g2, f));
      if (q == g) m.add_identity(static_cast<std::size_t>(std::find(kt.begin(), kt.end(), std::make_pair(g2, i)) - kt.begin()), k);
    }
  }
  return m.chain();
}

// ---------------------------------------------------------------- bialgebra presentation

std::vector<std::string> check_bialgebra_pair(const Diagram& plus, const Diagram& minus) {
  std::vector<std::string> out;
  if (plus.sub != Sub::plus || minus.sub != Sub::minus) return {"expected a plus diagram and a minus diagram"};
  for (const auto& s : check_diagram(plus)) out.push_back("plus part: " + s);
  for (const auto& s : check_diagram(minus)) out.push_back("minus part: " + s);
  if (plus.at != minus.at) out.push_back("the two parts live on different families");
  if (!out.empty()) return out;
  const ReedyCategory& c = plus.shape;
  for (int f : morphisms_in(c, Sub::plus))
    for (int g : c.out_of(c.morphism(f).dst)) {
      if (!c.is_minus(g)) continue;
      const auto [q, i] = c.factor(c.compose(g, f));
      if (!(compose(minus.of(g), plus.of(f)) == compose(plus.of(i), minus.of(q))))
        out.push_back("χ-compatibility fails on '" + c.morphism(g).name + "'∘'" + c.morphism(f).name + "'");
    }
  return out;
}

Diagram diagram_from_pair(const Diagram& plus, const Diagram& minus) {
  auto bad = check_bialgebra_pair(plus, minus);
  if (!bad.empty()) throw InputError(bad.front());
  const ReedyCategory& c = plus.shape;
  Diagram d{c, Sub::full, plus.at, {}};
  for (int h = 0; h < static_cast<int>(c.morphism_count()); ++h) {
    const auto [q, i] = c.factor(h);
    d.map[h] = compose(plus.of(i), minus.of(q));
  }
  return d;
}

}  // namespace dgw
