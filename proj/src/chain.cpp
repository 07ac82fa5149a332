#include "dgw/chain.hpp"

#include <algorithm>

namespace dgw {

// ---- ChainComplex ----

ChainComplex::ChainComplex(Ring ring) : p_(std::make_shared<Data>()) {
  p_->ring = ring;
  p_->zeros.emplace(0, Matrix(ring, 0, 0));
}

ChainComplex::ChainComplex(Ring ring, std::map<int, std::size_t> ranks, std::map<int, Matrix> d) : ChainComplex(ring) {
  int lo = 1, hi = 0;
  bool any = false;
  for (auto& [n, r] : ranks) {
    if (r == 0) continue;
    if (!any) { lo = hi = n; any = true; }
    lo = std::min(lo, n);
    hi = std::max(hi, n);
  }
  p_->lo = lo;
  p_->hi = hi;
  if (any) {
    p_->rank.assign(hi - lo + 1, 0);
    for (auto& [n, r] : ranks)
      if (r) p_->rank[n - lo] = r;
    for (int n = lo; n <= hi + 1; ++n) p_->d.emplace_back(ring, rank(n - 1), rank(n));
  }
  for (auto& [n, m] : d) {
    if (m.rows() != rank(n - 1) || m.cols() != rank(n)) {
      throw InputError("differential shape mismatch at degree " + std::to_string(n) + ": got " +
                       std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                       std::to_string(rank(n - 1)) + "x" + std::to_string(rank(n)));
    }
    if (!(m.ring() == ring)) throw InputError("differential ring mismatch at degree " + std::to_string(n));
    if (m.rows() == 0 || m.cols() == 0) continue;
    p_->d[n - lo] = m;
  }
  for (int n = lo + 1; n <= hi; ++n) {
    if (!(this->d(n - 1) * this->d(n)).is_zero()) throw InputError("d^2 != 0 at degree " + std::to_string(n));
  }
}

std::size_t ChainComplex::rank(int n) const {
  if (n < lo() || n > hi()) return 0;
  return p_->rank[n - lo()];
}

const Matrix& ChainComplex::d(int n) const {
  if (is_zero() || n < lo() || n > hi() + 1) return p_->zeros.at(0);
  return p_->d[n - lo()];
}

std::size_t ChainComplex::total_rank() const {
  std::size_t t = 0;
  for (auto r : p_->rank) t += r;
  return t;
}

std::map<int, std::size_t> ChainComplex::ranks() const {
  std::map<int, std::size_t> out;
  for (int n = lo(); n <= hi(); ++n)
    if (rank(n)) out[n] = rank(n);
  return out;
}

bool ChainComplex::operator==(const ChainComplex& o) const {
  if (p_ == o.p_) return true;
  if (!(ring() == o.ring()) || ranks() != o.ranks()) return false;
  for (int n = lo(); n <= hi(); ++n)
    if (!(d(n) == o.d(n))) return false;
  return true;
}

// ---- GradedMap ----

GradedMap::GradedMap(ChainComplex s, ChainComplex t, int deg) : src(std::move(s)), dst(std::move(t)), degree(deg) {}

Matrix GradedMap::at(int n) const {
  auto it = f.find(n);
  if (it != f.end()) return it->second;
  return Matrix(src.ring(), dst.rank(n + degree), src.rank(n));
}

void GradedMap::set(int n, Matrix m) {
  if (m.rows() != dst.rank(n + degree) || m.cols() != src.rank(n))
    throw InputError("graded map component shape mismatch at degree " + std::to_string(n));
  if (m.rows() == 0 || m.cols() == 0) {
    f.erase(n);
    return;
  }
  f[n] = std::move(m);
}

GradedMap GradedMap::operator+(const GradedMap& o) const {
  if (degree != o.degree) throw InputError("adding maps of different degree");
  GradedMap out = *this;
  for (auto& [n, m] : o.f) out.set(n, out.at(n) + m);
  return out;
}

GradedMap GradedMap::operator-(const GradedMap& o) const { return *this + o.scaled(-1); }

GradedMap GradedMap::scaled(const Scalar& s) const {
  GradedMap out = *this;
  for (auto& [n, m] : out.f) m = m.scaled(s);
  return out;
}

bool GradedMap::is_zero() const {
  return std::all_of(f.begin(), f.end(), [](auto& kv) { return kv.second.is_zero(); });
}

bool GradedMap::operator==(const GradedMap& o) const {
  if (degree != o.degree || !(src == o.src) || !(dst == o.dst)) return false;
  for (int n = std::min(src.lo(), o.src.lo()); n <= std::max(src.hi(), o.src.hi()); ++n)
    if (!(at(n) == o.at(n))) return false;
  return true;
}

GradedMap compose(const GradedMap& g, const GradedMap& f) {
  if (!(g.src == f.dst)) throw InputError("compose: middle complexes differ");
  GradedMap out(f.src, g.dst, f.degree + g.degree);
  for (int n = f.src.lo(); n <= f.src.hi(); ++n) out.set(n, g.at(n + f.degree) * f.at(n));
  return out;
}

GradedMap graded_boundary(const GradedMap& f) {
  GradedMap out(f.src, f.dst, f.degree - 1);
  const int s = koszul(f.degree);
  for (int n = f.src.lo(); n <= f.src.hi() + 1; ++n) {
    if (f.src.rank(n) == 0) continue;
    Matrix m = f.dst.d(n + f.degree) * f.at(n);
    if (f.src.rank(n - 1)) m = m - (f.at(n - 1) * f.src.d(n)).scaled(s);
    out.set(n, m);
  }
  return out;
}

bool is_chain_map(const GradedMap& f) { return f.degree == 0 && graded_boundary(f).is_zero(); }

// ---- ChainMap ----

ChainMap::ChainMap(ChainComplex src, ChainComplex dst, std::map<int, Matrix> f, bool check) {
  if (!(src.ring() == dst.ring())) throw InputError("chain map ring mismatch");
  g_ = GradedMap(std::move(src), std::move(dst), 0);
  for (auto& [n, m] : f) g_.set(n, std::move(m));
  if (check) {
    for (int n = g_.src.lo(); n <= g_.src.hi() + 1; ++n) {
      Matrix lhs = g_.dst.d(n) * g_.at(n);
      Matrix rhs = g_.at(n - 1) * g_.src.d(n);
      if (!(lhs == rhs)) throw InputError("not a chain map: d f != f d at degree " + std::to_string(n));
    }
  }
}

ChainMap::ChainMap(const GradedMap& g, bool check) : ChainMap(g.src, g.dst, g.f, check) {
  if (g.degree != 0) throw InputError("chain map must have degree 0");
}

ChainMap ChainMap::identity(const ChainComplex& x) {
  std::map<int, Matrix> f;
  for (int n = x.lo(); n <= x.hi(); ++n) f[n] = Matrix::identity(x.ring(), x.rank(n));
  return ChainMap(x, x, f, false);
}

ChainMap ChainMap::zero(const ChainComplex& x, const ChainComplex& y) { return ChainMap(x, y, {}, false); }

ChainMap compose(const ChainMap& g, const ChainMap& f) { return ChainMap(compose(g.graded(), f.graded()), false); }

bool ChainHomotopy::valid() const {
  if (h.degree != 1) return false;
  GradedMap lhs = graded_boundary(h);  // dh + hd for degree 1
  return lhs == (from - to).graded();
}

// ---- homology ----

HomologyGroup homology(const ChainComplex& x, int n) {
  HomologyGroup out;
  if (x.rank(n) == 0) return out;
  const Matrix& dn = x.d(n);
  const Matrix& dn1 = x.d(n + 1);
  std::size_t ker = x.rank(n) - rank(dn);
  if (x.ring().is_field()) {
    out.free_rank = ker - rank(dn1);
    return out;
  }
  if (dn1.empty()) {
    out.free_rank = ker;
    return out;
  }
  Smith s = smith_normal_form(dn1);
  out.free_rank = ker - s.divisors.size();
  for (auto& d : s.divisors)
    if (d != 1) out.torsion.push_back(d);
  return out;
}

bool is_acyclic(const ChainComplex& x) {
  for (int n = x.lo(); n <= x.hi(); ++n)
    if (!homology(x, n).is_zero()) return false;
  return true;
}

// ---- standard complexes ----

ChainComplex unit_complex(Ring ring) { return ChainComplex(ring, {{0, 1}}); }

ChainComplex sphere(int n, Ring ring) { return ChainComplex(ring, {{n, 1}}); }

ChainComplex disk(int n, Ring ring) {
  return ChainComplex(ring, {{n, 1}, {n - 1, 1}}, {{n, Matrix::identity(ring, 1)}});
}

ChainComplex interval(Ring ring) {
  return ChainComplex(ring, {{0, 2}, {1, 1}}, {{1, Matrix::from_ints(ring, {{1}, {-1}})}});
}

DirectSum direct_sum(const ChainComplex& x, const ChainComplex& y) {
  if (!(x.ring() == y.ring())) throw InputError("direct sum ring mismatch");
  const Ring& R = x.ring();
  std::map<int, std::size_t> ranks;
  std::map<int, Matrix> d;
  int lo = std::min(x.lo(), y.lo()), hi = std::max(x.hi(), y.hi());
  for (int n = lo; n <= hi; ++n) ranks[n] = x.rank(n) + y.rank(n);
  for (int n = lo; n <= hi; ++n) {
    Matrix m(R, ranks[n - 1], ranks[n]);
    m.set_block(0, 0, x.d(n));
    m.set_block(x.rank(n - 1), x.rank(n), y.d(n));
    d[n] = m;
  }
  DirectSum out;
  out.sum = ChainComplex(R, ranks, d);
  std::map<int, Matrix> i1, i2, p1, p2;
  for (int n = lo; n <= hi; ++n) {
    std::size_t a = x.rank(n), b = y.rank(n);
    Matrix m1(R, a + b, a), m2(R, a + b, b);
    m1.set_block(0, 0, Matrix::identity(R, a));
    m2.set_block(a, 0, Matrix::identity(R, b));
    i1[n] = m1;
    i2[n] = m2;
    p1[n] = m1.transpose();
    p2[n] = m2.transpose();
  }
  out.in1 = ChainMap(x, out.sum, i1, false);
  out.in2 = ChainMap(y, out.sum, i2, false);
  out.pr1 = ChainMap(out.sum, x, p1, false);
  out.pr2 = ChainMap(out.sum, y, p2, false);
  return out;
}

ChainMap direct_sum_map(const ChainMap& f, const ChainMap& g) {
  DirectSum s = direct_sum(f.src(), g.src());
  DirectSum t = direct_sum(f.dst(), g.dst());
  std::map<int, Matrix> m;
  for (int n = s.sum.lo(); n <= s.sum.hi(); ++n) {
    Matrix b(f.src().ring(), t.sum.rank(n), s.sum.rank(n));
    b.set_block(0, 0, f.at(n));
    b.set_block(f.dst().rank(n), f.src().rank(n), g.at(n));
    m[n] = b;
  }
  return ChainMap(s.sum, t.sum, m, false);
}

// ---- tensor ----

TensorLayout tensor_layout(const ChainComplex& x, const ChainComplex& y) {
  TensorLayout L;
  if (x.is_zero() || y.is_zero()) return L;
  for (int n = x.lo() + y.lo(); n <= x.hi() + y.hi(); ++n) {
    std::size_t off = 0;
    for (int i = x.lo(); i <= x.hi(); ++i) {
      L.offset[n][i] = off;
      off += x.rank(i) * y.rank(n - i);
    }
  }
  return L;
}

ChainComplex tensor(const ChainComplex& x, const ChainComplex& y) {
  if (!(x.ring() == y.ring())) throw InputError("tensor ring mismatch");
  const Ring& R = x.ring();
  if (x.is_zero() || y.is_zero()) return ChainComplex(R);
  TensorLayout L = tensor_layout(x, y);
  std::map<int, std::size_t> ranks;
  for (int n = x.lo() + y.lo(); n <= x.hi() + y.hi(); ++n) {
    std::size_t r = 0;
    for (int i = x.lo(); i <= x.hi(); ++i) r += x.rank(i) * y.rank(n - i);
    ranks[n] = r;
  }
  std::map<int, Matrix> d;
  for (int n = x.lo() + y.lo() + 1; n <= x.hi() + y.hi(); ++n) {
    Matrix m(R, ranks[n - 1], ranks[n]);
    for (int i = x.lo(); i <= x.hi(); ++i) {
      int j = n - i;
      std::size_t ri = x.rank(i), rj = y.rank(j);
      if (!ri || !rj) continue;
      const Matrix& dx = x.d(i);
      const Matrix& dy = y.d(j);
      const int s = koszul(i);
      for (std::size_t a = 0; a < ri; ++a)
        for (std::size_t b = 0; b < rj; ++b) {
          std::size_t col = L.index(y, n, i, a, b);
          if (x.rank(i - 1))
            for (std::size_t a2 = 0; a2 < x.rank(i - 1); ++a2)
              if (!dx.is_zero_at(a2, a)) m.add_to(L.index(y, n - 1, i - 1, a2, b), col, dx.at(a2, a));
          if (y.rank(j - 1))
            for (std::size_t b2 = 0; b2 < y.rank(j - 1); ++b2)
              if (!dy.is_zero_at(b2, b)) m.add_to(L.index(y, n - 1, i, a, b2), col, dy.at(b2, b) * s);
        }
    }
    d[n] = m;
  }
  return ChainComplex(R, ranks, d);
}

GradedMap tensor_graded(const GradedMap& f, const GradedMap& g) {
  ChainComplex src = tensor(f.src, g.src), dst = tensor(f.dst, g.dst);
  GradedMap out(src, dst, f.degree + g.degree);
  if (src.is_zero() || dst.is_zero()) return out;
  TensorLayout Ls = tensor_layout(f.src, g.src), Ld = tensor_layout(f.dst, g.dst);
  const Ring& R = src.ring();
  for (int n = src.lo(); n <= src.hi(); ++n) {
    Matrix m(R, dst.rank(n + out.degree), src.rank(n));
    for (int i = f.src.lo(); i <= f.src.hi(); ++i) {
      int j = n - i;
      if (!f.src.rank(i) || !g.src.rank(j)) continue;
      int ti = i + f.degree, tj = j + g.degree;
      if (!f.dst.rank(ti) || !g.dst.rank(tj)) continue;
      Matrix fi = f.at(i), gj = g.at(j);
      const int s = koszul(static_cast<long>(g.degree) * i);
      for (std::size_t a = 0; a < f.src.rank(i); ++a)
        for (std::size_t b = 0; b < g.src.rank(j); ++b) {
          std::size_t col = Ls.index(g.src, n, i, a, b);
          for (std::size_t a2 = 0; a2 < f.dst.rank(ti); ++a2) {
            if (fi.is_zero_at(a2, a)) continue;
            Scalar fa = fi.at(a2, a) * s;
            for (std::size_t b2 = 0; b2 < g.dst.rank(tj); ++b2) {
              if (gj.is_zero_at(b2, b)) continue;
              m.add_to(Ld.index(g.dst, n + out.degree, ti, a2, b2), col, fa * gj.at(b2, b));
            }
          }
        }
    }
    out.set(n, m);
  }
  return out;
}

ChainMap tensor_map(const ChainMap& f, const ChainMap& g) { return ChainMap(tensor_graded(f.graded(), g.graded()), false); }

ChainMap swap_map(const ChainComplex& x, const ChainComplex& y) {
  ChainComplex src = tensor(x, y), dst = tensor(y, x);
  std::map<int, Matrix> f;
  TensorLayout Ls = tensor_layout(x, y), Ld = tensor_layout(y, x);
  for (int n = src.lo(); n <= src.hi(); ++n) {
    Matrix m(x.ring(), dst.rank(n), src.rank(n));
    for (int i = x.lo(); i <= x.hi(); ++i) {
      int j = n - i;
      const int s = koszul(static_cast<long>(i) * j);
      for (std::size_t a = 0; a < x.rank(i); ++a)
        for (std::size_t b = 0; b < y.rank(j); ++b) m.set(Ld.index(x, n, j, b, a), Ls.index(y, n, i, a, b), s);
    }
    f[n] = m;
  }
  return ChainMap(src, dst, f, false);
}

ChainMap associator(const ChainComplex& x, const ChainComplex& y, const ChainComplex& z) {
  ChainComplex xy = tensor(x, y), yz = tensor(y, z);
  ChainComplex src = tensor(xy, z), dst = tensor(x, yz);
  TensorLayout Lxy = tensor_layout(x, y), Lyz = tensor_layout(y, z);
  TensorLayout Ls = tensor_layout(xy, z), Ld = tensor_layout(x, yz);
  std::map<int, Matrix> f;
  for (int n = src.lo(); n <= src.hi(); ++n) {
    Matrix m(x.ring(), dst.rank(n), src.rank(n));
    for (int i = x.lo(); i <= x.hi(); ++i)
      for (int j = y.lo(); j <= y.hi(); ++j) {
        int k = n - i - j;
        for (std::size_t a = 0; a < x.rank(i); ++a)
          for (std::size_t b = 0; b < y.rank(j); ++b)
            for (std::size_t c = 0; c < z.rank(k); ++c) {
              std::size_t s = Ls.index(z, n, i + j, Lxy.index(y, i + j, i, a, b), c);
              std::size_t t = Ld.index(yz, n, i, a, Lyz.index(z, j + k, j, b, c));
              m.set(t, s, 1);
            }
      }
    f[n] = m;
  }
  return ChainMap(src, dst, f, false);
}

ChainMap right_unitor(const ChainComplex& x) {
  ChainComplex src = tensor(x, unit_complex(x.ring()));
  std::map<int, Matrix> f;
  for (int n = x.lo(); n <= x.hi(); ++n) f[n] = Matrix::identity(x.ring(), x.rank(n));
  return ChainMap(src, x, f, false);
}

ChainMap left_unitor(const ChainComplex& x) {
  ChainComplex src = tensor(unit_complex(x.ring()), x);
  std::map<int, Matrix> f;
  for (int n = x.lo(); n <= x.hi(); ++n) f[n] = Matrix::identity(x.ring(), x.rank(n));
  return ChainMap(src, x, f, false);
}

// ---- hom ----

namespace {
std::size_t hom_rank(const ChainComplex& x, const ChainComplex& y, int deg) {
  std::size_t r = 0;
  for (int k = x.lo(); k <= x.hi(); ++k) r += x.rank(k) * y.rank(k + deg);
  return r;
}
std::map<int, std::size_t> hom_offsets(const ChainComplex& x, const ChainComplex& y, int deg) {
  std::map<int, std::size_t> off;
  std::size_t o = 0;
  for (int k = x.lo(); k <= x.hi(); ++k) {
    off[k] = o;
    o += x.rank(k) * y.rank(k + deg);
  }
  return off;
}
}  // namespace

Matrix hom_vector(const GradedMap& f) {
  const ChainComplex& x = f.src;
  const ChainComplex& y = f.dst;
  Matrix v(x.ring(), hom_rank(x, y, f.degree), 1);
  auto off = hom_offsets(x, y, f.degree);
  for (int k = x.lo(); k <= x.hi(); ++k) {
    Matrix m = f.at(k);
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c)
        if (!m.is_zero_at(r, c)) v.set(off[k] + r * m.cols() + c, 0, m.at(r, c));
  }
  return v;
}

GradedMap hom_element(const ChainComplex& x, const ChainComplex& y, int deg, const Matrix& v, std::size_t col) {
  GradedMap f(x, y, deg);
  auto off = hom_offsets(x, y, deg);
  for (int k = x.lo(); k <= x.hi(); ++k) {
    Matrix m(x.ring(), y.rank(k + deg), x.rank(k));
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) m.set(r, c, v.at(off[k] + r * m.cols() + c, col));
    f.set(k, m);
  }
  return f;
}

ChainComplex hom_complex(const ChainComplex& x, const ChainComplex& y) {
  if (!(x.ring() == y.ring())) throw InputError("hom ring mismatch");
  const Ring& R = x.ring();
  if (x.is_zero() || y.is_zero()) return ChainComplex(R);
  int lo = y.lo() - x.hi(), hi = y.hi() - x.lo();
  std::map<int, std::size_t> ranks;
  for (int n = lo; n <= hi; ++n) ranks[n] = hom_rank(x, y, n);
  std::map<int, Matrix> d;
  for (int n = lo + 1; n <= hi; ++n) {
    Matrix m(R, ranks[n - 1], ranks[n]);
    for (std::size_t c = 0; c < ranks[n]; ++c) {
      Matrix e(R, ranks[n], 1);
      e.set(c, 0, 1);
      Matrix img = hom_vector(graded_boundary(hom_element(x, y, n, e)));
      m.set_block(0, c, img);
    }
    d[n] = m;
  }
  return ChainComplex(R, ranks, d);
}

// ---- cylinder, suspension, cone ----

Cylinder cylinder(const ChainComplex& x) {
  const Ring& R = x.ring();
  ChainComplex I = interval(R);
  Cylinder out;
  out.cyl = tensor(x, I);
  DirectSum xx = direct_sum(x, x);
  TensorLayout L = tensor_layout(x, I);
  std::map<int, Matrix> im, i0, i1, q;
  for (int n = x.lo(); n <= x.hi() + 1; ++n) {
    std::size_t r = x.rank(n);
    Matrix a(R, out.cyl.rank(n), 2 * r), b0(R, out.cyl.rank(n), r), b1(R, out.cyl.rank(n), r);
    Matrix qq(R, r, out.cyl.rank(n));
    for (std::size_t k = 0; k < r; ++k) {
      std::size_t e0 = L.index(I, n, n, k, 0), e1 = L.index(I, n, n, k, 1);
      a.set(e0, k, 1);
      a.set(e1, r + k, 1);
      b0.set(e0, k, 1);
      b1.set(e1, k, 1);
      qq.set(k, e0, 1);
      qq.set(k, e1, 1);
    }
    im[n] = a;
    i0[n] = b0;
    i1[n] = b1;
    q[n] = qq;
  }
  out.i = ChainMap(xx.sum, out.cyl, im);
  out.i0 = ChainMap(x, out.cyl, i0);
  out.i1 = ChainMap(x, out.cyl, i1);
  out.q = ChainMap(out.cyl, x, q);
  return out;
}

ChainComplex suspension(const ChainComplex& x, int k) {
  std::map<int, std::size_t> ranks;
  std::map<int, Matrix> d;
  for (int n = x.lo(); n <= x.hi(); ++n) {
    ranks[n + k] = x.rank(n);
    d[n + k] = x.d(n).scaled(koszul(k));
  }
  return ChainComplex(x.ring(), ranks, d);
}

ChainComplex cone(const ChainMap& f) {
  const ChainComplex& x = f.src();
  const ChainComplex& y = f.dst();
  const Ring& R = x.ring();
  int lo = std::min(y.lo(), x.lo() + 1), hi = std::max(y.hi(), x.hi() + 1);
  if (x.is_zero()) { lo = y.lo(); hi = y.hi(); }
  if (y.is_zero()) { lo = x.lo() + 1; hi = x.hi() + 1; }
  std::map<int, std::size_t> ranks;
  for (int n = lo; n <= hi; ++n) ranks[n] = y.rank(n) + x.rank(n - 1);
  std::map<int, Matrix> d;
  for (int n = lo; n <= hi; ++n) {
    Matrix m(R, ranks[n - 1], ranks[n]);
    m.set_block(0, 0, y.d(n));
    m.set_block(0, y.rank(n), f.at(n - 1));
    m.set_block(y.rank(n - 1), y.rank(n), x.d(n - 1).scaled(-1));
    d[n] = m;
  }
  return ChainComplex(R, ranks, d);
}

std::optional<ChainHomotopy> find_homotopy(const ChainMap& f, const ChainMap& g) {
  ChainComplex H = hom_complex(f.src(), f.dst());
  Matrix target = hom_vector((f - g).graded());
  if (target.rows() == 0) return ChainHomotopy{f, g, GradedMap(f.src(), f.dst(), 1)};
  Matrix d1 = H.d(1);
  if (d1.cols() == 0) {
    if (!target.is_zero()) return std::nullopt;
    return ChainHomotopy{f, g, GradedMap(f.src(), f.dst(), 1)};
  }
  auto sol = solve_linear(d1, target);
  if (!sol) return std::nullopt;
  return ChainHomotopy{f, g, hom_element(f.src(), f.dst(), 1, *sol)};
}

// ---- random ----

std::uint64_t case_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 over the pair
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Matrix random_matrix(std::mt19937_64& rng, Ring ring, std::size_t rows, std::size_t cols, int bound) {
  Matrix m(ring, rows, cols);
  std::uniform_int_distribution<int> dist(-bound, bound);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, dist(rng));
  return m;
}

Matrix random_invertible(std::mt19937_64& rng, Ring ring, std::size_t n) {
  // product of a random unit lower and unit upper triangular matrix, plus a row permutation
  Matrix L = Matrix::identity(ring, n), U = Matrix::identity(ring, n);
  std::uniform_int_distribution<int> dist(-1, 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      L.set(i, j, dist(rng));
      U.set(j, i, dist(rng));
    }
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  Matrix P(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) P.set(i, perm[i], 1);
  return P * L * U;
}

ChainComplex random_complex(std::mt19937_64& rng, Ring ring, const RandomSpec& spec) {
  std::uniform_int_distribution<std::size_t> rdist(0, spec.max_rank);
  std::map<int, std::size_t> ranks;
  for (int n = spec.deg_lo; n <= spec.deg_hi; ++n) ranks[n] = rdist(rng);
  std::map<int, Matrix> d;
  std::uniform_int_distribution<int> coin(0, 3);
  for (int n = spec.deg_lo + 1; n <= spec.deg_hi; ++n) {
    std::size_t rows = ranks[n - 1], cols = ranks[n];
    if (!rows || !cols) continue;
    Matrix K = Matrix::identity(ring, rows);
    if (d.count(n - 1)) K = kernel_basis(d[n - 1]);
    if (K.cols() == 0 || coin(rng) == 0) continue;
    Matrix c = random_matrix(rng, ring, K.cols(), cols, spec.entry_bound);
    d[n] = K * c;
  }
  return ChainComplex(ring, ranks, d);
}

ChainMap random_chain_map(std::mt19937_64& rng, const ChainComplex& x, const ChainComplex& y, int entry_bound) {
  ChainComplex H = hom_complex(x, y);
  if (H.rank(0) == 0) return ChainMap::zero(x, y);
  Matrix Z = kernel_basis(H.d(0));
  Matrix c = random_matrix(rng, x.ring(), Z.cols(), 1, entry_bound);
  return ChainMap(hom_element(x, y, 0, Z * c), true);
}

}  // namespace dgw
