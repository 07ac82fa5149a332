#include "dgw/wfs.hpp"

#include <algorithm>

namespace dgw {

std::string class_name(MapClass c) {
  switch (c) {
    case MapClass::Cof: return "Cof";
    case MapClass::AcyclicCof: return "AcyclicCof";
    case MapClass::Fib: return "Fib";
    case MapClass::AcyclicFib: return "AcyclicFib";
  }
  return "?";
}

bool LiftingProblem::commutes() const { return compose(right, top) == compose(bottom, left); }

bool is_cofibration(const ChainMap& f) {
  for (int n = f.src().lo(); n <= f.src().hi(); ++n)
    if (!is_split_mono(f.at(n))) return false;
  return true;
}

bool is_fibration(const ChainMap& f) {
  for (int n = f.dst().lo(); n <= f.dst().hi(); ++n)
    if (!is_split_epi(f.at(n))) return false;
  return true;
}

bool is_homotopy_equivalence(const ChainMap& f) { return is_acyclic(cone(f)); }

bool in_class(const ChainMap& f, MapClass c) {
  switch (c) {
    case MapClass::Cof: return is_cofibration(f);
    case MapClass::AcyclicCof: return is_cofibration(f) && is_homotopy_equivalence(f);
    case MapClass::Fib: return is_fibration(f);
    case MapClass::AcyclicFib: return is_fibration(f) && is_homotopy_equivalence(f);
  }
  return false;
}

namespace {

int span_lo(const ChainComplex& a, const ChainComplex& b) {
  if (a.is_zero()) return b.lo();
  if (b.is_zero()) return a.lo();
  return std::min(a.lo(), b.lo());
}
int span_hi(const ChainComplex& a, const ChainComplex& b) {
  if (a.is_zero()) return b.hi();
  if (b.is_zero()) return a.hi();
  return std::max(a.hi(), b.hi());
}

ChainComplex mapping_cylinder(const ChainMap& f) {
  const ChainComplex& X = f.src();
  const ChainComplex& Y = f.dst();
  const Ring& R = X.ring();
  int lo = span_lo(X, Y), hi = span_hi(X, Y) + 1;
  std::map<int, std::size_t> ranks;
  for (int n = lo; n <= hi; ++n) ranks[n] = X.rank(n) + X.rank(n - 1) + Y.rank(n);
  std::map<int, Matrix> d;
  for (int n = lo; n <= hi; ++n) {
    std::size_t ra = X.rank(n - 1), rt = X.rank(n - 2);  // row blocks
    std::size_t ca = X.rank(n), ct = X.rank(n - 1);      // column blocks
    Matrix m(R, ranks[n - 1], ranks[n]);
    m.set_block(0, 0, X.d(n));
    m.set_block(0, ca, Matrix::identity(R, ct).scaled(koszul(n)));
    m.set_block(ra, ca, X.d(n - 1));
    m.set_block(ra + rt, ca, f.at(n - 1).scaled(koszul(n - 1)));
    m.set_block(ra + rt, ca + ct, Y.d(n));
    d[n] = m;
  }
  return ChainComplex(R, ranks, d);
}

ChainComplex mapping_cocylinder(const ChainMap& f) {
  const ChainComplex& X = f.src();
  const ChainComplex& Y = f.dst();
  const Ring& R = X.ring();
  int lo = span_lo(X, Y) - 1, hi = span_hi(X, Y);
  std::map<int, std::size_t> ranks;
  for (int n = lo; n <= hi; ++n) ranks[n] = X.rank(n) + Y.rank(n) + Y.rank(n + 1);
  std::map<int, Matrix> d;
  for (int n = lo; n <= hi; ++n) {
    std::size_t rx = X.rank(n - 1), rb = Y.rank(n - 1);
    std::size_t cx = X.rank(n), cb = Y.rank(n);
    Matrix m(R, ranks[n - 1], ranks[n]);
    m.set_block(0, 0, X.d(n));
    m.set_block(rx, cx, Y.d(n));
    m.set_block(rx + rb, cx + cb, Y.d(n + 1));
    m.set_block(rx + rb, 0, f.at(n).scaled(-koszul(n)));
    m.set_block(rx + rb, cx, Matrix::identity(R, cb).scaled(koszul(n)));
    d[n] = m;
  }
  return ChainComplex(R, ranks, d);
}

}  // namespace

Factorization factor_cof_then_acyclic_fib(const ChainMap& f) {
  const ChainComplex& X = f.src();
  const ChainComplex& Y = f.dst();
  const Ring& R = X.ring();
  Factorization out;
  out.mid = mapping_cylinder(f);
  std::map<int, Matrix> l, r;
  for (int n = out.mid.lo(); n <= out.mid.hi(); ++n) {
    Matrix lm(R, out.mid.rank(n), X.rank(n));
    lm.set_block(0, 0, Matrix::identity(R, X.rank(n)));
    l[n] = lm;
    Matrix rm(R, Y.rank(n), out.mid.rank(n));
    rm.set_block(0, 0, f.at(n));
    rm.set_block(0, X.rank(n) + X.rank(n - 1), Matrix::identity(R, Y.rank(n)));
    r[n] = rm;
  }
  out.left = ChainMap(X, out.mid, l);
  out.right = ChainMap(out.mid, Y, r);
  out.left_class = MapClass::Cof;
  out.right_class = MapClass::AcyclicFib;
  return out;
}

Factorization factor_acyclic_cof_then_fib(const ChainMap& f) {
  const ChainComplex& X = f.src();
  const ChainComplex& Y = f.dst();
  const Ring& R = X.ring();
  Factorization out;
  out.mid = mapping_cocylinder(f);
  std::map<int, Matrix> l, r;
  for (int n = out.mid.lo(); n <= out.mid.hi(); ++n) {
    Matrix lm(R, out.mid.rank(n), X.rank(n));
    lm.set_block(0, 0, Matrix::identity(R, X.rank(n)));
    lm.set_block(X.rank(n), 0, f.at(n));
    l[n] = lm;
    Matrix rm(R, Y.rank(n), out.mid.rank(n));
    rm.set_block(0, X.rank(n), Matrix::identity(R, Y.rank(n)));
    r[n] = rm;
  }
  out.left = ChainMap(X, out.mid, l);
  out.right = ChainMap(out.mid, Y, r);
  out.left_class = MapClass::AcyclicCof;
  out.right_class = MapClass::Fib;
  return out;
}

ChainMap cylinder_functor(const ChainMap& f, const ChainMap& g, const ChainMap& a, const ChainMap& b) {
  if (!(compose(g, a) == compose(b, f))) throw InputError("cylinder_functor: square does not commute");
  ChainComplex Mf = mapping_cylinder(f), Mg = mapping_cylinder(g);
  const Ring& R = Mf.ring();
  std::map<int, Matrix> m;
  for (int n = Mf.lo(); n <= Mf.hi(); ++n) {
    Matrix blk(R, Mg.rank(n), Mf.rank(n));
    blk.set_block(0, 0, a.at(n));
    blk.set_block(g.src().rank(n), f.src().rank(n), a.at(n - 1));
    blk.set_block(g.src().rank(n) + g.src().rank(n - 1), f.src().rank(n) + f.src().rank(n - 1), b.at(n));
    m[n] = blk;
  }
  return ChainMap(Mf, Mg, m);
}

ChainMap cocylinder_functor(const ChainMap& f, const ChainMap& g, const ChainMap& a, const ChainMap& b) {
  if (!(compose(g, a) == compose(b, f))) throw InputError("cocylinder_functor: square does not commute");
  ChainComplex Nf = mapping_cocylinder(f), Ng = mapping_cocylinder(g);
  const Ring& R = Nf.ring();
  std::map<int, Matrix> m;
  for (int n = Nf.lo(); n <= Nf.hi(); ++n) {
    Matrix blk(R, Ng.rank(n), Nf.rank(n));
    blk.set_block(0, 0, a.at(n));
    blk.set_block(g.src().rank(n), f.src().rank(n), b.at(n));
    blk.set_block(g.src().rank(n) + g.dst().rank(n), f.src().rank(n) + f.dst().rank(n), b.at(n + 1));
    m[n] = blk;
  }
  return ChainMap(Nf, Ng, m);
}

std::optional<ChainMap> solve_lift(const LiftingProblem& p) {
  const ChainComplex& A = p.left.src();
  const ChainComplex& B = p.left.dst();
  const ChainComplex& X = p.right.src();
  const ChainComplex& Y = p.right.dst();
  if (!(p.top.src() == A) || !(p.top.dst() == X) || !(p.bottom.src() == B) || !(p.bottom.dst() == Y))
    throw InputError("solve_lift: square shapes do not match");
  if (!p.commutes()) throw InputError("solve_lift: square does not commute");
  const Ring& R = A.ring();
  std::map<int, std::size_t> off;
  std::size_t nvars = 0;
  for (int n = B.lo(); n <= B.hi(); ++n) {
    off[n] = nvars;
    nvars += X.rank(n) * B.rank(n);
  }
  auto var = [&](int n, std::size_t r, std::size_t c) { return off.at(n) + r * B.rank(n) + c; };
  if (nvars == 0) {
    ChainMap c = ChainMap::zero(B, X);
    if (compose(c, p.left) == p.top && compose(p.right, c) == p.bottom) return c;
    return std::nullopt;
  }
  const int lo = std::min(A.lo(), B.lo()), hi = std::max(A.hi(), B.hi());
  std::size_t neq = 0;
  for (int n = lo; n <= hi; ++n) neq += X.rank(n) * A.rank(n) + Y.rank(n) * B.rank(n);
  for (int n = B.lo(); n <= B.hi() + 1; ++n) neq += X.rank(n - 1) * B.rank(n);
  Matrix M(R, neq, nvars), rhs(R, neq, 1);
  std::size_t row = 0;
  for (int n = lo; n <= hi; ++n) {
    Matrix in = p.left.at(n), top = p.top.at(n), pn = p.right.at(n), bot = p.bottom.at(n);
    for (std::size_t r = 0; r < X.rank(n); ++r)
      for (std::size_t k = 0; k < A.rank(n); ++k, ++row) {
        for (std::size_t c = 0; c < B.rank(n); ++c)
          if (!in.is_zero_at(c, k)) M.add_to(row, var(n, r, c), in.at(c, k));
        rhs.set(row, 0, top.at(r, k));
      }
    for (std::size_t r = 0; r < Y.rank(n); ++r)
      for (std::size_t k = 0; k < B.rank(n); ++k, ++row) {
        for (std::size_t j = 0; j < X.rank(n); ++j)
          if (!pn.is_zero_at(r, j)) M.add_to(row, var(n, j, k), pn.at(r, j));
        rhs.set(row, 0, bot.at(r, k));
      }
  }
  for (int n = B.lo(); n <= B.hi() + 1; ++n) {
    const Matrix& dx = X.d(n);
    const Matrix& db = B.d(n);
    for (std::size_t r = 0; r < X.rank(n - 1); ++r)
      for (std::size_t k = 0; k < B.rank(n); ++k, ++row) {
        for (std::size_t j = 0; j < X.rank(n); ++j)
          if (!dx.is_zero_at(r, j)) M.add_to(row, var(n, j, k), dx.at(r, j));
        for (std::size_t j = 0; j < B.rank(n - 1); ++j)
          if (!db.is_zero_at(j, k)) M.add_to(row, var(n - 1, r, j), -db.at(j, k));
      }
  }
  auto sol = solve_linear(M, rhs);
  if (!sol) return std::nullopt;
  std::map<int, Matrix> c;
  for (int n = B.lo(); n <= B.hi(); ++n) {
    Matrix m(R, X.rank(n), B.rank(n));
    for (std::size_t r = 0; r < X.rank(n); ++r)
      for (std::size_t k = 0; k < B.rank(n); ++k) m.set(r, k, sol->at(var(n, r, k), 0));
    c[n] = m;
  }
  return ChainMap(B, X, c);
}

TwoOfSixReport check_two_of_six(const ChainMap& f, const ChainMap& g, const ChainMap& h) {
  TwoOfSixReport r;
  ChainMap gf = compose(g, f), hg = compose(h, g);
  r.hypothesis_met = is_homotopy_equivalence(gf) && is_homotopy_equivalence(hg);
  if (!r.hypothesis_met) return r;
  r.f = is_homotopy_equivalence(f);
  r.g = is_homotopy_equivalence(g);
  r.h = is_homotopy_equivalence(h);
  r.hgf = is_homotopy_equivalence(compose(h, gf));
  if (!r.f) r.violations.push_back("f");
  if (!r.g) r.violations.push_back("g");
  if (!r.h) r.violations.push_back("h");
  if (!r.hgf) r.violations.push_back("hgf");
  return r;
}

RetractWitness retract_argument(const ChainMap& f) {
  RetractWitness w;
  w.factorization = factor_cof_then_acyclic_fib(f);
  const Factorization& F = w.factorization;
  LiftingProblem p{f, F.right, F.left, ChainMap::identity(f.dst())};
  auto c = solve_lift(p);
  if (!c) {
    w.failure = "no lift of f against its right factor";
    return w;
  }
  w.lift = *c;
  if (!(compose(*c, f) == F.left)) w.failure = "lift does not restrict to the left factor";
  else if (!(compose(F.right, *c) == ChainMap::identity(f.dst()))) w.failure = "lift is not a section";
  else if (!(compose(F.right, F.left) == f)) w.failure = "factorization does not compose";
  w.ok = w.failure.empty();
  return w;
}

// ---- generators ----

ChainMap random_automorphism(std::mt19937_64& rng, const ChainComplex& x) {
  const Ring& R = x.ring();
  std::map<int, Matrix> P, Pinv;
  for (int n = x.lo(); n <= x.hi(); ++n) {
    P[n] = random_invertible(rng, R, x.rank(n));
    Pinv[n] = *inverse(P[n]);
  }
  std::map<int, Matrix> d;
  for (int n = x.lo() + 1; n <= x.hi(); ++n) d[n] = P[n - 1] * x.d(n) * Pinv[n];
  ChainComplex y(R, x.ranks(), d);
  return ChainMap(x, y, P);
}

namespace {

ChainMap disks_inclusion(std::mt19937_64& rng, const ChainComplex& x, const RandomSpec& spec) {
  std::uniform_int_distribution<int> deg(spec.deg_lo + 1, std::max(spec.deg_lo + 1, spec.deg_hi));
  ChainComplex D = disk(deg(rng), x.ring());
  DirectSum s = direct_sum(x, D);
  return s.in1;
}

ChainMap random_map_from(std::mt19937_64& rng, const ChainComplex& x, const RandomSpec& spec) {
  ChainComplex y = random_complex(rng, x.ring(), spec);
  return random_chain_map(rng, x, y);
}

}  // namespace

ChainMap random_equivalence_from(std::mt19937_64& rng, const ChainComplex& x, const RandomSpec& spec) {
  std::uniform_int_distribution<int> pick(0, 3);
  switch (pick(rng)) {
    case 0: return random_automorphism(rng, x);
    case 1: {
      ChainMap i = disks_inclusion(rng, x, spec);
      return compose(random_automorphism(rng, i.dst()), i);
    }
    case 2: return factor_acyclic_cof_then_fib(random_map_from(rng, x, spec)).left;
    default: {
      ChainMap a = factor_acyclic_cof_then_fib(random_map_from(rng, x, spec)).left;
      return compose(random_automorphism(rng, a.dst()), a);
    }
  }
}

ChainMap random_cofibration(std::mt19937_64& rng, Ring ring, const RandomSpec& spec) {
  ChainComplex x = random_complex(rng, ring, spec);
  ChainMap l = factor_cof_then_acyclic_fib(random_map_from(rng, x, spec)).left;
  return compose(random_automorphism(rng, l.dst()), l);
}

ChainMap random_acyclic_cofibration(std::mt19937_64& rng, Ring ring, const RandomSpec& spec) {
  ChainComplex x = random_complex(rng, ring, spec);
  std::uniform_int_distribution<int> pick(0, 1);
  ChainMap l = pick(rng) ? factor_acyclic_cof_then_fib(random_map_from(rng, x, spec)).left
                         : disks_inclusion(rng, x, spec);
  return compose(random_automorphism(rng, l.dst()), l);
}

ChainMap random_acyclic_fibration(std::mt19937_64& rng, Ring ring, const RandomSpec& spec) {
  ChainComplex x = random_complex(rng, ring, spec);
  ChainMap r = factor_cof_then_acyclic_fib(random_map_from(rng, x, spec)).right;
  ChainMap a = random_automorphism(rng, r.src());
  std::map<int, Matrix> inv;
  for (int n = a.src().lo(); n <= a.src().hi(); ++n) inv[n] = *inverse(a.at(n));
  return compose(r, ChainMap(a.dst(), a.src(), inv));
}

ChainMap random_fibration(std::mt19937_64& rng, Ring ring, const RandomSpec& spec) {
  ChainComplex x = random_complex(rng, ring, spec);
  return factor_acyclic_cof_then_fib(random_map_from(rng, x, spec)).right;
}

LiftingProblem random_solvable_problem(std::mt19937_64& rng, Ring ring, const RandomSpec& spec) {
  std::uniform_int_distribution<int> pick(0, 2);
  int kind = pick(rng);
  ChainMap i, p;
  if (kind == 0) {
    i = random_cofibration(rng, ring, spec);
    p = random_acyclic_fibration(rng, ring, spec);
  } else if (kind == 1) {
    i = random_acyclic_cofibration(rng, ring, spec);
    p = random_fibration(rng, ring, spec);
  } else {
    ChainComplex a = random_complex(rng, ring, spec), b = random_complex(rng, ring, spec);
    ChainComplex x = random_complex(rng, ring, spec), y = random_complex(rng, ring, spec);
    i = random_chain_map(rng, a, b);
    p = random_chain_map(rng, x, y);
  }
  // random top, extended along i when possible; otherwise a planted lift
  if (kind != 2) {
    ChainMap top = random_chain_map(rng, i.src(), p.src());
    ChainComplex zero(ring);
    LiftingProblem ext{i, ChainMap::zero(p.dst(), zero), compose(p, top), ChainMap::zero(i.dst(), zero)};
    if (auto bottom = solve_lift(ext)) return LiftingProblem{i, p, top, *bottom};
  }
  ChainMap c0 = random_chain_map(rng, i.dst(), p.src());
  return LiftingProblem{i, p, compose(c0, i), compose(p, c0)};
}

std::optional<LiftingProblem> random_unsolvable_problem(std::mt19937_64& rng, Ring ring, const RandomSpec& spec) {
  ChainComplex x = random_complex(rng, ring, spec);
  // a cycle that is not a boundary, in some degree
  std::vector<int> degs;
  for (int n = x.lo(); n <= x.hi(); ++n)
    if (homology(x, n).free_rank > 0) degs.push_back(n);
  if (degs.empty()) return std::nullopt;
  int n = degs[std::uniform_int_distribution<std::size_t>(0, degs.size() - 1)(rng)];
  Matrix Z = kernel_basis(x.d(n));
  Matrix z;
  for (std::size_t j = 0; j < Z.cols(); ++j) {
    Matrix col = Z.column(j);
    if (x.rank(n + 1) == 0 || !solve_linear(x.d(n + 1), col)) {
      z = col;
      break;
    }
  }
  ChainComplex S = sphere(n, ring), D = disk(n + 1, ring);
  ChainMap i(S, D, {{n, Matrix::identity(ring, 1)}});
  ChainMap top(S, x, {{n, z}});
  ChainComplex zero(ring);
  // pad with a random summand on the right so the target is not always X -> 0
  std::uniform_int_distribution<int> coin(0, 1);
  if (coin(rng)) {
    ChainComplex w = random_complex(rng, ring, spec);
    DirectSum xs = direct_sum(x, w);
    ChainMap p = xs.pr2;
    return LiftingProblem{i, p, compose(xs.in1, top), ChainMap::zero(D, w)};
  }
  return LiftingProblem{i, ChainMap::zero(x, zero), top, ChainMap::zero(D, zero)};
}

// ---- property harnesses ----

PropertyReport check_factorization_axioms(const SampleSpec& s) {
  PropertyReport rep;
  for (std::size_t k = 0; k < s.count; ++k) {
    std::mt19937_64 rng(case_seed(s.seed, k));
    ChainComplex x = random_complex(rng, s.ring, s.shape), y = random_complex(rng, s.ring, s.shape);
    ChainMap f = random_chain_map(rng, x, y);
    for (const Factorization& F : {factor_cof_then_acyclic_fib(f), factor_acyclic_cof_then_fib(f)}) {
      if (!(compose(F.right, F.left) == f)) rep.failures.push_back("case " + std::to_string(k) + ": composite != f");
      if (!in_class(F.left, F.left_class))
        rep.failures.push_back("case " + std::to_string(k) + ": left not " + class_name(F.left_class));
      if (!in_class(F.right, F.right_class))
        rep.failures.push_back("case " + std::to_string(k) + ": right not " + class_name(F.right_class));
    }
    ++rep.cases;
  }
  return rep;
}

PropertyReport check_retract_closure(const SampleSpec& s) {
  PropertyReport rep;
  for (std::size_t k = 0; k < s.count; ++k) {
    std::mt19937_64 rng(case_seed(s.seed, k));
    std::uniform_int_distribution<int> pick(0, 2);
    ChainMap f;
    switch (pick(rng)) {
      case 0: f = random_cofibration(rng, s.ring, s.shape); break;
      case 1: f = direct_sum_map(random_cofibration(rng, s.ring, s.shape), random_cofibration(rng, s.ring, s.shape)); break;
      default: f = random_acyclic_cofibration(rng, s.ring, s.shape); break;
    }
    RetractWitness w = retract_argument(f);
    if (!w.ok) rep.failures.push_back("case " + std::to_string(k) + ": " + w.failure);
    ChainMap a = random_acyclic_cofibration(rng, s.ring, s.shape);
    if (!is_homotopy_equivalence(a))
      rep.failures.push_back("case " + std::to_string(k) + ": acyclic cofibration not an equivalence");
    ++rep.cases;
  }
  return rep;
}

}  // namespace dgw
