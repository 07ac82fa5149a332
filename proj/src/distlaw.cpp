#include "dgw/distlaw.hpp"

namespace dgw {

int term_degree(const Term& t) {
  int d = t.cell.deg;
  for (const Term& k : t.kids) d += term_degree(k);
  return d;
}

std::size_t term_leaves(const Term& t) {
  if (t.kind == Term::leaf) return 1;
  std::size_t n = 0;
  for (const Term& k : t.kids) n += term_leaves(k);
  return n;
}

std::string term_string(const Term& t) {
  switch (t.kind) {
    case Term::leaf:
      return "c" + std::to_string(t.tag) + ":" + std::to_string(t.cell.deg) + "_" + std::to_string(t.cell.idx);
    case Term::monad: {
      std::string s = "T" + std::to_string(t.tag) + "[";
      for (std::size_t i = 0; i < t.kids.size(); ++i) s += (i ? "|" : "") + term_string(t.kids[i]);
      return s + "]";
    }
    default: {
      std::string s = "K" + std::to_string(t.tag) + "<" + std::to_string(t.cell.deg) + "_" + std::to_string(t.cell.idx) + ">(";
      for (const Term& k : t.kids) s += term_string(k);
      return s + ")";
    }
  }
}

TermVec apply_linear(const TermVec& v, const TermMap& f, const Ring& ring) {
  TermVec out;
  for (const auto& [t, c] : v) add_scaled(out, f(t), c, ring);
  return out;
}

TermVec apply_at(const Term& t, const std::vector<const Layer*>& above, const TermMap& f) {
  if (above.empty()) return f(t);
  std::vector<const Layer*> rest(above.begin() + 1, above.end());
  return above.front()->fmap(t, [&](const Term& k) { return apply_at(k, rest, f); });
}

bool all_ok(const std::vector<DiagramReport>& r) {
  for (const auto& d : r)
    if (!d.ok()) return false;
  return true;
}

namespace {

std::string vec_string(const TermVec& v) {
  if (v.empty()) return "0";
  std::string s;
  std::size_t n = 0;
  for (const auto& [t, c] : v) {
    if (++n > 4) return s + " + ...";
    if (!s.empty()) s += " + ";
    s += scalar_to_string(c) + "*" + term_string(t);
  }
  return s;
}

TermVec at_linear(const TermVec& v, const std::vector<const Layer*>& above, const TermMap& f, const Ring& R) {
  TermVec out;
  for (const auto& [t, c] : v) add_scaled(out, apply_at(t, above, f), c, R);
  return out;
}

void compare(DiagramReport& rep, const Term& t, const TermVec& lhs, const TermVec& rhs) {
  ++rep.checked;
  if (lhs != rhs && rep.failures.size() < 10)
    rep.failures.push_back("on " + term_string(t) + ": " + vec_string(lhs) + " vs " + vec_string(rhs));
}

}  // namespace

std::vector<DiagramReport> check_distributive_law(const DistributiveLaw& law) {
  const Ring& R = law.ring;
  const Layer* T = &law.t.layer;
  const Layer* K = &law.k.layer;
  const std::size_t b = law.budget;
  const std::vector<Term> kx = K->expand(law.base, b);
  const std::vector<Term> tkx = T->expand(kx, b);
  const std::vector<Term> ttkx = T->expand(tkx, b);
  std::vector<DiagramReport> out(4);
  out[0].diagram = "unit";
  for (const Term& t : kx) {
    TermVec lhs = apply_linear(law.t.unit(t), law.chi, R);
    TermVec rhs = apply_at(t, {K}, law.t.unit);
    compare(out[0], t, lhs, rhs);
  }
  out[1].diagram = "multiplication";
  for (const Term& t : ttkx) {
    TermVec lhs = apply_linear(law.t.mult(t), law.chi, R);
    TermVec rhs = apply_at(t, {T}, law.chi);
    rhs = apply_linear(rhs, law.chi, R);
    rhs = at_linear(rhs, {K}, law.t.mult, R);
    compare(out[1], t, lhs, rhs);
  }
  out[2].diagram = "counit";
  for (const Term& t : tkx) {
    TermVec lhs = apply_linear(law.chi(t), law.k.counit, R);
    TermVec rhs = apply_at(t, {T}, law.k.counit);
    compare(out[2], t, lhs, rhs);
  }
  out[3].diagram = "comultiplication";
  for (const Term& t : tkx) {
    TermVec lhs = apply_linear(law.chi(t), law.k.comult, R);
    TermVec rhs = apply_at(t, {T}, law.k.comult);
    rhs = apply_linear(rhs, law.chi, R);
    rhs = at_linear(rhs, {K}, law.chi, R);
    compare(out[3], t, lhs, rhs);
  }
  if (law.morphism) {
    DiagramReport nat;
    nat.diagram = "naturality";
    for (const Term& t : tkx) {
      TermVec lhs = apply_linear(apply_at(t, {T, K}, law.morphism), law.chi, R);
      TermVec rhs = at_linear(law.chi(t), {K, T}, law.morphism, R);
      compare(nat, t, lhs, rhs);
    }
    out.push_back(nat);
  }
  return out;
}

namespace {

Layer identity_layer() {
  Layer l;
  l.fmap = [](const Term& t, const TermMap& f) { return f(t); };
  l.expand = [](const std::vector<Term>& inner, std::size_t) { return inner; };
  return l;
}

TermVec single(const Term& t) { return TermVec{{t, Scalar(1)}}; }

}  // namespace

DistributiveLaw identity_law(Ring ring, const std::vector<Term>& base) {
  DistributiveLaw law;
  law.name = "identity";
  law.ring = ring;
  law.base = base;
  TermMap id = [](const Term& t) { return single(t); };
  law.t = {identity_layer(), id, id};
  law.k = {identity_layer(), id, id};
  law.chi = id;
  return law;
}

std::string ChiVariant::name() const {
  switch (kind) {
    case ChiMutation::none:
      return "chi";
    case ChiMutation::flip:
      return "flip(length " + std::to_string(length) + ", " + (parity ? "odd" : "even") + " H-degree)";
    case ChiMutation::empty_word:
      return "flip(empty word)";
    default:
      return "no Koszul sign";
  }
}

std::vector<ChiVariant> chi_mutations() {
  std::vector<ChiVariant> out;
  for (std::size_t n = 1; n <= 3; ++n)
    for (int p = 0; p <= 1; ++p) out.push_back({ChiMutation::flip, n, p});
  out.push_back({ChiMutation::empty_word, 0, 0});
  out.push_back({ChiMutation::no_koszul, 0, 0});
  return out;
}

namespace {

// words of inner terms with at most `budget` letters and leaves
void words_into(const std::vector<Term>& inner, std::size_t budget, Term& cur, std::size_t leaves,
                std::vector<Term>& out) {
  out.push_back(cur);
  if (cur.kids.size() >= budget) return;
  for (const Term& t : inner) {
    std::size_t l = term_leaves(t);
    if (leaves + l > budget) continue;
    cur.kids.push_back(t);
    words_into(inner, budget, cur, leaves + l, out);
    cur.kids.pop_back();
  }
}

Layer word_layer(Ring R) {
  Layer l;
  l.fmap = [R](const Term& t, const TermMap& f) {
    TermVec acc = single(Term{Term::monad, 0, {}, {}});
    for (const Term& k : t.kids) {
      TermVec fk = f(k);
      TermVec next;
      for (const auto& [w, c] : acc)
        for (const auto& [u, d] : fk) {
          Term n = w;
          n.kids.push_back(u);
          accumulate(next, n, c * d, R);
        }
      acc = std::move(next);
    }
    return acc;
  };
  l.expand = [](const std::vector<Term>& inner, std::size_t budget) {
    std::vector<Term> out;
    Term cur{Term::monad, 0, {}, {}};
    words_into(inner, budget, cur, 0, out);
    return out;
  };
  return l;
}

Layer tensor_layer(Ring R, std::vector<Cell> hcells) {
  Layer l;
  l.fmap = [R](const Term& t, const TermMap& f) {
    TermVec out;
    for (const auto& [u, c] : f(t.kids.at(0))) accumulate(out, Term{Term::comonad, 0, t.cell, {u}}, c, R);
    return out;
  };
  l.expand = [hcells](const std::vector<Term>& inner, std::size_t) {
    std::vector<Term> out;
    for (const Term& t : inner)
      for (Cell h : hcells) out.push_back(Term{Term::comonad, 0, h, {t}});
    return out;
  };
  return l;
}

DistributiveLaw build_comodule_law(const ChainComplex& x, const Bialgebra& h, std::size_t budget,
                                   const ChiVariant& variant) {
  const Ring R = x.ring();
  DistributiveLaw law;
  law.name = "comodule algebra " + variant.name() + " over " + h.name;
  law.ring = R;
  law.budget = budget;
  for (Cell c : cells_of(x)) law.base.push_back(Term{Term::leaf, 0, c, {}});
  law.t.layer = word_layer(R);
  law.t.unit = [](const Term& t) { return single(Term{Term::monad, 0, {}, {t}}); };
  law.t.mult = [](const Term& t) {
    Term out{Term::monad, 0, {}, {}};
    for (const Term& w : t.kids) out.kids.insert(out.kids.end(), w.kids.begin(), w.kids.end());
    return single(out);
  };
  law.k.layer = tensor_layer(R, cells_of(h.algebra.complex));
  DGCoalgebra hc = h.coalgebra;
  DGAlgebra ha = h.algebra;
  law.k.counit = [hc, R](const Term& t) {
    TermVec out;
    accumulate(out, t.kids.at(0), hc.counit_of(t.cell), R);
    return out;
  };
  law.k.comult = [hc, R](const Term& t) {
    TermVec out;
    for (const auto& [ab, s] : hc.comult(t.cell))
      accumulate(out, Term{Term::comonad, 0, ab.second, {Term{Term::comonad, 0, ab.first, {t.kids.at(0)}}}}, s, R);
    return out;
  };
  law.chi = [ha, R, variant](const Term& t) {
    const std::size_t n = t.kids.size();
    Term word{Term::monad, 0, {}, {}};
    std::vector<int> hdeg, xdeg;
    Vec prod = unit_vec(ha.unit);
    for (const Term& k : t.kids) {
      word.kids.push_back(k.kids.at(0));
      xdeg.push_back(term_degree(k.kids.at(0)));
      hdeg.push_back(k.cell.deg);
      auto p = ha.product(prod, unit_vec(k.cell));
      if (!p) throw OutOfWindow("product in H leaves the window");
      prod = *p;
    }
    long e = 0, hsum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      hsum += hdeg[i];
      if (variant.kind != ChiMutation::no_koszul)
        for (std::size_t j = i + 1; j < n; ++j) e += static_cast<long>(hdeg[i]) * xdeg[j];
    }
    if (variant.kind == ChiMutation::flip && n == variant.length && (hsum % 2 + 2) % 2 == variant.parity) ++e;
    if (variant.kind == ChiMutation::empty_word && n == 0) ++e;
    TermVec out;
    for (const auto& [q, c] : prod) accumulate(out, Term{Term::comonad, 0, q, {word}}, c * koszul(e), R);
    return out;
  };
  return law;
}

}  // namespace

DistributiveLaw comodule_algebra_law(const ChainComplex& x, const Bialgebra& h, std::size_t budget,
                                     const ChiVariant& variant) {
  return build_comodule_law(x, h, budget, variant);
}

DistributiveLaw comodule_algebra_law(const ChainComplex& x, const Bialgebra& h, std::size_t budget, const ChainMap& f,
                                     const ChiVariant& variant) {
  DistributiveLaw law = build_comodule_law(x, h, budget, variant);
  const Ring R = x.ring();
  for (Cell c : cells_of(f.dst())) law.other_base.push_back(Term{Term::leaf, 1, c, {}});
  ChainMap g = f;
  law.morphism = [g, R](const Term& t) {
    TermVec out;
    for (const auto& [c, s] : dgw::apply(g, unit_vec(t.cell))) accumulate(out, Term{Term::leaf, 1, c, {}}, s, R);
    return out;
  };
  return law;
}

}  // namespace dgw
