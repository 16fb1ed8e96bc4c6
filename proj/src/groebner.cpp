#include "birat/groebner.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "birat/errors.hpp"

namespace birat {

namespace {

// ---------------------------------------------------------------------------
// Exponent helpers
// ---------------------------------------------------------------------------

bool exp_divides(const Exponent& a, const Exponent& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exponent exp_lcm(const Exponent& a, const Exponent& b) {
  Exponent r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

Exponent exp_sub(const Exponent& a, const Exponent& b) {
  Exponent r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

bool exp_coprime(const Exponent& a, const Exponent& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

// c * x^e * p.  Multiplying by a monomial preserves the storage order, so
// the term vector maps across directly.
MultiPoly mono_mul(const MultiPoly& p, const Exponent& e, const mpq_class& c) {
  if (p.is_zero()) return p;
  const Field& F = p.ring->field;
  MultiPoly out{p.ring, {}};
  out.terms.reserve(p.terms.size());
  for (const Term& t : p.terms) {
    mpq_class nc = F.mul(t.coeff, c);
    if (nc == 0) continue;
    Exponent ne = t.exp;
    for (size_t i = 0; i < ne.size(); ++i) ne[i] += e[i];
    out.terms.push_back(Term{std::move(ne), std::move(nc)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reduction
// ---------------------------------------------------------------------------

int find_reducer(const std::vector<Exponent>& lead, const Exponent& e,
                 int skip) {
  for (int k = 0; k < static_cast<int>(lead.size()); ++k)
    if (k != skip && exp_divides(lead[k], e)) return k;
  return -1;
}

// Full normal form of h against (g, lead); g monic under ord.  Extracted
// irreducible terms strictly decrease in ord, so they are pairwise distinct
// and the final resorting by storage order is enough.
MultiPoly full_nf(MultiPoly h, const std::vector<MultiPoly>& g,
                  const std::vector<Exponent>& lead, const TermOrder& ord,
                  int skip = -1) {
  RingPtr ring = h.ring;
  std::vector<Term> done;
  while (!h.is_zero()) {
    int li = leading_index(h, ord);
    Term t = h.terms[li];
    int k = find_reducer(lead, t.exp, skip);
    if (k >= 0) {
      h = h - mono_mul(g[k], exp_sub(t.exp, lead[k]), t.coeff);
    } else {
      done.push_back(t);
      h = h - MultiPoly::monomial(ring, t.exp, t.coeff);
    }
  }
  std::sort(done.begin(), done.end(), [](const Term& a, const Term& b) {
    return grevlex_compare(a.exp, b.exp) > 0;
  });
  return MultiPoly{std::move(ring), std::move(done)};
}

MultiPoly make_monic(const MultiPoly& p, const TermOrder& ord) {
  int li = leading_index(p, ord);
  const Field& F = p.ring->field;
  if (p.terms[li].coeff == 1) return p;
  return scale(p, F.inv(p.terms[li].coeff));
}

struct PairRec {
  int i, j;
  Exponent lcm;
};

// Normal selection: smallest lcm in ord, ties by indices.
int select_pair(const std::vector<PairRec>& pairs, const TermOrder& ord) {
  int best = 0;
  for (int k = 1; k < static_cast<int>(pairs.size()); ++k) {
    int c = ord.compare(pairs[k].lcm, pairs[best].lcm);
    if (c < 0 ||
        (c == 0 && std::pair{pairs[k].i, pairs[k].j} <
                       std::pair{pairs[best].i, pairs[best].j}))
      best = k;
  }
  return best;
}

MultiPoly spoly(const std::vector<MultiPoly>& g,
                const std::vector<Exponent>& lead, const PairRec& pr) {
  return mono_mul(g[pr.i], exp_sub(pr.lcm, lead[pr.i]), 1) -
         mono_mul(g[pr.j], exp_sub(pr.lcm, lead[pr.j]), 1);
}

// Gebauer-Moller pair update for a freshly appended element t.
void update_pairs(std::vector<PairRec>& pairs, const std::vector<Exponent>& lead,
                  int t) {
  const Exponent& lt = lead[t];
  // Chain criterion through t on the old pairs.
  std::vector<PairRec> keep;
  keep.reserve(pairs.size());
  for (auto& pr : pairs) {
    if (exp_divides(lt, pr.lcm) && exp_lcm(lead[pr.i], lt) != pr.lcm &&
        exp_lcm(lead[pr.j], lt) != pr.lcm)
      continue;
    keep.push_back(std::move(pr));
  }
  pairs = std::move(keep);
  // Candidate pairs with t: strictly smaller lcms win, then equal lcms are
  // collapsed to one representative, then coprime-lead pairs go.
  std::vector<PairRec> cand;
  for (int i = 0; i < t; ++i)
    cand.push_back(PairRec{i, t, exp_lcm(lead[i], lt)});
  std::vector<char> drop(cand.size(), 0);
  for (size_t a = 0; a < cand.size(); ++a)
    for (size_t b = 0; b < cand.size() && !drop[a]; ++b)
      if (b != a && cand[b].lcm != cand[a].lcm &&
          exp_divides(cand[b].lcm, cand[a].lcm))
        drop[a] = 1;
  for (size_t a = 0; a < cand.size(); ++a)
    for (size_t b = 0; b < a && !drop[a]; ++b)
      if (!drop[b] && cand[b].lcm == cand[a].lcm) drop[a] = 1;
  for (size_t a = 0; a < cand.size(); ++a) {
    if (drop[a]) continue;
    if (exp_coprime(lead[cand[a].i], lt)) continue;  // S-pair reduces to zero
    pairs.push_back(std::move(cand[a]));
  }
}

GroebnerBasis buchberger_impl(RingPtr ring, const std::vector<MultiPoly>& raw,
                              const TermOrder& ord) {
  std::vector<MultiPoly> g;
  std::vector<Exponent> lead;
  std::vector<PairRec> pairs;
  auto add_elem = [&](const MultiPoly& h) {
    MultiPoly m = make_monic(h, ord);
    g.push_back(m);
    lead.push_back(m.terms[leading_index(m, ord)].exp);
    update_pairs(pairs, lead, static_cast<int>(g.size()) - 1);
  };
  for (const MultiPoly& p : raw) {
    if (p.is_zero()) continue;
    MultiPoly r = full_nf(p, g, lead, ord);
    if (!r.is_zero()) add_elem(r);
  }
  while (!pairs.empty()) {
    int k = select_pair(pairs, ord);
    PairRec pr = std::move(pairs[k]);
    pairs.erase(pairs.begin() + k);
    MultiPoly r = full_nf(spoly(g, lead, pr), g, lead, ord);
    if (!r.is_zero()) add_elem(r);
  }
  // Minimalise: drop elements whose lead is divisible by another's.
  std::vector<int> idx(g.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return ord.compare(lead[a], lead[b]) < 0; });
  std::vector<MultiPoly> kept;
  std::vector<Exponent> klead;
  for (int i : idx) {
    bool redundant = false;
    for (const Exponent& e : klead)
      if (exp_divides(e, lead[i])) {
        redundant = true;
        break;
      }
    if (!redundant) {
      kept.push_back(g[i]);
      klead.push_back(lead[i]);
    }
  }
  // Tail-reduce to the unique reduced basis.
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t k = 0; k < kept.size(); ++k) {
      MultiPoly r = full_nf(kept[k], kept, klead, ord, static_cast<int>(k));
      if (r != kept[k]) {
        kept[k] = std::move(r);
        changed = true;
      }
    }
  }
  GroebnerBasis G{std::move(ring), ord, std::move(kept), std::move(klead)};
  return G;
}

void require_same_relations(const RingDescriptor& a, const RingDescriptor& b) {
  if (!rings_compatible(*a.ring, *b.ring))
    throw HypothesisError("ideal operation across different rings");
  if (a.all_relations() != b.all_relations())
    throw HypothesisError("ideal operation across different relations");
}

// Extended ring with one extra single-variable block "t".
struct TExtension {
  RingPtr ext;
  int t_index;
  MultiPoly t;        // the variable
  MultiPoly one_m_t;  // 1 - t
};

TExtension extend_with_t(const RingPtr& ring) {
  auto blocks = ring->blocks;
  blocks.push_back({"t"});
  RingPtr ext = make_ring(blocks, ring->field, true);
  int ti = ext->n_vars() - 1;
  MultiPoly t = MultiPoly::variable(ext, ti);
  MultiPoly one = MultiPoly::constant(ext, 1);
  return TExtension{ext, ti, t, one - t};
}

bool all_multi_homogeneous(const Ideal& I) {
  for (const auto& p : I.gens)
    if (!p.is_zero() && !is_multi_homogeneous(p)) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Engine surface
// ---------------------------------------------------------------------------

bool GroebnerBasis::contains_one() const {
  for (const auto& p : elems)
    if (p.is_constant() && !p.is_zero()) return true;
  return false;
}

GroebnerBasis buchberger(const std::vector<MultiPoly>& gens,
                         const TermOrder& order) {
  if (gens.empty())
    throw HypothesisError("cannot infer the ring from an empty generator list");
  for (const auto& p : gens)
    if (!rings_compatible(*p.ring, *gens.front().ring))
      throw HypothesisError("generators live in different rings");
  return buchberger_impl(gens.front().ring, gens, order);
}

MultiPoly normal_form(const MultiPoly& p, const GroebnerBasis& G) {
  if (G.elems.empty()) return p;
  if (!rings_compatible(*p.ring, *G.ring))
    throw HypothesisError("normal form against a basis in a different ring");
  return full_nf(p, G.elems, G.lead, G.order);
}

Ideal make_ideal(const RingDescriptor& desc, std::vector<MultiPoly> gens) {
  std::vector<MultiPoly> kept;
  kept.reserve(gens.size());
  for (auto& p : gens) {
    if (!rings_compatible(*p.ring, *desc.ring))
      throw HypothesisError("ideal generator outside the descriptor ring");
    if (!p.is_zero()) kept.push_back(std::move(p));
  }
  return Ideal{desc, std::move(kept)};
}

GroebnerBasis groebner(const Ideal& I, const TermOrder& order) {
  std::vector<MultiPoly> gens = I.gens;
  for (auto& r : I.desc.all_relations()) gens.push_back(std::move(r));
  if (gens.empty()) return GroebnerBasis{I.ring(), order, {}, {}};
  return buchberger_impl(I.ring(), gens, order);
}

GroebnerBasis groebner(const Ideal& I) { return groebner(I, TermOrder::grevlex()); }

bool ideal_contains(const Ideal& I, const MultiPoly& p) {
  return normal_form(p, groebner(I)).is_zero();
}

bool ideals_equal(const Ideal& I, const Ideal& J) {
  require_same_relations(I.desc, J.desc);
  auto GI = groebner(I);
  auto GJ = groebner(J);
  return GI.elems == GJ.elems;
}

bool is_one(const Ideal& I) { return groebner(I).contains_one(); }

// ---------------------------------------------------------------------------
// Intersection, colon, saturation
// ---------------------------------------------------------------------------

Ideal intersect(const Ideal& I, const Ideal& J) {
  require_same_relations(I.desc, J.desc);
  auto ext = extend_with_t(I.ring());
  std::vector<MultiPoly> gens;
  for (const auto& p : I.gens) gens.push_back(ext.t * transport(p, ext.ext));
  for (const auto& p : J.gens)
    gens.push_back(ext.one_m_t * transport(p, ext.ext));
  // relations sit inside both ideals, so one plain copy suffices
  for (const auto& r : I.desc.all_relations())
    gens.push_back(transport(r, ext.ext));
  Ideal E = make_ideal(make_descriptor(ext.ext), std::move(gens));
  std::vector<MultiPoly> out;
  for (const auto& p : eliminate(E, {ext.t_index}))
    out.push_back(transport(p, I.ring()));
  canonical_sort(out);
  return make_ideal(I.desc, std::move(out));
}

Ideal colon(const Ideal& I, const MultiPoly& g) {
  if (g.is_zero()) throw HypothesisError("colon by zero");
  if (!rings_compatible(*g.ring, *I.ring()))
    throw HypothesisError("colon divisor in a different ring");
  if (g.is_constant()) return I;
  // Monomial ideal by monomial: divide each generator directly.
  if (!I.desc.has_relations() && g.is_monomial()) {
    bool monomial_ideal = true;
    for (const auto& p : I.gens)
      if (!p.is_monomial()) {
        monomial_ideal = false;
        break;
      }
    if (monomial_ideal) {
      std::vector<MultiPoly> out;
      for (const auto& p : I.gens) {
        Exponent e = p.terms[0].exp;
        for (size_t i = 0; i < e.size(); ++i)
          e[i] = std::max(e[i] - g.terms[0].exp[i], 0);
        out.push_back(MultiPoly::monomial(I.ring(), std::move(e), 1));
      }
      canonical_sort(out);
      return make_ideal(I.desc, std::move(out));
    }
  }
  // (I + rel) : g = ((t*(I + rel) + (1-t)*g) cap K[x]) / g
  auto ext = extend_with_t(I.ring());
  std::vector<MultiPoly> gens;
  for (const auto& p : I.gens) gens.push_back(ext.t * transport(p, ext.ext));
  for (const auto& r : I.desc.all_relations())
    gens.push_back(ext.t * transport(r, ext.ext));
  gens.push_back(ext.one_m_t * transport(g, ext.ext));
  Ideal E = make_ideal(make_descriptor(ext.ext), std::move(gens));
  std::vector<MultiPoly> out;
  for (const auto& p : eliminate(E, {ext.t_index}))
    out.push_back(normalize_poly(exact_divide(transport(p, I.ring()), g)));
  canonical_sort(out);
  return make_ideal(I.desc, std::move(out));
}

Ideal colon(const Ideal& I, const Ideal& J) {
  require_same_relations(I.desc, J.desc);
  if (J.gens.empty()) throw HypothesisError("colon by the zero ideal");
  Ideal acc = colon(I, J.gens[0]);
  for (size_t i = 1; i < J.gens.size(); ++i)
    acc = intersect(acc, colon(I, J.gens[i]));
  return acc;
}

Ideal saturate_by_colons(const Ideal& I, const MultiPoly& g) {
  Ideal cur = I;
  GroebnerBasis curG = groebner(cur);
  for (;;) {
    Ideal nxt = colon(cur, g);
    bool grew = false;
    for (const auto& p : nxt.gens)
      if (!normal_form(p, curG).is_zero()) {
        grew = true;
        break;
      }
    if (!grew) return cur;
    cur = std::move(nxt);
    curG = groebner(cur);
  }
}

Ideal saturate(const Ideal& I, const MultiPoly& g) {
  if (g.is_zero()) throw HypothesisError("saturation by zero");
  // Fast route: multi-homogeneous ideal, single variable.  In a grevlex
  // order with that variable least significant, stripping its content from
  // each reduced basis element yields the saturation in one basis.
  bool is_var = g.is_monomial() && g.terms[0].exp.size() > 0;
  int var = -1;
  if (is_var) {
    int total = 0;
    for (size_t i = 0; i < g.terms[0].exp.size(); ++i) {
      total += g.terms[0].exp[i];
      if (g.terms[0].exp[i] == 1) var = static_cast<int>(i);
    }
    if (total != 1) is_var = false;
  }
  if (is_var && all_multi_homogeneous(I)) {
    std::vector<int> perm;
    for (int i = 0; i < I.ring()->n_vars(); ++i)
      if (i != var) perm.push_back(i);
    perm.push_back(var);
    auto G = groebner(I, TermOrder::grevlex_permuted(perm));
    std::vector<MultiPoly> out;
    for (const auto& p : G.elems) {
      int m = p.terms[0].exp[var];
      for (const auto& t : p.terms) m = std::min(m, t.exp[var]);
      MultiPoly q = p;
      if (m > 0)
        for (auto& t : q.terms) t.exp[var] -= m;
      out.push_back(normalize_poly(q));
    }
    canonical_sort(out);
    return make_ideal(I.desc, std::move(out));
  }
  return saturate_by_colons(I, g);
}

Ideal saturate(const Ideal& I, const Ideal& J) {
  require_same_relations(I.desc, J.desc);
  if (J.gens.empty()) throw HypothesisError("saturation by the zero ideal");
  Ideal acc = saturate(I, J.gens[0]);
  for (size_t i = 1; i < J.gens.size(); ++i)
    acc = intersect(acc, saturate(I, J.gens[i]));
  return acc;
}

Ideal saturate_irrelevant(const Ideal& I) {
  Ideal cur = I;
  const Ring& R = *I.ring();
  for (int b = 0; b < R.n_blocks(); ++b) {
    std::vector<MultiPoly> vars;
    for (int i = 0; i < R.block_size(b); ++i)
      vars.push_back(MultiPoly::variable(I.ring(), R.block_start[b] + i));
    cur = saturate(cur, make_ideal(I.desc, std::move(vars)));
  }
  return cur;
}

Ideal irrelevant_ideal(const RingDescriptor& desc) {
  const Ring& R = *desc.ring;
  std::vector<MultiPoly> gens{MultiPoly::constant(desc.ring, 1)};
  for (int b = 0; b < R.n_blocks(); ++b) {
    std::vector<MultiPoly> next;
    for (int i = 0; i < R.block_size(b); ++i) {
      MultiPoly x = MultiPoly::variable(desc.ring, R.block_start[b] + i);
      for (const auto& p : gens) next.push_back(p * x);
    }
    gens = std::move(next);
  }
  canonical_sort(gens);
  return make_ideal(desc, std::move(gens));
}

// ---------------------------------------------------------------------------
// Elimination and kernels
// ---------------------------------------------------------------------------

std::vector<MultiPoly> eliminate(const Ideal& I, const std::vector<int>& vars) {
  const Ring& R = *I.ring();
  for (int v : vars)
    if (v < 0 || v >= R.n_vars())
      throw HypothesisError("eliminated variable out of range");
  auto ord = TermOrder::eliminating(R, vars);
  auto G = groebner(I, ord);
  std::vector<char> kill(R.n_vars(), 0);
  for (int v : vars) kill[v] = 1;
  std::vector<MultiPoly> out;
  for (const auto& p : G.elems) {
    bool clean = true;
    for (const auto& t : p.terms) {
      for (int i = 0; i < R.n_vars() && clean; ++i)
        if (kill[i] && t.exp[i] > 0) clean = false;
      if (!clean) break;
    }
    if (clean) out.push_back(normalize_poly(p));
  }
  canonical_sort(out);
  return out;
}

std::vector<MultiPoly> ring_map_kernel(const RingDescriptor& src,
                                       const std::vector<MultiPoly>& images,
                                       const RingPtr& target) {
  if (images.empty()) throw HypothesisError("kernel of an empty map");
  if (static_cast<int>(images.size()) != target->n_vars())
    throw HypothesisError("image count does not match the target ring");
  if (!(target->field == src.ring->field))
    throw HypothesisError("kernel across different coefficient fields");
  for (const auto& f : images)
    if (!rings_compatible(*f.ring, *src.ring))
      throw HypothesisError("image outside the source ring");
  std::set<std::string> names(src.ring->vars.begin(), src.ring->vars.end());
  for (const auto& v : target->vars)
    if (names.count(v))
      throw HypothesisError("source and target rings share variable names");
  auto blocks = src.ring->blocks;
  for (const auto& b : target->blocks) blocks.push_back(b);
  RingPtr ext = make_ring(blocks, src.ring->field, true);
  std::vector<MultiPoly> gens;
  for (size_t i = 0; i < images.size(); ++i) {
    MultiPoly yi = transport(MultiPoly::variable(target, static_cast<int>(i)), ext);
    gens.push_back(yi - transport(images[i], ext));
  }
  for (const auto& r : src.all_relations()) gens.push_back(transport(r, ext));
  std::vector<int> kill(src.ring->n_vars());
  for (size_t i = 0; i < kill.size(); ++i) kill[i] = static_cast<int>(i);
  Ideal E = make_ideal(make_descriptor(ext), std::move(gens));
  std::vector<MultiPoly> out;
  for (const auto& p : eliminate(E, kill)) out.push_back(transport(p, target));
  canonical_sort(out);
  return out;
}

// ---------------------------------------------------------------------------
// Products, division, normalisation
// ---------------------------------------------------------------------------

std::vector<MultiPoly> power_products(const std::vector<MultiPoly>& gens,
                                      int n) {
  if (n < 0) throw HypothesisError("negative ideal power");
  if (gens.empty()) throw HypothesisError("power of an empty generator list");
  RingPtr ring = gens.front().ring;
  if (n == 0) return {MultiPoly::constant(ring, 1)};
  std::vector<MultiPoly> out;
  std::set<std::string> seen;
  std::vector<int> pick;
  auto rec = [&](auto&& self, int start, int left, const MultiPoly& acc) -> void {
    if (left == 0) {
      MultiPoly p = normalize_poly(acc);
      if (p.is_zero()) return;
      std::string key = to_string(p);
      if (seen.insert(key).second) out.push_back(std::move(p));
      return;
    }
    for (int i = start; i < static_cast<int>(gens.size()); ++i)
      self(self, i, left - 1, acc * gens[i]);
  };
  rec(rec, 0, n, MultiPoly::constant(ring, 1));
  canonical_sort(out);
  return out;
}

MultiPoly exact_divide(const MultiPoly& p, const MultiPoly& g) {
  if (g.is_zero()) throw HypothesisError("division by zero polynomial");
  MultiPoly h = p;
  MultiPoly q = MultiPoly::zero(p.ring);
  const Field& F = p.ring->field;
  const Term& glt = g.terms[0];
  while (!h.is_zero()) {
    const Term& t = h.terms[0];
    if (!exp_divides(glt.exp, t.exp))
      throw InconsistencyError("polynomial division is not exact");
    Exponent e = exp_sub(t.exp, glt.exp);
    mpq_class c = F.div(t.coeff, glt.coeff);
    h = h - mono_mul(g, e, c);
    q = q + MultiPoly::monomial(p.ring, std::move(e), c);
  }
  return q;
}

MultiPoly normalize_poly(const MultiPoly& p) {
  if (p.is_zero()) return p;
  const Field& F = p.ring->field;
  if (F.is_prime()) {
    if (p.terms[0].coeff == 1) return p;
    return scale(p, F.inv(p.terms[0].coeff));
  }
  mpz_class den = 1, num = 0;
  for (const auto& t : p.terms)
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den().get_mpz_t());
  for (const auto& t : p.terms) {
    mpz_class scaled = t.coeff.get_num() * (den / t.coeff.get_den());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), scaled.get_mpz_t());
  }
  mpq_class s(den, num);
  s.canonicalize();
  MultiPoly out = scale(p, s);
  if (out.terms[0].coeff < 0) out = scale(out, -1);
  return out;
}

void canonical_sort(std::vector<MultiPoly>& v) {
  v.erase(std::remove_if(v.begin(), v.end(),
                         [](const MultiPoly& p) { return p.is_zero(); }),
          v.end());
  std::sort(v.begin(), v.end(), [](const MultiPoly& a, const MultiPoly& b) {
    int c = grevlex_compare(a.terms[0].exp, b.terms[0].exp);
    if (c != 0) return c < 0;
    if (a.terms.size() != b.terms.size())
      return a.terms.size() < b.terms.size();
    return to_string(a) < to_string(b);
  });
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::vector<MultiPoly> minimal_generators(const Ideal& I) {
  std::vector<MultiPoly> cand;
  for (const auto& p : I.gens) {
    if (!is_multi_homogeneous(p))
      throw HypothesisError("minimal generators need homogeneous input");
    cand.push_back(normalize_poly(p));
  }
  canonical_sort(cand);
  std::stable_sort(cand.begin(), cand.end(),
                   [](const MultiPoly& a, const MultiPoly& b) {
                     MultiDegree da = multi_degree(a), db = multi_degree(b);
                     if (da.total() != db.total())
                       return da.total() < db.total();
                     return da < db;
                   });
  std::vector<MultiPoly> rel = I.desc.all_relations();
  std::vector<MultiPoly> kept;
  GroebnerBasis G{I.ring(), TermOrder::grevlex(), {}, {}};
  bool have_gb = false;
  if (!rel.empty()) {
    G = buchberger(rel, TermOrder::grevlex());
    have_gb = true;
  }
  for (const auto& c : cand) {
    if (have_gb && normal_form(c, G).is_zero()) continue;
    kept.push_back(c);
    std::vector<MultiPoly> span = kept;
    for (const auto& r : rel) span.push_back(r);
    G = buchberger(span, TermOrder::grevlex());
    have_gb = true;
  }
  return kept;
}

// ---------------------------------------------------------------------------
// Syzygies
// ---------------------------------------------------------------------------

namespace {

using Row = std::vector<MultiPoly>;

Row row_sub(const Row& a, const Row& b, const Exponent& e, const mpq_class& c) {
  Row out(a.size(), MultiPoly::zero(a[0].ring));
  for (size_t j = 0; j < a.size(); ++j)
    out[j] = a[j] - mono_mul(b[j], e, c);
  return out;
}

Row row_scale(const Row& a, const mpq_class& c) {
  Row out(a.size(), MultiPoly::zero(a[0].ring));
  for (size_t j = 0; j < a.size(); ++j) out[j] = scale(a[j], c);
  return out;
}

std::string row_key(const Row& r) {
  std::string s;
  for (const auto& p : r) {
    s += to_string(p);
    s += '|';
  }
  return s;
}

Row normalize_row(const Row& r) {
  const Field& F = r[0].ring->field;
  int first = -1;
  for (size_t j = 0; j < r.size(); ++j)
    if (!r[j].is_zero()) {
      first = static_cast<int>(j);
      break;
    }
  if (first < 0) return r;
  if (F.is_prime()) return row_scale(r, F.inv(r[first].terms[0].coeff));
  mpz_class den = 1, num = 0;
  for (const auto& p : r)
    for (const auto& t : p.terms) {
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den().get_mpz_t());
    }
  for (const auto& p : r)
    for (const auto& t : p.terms) {
      mpz_class scaled = t.coeff.get_num() * (den / t.coeff.get_den());
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), scaled.get_mpz_t());
    }
  mpq_class s(den, num);
  s.canonicalize();
  Row out = row_scale(r, s);
  if (out[first].terms[0].coeff < 0) out = row_scale(out, -1);
  return out;
}

// Online row reducer over the coefficient field.
struct KSpan {
  Field F;
  std::vector<std::pair<int, std::vector<mpq_class>>> rows;

  bool insert(std::vector<mpq_class> v) {
    for (const auto& [piv, r] : rows) {
      if (v[piv] == 0) continue;
      mpq_class c = v[piv];
      for (size_t k = 0; k < v.size(); ++k) v[k] = F.sub(v[k], F.mul(c, r[k]));
    }
    int piv = -1;
    for (size_t k = 0; k < v.size(); ++k)
      if (v[k] != 0) {
        piv = static_cast<int>(k);
        break;
      }
    if (piv < 0) return false;
    mpq_class inv = F.inv(v[piv]);
    for (auto& x : v) x = F.mul(x, inv);
    rows.emplace_back(piv, std::move(v));
    return true;
  }
};

}  // namespace

SyzygyMatrix syzygies(const std::vector<MultiPoly>& forms,
                      const RingDescriptor& desc) {
  if (forms.empty()) throw HypothesisError("syzygies of an empty form list");
  RingPtr ring = desc.ring;
  const Field& F = ring->field;
  const int k = static_cast<int>(forms.size());
  std::vector<MultiDegree> fdeg;
  for (const auto& f : forms) {
    if (!rings_compatible(*f.ring, *ring))
      throw HypothesisError("form outside the descriptor ring");
    if (f.is_zero()) throw HypothesisError("syzygies of a zero form");
    fdeg.push_back(multi_degree(f));  // also enforces homogeneity
  }
  std::vector<MultiPoly> rel = desc.all_relations();

  // Tracked Buchberger over the seeds (forms, then relations); every pair is
  // processed, and every reduction to zero yields one syzygy row.
  const TermOrder ord = TermOrder::grevlex();
  std::vector<MultiPoly> g;
  std::vector<Exponent> lead;
  std::vector<Row> cof;
  std::vector<Row> found;
  Row zero_row(k, MultiPoly::zero(ring));
  auto push_seed = [&](const MultiPoly& f, Row row) {
    mpq_class lc = f.terms[0].coeff;
    g.push_back(scale(f, F.inv(lc)));
    lead.push_back(g.back().terms[0].exp);
    for (auto& p : row) p = scale(p, F.inv(lc));
    cof.push_back(std::move(row));
  };
  for (int i = 0; i < k; ++i) {
    Row row = zero_row;
    row[i] = MultiPoly::constant(ring, 1);
    push_seed(forms[i], std::move(row));
  }
  for (const auto& r : rel) push_seed(r, zero_row);

  std::vector<PairRec> pairs;
  auto queue_with_all = [&](int t) {
    for (int i = 0; i < t; ++i)
      pairs.push_back(PairRec{i, t, exp_lcm(lead[i], lead[t])});
  };
  for (int t = 1; t < static_cast<int>(g.size()); ++t) queue_with_all(t);

  while (!pairs.empty()) {
    int sel = select_pair(pairs, ord);
    PairRec pr = std::move(pairs[sel]);
    pairs.erase(pairs.begin() + sel);
    MultiPoly h = spoly(g, lead, pr);
    // row = x^(lcm-lt_i) cof_i - x^(lcm-lt_j) cof_j, matching h's sign
    Row row =
        row_sub(row_sub(zero_row, cof[pr.i], exp_sub(pr.lcm, lead[pr.i]), -1),
                cof[pr.j], exp_sub(pr.lcm, lead[pr.j]), 1);
    while (!h.is_zero()) {
      int red = find_reducer(lead, h.terms[0].exp, -1);
      if (red < 0) break;
      Exponent e = exp_sub(h.terms[0].exp, lead[red]);
      mpq_class c = h.terms[0].coeff;
      h = h - mono_mul(g[red], e, c);
      row = row_sub(row, cof[red], e, c);
    }
    if (h.is_zero()) {
      bool nontrivial = false;
      for (const auto& p : row)
        if (!p.is_zero()) {
          nontrivial = true;
          break;
        }
      if (nontrivial) found.push_back(std::move(row));
      continue;
    }
    mpq_class lc = h.terms[0].coeff;
    g.push_back(scale(h, F.inv(lc)));
    lead.push_back(g.back().terms[0].exp);
    cof.push_back(row_scale(row, F.inv(lc)));
    queue_with_all(static_cast<int>(g.size()) - 1);
  }

  // Reduce entries modulo the relations, normalise, dedupe.
  GroebnerBasis relG{ring, ord, {}, {}};
  if (!rel.empty()) relG = buchberger(rel, ord);
  std::vector<Row> rows;
  std::set<std::string> seen;
  for (auto& r : found) {
    Row nf = r;
    if (!rel.empty())
      for (auto& p : nf) p = normal_form(p, relG);
    bool nonzero = false;
    for (const auto& p : nf)
      if (!p.is_zero()) nonzero = true;
    if (!nonzero) continue;
    nf = normalize_row(nf);
    if (seen.insert(row_key(nf)).second) rows.push_back(std::move(nf));
  }

  // Target degree of each row; entries must agree.
  auto row_degree = [&](const Row& r) {
    bool have = false;
    MultiDegree D{{}};
    for (int j = 0; j < k; ++j) {
      if (r[j].is_zero()) continue;
      MultiDegree dj = multi_degree(r[j]) + fdeg[j];
      if (!have) {
        D = dj;
        have = true;
      } else if (!(D == dj)) {
        throw InconsistencyError("syzygy row is not graded");
      }
    }
    return D;
  };
  std::vector<std::pair<MultiDegree, Row>> graded;
  for (auto& r : rows) graded.emplace_back(row_degree(r), std::move(r));
  std::sort(graded.begin(), graded.end(), [](const auto& a, const auto& b) {
    if (a.first.total() != b.first.total())
      return a.first.total() < b.first.total();
    if (a.first != b.first) return a.first < b.first;
    return row_key(a.second) < row_key(b.second);
  });

  // Graded minimalisation: a row is redundant when it lies in the K-span of
  // the monomial multiples of already kept rows (normal forms throughout, so
  // relation multiples are accounted for).
  std::vector<std::pair<MultiDegree, Row>> kept;
  auto standard_basis = [&](const MultiDegree& d) {
    std::vector<Exponent> all = monomials_of_degree(*ring, d);
    std::vector<Exponent> std_mons;
    for (auto& e : all) {
      bool normal = true;
      for (const auto& lt : relG.lead)
        if (exp_divides(lt, e)) {
          normal = false;
          break;
        }
      if (normal) std_mons.push_back(std::move(e));
    }
    return std_mons;
  };
  auto coords = [&](const Row& r,
                    const std::vector<std::vector<Exponent>>& bases,
                    const std::vector<std::map<Exponent, int>>& index,
                    int total) {
    std::vector<mpq_class> v(total, 0);
    int off = 0;
    for (int j = 0; j < k; ++j) {
      if (!r[j].is_zero())
        for (const auto& t : r[j].terms) v[off + index[j].at(t.exp)] = t.coeff;
      off += static_cast<int>(bases[j].size());
    }
    return v;
  };
  size_t at = 0;
  while (at < graded.size()) {
    MultiDegree D = graded[at].first;
    size_t end = at;
    while (end < graded.size() && graded[end].first == D) ++end;
    // Entry-wise monomial bases at this target degree.
    std::vector<std::vector<Exponent>> bases(k);
    std::vector<std::map<Exponent, int>> index(k);
    int total = 0;
    for (int j = 0; j < k; ++j) {
      MultiDegree dj{std::vector<int>(D.v.size())};
      for (size_t b = 0; b < D.v.size(); ++b) {
        dj.v[b] = D.v[b] - fdeg[j].v[b];
        if (dj.v[b] < 0) {
          dj.v.clear();
          break;
        }
      }
      if (!dj.v.empty()) {
        bases[j] = standard_basis(dj);
        for (size_t m = 0; m < bases[j].size(); ++m)
          index[j][bases[j][m]] = static_cast<int>(m);
      }
      total += static_cast<int>(bases[j].size());
    }
    KSpan span{F, {}};
    for (const auto& [Ds, s] : kept) {
      std::vector<int> diff(D.v.size());
      bool ok = true;
      for (size_t b = 0; b < D.v.size(); ++b) {
        diff[b] = D.v[b] - Ds.v[b];
        if (diff[b] < 0) ok = false;
      }
      if (!ok) continue;
      for (const auto& m : monomials_of_degree(*ring, MultiDegree{diff})) {
        Row mult(k, MultiPoly::zero(ring));
        for (int j = 0; j < k; ++j) {
          mult[j] = mono_mul(s[j], m, 1);
          if (!rel.empty()) mult[j] = normal_form(mult[j], relG);
        }
        span.insert(coords(mult, bases, index, total));
      }
    }
    for (size_t i = at; i < end; ++i) {
      if (span.insert(coords(graded[i].second, bases, index, total)))
        kept.push_back(graded[i]);
    }
    at = end;
  }

  SyzygyMatrix M{ring, {}};
  for (auto& [d, r] : kept) M.rows.push_back(std::move(r));
  return M;
}

}  // namespace birat
