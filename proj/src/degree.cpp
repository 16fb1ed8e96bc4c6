#include "birat/degree.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "birat/errors.hpp"
#include "birat/linalg.hpp"

namespace birat {

namespace {

int total_source_dimension(const RingDescriptor& d) {
  int s = 0;
  for (int x : block_dimensions(d)) s += x;
  return s;
}

long fit_value(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  if (c.get_den() != 1)
    throw InconsistencyError("difference fit produced a non-integer");
  return c.get_num().get_si();
}

struct ImageData {
  Ideal b;
  int dim = -1;
  long deg = 0;
};

ImageData image_of(const RationalMap& F) {
  std::vector<std::string> names;
  for (int j = 0; j <= F.s(); ++j) names.push_back("y" + std::to_string(j));
  auto y = make_ring({names}, F.source.ring->field, true);
  Ideal b =
      make_ideal(make_descriptor(y), ring_map_kernel(F.source, F.forms, y));
  auto [dim, deg] = variety_degree_and_dim(b);
  return {b, dim, deg};
}

// dim_K [I^sat / I]_c.
long sat_quotient_dim(const RationalMap& F, const MultiDegree& c) {
  Ideal I = make_ideal(F.source, F.forms);
  return graded_dimension(I, c) - graded_dimension(saturate_irrelevant(I), c);
}

void require_p1p1_to_p2(const RationalMap& F) {
  const Ring& r = *F.source.ring;
  if (r.n_blocks() != 2 || r.block_size(0) != 2 || r.block_size(1) != 2 ||
      F.source.has_relations())
    throw HypothesisError("criterion needs a free P^1 x P^1 source");
  if (F.s() != 2) throw HypothesisError("criterion needs target P^2");
}

}  // namespace

DegreeReport degree_via_limit(const RationalMap& F, int n_max) {
  int delta = total_source_dimension(F.source);
  ImageData im = image_of(F);
  if (im.dim != delta)
    throw HypothesisError("map is not generically finite onto its image");

  SaturatedFiberData sf = saturated_fiber_table(F, n_max);
  if (!sf.fit.stabilized)
    throw UnstabilizedError(
        "saturated fiber differences did not stabilize; raise n_max");

  DegreeReport rep;
  rep.method = "limit";
  rep.dim_Y = im.dim;
  rep.deg_Y = im.deg;
  if (sf.fit.fitted_degree > delta)
    throw InconsistencyError("fiber growth exceeds the source dimension");
  if (sf.fit.fitted_degree < delta) {
    rep.deg_F = 1;  // the normalized limit vanishes
    return rep;
  }
  mpq_class q = sf.fit.leading_delta / mpq_class(im.deg);
  q.canonicalize();
  if (q.get_den() != 1 || q < 0) {
    rep.consistent = false;
    rep.note = "leading delta is not a nonnegative multiple of deg Y";
    return rep;
  }
  rep.deg_F = 1 + q.get_num().get_si();
  return rep;
}

BaseLocusReport base_locus_report(const RationalMap& F, int n_max) {
  if (n_max < 3) throw HypothesisError("n_max too small for base locus fits");
  int delta = total_source_dimension(F.source);
  Ideal I = make_ideal(F.source, F.forms);
  Ideal Isat = saturate_irrelevant(I);

  BaseLocusReport rep;
  if (is_one(Isat)) {
    rep.dim_stabilized = rep.deg_stabilized = rep.e_stabilized = true;
    return rep;  // empty base locus: every power saturates to (1)
  }

  GroebnerBasis G1 = groebner(Isat);
  std::vector<long> v, w;
  for (int n = 1; n <= n_max; ++n) {
    v.push_back(graded_dimension(G1, F.degree * n));
    Ideal In = make_ideal(F.source, power_products(F.forms, n));
    w.push_back(
        graded_dimension(groebner(saturate_irrelevant(In)), F.degree * n));
  }

  HilbertData fv =
      hilbert_fit(v, std::max(0, std::min(delta - 1, n_max - 2)));
  rep.dim_stabilized = fv.stabilized;
  rep.dim_B = fv.stabilized ? fv.fitted_degree : -1;
  if (fv.stabilized && fv.fitted_degree == 0) {
    rep.deg_B = fit_value(fv.leading_delta);
    rep.deg_stabilized = true;
  }

  HilbertData fw = hilbert_fit(w, std::max(0, std::min(delta, n_max - 2)));
  rep.e_stabilized = fw.stabilized;
  if (fw.stabilized)
    rep.e_B = fw.fitted_degree == delta ? fit_value(fw.leading_delta) : 0;

  if (rep.dim_B == 0 && rep.deg_stabilized && rep.e_stabilized &&
      rep.deg_B > rep.e_B)
    throw InconsistencyError("base locus fits violate deg(B) <= e(B)");
  return rep;
}

DegreeReport degree_via_formula(const RationalMap& F, int n_max) {
  auto dims = block_dimensions(F.source);
  int delta = 0;
  for (int x : dims) delta += x;
  ImageData im = image_of(F);
  if (im.dim != delta)
    throw HypothesisError("map is not generically finite onto its image");

  BaseLocusReport blr = base_locus_report(F, n_max);
  if (!blr.dim_stabilized || (blr.dim_B == 0 && !blr.e_stabilized))
    throw UnstabilizedError("base locus fits did not stabilize; raise n_max");
  if (blr.dim_B > 0)
    throw HypothesisError("base locus has positive dimension");

  long degX = segre_degree(F.source, block_degrees(F.source));
  mpz_class prod = 1;
  for (size_t i = 0; i < dims.size(); ++i)
    for (int k = 0; k < dims[i]; ++k) prod *= F.degree.v[i];
  mpz_class total = prod * degX - blr.e_B;

  DegreeReport rep;
  rep.method = "formula";
  rep.dim_Y = im.dim;
  rep.deg_Y = im.deg;
  rep.deg_X = degX;
  rep.e_B = blr.e_B;
  mpz_class q = total / im.deg, r = total % im.deg;
  if (r != 0 || q < 1) {
    rep.consistent = false;
    rep.note = "conservation identity does not divide by deg Y";
    return rep;
  }
  rep.deg_F = q.get_si();
  return rep;
}

long j_multiplicity(const Ideal& J, int d) {
  if (J.gens.empty()) throw HypothesisError("zero ideal");
  for (const auto& g : J.gens)
    if (g.is_zero() || multi_degree(g).total() != d)
      throw HypothesisError("ideal is not generated in the single degree d");

  // Deterministic K-linearly independent subset: [J]_d is spanned by the
  // generators because d is the generation degree.
  std::vector<MultiPoly> basis;
  for (const auto& g : J.gens) {
    std::vector<MultiPoly> cand = basis;
    cand.push_back(g);
    if (span_dimension(cand) > static_cast<long>(basis.size()))
      basis.push_back(g);
  }
  if (basis.size() < 2)
    throw HypothesisError("degree-d part defines no rational map");

  RationalMap G = make_map(J.desc, basis);
  int delta = total_source_dimension(J.desc);
  ImageData im = image_of(G);
  if (im.dim != delta) throw HypothesisError("analytic spread is not maximal");
  DegreeReport rep = degree_via_limit(G);
  if (!rep.consistent)
    throw InconsistencyError("limit degree inconsistent inside j-multiplicity");
  return d * rep.deg_F * rep.deg_Y;
}

long bound_p1p1(const RationalMap& F, int n_max) {
  require_p1p1_to_p2(F);
  BaseLocusReport blr = base_locus_report(F, n_max);
  if (!blr.dim_stabilized)
    throw UnstabilizedError("base locus dimension fit did not stabilize");
  if (blr.dim_B > 0)
    throw HypothesisError("base locus has positive dimension");
  long d1 = F.degree.v[0], d2 = F.degree.v[1];
  return 1 + (d1 - 1) * (d2 - 1) + sat_quotient_dim(F, F.degree);
}

bool criterion_1n(const RationalMap& F, int n_max) {
  require_p1p1_to_p2(F);
  if (F.degree.v[0] != 1 && F.degree.v[1] != 1)
    throw HypothesisError("criterion needs bidegree (1, n)");
  ImageData im = image_of(F);
  if (im.dim != 2) throw HypothesisError("map is not dominant");
  BaseLocusReport blr = base_locus_report(F, n_max);
  if (!blr.dim_stabilized)
    throw UnstabilizedError("base locus dimension fit did not stabilize");
  if (blr.dim_B > 0)
    throw HypothesisError("base locus has positive dimension");
  return sat_quotient_dim(F, F.degree) == 0;
}

bool criterion_22(const RationalMap& F, int n_max) {
  require_p1p1_to_p2(F);
  if (F.degree.v[0] != 2 || F.degree.v[1] != 2)
    throw HypothesisError("criterion needs bidegree (2, 2)");
  ImageData im = image_of(F);
  if (im.dim != 2) throw HypothesisError("map is not dominant");
  BaseLocusReport blr = base_locus_report(F, n_max);
  if (!blr.dim_stabilized ||
      (blr.dim_B == 0 && !(blr.deg_stabilized && blr.e_stabilized)))
    throw UnstabilizedError("base locus fits did not stabilize; raise n_max");
  if (blr.dim_B > 0)
    throw HypothesisError("base locus has positive dimension");
  return blr.deg_B == 6 && blr.e_B == 7;
}

long bound_single(const RationalMap& F) {
  const Ring& r = *F.source.ring;
  if (r.n_blocks() != 1 || F.source.has_relations())
    throw HypothesisError("bound needs a free single projective source");
  int rr = r.block_size(0) - 1;
  if (rr < 1 || F.s() != rr)
    throw HypothesisError("bound needs target P^r matching the source P^r");

  Ideal I = make_ideal(F.source, F.forms);
  auto [dimB, degB] = variety_degree_and_dim(I);
  if (dimB != 0)
    throw HypothesisError("base locus has positive dimension");
  (void)degB;

  long d = F.degree.total();
  long bound = 1 + binomial(d - 1, rr) + sat_quotient_dim(F, F.degree);
  for (int i = 2; i <= rr - 1; ++i) {
    long c = (rr + 1 - i) * d - rr - 1;
    if (c < 0) continue;
    bound += graded_dimension(I, MultiDegree{{static_cast<int>(c)}});
  }
  return bound;
}

DegreeReport p2_formula(const RationalMap& F, int n_max) {
  const Ring& r = *F.source.ring;
  if (r.n_blocks() != 1 || r.block_size(0) != 3 || F.source.has_relations() ||
      F.s() != 2)
    throw HypothesisError("closed formula needs a plane map P^2 -> P^2");
  long d = F.degree.total();
  if (d > 3) throw HypothesisError("closed formula needs degree at most 3");

  Ideal I = make_ideal(F.source, F.forms);
  auto [dimB, degB] = variety_degree_and_dim(I);
  if (dimB != 0 || degB == 0)
    throw HypothesisError("closed formula needs a finite nonempty base locus");
  if (!is_linear_type(F))
    throw HypothesisError("closed formula needs an ideal of linear type");

  DegreeReport rep;
  rep.method = "formula";
  rep.deg_F = (d - 1) * (d - 2) / 2 + sat_quotient_dim(F, F.degree) + 1;
  DegreeReport lim = degree_via_limit(F, n_max);
  rep.dim_Y = lim.dim_Y;
  rep.deg_Y = lim.deg_Y;
  if (lim.consistent && lim.deg_F != rep.deg_F) {
    rep.consistent = false;
    rep.note = "closed formula disagrees with the limit computation";
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Finite field fiber oracle
// ---------------------------------------------------------------------------

namespace {

// Dense univariate polynomials over GF(p): c[i] is the coefficient of t^i.
using UPoly = std::vector<long>;

int udeg(const UPoly& f) {
  int d = static_cast<int>(f.size()) - 1;
  while (d >= 0 && f[d] == 0) --d;
  return d;
}

long uinv(long a, long p) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), mpz_class(a).get_mpz_t(),
                 mpz_class(p).get_mpz_t()) == 0)
    throw InconsistencyError("non-invertible residue");
  return r.get_si();
}

UPoly urem(UPoly a, const UPoly& b, long p) {
  int db = udeg(b);
  long lead_inv = uinv(b[db], p);
  for (int da = udeg(a); da >= db; da = udeg(a)) {
    long f = a[da] * lead_inv % p;
    for (int i = 0; i <= db; ++i)
      a[da - db + i] = ((a[da - db + i] - f * b[i]) % p + p) % p;
  }
  return a;
}

UPoly ugcd(UPoly a, UPoly b, long p) {
  while (udeg(b) >= 0) {
    UPoly r = urem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (udeg(a) >= 0) {
    long inv = uinv(a[udeg(a)], p);
    for (auto& c : a) c = c * inv % p;
  }
  return a;
}

UPoly uderiv(const UPoly& f, long p) {
  UPoly d;
  for (size_t i = 1; i < f.size(); ++i)
    d.push_back(static_cast<long>(i) % p * f[i] % p);
  return d;
}

mpq_class residue(const mpq_class& c, const Field& fp) {
  mpq_class num = fp.normalize(mpq_class(c.get_num()));
  mpq_class den = fp.normalize(mpq_class(c.get_den()));
  if (den == 0)
    throw HypothesisError("prime divides a coefficient denominator");
  return fp.div(num, den);
}

MultiPoly reduce_mod_p(const MultiPoly& f, RingPtr rp) {
  MultiPoly out = MultiPoly::zero(rp);
  for (const auto& t : f.terms) {
    mpq_class c = residue(t.coeff, rp->field);
    if (c != 0) out = out + MultiPoly::monomial(rp, t.exp, c);
  }
  return out;
}

mpq_class eval_at(const MultiPoly& f, const std::vector<mpq_class>& pt) {
  const Field& k = f.ring->field;
  mpq_class acc = 0;
  for (const auto& t : f.terms) {
    mpq_class v = t.coeff;
    for (size_t i = 0; i < t.exp.size(); ++i)
      for (int e = 0; e < t.exp[i]; ++e) v = k.mul(v, pt[i]);
    acc = k.add(acc, v);
  }
  return acc;
}

// Per-block invertible coordinate change as substitution images.
std::vector<MultiPoly> random_block_change(RingPtr rp, std::mt19937_64& rng) {
  const Ring& r = *rp;
  std::uniform_int_distribution<long> coin(0, r.field.p - 1);
  std::vector<MultiPoly> images(r.n_vars(), MultiPoly::zero(rp));
  for (int b = 0; b < r.n_blocks(); ++b) {
    int k = r.block_size(b), start = r.block_start[b];
    QMatrix M(k, k, r.field);
    do {
      for (auto& x : M.a) x = coin(rng);
    } while (rank(M) < k);
    for (int j = 0; j < k; ++j) {
      MultiPoly img = MultiPoly::zero(rp);
      for (int l = 0; l < k; ++l)
        img = img +
              scale(MultiPoly::variable(rp, start + l), M.at(j, l));
      images[start + j] = img;
    }
  }
  return images;
}

// Single-graded chart ring: every block keeps its leading variables, the
// last variable of every block maps to one shared homogenizing variable h,
// and z receives the separating linear form.  A multi-homogeneous polynomial
// stays homogeneous under this substitution.
struct Chart {
  RingPtr A;
  std::vector<MultiPoly> images;  // source var index -> chart polynomial
  std::vector<int> elim_vars;     // the per-block leading variables
  int h_index = -1, z_index = -1;
};

Chart make_chart(RingPtr rp) {
  const Ring& r = *rp;
  std::vector<std::string> names;
  for (int b = 0; b < r.n_blocks(); ++b)
    for (int j = 0; j + 1 < r.block_size(b); ++j)
      names.push_back(r.vars[r.block_start[b] + j]);
  int n_u = static_cast<int>(names.size());
  names.push_back(fresh_var_name(r, "h"));
  names.push_back(fresh_var_name(r, "z"));
  Chart ch;
  ch.A = make_ring({names}, r.field, true);
  ch.h_index = n_u;
  ch.z_index = n_u + 1;
  for (int i = 0; i < n_u; ++i) ch.elim_vars.push_back(i);
  ch.images.assign(r.n_vars(), MultiPoly::zero(ch.A));
  int u = 0;
  for (int b = 0; b < r.n_blocks(); ++b) {
    for (int j = 0; j + 1 < r.block_size(b); ++j)
      ch.images[r.block_start[b] + j] = MultiPoly::variable(ch.A, u++);
    ch.images[r.block_start[b] + r.block_size(b) - 1] =
        MultiPoly::variable(ch.A, ch.h_index);
  }
  return ch;
}

UPoly binary_to_univariate(const MultiPoly& g, const Chart& ch) {
  long p = g.ring->field.p;
  UPoly u;
  for (const auto& t : g.terms) {
    for (int idx : ch.elim_vars)
      if (t.exp[idx] != 0)
        throw InconsistencyError("elimination left a chart variable");
    int e = t.exp[ch.z_index];
    if (static_cast<int>(u.size()) <= e) u.resize(e + 1, 0);
    u[e] = ((u[e] + t.coeff.get_num().get_si()) % p + p) % p;
  }
  return u;
}

// Distinct closure points of the saturated zero-dimensional fiber ideal,
// seen through one chart and one random separating form.  Returns -1 when
// the elimination is trivial (positive-dimensional fiber) and -2 when the
// chart sees no points.
long chart_point_count(const Ideal& fiber, const Chart& ch,
                       std::mt19937_64& rng) {
  long p = ch.A->field.p;
  std::uniform_int_distribution<long> coin(0, p - 1);
  std::vector<MultiPoly> gens;
  for (const auto& g : fiber.gens)
    gens.push_back(substitute(g, ch.A, ch.images));
  for (const auto& rel : fiber.desc.all_relations())
    gens.push_back(substitute(rel, ch.A, ch.images));

  MultiPoly sep = MultiPoly::variable(ch.A, ch.z_index);
  for (int idx : ch.elim_vars)
    sep = sep - scale(MultiPoly::variable(ch.A, idx), coin(rng));
  sep = sep - scale(MultiPoly::variable(ch.A, ch.h_index), coin(rng));
  gens.push_back(sep);

  Ideal J = make_ideal(make_descriptor(ch.A), gens);
  Ideal Jh = saturate(J, MultiPoly::variable(ch.A, ch.h_index));
  std::vector<MultiPoly> el = eliminate(Jh, ch.elim_vars);

  UPoly g;
  for (const auto& q : el) {
    if (q.is_zero()) continue;
    UPoly u = binary_to_univariate(q, ch);
    g = g.empty() ? u : ugcd(std::move(g), u, p);
  }
  if (udeg(g) < 0) return -1;
  if (udeg(g) == 0) return -2;
  UPoly gp = uderiv(g, p);
  if (udeg(gp) < 0)
    throw InconsistencyError(
        "fiber polynomial is an inseparable power; use a larger prime");
  return udeg(g) - udeg(ugcd(g, gp, p));
}

}  // namespace

long fiber_oracle(const RationalMap& F, long p, int trials,
                  std::uint64_t seed) {
  if (trials < 1) throw HypothesisError("oracle needs at least one trial");
  Field fp = Field::prime(p);
  const Ring& src = *F.source.ring;
  auto rp = make_ring(src.blocks, fp, true);

  std::vector<MultiPoly> forms;
  for (const auto& f : F.forms) {
    forms.push_back(reduce_mod_p(f, rp));
    if (forms.back().is_zero())
      throw HypothesisError("a form vanishes modulo p");
  }
  std::vector<std::vector<MultiPoly>> rels;
  if (F.source.has_relations()) {
    rels.resize(src.n_blocks());
    for (int b = 0; b < src.n_blocks(); ++b)
      for (const auto& rel : F.source.relations[b]) {
        rels[b].push_back(reduce_mod_p(rel, rp));
        if (rels[b].back().is_zero())
          throw HypothesisError("a source relation vanishes modulo p");
      }
  }
  std::vector<MultiPoly> flat_rels;
  for (const auto& blk : rels)
    for (const auto& rel : blk) flat_rels.push_back(rel);

  Chart chart = make_chart(rp);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coin(0, p - 1);

  auto sample_point = [&](std::vector<mpq_class>& pt) {
    pt.assign(src.n_vars(), 0);
    for (int b = 0; b < src.n_blocks(); ++b) {
      int k = src.block_size(b), start = src.block_start[b];
      for (int attempt = 0;; ++attempt) {
        if (attempt >= 5000)
          throw HypothesisError("could not sample a source point over GF(p)");
        bool nonzero = false;
        for (int j = 0; j < k; ++j) {
          pt[start + j] = coin(rng);
          nonzero = nonzero || pt[start + j] != 0;
        }
        if (!nonzero) continue;
        bool on_variety = true;
        if (!rels.empty())
          for (const auto& rel : rels[b])
            on_variety = on_variety && eval_at(rel, pt) == 0;
        if (on_variety) break;
      }
    }
  };

  std::vector<long> counts;
  for (int trial = 0; trial < trials; ++trial) {
    long count = -1;
    for (int attempt = 0; attempt < 25 && count < 1; ++attempt) {
      std::vector<mpq_class> pt;
      sample_point(pt);
      std::vector<mpq_class> yhat;
      bool base_point = true;
      for (const auto& f : forms) {
        yhat.push_back(eval_at(f, pt));
        base_point = base_point && yhat.back() == 0;
      }
      if (base_point) continue;

      long best = -1;
      for (int rep = 0; rep < 3; ++rep) {
        auto images = random_block_change(rp, rng);
        std::vector<MultiPoly> forms_rep;
        for (const auto& f : forms)
          forms_rep.push_back(substitute(f, rp, images));
        RingDescriptor desc_rep = make_descriptor(rp);
        if (!rels.empty()) {
          std::vector<std::vector<MultiPoly>> rels_rep(src.n_blocks());
          for (int b = 0; b < src.n_blocks(); ++b)
            for (const auto& rel : rels[b])
              rels_rep[b].push_back(substitute(rel, rp, images));
          desc_rep = make_descriptor(rp, rels_rep);
        }

        std::vector<MultiPoly> minors;
        for (size_t j = 0; j + 1 < forms_rep.size(); ++j)
          for (size_t l = j + 1; l < forms_rep.size(); ++l) {
            MultiPoly m = scale(forms_rep[j], yhat[l]) -
                          scale(forms_rep[l], yhat[j]);
            if (!m.is_zero()) minors.push_back(m);
          }
        if (minors.empty()) continue;  // degenerate: fiber not cut out

        Ideal J1 = saturate(make_ideal(desc_rep, minors),
                            make_ideal(desc_rep, forms_rep));
        Ideal J2 = saturate_irrelevant(J1);
        if (is_one(J2)) continue;  // sampled fiber inside the base locus

        long c = chart_point_count(J2, chart, rng);
        if (c == -1) {
          best = -1;
          break;  // positive-dimensional fiber for this sample
        }
        best = std::max(best, c);
      }
      count = best;
    }
    if (count < 1)
      throw HypothesisError(
          "fiber sampling failed; map may not be generically finite");
    counts.push_back(count);
  }

  std::map<long, int> freq;
  for (long c : counts) ++freq[c];
  long modal = counts.front();
  int best_freq = 0;
  bool tie = false;
  for (const auto& [value, f] : freq) {
    if (f > best_freq) {
      best_freq = f;
      modal = value;
      tie = false;
    } else if (f == best_freq) {
      tie = true;
    }
  }
  if (tie)
    throw InconsistencyError("fiber point counts disagree across trials");
  return modal;
}

}  // namespace birat
