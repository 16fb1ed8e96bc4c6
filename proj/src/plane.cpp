#include "birat/plane.hpp"

#include <utility>

#include "birat/degree.hpp"
#include "birat/errors.hpp"
#include "birat/hilbert.hpp"

namespace birat {

namespace {

// Cofactor expansion along a phantom third column: with these signs the
// columns of phi are syzygies of the minors, sum_i phi[i][j] * m[i] == 0.
std::vector<MultiPoly> signed_minors(
    const std::vector<std::vector<MultiPoly>>& phi) {
  auto det2 = [](const std::vector<MultiPoly>& r0,
                 const std::vector<MultiPoly>& r1) {
    return r0[0] * r1[1] - r0[1] * r1[0];
  };
  return {det2(phi[1], phi[2]), -det2(phi[0], phi[2]), det2(phi[0], phi[1])};
}

int column_degree(const std::vector<std::vector<MultiPoly>>& phi, int j) {
  int deg = -1;
  for (int i = 0; i < 3; ++i) {
    if (phi[i][j].is_zero()) continue;
    int t = multi_degree(phi[i][j]).total();
    if (deg >= 0 && deg != t)
      throw NotHilbertBurchError("syzygy column is not homogeneous");
    deg = t;
  }
  if (deg < 0) throw NotHilbertBurchError("zero syzygy column");
  return deg;
}

QMatrix transpose(const QMatrix& A) {
  QMatrix T(A.cols, A.rows, A.field);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
  return T;
}

// Every monomial divisible by x0 or x1.
bool in_x0x1(const MultiPoly& p) {
  if (p.is_zero()) return false;
  for (const auto& t : p.terms)
    if (t.exp[0] == 0 && t.exp[1] == 0) return false;
  return true;
}

// Monomial-wise split p = a*x0 + b*x1 with x0 taking priority; only called
// when every monomial is divisible by one of the two.
std::pair<MultiPoly, MultiPoly> split_x0x1(const MultiPoly& p) {
  MultiPoly a = MultiPoly::zero(p.ring), b = MultiPoly::zero(p.ring);
  for (const auto& t : p.terms) {
    Exponent e = t.exp;
    if (e[0] > 0) {
      --e[0];
      a = a + MultiPoly::monomial(p.ring, std::move(e), t.coeff);
    } else {
      --e[1];
      b = b + MultiPoly::monomial(p.ring, std::move(e), t.coeff);
    }
  }
  return {std::move(a), std::move(b)};
}

void require_normalized(const HilbertBurchData& hb) {
  const RingPtr& R = hb.desc.ring;
  if (hb.phi[0][0] != MultiPoly::variable(R, 0) ||
      hb.phi[1][0] != -MultiPoly::variable(R, 1) || !hb.phi[2][0].is_zero())
    throw HypothesisError(
        "first column is not (x0, -x1, 0); run normalize_mu1 first");
}

}  // namespace

HilbertBurchData hilbert_burch(const Ideal& I) {
  const RingDescriptor& desc = I.desc;
  if (desc.ring->n_blocks() != 1 || desc.ring->n_vars() != 3 ||
      desc.has_relations())
    throw WrongShapeError("expected one free block of three variables");
  if (I.gens.size() != 3)
    throw WrongShapeError("expected exactly three generators");
  int d = -1;
  for (const auto& g : I.gens) {
    if (g.is_zero()) throw WrongShapeError("zero generator");
    int t = multi_degree(g).total();
    if (d >= 0 && d != t)
      throw WrongShapeError("generators of unequal degree");
    d = t;
  }

  HilbertBurchData hb;
  hb.desc = desc;
  hb.gens = I.gens;
  hb.d = d;

  auto syz = syzygies(I.gens, desc);
  if (syz.rows.size() != 2)
    throw NotHilbertBurchError(
        "syzygy module has " + std::to_string(syz.rows.size()) +
        " minimal generators, not 2; the ideal is not saturated of height 2");
  hb.phi.assign(3, std::vector<MultiPoly>(2, MultiPoly::zero(desc.ring)));
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 3; ++i) hb.phi[i][j] = syz.rows[j][i];
  hb.mu1 = column_degree(hb.phi, 0);
  hb.mu2 = column_degree(hb.phi, 1);
  if (hb.mu1 > hb.mu2) {
    for (int i = 0; i < 3; ++i) std::swap(hb.phi[i][0], hb.phi[i][1]);
    std::swap(hb.mu1, hb.mu2);
  }
  if (hb.mu1 < 1 || hb.mu1 + hb.mu2 != d)
    throw NotHilbertBurchError(
        "column degrees do not split the generator degree");

  // The generators must be one common scalar times the signed minors.
  auto m = signed_minors(hb.phi);
  const Field& F = desc.ring->field;
  mpq_class c;
  bool have = false;
  for (int i = 0; i < 3; ++i) {
    if (m[i].is_zero() != hb.gens[i].is_zero())
      throw NotHilbertBurchError("minors do not regenerate the generators");
    if (m[i].is_zero()) continue;
    if (!have) {
      c = F.div(hb.gens[i].terms.front().coeff, m[i].terms.front().coeff);
      have = true;
    }
  }
  if (!have)
    throw NotHilbertBurchError("minors do not regenerate the generators");
  for (int i = 0; i < 3; ++i)
    if (scale(m[i], c) != hb.gens[i])
      throw NotHilbertBurchError("minors do not regenerate the generators");

  hb.saturated = ideals_equal(I, saturate_irrelevant(I));

  std::vector<MultiPoly> entries;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j)
      if (!hb.phi[i][j].is_zero()) entries.push_back(hb.phi[i][j]);
  Ideal I1 = make_ideal(desc, std::move(entries));
  if (is_one(saturate_irrelevant(I1))) {
    hb.ht_I1 = 3;
  } else {
    auto [dim, deg] = variety_degree_and_dim(I1);
    if (dim != 0)
      throw NotHilbertBurchError("entry ideal has height below 2");
    hb.ht_I1 = 2;
  }
  return hb;
}

Mu1Normalization normalize_mu1(const HilbertBurchData& hb) {
  if (hb.mu1 != 1)
    throw HypothesisError("normalization needs a linear first column");
  if (hb.ht_I1 != 2)
    throw HypothesisError("normalization needs ht I1(phi) == 2");
  const RingPtr& R = hb.desc.ring;
  const Field& F = R->field;

  // Coefficient matrix of the linear column, row i = entry i.
  QMatrix M(3, 3, F);
  for (int i = 0; i < 3; ++i)
    for (const auto& t : hb.phi[i][0].terms)
      for (int v = 0; v < 3; ++v)
        if (t.exp[v] == 1) M.at(i, v) = t.coeff;
  QMatrix W = transpose(M);
  auto piv = rref(W);
  if (piv.size() != 2)
    throw HypothesisError("first column span has dimension != 2");

  // Left kernel vector u of M from the free column of M^T.
  std::vector<mpq_class> u(3, 0);
  {
    std::vector<bool> ispiv(3, false);
    for (int cidx : piv) ispiv[cidx] = true;
    int freec = 0;
    while (ispiv[freec]) ++freec;
    u[freec] = 1;
    for (size_t rr = 0; rr < piv.size(); ++rr)
      u[piv[rr]] = F.neg(W.at(static_cast<int>(rr), freec));
  }
  int k = 2;
  while (u[k] == 0) --k;
  int p = -1, q = -1;
  for (int i = 0; i < 3; ++i) {
    if (i == k) continue;
    (p < 0 ? p : q) = i;
  }

  // Generator mix U = (e_p, e_q, u): rows one and two keep two independent
  // entries, the kernel row zeroes the third.
  QMatrix U(3, 3, F);
  U.at(0, p) = 1;
  U.at(1, q) = 1;
  for (int j = 0; j < 3; ++j) U.at(2, j) = u[j];

  // Substitution sending the surviving entries to x0 and -x1: new
  // coordinates are B x, so the old variables map to B^{-1} x.
  MultiPoly l1 = hb.phi[p][0], l2 = hb.phi[q][0];
  QMatrix B(3, 3, F);
  for (const auto& t : l1.terms)
    for (int v = 0; v < 3; ++v)
      if (t.exp[v] == 1) B.at(0, v) = t.coeff;
  for (const auto& t : l2.terms)
    for (int v = 0; v < 3; ++v)
      if (t.exp[v] == 1) B.at(1, v) = F.neg(t.coeff);
  bool filled = false;
  for (int trial : {2, 1, 0}) {
    for (int j = 0; j < 3; ++j) B.at(2, j) = 0;
    B.at(2, trial) = 1;
    if (determinant(B) != 0) {
      filled = true;
      break;
    }
  }
  if (!filled) throw InconsistencyError("no completion of the substitution");
  QMatrix Binv = *inverse(B);

  Mu1Normalization out;
  out.subst.reserve(3);
  for (int j = 0; j < 3; ++j) {
    MultiPoly img = MultiPoly::zero(R);
    for (int v = 0; v < 3; ++v)
      if (Binv.at(j, v) != 0)
        img = img + scale(MultiPoly::variable(R, v), Binv.at(j, v));
    out.subst.push_back(std::move(img));
  }

  auto apply = [&](const MultiPoly& g) { return substitute(g, R, out.subst); };
  std::vector<std::vector<MultiPoly>> phi_s(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j) phi_s[i].push_back(apply(hb.phi[i][j]));

  HilbertBurchData nhb = hb;
  for (int j = 0; j < 2; ++j) {
    nhb.phi[0][j] = phi_s[p][j];
    nhb.phi[1][j] = phi_s[q][j];
    MultiPoly mix = MultiPoly::zero(R);
    for (int i = 0; i < 3; ++i)
      if (u[i] != 0) mix = mix + scale(phi_s[i][j], u[i]);
    nhb.phi[2][j] = std::move(mix);
  }
  require_normalized(nhb);

  // Minors transform by det(U) * U^{-T}, so mixing the substituted
  // generators the same way keeps "gens == c * minors" with the same c.
  mpq_class detU = determinant(U);
  QMatrix G = transpose(*inverse(U));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) G.at(i, j) = F.mul(detU, G.at(i, j));
  for (int i = 0; i < 3; ++i) {
    MultiPoly g = MultiPoly::zero(R);
    for (int kk = 0; kk < 3; ++kk)
      if (G.at(i, kk) != 0)
        g = g + scale(apply(hb.gens[kk]), G.at(i, kk));
    nhb.gens[i] = std::move(g);
  }
  for (int j = 0; j < 2; ++j) {
    MultiPoly acc = MultiPoly::zero(R);
    for (int i = 0; i < 3; ++i) acc = acc + nhb.phi[i][j] * nhb.gens[i];
    if (!acc.is_zero())
      throw InconsistencyError("normalized columns are not syzygies");
  }
  out.hb = std::move(nhb);
  out.gen_change = std::move(G);
  return out;
}

SylvesterChain sylvester_chain(const HilbertBurchData& hb) {
  require_normalized(hb);
  const Ring& src = *hb.desc.ring;

  std::vector<std::vector<std::string>> blocks(1);
  for (int v = 0; v < 3; ++v) blocks[0].push_back(src.vars[v]);
  blocks.push_back({"y0", "y1", "y2"});
  auto ring = make_ring(std::move(blocks), src.field, /*allow_reserved=*/true);

  SylvesterChain out;
  out.ambient = make_descriptor(ring);
  auto xv = [&](int i) { return MultiPoly::variable(ring, i); };
  auto yv = [&](int i) { return MultiPoly::variable(ring, 3 + i); };
  out.g1 = xv(0) * yv(0) - xv(1) * yv(1);
  out.g2 = MultiPoly::zero(ring);
  for (int i = 0; i < 3; ++i)
    if (!hb.phi[i][1].is_zero())
      out.g2 = out.g2 + transport(hb.phi[i][1], ring) * yv(i);

  MultiPoly cur = out.g2;
  while (in_x0x1(cur)) {
    auto [a, b] = split_x0x1(cur);
    cur = yv(0) * b + yv(1) * a;
    if (cur.is_zero())
      throw InconsistencyError("sylvester form vanished");
    out.splits.emplace_back(std::move(a), std::move(b));
    out.forms.push_back(cur);
    if (static_cast<int>(out.forms.size()) >= hb.d)
      throw InconsistencyError("sylvester chain exceeded the x-degree cap");
  }
  out.m = static_cast<int>(out.forms.size());
  return out;
}

BigradedIdeal rees_equations_mu1(const HilbertBurchData& hb) {
  auto chain = sylvester_chain(hb);
  RationalMap F = make_map(hb.desc, hb.gens);
  BigradedIdeal elim = rees_ideal(F);
  const RingPtr& A = elim.ambient.ring;

  std::vector<MultiPoly> claimed;
  claimed.push_back(transport(chain.g1, A));
  claimed.push_back(transport(chain.g2, A));
  for (const auto& f : chain.forms) claimed.push_back(transport(f, A));

  auto G_elim = groebner(elim.ideal());
  for (const auto& f : claimed)
    if (!normal_form(f, G_elim).is_zero())
      throw InconsistencyError("sylvester generator outside the Rees ideal");
  auto G_claim = groebner(make_ideal(elim.ambient, claimed));
  for (const auto& g : elim.gens)
    if (!normal_form(g.poly, G_claim).is_zero())
      throw InconsistencyError(
          "sylvester presentation misses a Rees generator");

  BigradedIdeal out;
  out.ambient = elim.ambient;
  for (auto& f : claimed) {
    BigradedGen g;
    MultiDegree full = multi_degree(f);
    g.ydeg = full.v.back();
    full.v.pop_back();
    g.xdeg = std::move(full);
    g.poly = std::move(f);
    out.gens.push_back(std::move(g));
  }
  return out;
}

Mu1Verdict is_birational_mu1(const Ideal& I) {
  HilbertBurchData hb = hilbert_burch(I);
  if (!hb.saturated)
    throw HypothesisError(
        "base ideal is not saturated; use the jacobian dual route");
  if (hb.mu1 != 1)
    throw HypothesisError("mu1 > 1; use the jacobian dual route");

  RationalMap F = make_map(hb.desc, hb.gens);
  auto target = make_ring({{"y0", "y1", "y2"}}, hb.desc.ring->field,
                          /*allow_reserved=*/true);
  if (!ring_map_kernel(hb.desc, F.forms, target).empty())
    throw HypothesisError(
        "map is not dominant; use the jacobian dual route");

  Mu1Verdict v;
  v.d = hb.d;
  v.ht_I1 = hb.ht_I1;
  if (hb.d <= 2) {
    // deg(F) <= mu1 * mu2 == 1.
    v.birational = true;
    return v;
  }
  if (hb.ht_I1 != 2) {
    v.birational = false;
    return v;
  }
  auto norm = normalize_mu1(hb);
  auto chain = sylvester_chain(norm.hb);
  v.m = chain.m;
  if (v.m > hb.d - 2)
    throw InconsistencyError("sylvester chain longer than d - 2");
  v.birational = (v.m == hb.d - 2);
  return v;
}

MuBound degree_bound_mu(const HilbertBurchData& hb) {
  MuBound out;
  out.bound = static_cast<long>(hb.mu1) * hb.mu2;
  RationalMap F = make_map(hb.desc, hb.gens);
  auto blr = base_locus_report(F);
  if (!blr.deg_stabilized || !blr.e_stabilized)
    throw UnstabilizedError("base locus fits did not stabilize");
  out.exact_if_lci = (blr.deg_B == blr.e_B);
  return out;
}

}  // namespace birat
