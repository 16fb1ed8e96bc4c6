#include "birat/blowup.hpp"

#include <algorithm>

#include "birat/errors.hpp"

namespace birat {

std::vector<MultiPoly> BigradedIdeal::polys() const {
  std::vector<MultiPoly> out;
  for (const auto& g : gens) out.push_back(g.poly);
  return out;
}

Ideal BigradedIdeal::ideal() const { return make_ideal(ambient, polys()); }

namespace {

struct Extension {
  RingDescriptor desc;  // x blocks, y block, optional t block
  int y_start = 0;
  int t_index = -1;
};

Extension extend(const RationalMap& F, bool with_t) {
  const Ring& src = *F.source.ring;
  std::vector<std::vector<std::string>> blocks;
  for (int b = 0; b < src.n_blocks(); ++b) {
    std::vector<std::string> names;
    for (int k = 0; k < src.block_size(b); ++k)
      names.push_back(src.vars[src.block_start[b] + k]);
    blocks.push_back(std::move(names));
  }
  std::vector<std::string> ys;
  for (size_t i = 0; i < F.forms.size(); ++i)
    ys.push_back("y" + std::to_string(i));
  blocks.push_back(std::move(ys));
  if (with_t) blocks.push_back({"t"});

  auto ring = make_ring(std::move(blocks), src.field, /*allow_reserved=*/true);
  std::vector<std::vector<MultiPoly>> rels(ring->n_blocks());
  if (F.source.has_relations())
    for (int b = 0; b < src.n_blocks(); ++b)
      for (const auto& g : F.source.relations[b])
        rels[b].push_back(transport(g, ring));

  Extension e;
  e.desc = make_descriptor(ring, std::move(rels));
  e.y_start = ring->block_start[src.n_blocks()];
  if (with_t) e.t_index = ring->n_vars() - 1;
  return e;
}

BigradedGen tag(MultiPoly p) {
  BigradedGen g;
  MultiDegree full = multi_degree(p);
  g.ydeg = full.v.back();
  full.v.pop_back();
  g.xdeg = std::move(full);
  g.poly = std::move(p);
  return g;
}

BigradedIdeal collect(RingDescriptor ambient, std::vector<MultiPoly> polys) {
  canonical_sort(polys);
  BigradedIdeal out;
  out.ambient = std::move(ambient);
  for (auto& p : polys) out.gens.push_back(tag(std::move(p)));
  return out;
}

// Hilbert-Burch plane setting: three forms on P^2 whose 3x2 syzygy matrix
// reproduces them as the signed 2x2 minors.  There Rees == Sym exactly when
// I_1(phi) is irrelevant-primary.
bool hilbert_burch_shortcut(const RationalMap& F, bool& linear_type) {
  const Ring& src = *F.source.ring;
  if (src.n_blocks() != 1 || src.n_vars() != 3 || F.source.has_relations() ||
      F.forms.size() != 3)
    return false;
  auto syz = syzygies(F.forms, F.source);
  if (syz.rows.size() != 2) return false;
  const auto& a = syz.rows[0];
  const auto& b = syz.rows[1];
  MultiPoly minors[3] = {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                         a[0] * b[1] - a[1] * b[0]};
  bool all_zero = true;
  for (const auto& m : minors) all_zero = all_zero && m.is_zero();
  if (all_zero) return false;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (!(F.forms[i] * minors[j] - F.forms[j] * minors[i]).is_zero())
        return false;
  std::vector<MultiPoly> entries;
  for (const auto& row : {a, b})
    for (const auto& e : row)
      if (!e.is_zero()) entries.push_back(e);
  linear_type = is_one(saturate_irrelevant(make_ideal(F.source, entries)));
  return true;
}

}  // namespace

BigradedIdeal rees_ideal(const RationalMap& F) {
  auto ext_t = extend(F, /*with_t=*/true);
  auto ring_t = ext_t.desc.ring;
  auto t = MultiPoly::variable(ring_t, ext_t.t_index);
  std::vector<MultiPoly> gens;
  for (size_t i = 0; i < F.forms.size(); ++i)
    gens.push_back(
        MultiPoly::variable(ring_t, ext_t.y_start + static_cast<int>(i)) -
        t * transport(F.forms[i], ring_t));
  auto elim = eliminate(make_ideal(ext_t.desc, gens), {ext_t.t_index});

  auto ext = extend(F, /*with_t=*/false);
  std::vector<MultiPoly> moved;
  for (const auto& g : elim) moved.push_back(transport(g, ext.desc.ring));
  return collect(ext.desc,
                 minimal_generators(make_ideal(ext.desc, std::move(moved))));
}

BigradedIdeal sym_ideal(const RationalMap& F) {
  auto syz = syzygies(F.forms, F.source);
  auto ext = extend(F, /*with_t=*/false);
  auto ring = ext.desc.ring;
  std::vector<MultiPoly> gens;
  for (const auto& row : syz.rows) {
    MultiPoly g = MultiPoly::zero(ring);
    for (size_t j = 0; j < row.size(); ++j)
      g = g + transport(row[j], ring) *
                  MultiPoly::variable(ring, ext.y_start + static_cast<int>(j));
    if (!g.is_zero()) gens.push_back(normalize_poly(g));
  }
  return collect(ext.desc, std::move(gens));
}

bool is_linear_type(const RationalMap& F) {
  bool shortcut;
  if (hilbert_burch_shortcut(F, shortcut)) return shortcut;
  return ideals_equal(rees_ideal(F).ideal(), sym_ideal(F).ideal());
}

SaturatedFiberData saturated_fiber_table(const RationalMap& F, int n_max) {
  if (n_max < 2) throw HypothesisError("fiber table needs n_max >= 2");
  const auto& desc = F.source;
  auto relG = groebner(make_ideal(desc, {}));

  SaturatedFiberData out;
  out.table.emplace_back(1, 1);
  for (int n = 1; n <= n_max; ++n) {
    MultiDegree nd = F.degree * n;
    auto prods = power_products(F.forms, n);
    std::vector<MultiPoly> reps;
    for (const auto& p : prods)
      reps.push_back(desc.has_relations() ? normal_form(p, relG) : p);
    long plain = span_dimension(reps);
    long ambient = graded_dimension(relG, nd);
    auto sat = saturate_irrelevant(make_ideal(desc, prods));
    long saturated = ambient - graded_dimension(groebner(sat), nd);
    if (saturated < plain)
      throw InconsistencyError("saturation lost graded dimensions");
    out.table.emplace_back(plain, saturated);
    out.differences.push_back(saturated - plain);
  }

  int delta = 0;
  for (int d : block_dimensions(desc)) delta += d;
  int max_degree =
      std::min(delta, static_cast<int>(out.differences.size()) - 2);
  if (max_degree >= 0) {
    out.fit = hilbert_fit(out.differences, max_degree);
  } else {
    out.fit.samples = out.differences;
  }
  return out;
}

}  // namespace birat
