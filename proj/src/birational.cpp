#include "birat/birational.hpp"

#include <algorithm>

#include "birat/errors.hpp"
#include "birat/hilbert.hpp"

namespace birat {

namespace {

MultiPoly derivative(const MultiPoly& p, int var) {
  MultiPoly out = MultiPoly::zero(p.ring);
  for (const auto& t : p.terms) {
    if (t.exp[var] == 0) continue;
    Term d = t;
    d.coeff = p.ring->field.mul(t.coeff, t.exp[var]);
    d.exp[var] -= 1;
    out = out + MultiPoly::monomial(p.ring, d.exp, d.coeff);
  }
  return out;
}

MultiPoly det(const std::vector<std::vector<MultiPoly>>& M, RingPtr ring) {
  const size_t n = M.size();
  if (n == 0) return MultiPoly::constant(ring, 1);
  if (n == 1) return M[0][0];
  MultiPoly out = MultiPoly::zero(ring);
  for (size_t j = 0; j < n; ++j) {
    if (M[0][j].is_zero()) continue;
    std::vector<std::vector<MultiPoly>> sub;
    for (size_t r = 1; r < n; ++r) {
      std::vector<MultiPoly> row;
      for (size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(M[r][c]);
      sub.push_back(std::move(row));
    }
    MultiPoly cof = M[0][j] * det(sub, ring);
    out = j % 2 == 0 ? out + cof : out - cof;
  }
  return out;
}

bool next_combination(std::vector<int>& idx, int n) {
  int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<std::vector<MultiPoly>> select_rows(
    const std::vector<std::vector<MultiPoly>>& M, const std::vector<int>& rows) {
  std::vector<std::vector<MultiPoly>> out;
  for (int r : rows) out.push_back(M[r]);
  return out;
}

// Common projective scaling: make the first nonzero entry canonically
// normalized and scale the rest along with it.
void normalize_tuple(std::vector<MultiPoly>& tuple) {
  for (const auto& g : tuple) {
    if (g.is_zero()) continue;
    MultiPoly n = normalize_poly(g);
    const Field& f = g.ring->field;
    mpq_class factor = f.div(n.terms.front().coeff, g.terms.front().coeff);
    for (auto& h : tuple) h = scale(h, factor);
    return;
  }
}

}  // namespace

JacobianDual jacobian_dual(const BigradedIdeal& rees, int y_degree_cap) {
  const Ring& amb = *rees.ambient.ring;
  int m = amb.n_blocks() - 1;  // last block holds the y's
  std::vector<std::string> ynames;
  for (int k = 0; k < amb.block_size(m); ++k)
    ynames.push_back(amb.vars[amb.block_start[m] + k]);

  JacobianDual jd;
  jd.target = make_ring({ynames}, amb.field, /*allow_reserved=*/true);
  jd.psi.resize(m);
  jd.equations.resize(m);

  for (const auto& g : rees.gens) {
    if (y_degree_cap >= 0 && g.ydeg > y_degree_cap) {
      jd.capped = true;
      continue;
    }
    int block = -1;
    bool linear = false;
    for (int b = 0; b < m && block == -1; ++b)
      if (g.xdeg.v[b] == 1 && g.xdeg.total() == 1) {
        block = b;
        linear = true;
      }
    if (!linear) continue;
    std::vector<MultiPoly> row;
    for (int k = 0; k < amb.block_size(block); ++k)
      row.push_back(transport(
          derivative(g.poly, amb.block_start[block] + k), jd.target));
    jd.psi[block].push_back(std::move(row));
    jd.equations[block].push_back(g.poly);
  }
  return jd;
}

int rank_mod_image(const std::vector<std::vector<MultiPoly>>& M,
                   const Ideal& b) {
  if (M.empty()) return 0;
  auto G = groebner(b);
  const int rows = static_cast<int>(M.size());
  const int cols = static_cast<int>(M[0].size());
  int rank = 0;
  for (int t = 1; t <= std::min(rows, cols); ++t) {
    bool found = false;
    std::vector<int> ri(t), ci(t);
    for (int i = 0; i < t; ++i) ri[i] = i;
    do {
      for (int i = 0; i < t; ++i) ci[i] = i;
      do {
        std::vector<std::vector<MultiPoly>> sub(t);
        for (int i = 0; i < t; ++i)
          for (int j = 0; j < t; ++j) sub[i].push_back(M[ri[i]][ci[j]]);
        if (!normal_form(det(sub, b.ring()), G).is_zero()) {
          found = true;
          break;
        }
      } while (!found && next_combination(ci, cols));
      if (found) break;
    } while (next_combination(ri, rows));
    if (!found) return rank;
    rank = t;
  }
  return rank;
}

std::vector<std::vector<MultiPoly>> extract_inverse(const JacobianDual& jd,
                                                    const Ideal& b) {
  auto G = groebner(b);
  std::vector<std::vector<MultiPoly>> out;
  for (size_t i = 0; i < jd.psi.size(); ++i) {
    const auto& M = jd.psi[i];
    const int rows = static_cast<int>(M.size());
    const int cols = M.empty() ? 0 : static_cast<int>(M[0].size());
    const int r = cols - 1;
    if (rows < r)
      throw InconsistencyError("jacobian dual block is too small to invert");

    std::vector<int> ri(r);
    for (int k = 0; k < r; ++k) ri[k] = k;
    bool found = r == 0;
    while (!found) {
      if (rank_mod_image(select_rows(M, ri), b) == r) {
        found = true;
        break;
      }
      if (!next_combination(ri, rows)) break;
    }
    if (!found)
      throw InconsistencyError("no full-rank jacobian dual submatrix");

    auto sub = select_rows(M, ri);
    std::vector<MultiPoly> tuple;
    for (int a = 0; a <= r; ++a) {
      std::vector<std::vector<MultiPoly>> minor;
      for (int k = 0; k < r; ++k) {
        std::vector<MultiPoly> row;
        for (int c = 0; c <= r; ++c)
          if (c != a) row.push_back(sub[k][c]);
        minor.push_back(std::move(row));
      }
      MultiPoly g = normal_form(det(minor, b.ring()), G);
      tuple.push_back(a % 2 == 0 ? g : -g);
    }
    bool nonzero = false;
    for (const auto& g : tuple) nonzero = nonzero || !g.is_zero();
    if (!nonzero) throw InconsistencyError("inverse tuple vanished modulo b");
    normalize_tuple(tuple);
    out.push_back(std::move(tuple));
  }
  return out;
}

MapAnalysis is_birational_jacdual(const RationalMap& F, int y_degree_cap) {
  MapAnalysis an;
  std::vector<std::string> ynames;
  for (int i = 0; i < F.s() + 1; ++i) ynames.push_back("y" + std::to_string(i));
  auto target =
      make_ring({ynames}, F.source.ring->field, /*allow_reserved=*/true);
  an.image = make_ideal(make_descriptor(target),
                        ring_map_kernel(F.source, F.forms, target));

  int delta = 0;
  for (int d : block_dimensions(F.source)) delta += d;
  try {
    auto [dim, deg] = variety_degree_and_dim(an.image);
    an.image_dim = dim;
    an.image_degree = deg;
  } catch (const UnstabilizedError& e) {
    an.verdict = Verdict::Undetermined;
    an.reason = std::string("image dimension fit did not stabilize: ") +
                e.what();
    return an;
  }
  if (an.image_dim != delta) {
    an.verdict = Verdict::NotBirational;
    an.reason = "not generically finite onto an image of dimension " +
                std::to_string(delta);
    return an;
  }

  auto jd = jacobian_dual(rees_ideal(F), y_degree_cap);
  const Ring& src = *F.source.ring;
  bool all_full = true;
  for (int i = 0; i < src.n_blocks(); ++i) {
    int ri = src.block_size(i) - 1;
    std::vector<std::vector<MultiPoly>> M;
    for (const auto& row : jd.psi[i]) {
      std::vector<MultiPoly> moved;
      for (const auto& e : row) moved.push_back(transport(e, target));
      M.push_back(std::move(moved));
    }
    int rank = rank_mod_image(M, an.image);
    if (rank > ri)
      throw InconsistencyError("jacobian dual rank exceeds the block bound");
    an.ranks.push_back(rank);
    all_full = all_full && rank == ri;
  }

  if (all_full) {
    an.verdict = Verdict::Birational;
    JacobianDual local = jd;
    for (auto& block : local.psi)
      for (auto& row : block)
        for (auto& e : row) e = transport(e, target);
    local.target = target;
    an.inverse = extract_inverse(local, an.image);
  } else if (jd.capped) {
    an.verdict = Verdict::Undetermined;
    an.reason = "y-degree cap may hide higher-degree equations";
  } else {
    an.verdict = Verdict::NotBirational;
    an.reason = "jacobian dual rank deficiency";
  }
  return an;
}

int linear_syzygy_rank(const RationalMap& F) {
  auto syz = syzygies(F.forms, F.source);
  std::vector<std::vector<MultiPoly>> linear;
  for (const auto& row : syz.rows) {
    MultiDegree d{{}};
    bool nonzero = false;
    for (const auto& e : row)
      if (!e.is_zero()) {
        d = multi_degree(e);
        nonzero = true;
        break;
      }
    if (nonzero && d.total() == 1) linear.push_back(row);
  }
  return rank_mod_image(linear, make_ideal(F.source, {}));
}

}  // namespace birat
