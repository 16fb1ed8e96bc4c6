#include "birat/hilbert.hpp"

#include <algorithm>
#include <map>

#include "birat/errors.hpp"
#include "birat/linalg.hpp"

namespace birat {

namespace {

bool exp_divides(const Exponent& a, const Exponent& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

}  // namespace

long ambient_dimension(const Ring& ring, const MultiDegree& c) {
  if (static_cast<int>(c.v.size()) != ring.n_blocks())
    throw HypothesisError("multi-degree does not match ring blocks");
  long out = 1;
  for (int b = 0; b < ring.n_blocks(); ++b) {
    if (c.v[b] < 0) return 0;
    int k = ring.block_size(b);
    out *= binomial(c.v[b] + k - 1, k - 1);
  }
  return out;
}

long graded_dimension(const GroebnerBasis& G, const MultiDegree& c) {
  long count = 0;
  for (const auto& m : monomials_of_degree(*G.ring, c)) {
    bool in_lt = false;
    for (const auto& lt : G.lead)
      if (exp_divides(lt, m)) {
        in_lt = true;
        break;
      }
    if (!in_lt) ++count;
  }
  return count;
}

long graded_dimension(const Ideal& I, const MultiDegree& c) {
  return graded_dimension(groebner(I), c);
}

long span_dimension(const std::vector<MultiPoly>& polys) {
  std::map<Exponent, int> col;
  for (const auto& p : polys)
    for (const auto& t : p.terms)
      col.emplace(t.exp, 0);
  if (col.empty()) return 0;
  int c = 0;
  for (auto& [exp, idx] : col) idx = c++;
  Field field = polys.front().ring->field;
  QMatrix m(static_cast<int>(polys.size()), c, field);
  for (size_t r = 0; r < polys.size(); ++r)
    for (const auto& t : polys[r].terms)
      m.at(static_cast<int>(r), col[t.exp]) = t.coeff;
  return rank(std::move(m));
}

HilbertData hilbert_fit(const std::vector<long>& samples, int max_degree,
                        int window) {
  if (max_degree < 0 || window < 2)
    throw HypothesisError("hilbert fit needs max_degree >= 0, window >= 2");
  if (static_cast<int>(samples.size()) < max_degree + 2)
    throw HypothesisError("insufficient samples for hilbert fit");
  HilbertData data;
  data.samples = samples;
  std::vector<mpq_class> diff(samples.begin(), samples.end());
  for (int deg = 0; deg <= max_degree; ++deg) {
    if (static_cast<int>(diff.size()) >= window) {
      bool flat = true;
      for (size_t k = diff.size() - window; k + 1 < diff.size(); ++k)
        if (diff[k] != diff[k + 1]) {
          flat = false;
          break;
        }
      if (flat) {
        data.fitted_degree = deg;
        data.leading_delta = diff.back();
        data.stabilized = true;
        return data;
      }
    }
    std::vector<mpq_class> next;
    for (size_t k = 0; k + 1 < diff.size(); ++k)
      next.push_back(diff[k + 1] - diff[k]);
    diff = std::move(next);
  }
  return data;
}

std::pair<int, long> variety_degree_and_dim(const Ideal& b, int n_max) {
  const Ring& ring = *b.ring();
  if (ring.n_blocks() != 1)
    throw HypothesisError("variety fit needs a single-block ring");
  // The empty variety is decided exactly: its truncated Hilbert column is
  // all transient and can fool the window fit.
  if (!b.gens.empty() && is_one(saturate_irrelevant(b))) return {0, 0};
  auto G = groebner(b);
  std::vector<long> samples;
  for (int n = 1; n <= n_max; ++n)
    samples.push_back(graded_dimension(G, MultiDegree{{n}}));
  int r = ring.block_size(0) - 1;
  auto fit = hilbert_fit(samples, std::min(r, static_cast<int>(samples.size()) - 2));
  if (!fit.stabilized)
    throw UnstabilizedError(
        "hilbert function did not stabilize; raise the sample bound");
  return {fit.fitted_degree, static_cast<long>(fit.leading_delta.get_num().get_si())};
}

namespace {

// (dim, degree) per block; free blocks skip the fit.
std::vector<std::pair<int, long>> block_varieties(const RingDescriptor& d) {
  std::vector<std::pair<int, long>> out;
  for (int b = 0; b < d.ring->n_blocks(); ++b) {
    int r = d.ring->block_size(b) - 1;
    if (d.relations.empty() || d.relations[b].empty()) {
      out.emplace_back(r, 1);
      continue;
    }
    std::vector<std::string> names;
    for (int k = 0; k < d.ring->block_size(b); ++k)
      names.push_back(d.ring->vars[d.ring->block_start[b] + k]);
    auto small = make_ring({names}, d.ring->field, /*allow_reserved=*/true);
    std::vector<MultiPoly> gens;
    for (const auto& rel : d.relations[b]) gens.push_back(transport(rel, small));
    out.push_back(
        variety_degree_and_dim(make_ideal(make_descriptor(small), gens)));
  }
  return out;
}

}  // namespace

std::vector<int> block_dimensions(const RingDescriptor& d) {
  std::vector<int> out;
  for (const auto& [dim, deg] : block_varieties(d)) out.push_back(dim);
  return out;
}

std::vector<long> block_degrees(const RingDescriptor& d) {
  std::vector<long> out;
  for (const auto& [dim, deg] : block_varieties(d)) out.push_back(deg);
  return out;
}

long segre_degree(const RingDescriptor& source,
                  const std::vector<long>& subvariety_degrees) {
  auto dims = block_dimensions(source);
  if (subvariety_degrees.size() != dims.size())
    throw HypothesisError("one subvariety degree per block");
  int total = 0;
  for (int d : dims) total += d;
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(total));
  for (int d : dims) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(d));
    out /= f;
  }
  for (long g : subvariety_degrees) out *= g;
  return static_cast<long>(out.get_si());
}

}  // namespace birat
