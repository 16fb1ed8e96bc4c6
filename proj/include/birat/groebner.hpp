#pragma once

#include "birat/ring.hpp"

namespace birat {

// Reduced Groebner basis: elements monic, tails reduced, sorted by leading
// term ascending in the basis order.  Unique for a fixed ideal and order.
struct GroebnerBasis {
  RingPtr ring;
  TermOrder order;
  std::vector<MultiPoly> elems;
  std::vector<Exponent> lead;  // leading exponents, parallel to elems

  bool contains_one() const;
};

// Engine entry point: no quotient semantics, the ideal is exactly what the
// generators span.  Gebauer-Moller pair pruning, normal selection.
GroebnerBasis buchberger(const std::vector<MultiPoly>& gens,
                         const TermOrder& order);

// Full normal form: no term of the result is divisible by any lead of G.
MultiPoly normal_form(const MultiPoly& p, const GroebnerBasis& G);

// An ideal of R/(relations), represented by lifted generators.  All
// operations below fold the descriptor relations in, so results are
// preimages in R of the corresponding quotient-ring ideals.
struct Ideal {
  RingDescriptor desc;
  std::vector<MultiPoly> gens;

  const RingPtr& ring() const { return desc.ring; }
};

Ideal make_ideal(const RingDescriptor& desc, std::vector<MultiPoly> gens);

GroebnerBasis groebner(const Ideal& I, const TermOrder& order);
GroebnerBasis groebner(const Ideal& I);  // grevlex

bool ideal_contains(const Ideal& I, const MultiPoly& p);
bool ideals_equal(const Ideal& I, const Ideal& J);
bool is_one(const Ideal& I);

Ideal intersect(const Ideal& I, const Ideal& J);
Ideal colon(const Ideal& I, const MultiPoly& g);
Ideal colon(const Ideal& I, const Ideal& J);

// Reference saturation route: iterate colon until the chain stabilises.
Ideal saturate_by_colons(const Ideal& I, const MultiPoly& g);
// Route-selecting saturation.  For a multi-homogeneous ideal and a single
// variable this runs one Groebner basis in a grevlex order with that
// variable last and strips it from each element; otherwise it falls back
// to the colon chain.
Ideal saturate(const Ideal& I, const MultiPoly& g);
Ideal saturate(const Ideal& I, const Ideal& J);
// Saturation by the multigraded irrelevant ideal, one block at a time.
Ideal saturate_irrelevant(const Ideal& I);
// Product of the block ideals (x_{b,0},...,x_{b,r_b}).
Ideal irrelevant_ideal(const RingDescriptor& desc);

// Generators of the intersection of I with K[vars not listed], returned
// in the ambient ring.
std::vector<MultiPoly> eliminate(const Ideal& I, const std::vector<int>& vars);

// Kernel of target -> src.ring/(relations), target var i -> images[i].
// Variable names of the two rings must not collide.
std::vector<MultiPoly> ring_map_kernel(const RingDescriptor& src,
                                       const std::vector<MultiPoly>& images,
                                       const RingPtr& target);

// All n-fold products of the generators (deduplicated); n = 0 gives {1}.
std::vector<MultiPoly> power_products(const std::vector<MultiPoly>& gens,
                                      int n);

// Quotient p/g when g divides p exactly; throws otherwise.
MultiPoly exact_divide(const MultiPoly& p, const MultiPoly& g);

// Canonical scalar normalisation: monic over GF(p); over Q integral,
// content one, positive leading coefficient.
MultiPoly normalize_poly(const MultiPoly& p);
// Deterministic generator order: ascending leading monomial, then term
// count, then text.
void canonical_sort(std::vector<MultiPoly>& v);

// Minimal homogeneous generators of I (mod relations), deterministic order.
std::vector<MultiPoly> minimal_generators(const Ideal& I);

// Rows r with sum_j r[j]*forms[j] = 0 in R/(relations); a minimal
// generating set of the syzygy module, deterministically ordered.
struct SyzygyMatrix {
  RingPtr ring;
  std::vector<std::vector<MultiPoly>> rows;
};

SyzygyMatrix syzygies(const std::vector<MultiPoly>& forms,
                      const RingDescriptor& desc);

}  // namespace birat
