#pragma once

#include <utility>
#include <vector>

#include "birat/groebner.hpp"

namespace birat {

// Finite-difference fit of an integer sample sequence that eventually agrees
// with a polynomial in n.  samples[k] is the value at n = k + 1.
// leading_delta is the constant value of the fitted_degree-th difference
// column on the tail, so the leading coefficient of the fitted polynomial is
// leading_delta / fitted_degree!.
struct HilbertData {
  std::vector<long> samples;
  int fitted_degree = -1;
  mpq_class leading_delta;
  bool stabilized = false;
};

// dim_K [R]_c of the free polynomial ring (relations ignored).
long ambient_dimension(const Ring& ring, const MultiDegree& c);

// dim_K [R/I]_c with the descriptor relations folded in: the number of
// multi-degree-c monomials outside LT(I + relations).
long graded_dimension(const Ideal& I, const MultiDegree& c);

// Same count against an already computed basis of I + relations.
long graded_dimension(const GroebnerBasis& G, const MultiDegree& c);

// dim_K of the K-span of the given polynomials (no monomial multiples).
long span_dimension(const std::vector<MultiPoly>& polys);

// Smallest degree whose difference column is constant on the tail window
// (equivalently: the next column vanishes there).  Needs at least
// max_degree + 2 samples; certifying degree d needs at least d + window.
// When no degree qualifies the result has stabilized == false.
HilbertData hilbert_fit(const std::vector<long>& samples, int max_degree,
                        int window = 3);

// (projective dimension, degree) of V(b) for an ideal b of a single-block
// ring, read off the Hilbert function of the quotient at n = 1..n_max.
// Throws UnstabilizedError when the fit does not settle; raise n_max to
// retry.  The empty variety comes back as (0, 0).
std::pair<int, long> variety_degree_and_dim(const Ideal& b, int n_max = 8);

// Degree of each block variety X_i (1 for free blocks).
std::vector<long> block_degrees(const RingDescriptor& d);

// Degree of the Segre embedding of X_1 x ... x X_m:
//   (sum dim X_i)! / prod (dim X_i)! * prod deg X_i.
long segre_degree(const RingDescriptor& source,
                  const std::vector<long>& subvariety_degrees);

}  // namespace birat
