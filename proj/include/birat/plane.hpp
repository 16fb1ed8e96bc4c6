#pragma once

#include <utility>
#include <vector>

#include "birat/blowup.hpp"
#include "birat/linalg.hpp"

namespace birat {

// Presentation of a saturated height-2 ideal of K[x0,x1,x2] by its 3x2
// minimal syzygy matrix phi: the input generators are the signed maximal
// minors of phi (cofactor signs, one common scalar).
struct HilbertBurchData {
  RingDescriptor desc;
  std::vector<MultiPoly> gens;              // the three degree-d generators
  std::vector<std::vector<MultiPoly>> phi;  // 3 rows x 2 columns
  int d = 0;
  int mu1 = 0, mu2 = 0;  // column degrees, mu1 <= mu2, mu1 + mu2 == d
  bool saturated = false;
  int ht_I1 = 0;  // height of the ideal of entries of phi: 2 or 3
};

// Computes the minimal syzygies of the three generators.  Throws
// WrongShapeError unless the ambient is one free block of three variables
// with exactly three equal-degree generators; throws NotHilbertBurchError
// when the syzygy module is not free of rank 2 or the minors fail to
// regenerate the generators.
HilbertBurchData hilbert_burch(const Ideal& I);

// Invertible change of the x-coordinates together with a constant mixing of
// the generators bringing the degree-1 column of phi to (x0, -x1, 0)^T.
// subst lists the images of the old variables; the new generators are
// gen_change times the substituted old ones (minors transform by
// det * inverse-transpose under row operations on phi).
struct Mu1Normalization {
  HilbertBurchData hb;
  std::vector<MultiPoly> subst;
  QMatrix gen_change;
};

// Needs mu1 == 1 and ht_I1 == 2; throws HypothesisError when the linear
// entries of the first column span a space of dimension != 2.
Mu1Normalization normalize_mu1(const HilbertBurchData& hb);

// Iterated Sylvester forms: starting from g2, while F_i lies in (x0, x1)
// split it monomial-wise (x0-divisible part first, remainder divisible by
// x1) and take the determinant of ((y0, -y1), ((F_i)_{x0}, (F_i)_{x1})).
// bideg(F_i) = (d-1-i, i+1), so the loop stops after at most d-1 rounds.
struct SylvesterChain {
  RingDescriptor ambient;  // x block then y block, as built by rees_ideal
  MultiPoly g1, g2;        // x0 y0 - x1 y1 and the second-column relation
  std::vector<MultiPoly> forms;                         // F_1 .. F_m
  std::vector<std::pair<MultiPoly, MultiPoly>> splits;  // of g2, F_1, ...
  int m = 0;
};

// Needs the normalized column shape; never errors beyond that check.
SylvesterChain sylvester_chain(const HilbertBurchData& hb);

// {g1, g2} followed by the chain, in construction order (bidegrees
// (1,1), (d-1,1), (d-2,2), ...), cross-checked by mutual normal forms
// against the elimination route; a mismatch throws InconsistencyError.
BigradedIdeal rees_equations_mu1(const HilbertBurchData& hb);

// Dominant plane maps with mu1 == 1: birational iff ht I1(phi) == 2 and the
// chain has length exactly d - 2.  d <= 2 is birational outright (the
// degree is bounded by mu1 * mu2 = 1).  Everything outside the hypotheses
// throws HypothesisError and should be routed to the jacobian dual check.
struct Mu1Verdict {
  bool birational = false;
  int d = 0;
  int ht_I1 = 0;
  int m = -1;  // chain length; -1 when the chain was not run
};

Mu1Verdict is_birational_mu1(const Ideal& I);

// deg(F) <= mu1 * mu2, an equality exactly on locally complete
// intersection base schemes, detected by deg(B) == e(B).
struct MuBound {
  long bound = 0;
  bool exact_if_lci = false;
};

MuBound degree_bound_mu(const HilbertBurchData& hb);

}  // namespace birat
