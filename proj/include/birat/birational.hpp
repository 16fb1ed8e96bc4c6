#pragma once

#include <string>
#include <vector>

#include "birat/blowup.hpp"
#include "birat/groebner.hpp"

namespace birat {

// Per-block Jacobian dual data: psi[i] is the k_i x (r_i + 1) matrix of
// y-polynomials obtained by differentiating the Rees equations that are
// x-linear in block i (and x-free elsewhere) with respect to that block.
// equations[i] keeps those source equations h_{i,j} in the Rees ambient.
struct JacobianDual {
  RingPtr target;  // K[y]
  std::vector<std::vector<std::vector<MultiPoly>>> psi;
  std::vector<std::vector<MultiPoly>> equations;
  bool capped = false;  // a y-degree cap dropped at least one generator
};

enum class Verdict { Birational, NotBirational, Undetermined };

struct MapAnalysis {
  Ideal image;       // defining ideal of Y in K[y]
  int image_dim = -1;
  long image_degree = 0;
  std::vector<int> ranks;  // rank of psi_i over K[y]/image, per block
  Verdict verdict = Verdict::Undetermined;
  std::string reason;
  // Per block, r_i + 1 forms in K[y] (signed maximal minors), normalized by
  // a common scalar; present exactly when the verdict is Birational.
  std::vector<std::vector<MultiPoly>> inverse;
};

// Generators of y-degree above the cap are dropped when y_degree_cap >= 0;
// the result is then marked capped if anything was lost.
JacobianDual jacobian_dual(const BigradedIdeal& rees, int y_degree_cap = -1);

// Largest t such that some t x t minor of M has a nonzero normal form
// modulo b; requires b prime so that vanishing of all t-minors kills the
// larger ones too.  Entries of M must live in b's ring.
int rank_mod_image(const std::vector<std::vector<MultiPoly>>& M,
                   const Ideal& b);

// Signed ordered maximal minors of the lexicographically first r_i-row
// submatrix of psi_i of full rank modulo b, one tuple per block.
std::vector<std::vector<MultiPoly>> extract_inverse(const JacobianDual& jd,
                                                    const Ideal& b);

// Main rank criterion: birational iff rank(psi_i (x) S) = r_i for every
// block.  A capped run that misses full rank reports Undetermined.
MapAnalysis is_birational_jacdual(const RationalMap& F, int y_degree_cap = -1);

// Rank over the source coordinate ring of the linear part of the syzygy
// matrix (syzygies of multi-degree a unit vector).
int linear_syzygy_rank(const RationalMap& F);

}  // namespace birat
