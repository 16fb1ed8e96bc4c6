#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "birat/blowup.hpp"
#include "birat/hilbert.hpp"

namespace birat {

// Invariants of the base locus B = Proj(R/I^sat), measured along multiples of
// the common form degree d.  dim_B is the fitted growth degree of
// n -> dim [R/I^sat]_{n d} (-1 for an empty B), deg_B the stabilized value of
// that column when dim_B == 0, and e_B the leading delta of
// n -> dim [R/(I^n)^sat]_{n d} fitted at degree dim X.
struct BaseLocusReport {
  int dim_B = -1;
  long deg_B = 0;
  long e_B = 0;
  bool dim_stabilized = false;
  bool deg_stabilized = false;
  bool e_stabilized = false;
};

struct DegreeReport {
  long deg_F = 0;
  std::string method;  // "limit" | "formula" | "oracle"
  int dim_Y = -1;
  long deg_Y = 0;
  long deg_X = 0;  // Segre degree of the source (formula route)
  long e_B = 0;    // formula route
  bool consistent = true;
  std::string note;
};

// deg F from the growth of dim [(I^n)^sat / I^n]_{n d}: the fitted leading
// delta divided by deg Y, plus one.  A fitted degree below dim X means the
// limit vanishes and F is birational onto its image.  Throws HypothesisError
// when F is not generically finite onto its image and UnstabilizedError when
// a fit does not settle within n_max.
DegreeReport degree_via_limit(const RationalMap& F, int n_max = 6);

BaseLocusReport base_locus_report(const RationalMap& F, int n_max = 6);

// deg F from the conservation identity
//   prod d_i^{dim X_i} * deg X = deg Y * deg F + e(B),
// valid when dim B <= 0.
DegreeReport degree_via_formula(const RationalMap& F, int n_max = 6);

// Independent check over GF(p): sample a source point, cut out its fiber by
// the 2x2 minors against the image point, saturate away the irrelevant ideal
// and the base locus, and count distinct closure points by univariate
// elimination and square-free degree.  Each trial takes the maximum over
// three random coordinate changes; the modal count over trials is returned.
// Deterministic for a fixed seed.
long fiber_oracle(const RationalMap& F, long p = 101, int trials = 5,
                  std::uint64_t seed = 20260814u);

// j-multiplicity of an ideal generated in single degree d with maximal
// analytic spread: d * deg(G) * deg(Y) for the map G defined by a K-basis
// of [J]_d.
long j_multiplicity(const Ideal& J, int d);

// deg F <= 1 + (d1-1)(d2-1) + dim [I^sat/I]_d for P^1 x P^1 -> P^2 with a
// finite base locus.
long bound_p1p1(const RationalMap& F, int n_max = 6);

// Bidegree (1, n) criterion: birational iff [I]_d = [I^sat]_d.
bool criterion_1n(const RationalMap& F, int n_max = 6);

// Bidegree (2, 2) criterion: birational iff deg B = 6 and e(B) = 7.
bool criterion_22(const RationalMap& F, int n_max = 6);

// deg F <= 1 + C(d-1, r) + dim [I^sat/I]_d
//              + sum_{i=2}^{r-1} dim [R/I]_{(r+1-i)d - r - 1}
// for P^r -> P^r with dim(R/I) <= 1.
long bound_single(const RationalMap& F);

// Exact degree (d-1)(d-2)/2 + dim [I^sat/I]_d + 1 for plane maps of linear
// type with d <= 3 and dim(R/I) = 1; cross-checked against the limit route.
DegreeReport p2_formula(const RationalMap& F, int n_max = 6);

}  // namespace birat
