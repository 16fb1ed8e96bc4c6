#pragma once

#include <utility>
#include <vector>

#include "birat/groebner.hpp"
#include "birat/hilbert.hpp"

namespace birat {

struct BigradedGen {
  MultiPoly poly;
  MultiDegree xdeg;  // source-block part of the multi-degree
  int ydeg = 0;
};

// An ideal of K[x-blocks, y] with the source relations lifted; x_i carries
// bidegree (deg x_i, 0) and y_j bidegree (0, 1).  Generators are
// bihomogeneous and canonically ordered.
struct BigradedIdeal {
  RingDescriptor ambient;  // source blocks, then the y block last
  std::vector<BigradedGen> gens;

  std::vector<MultiPoly> polys() const;
  Ideal ideal() const;
};

// Truncated saturated-fiber dimension table.  Row n of `table` is
// (dim [I^n]_{n d}, dim [(I^n)^sat]_{n d}) over the source coordinate ring;
// `differences` is the sat minus plain column for n >= 1 and `fit` its
// finite-difference fit (stabilized == false when n_max is too small).
struct SaturatedFiberData {
  std::vector<std::pair<long, long>> table;  // n = 0 .. n_max
  std::vector<long> differences;             // n = 1 .. n_max
  HilbertData fit;
};

// Defining ideal of the Rees algebra: kernel generators of
// K[x, y] -> R[I t], y_i -> t f_i, i.e. (y_i - t f_i) + lifted relations
// with t eliminated.  Returned as minimal generators over the relations.
BigradedIdeal rees_ideal(const RationalMap& F);

// Symmetric-algebra ideal (y) . phi: one bilinear-in-y generator per
// syzygy of the forms.
BigradedIdeal sym_ideal(const RationalMap& F);

// Rees == Sym.  Hilbert-Burch plane inputs (three forms on P^2 with a 3x2
// syzygy matrix reproducing them as signed minors) take the "I_1(phi)
// m-primary" shortcut; everything else runs the two-sided membership check.
bool is_linear_type(const RationalMap& F);

// Dimension table of [I^n]_{n d} against [(I^n)^sat]_{n d} for n <= n_max,
// powers computed by repeated generator products.
SaturatedFiberData saturated_fiber_table(const RationalMap& F, int n_max);

}  // namespace birat
