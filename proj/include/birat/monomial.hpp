#pragma once

#include <optional>
#include <vector>

#include "birat/linalg.hpp"
#include "birat/ring.hpp"

namespace birat {

// Exponent encoding of a monomial map (P^1)^s -> P^s: column i is the
// exponent vector of form i with a homogenizing row of ones appended,
// giving a (2s+1) x (s+1) integer matrix.
struct ExponentMatrix {
  ZMat A;
  int s = 0;
};

// Errors on a non-monomial form or a source/target of the wrong shape.
ExponentMatrix build_exponent_matrix(const RationalMap& F);

// An integer vector gamma with A gamma = e_{2i-1} - e_{2i} (1-based block
// index i), or nothing when the lattice misses the target.
std::optional<std::vector<mpz_class>> solve_lattice(const ExponentMatrix& M,
                                                    int i);

// Birational iff every block's lattice system is solvable.  Errors when the
// map is not dominant (rational rank of A below s + 1).
bool is_birational_monomial(const RationalMap& F);

}  // namespace birat
