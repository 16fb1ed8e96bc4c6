#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "birat/errors.hpp"

namespace birat {

// ---------------------------------------------------------------------------
// Coefficient field: exact rationals or a prime field GF(p), p < 2^31.
// GF(p) elements are stored as canonical representatives in [0, p) inside an
// mpq_class with denominator 1, so one coefficient type serves both fields.
// ---------------------------------------------------------------------------

enum class FieldKind { Rationals, Prime };

struct Field {
  FieldKind kind = FieldKind::Rationals;
  long p = 0;

  static Field rationals() { return Field{FieldKind::Rationals, 0}; }
  static Field prime(long p);

  bool is_prime() const { return kind == FieldKind::Prime; }
  bool operator==(const Field& o) const { return kind == o.kind && p == o.p; }

  // Canonical representative (reduced fraction / residue in [0, p)).
  mpq_class normalize(const mpq_class& c) const;
  mpq_class add(const mpq_class& a, const mpq_class& b) const;
  mpq_class sub(const mpq_class& a, const mpq_class& b) const;
  mpq_class mul(const mpq_class& a, const mpq_class& b) const;
  mpq_class div(const mpq_class& a, const mpq_class& b) const;
  mpq_class neg(const mpq_class& a) const;
  mpq_class inv(const mpq_class& a) const;
};

// ---------------------------------------------------------------------------
// Rings and multi-degrees
// ---------------------------------------------------------------------------

// Polynomial ring with an ordered list of variable blocks, one block per
// projective factor of the source (generated blocks for y / tag variables are
// appended by the operations that need them). Immutable after construction.
struct Ring {
  std::vector<std::vector<std::string>> blocks;
  Field field;

  // Flattened views (derived at construction).
  std::vector<std::string> vars;   // block order, then position in block
  std::vector<int> block_of;      // var index -> block index
  std::vector<int> block_start;   // block index -> first var index

  int n_vars() const { return static_cast<int>(vars.size()); }
  int n_blocks() const { return static_cast<int>(blocks.size()); }
  int block_size(int b) const { return static_cast<int>(blocks[b].size()); }
  // -1 when the name is not a variable of this ring.
  int var_index(const std::string& name) const;
};

using RingPtr = std::shared_ptr<const Ring>;

// Validates: nonempty blocks, distinct identifier-shaped names, and (unless
// allow_reserved) none of the generated names t, w, y0, y1, ...
RingPtr make_ring(std::vector<std::vector<std::string>> blocks, Field field,
                  bool allow_reserved = false);

// Z^m degree vector, one entry per block.
struct MultiDegree {
  std::vector<int> v;

  int total() const;
  bool operator==(const MultiDegree& o) const { return v == o.v; }
  bool operator!=(const MultiDegree& o) const { return v != o.v; }
  bool operator<(const MultiDegree& o) const { return v < o.v; }  // lex; for maps
  MultiDegree operator+(const MultiDegree& o) const;
  MultiDegree operator*(int k) const;
  // componentwise <=
  bool dominates(const MultiDegree& lower) const;
  std::string str() const;
};

// ---------------------------------------------------------------------------
// Polynomials
// ---------------------------------------------------------------------------

using Exponent = std::vector<int>;

struct Term {
  Exponent exp;
  mpq_class coeff;
};

// Storage comparator: graded reverse lexicographic on the full exponent
// vector. Terms of a MultiPoly are kept sorted descending under this order,
// which is also the default printing order.
int grevlex_compare(const Exponent& u, const Exponent& v);

// Sparse multivariate polynomial over ring->field. Invariants: terms sorted
// descending grevlex, no zero coefficients, coefficients field-normalized.
struct MultiPoly {
  RingPtr ring;
  std::vector<Term> terms;

  bool is_zero() const { return terms.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms.size() == 1; }
  bool operator==(const MultiPoly& o) const;
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  static MultiPoly zero(RingPtr r) { return MultiPoly{std::move(r), {}}; }
  static MultiPoly constant(RingPtr r, const mpq_class& c);
  static MultiPoly variable(RingPtr r, int var);
  static MultiPoly monomial(RingPtr r, Exponent e, const mpq_class& c);
};

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
MultiPoly operator-(const MultiPoly& a);
MultiPoly scale(const MultiPoly& a, const mpq_class& c);
MultiPoly pow(const MultiPoly& a, int e);

enum class PolyOp { Add, Sub, Mul };
// Spec-named arithmetic entry point; throws HypothesisError on ring mismatch.
MultiPoly poly_arith(const MultiPoly& a, const MultiPoly& b, PolyOp op);

// Degree of a monomial exponent vector, per block.
MultiDegree exp_multi_degree(const Ring& ring, const Exponent& e);

// Throws HypothesisError("zero polynomial") / ("not multi-homogeneous").
MultiDegree multi_degree(const MultiPoly& p);
bool is_multi_homogeneous(const MultiPoly& p);

// Total-degree-preserving substitution x_i -> images[i]; images live in
// `target` (all of them). Used for coordinate changes, evaluation, and
// composition checks.
MultiPoly substitute(const MultiPoly& p, RingPtr target,
                     const std::vector<MultiPoly>& images);

// Re-home p into `target` matching variables by name; every variable with a
// nonzero exponent must exist in target. Fields must agree.
MultiPoly transport(const MultiPoly& p, RingPtr target);

// ---------------------------------------------------------------------------
// Parsing and printing
// ---------------------------------------------------------------------------

// Grammar: rational literals (integer or integer/integer), variable names,
// + - * ^ and parentheses; implicit multiplication is rejected, exponents are
// nonnegative integers. Throws ParseError with position information.
MultiPoly parse_polynomial(const std::string& text, RingPtr ring);

// Descending grevlex, canonical signs; output re-parses to the same
// polynomial (exact round-trip).
std::string to_string(const MultiPoly& p);

// ---------------------------------------------------------------------------
// Term orders
// ---------------------------------------------------------------------------

struct TermOrder {
  enum class Kind { Grevlex, Lex, Elimination, Weighted };
  Kind kind = Kind::Grevlex;
  // Elimination: variables flagged here dominate the rest; grevlex within
  // each group. Built either from a split index (first k variables) or from
  // an explicit variable set.
  std::vector<char> elim_mask;
  // Weighted: compare weight dot exponent first, ties by grevlex.
  std::vector<long> weights;
  // Optional variable permutation for grevlex: compare u[perm[0..]] etc.
  // perm lists variable indices from most to least significant.
  std::vector<int> perm;

  static TermOrder grevlex() { return TermOrder{}; }
  static TermOrder lex() { return TermOrder{Kind::Lex, {}, {}, {}}; }
  static TermOrder grevlex_permuted(std::vector<int> perm);
  static TermOrder elimination_split(const Ring& ring, int first_k);
  static TermOrder eliminating(const Ring& ring, const std::vector<int>& vars);
  static TermOrder weighted(std::vector<long> w);

  // +1 when u is larger, -1 when v is larger, 0 on equality.
  int compare(const Exponent& u, const Exponent& v) const;
};

int compare_monomials(const Exponent& u, const Exponent& v,
                      const TermOrder& order);

// Leading term of p under `order` (index into p.terms).
int leading_index(const MultiPoly& p, const TermOrder& order);

// ---------------------------------------------------------------------------
// Ring descriptors and rational maps
// ---------------------------------------------------------------------------

// A ring together with optional per-block defining ideals of subvarieties
// X_i of P^{r_i}; empty vectors mean the full projective factor.
struct RingDescriptor {
  RingPtr ring;
  std::vector<std::vector<MultiPoly>> relations;  // size 0 or n_blocks

  bool has_relations() const;
  std::vector<MultiPoly> all_relations() const;
};

RingDescriptor make_descriptor(RingPtr ring);
RingDescriptor make_descriptor(RingPtr ring,
                               std::vector<std::vector<MultiPoly>> relations);

// Rational map F = (f_0 : ... : f_s) between multi-projective source and P^s.
struct RationalMap {
  RingDescriptor source;
  std::vector<MultiPoly> forms;
  MultiDegree degree;  // shared multi-degree d of the forms

  int s() const { return static_cast<int>(forms.size()) - 1; }
};

// Checks: >= 2 forms, all nonzero, multi-homogeneous of one common degree.
RationalMap make_map(RingDescriptor source, std::vector<MultiPoly> forms);

// dim X_i for every block: r_i for free blocks, computed from the block
// relations otherwise (throws if a block ideal is not equidimensional enough
// to fit; see hilbert.hpp for the fit). Free blocks take the fast path.
std::vector<int> block_dimensions(const RingDescriptor& d);

// All monomial exponent vectors of the given multi-degree, sorted descending
// grevlex (deterministic basis order for graded linear algebra).
std::vector<Exponent> monomials_of_degree(const Ring& ring,
                                          const MultiDegree& d);

// Utility shared across modules.
bool rings_compatible(const Ring& a, const Ring& b);
long long binomial(long long n, long long k);
std::string fresh_var_name(const Ring& ring, const std::string& base);

}  // namespace birat
