#include "birat/errors.hpp"
#include "birat/monomial.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace birat;
using namespace testutil;

namespace {

RationalMap map_of(RingPtr r, const std::vector<std::string>& ss) {
  return make_map(make_descriptor(r), pplist(ss, r));
}

std::vector<mpz_class> mat_apply(const ZMat& A, const std::vector<mpz_class>& x) {
  std::vector<mpz_class> out(A.size(), 0);
  for (size_t r = 0; r < A.size(); ++r)
    for (size_t c = 0; c < x.size(); ++c) out[r] += A[r][c] * x[c];
  return out;
}

}  // namespace

TEST_CASE("exponent matrix") {
  auto pp1 = ring_p1p1();
  auto M = build_exponent_matrix(
      map_of(pp1, {"x10*x20", "x11*x20", "x11*x21"}));
  CHECK(M.s == 2);
  ZMat expected = {{1, 0, 0}, {0, 1, 1}, {1, 1, 0}, {0, 0, 1}, {1, 1, 1}};
  CHECK(M.A == expected);

  auto p1 = ring_p1();
  auto I = build_exponent_matrix(map_of(p1, {"x0", "x1"}));
  CHECK(I.s == 1);
  CHECK(I.A == ZMat{{1, 0}, {0, 1}, {1, 1}});

  // Scalar coefficients are irrelevant to the exponent data.
  auto S = build_exponent_matrix(map_of(p1, {"2*x0", "x1"}));
  CHECK(S.A == I.A);

  CHECK_THROWS_AS(build_exponent_matrix(map_of(p1, {"x0 + x1", "x1"})),
                  HypothesisError);
  CHECK_THROWS_AS(build_exponent_matrix(
                      map_of(ring_p2(), {"x0", "x1", "x2"})),
                  HypothesisError);
  CHECK_THROWS_AS(build_exponent_matrix(map_of(pp1, {"x10*x20", "x11*x21"})),
                  HypothesisError);
  auto rel = make_descriptor(pp1, {pplist({"x10^2 - x11^2"}, pp1), {}});
  CHECK_THROWS_AS(
      build_exponent_matrix(
          make_map(rel, pplist({"x10*x20", "x11*x20", "x11*x21"}, pp1))),
      HypothesisError);
}

TEST_CASE("lattice solve") {
  auto pp1 = ring_p1p1();
  auto M = build_exponent_matrix(
      map_of(pp1, {"x10*x20", "x11*x20", "x11*x21"}));

  // The hand solutions (1,-1,0) and (0,1,-1) hit the two targets, and the
  // solver returns some exact solution of each system.
  std::vector<mpz_class> e12 = {1, -1, 0, 0, 0};
  std::vector<mpz_class> e34 = {0, 0, 1, -1, 0};
  CHECK(mat_apply(M.A, {1, -1, 0}) == e12);
  CHECK(mat_apply(M.A, {0, 1, -1}) == e34);
  auto g1 = solve_lattice(M, 1);
  REQUIRE(g1.has_value());
  CHECK(mat_apply(M.A, *g1) == e12);
  auto g2 = solve_lattice(M, 2);
  REQUIRE(g2.has_value());
  CHECK(mat_apply(M.A, *g2) == e34);

  // Parity obstruction: even exponents cannot reach an odd target.
  auto sq = build_exponent_matrix(map_of(ring_p1(), {"x0^2", "x1^2"}));
  CHECK(sq.A == ZMat{{2, 0}, {0, 2}, {1, 1}});
  CHECK_FALSE(solve_lattice(sq, 1).has_value());

  CHECK_THROWS_AS(solve_lattice(M, 0), HypothesisError);
  CHECK_THROWS_AS(solve_lattice(M, 3), HypothesisError);

  // Hermite transform invariants on this instance: A * U = H, det U = +-1.
  auto h = column_hnf(M.A);
  ZMat prod(M.A.size(), std::vector<mpz_class>(h.U.size(), 0));
  for (size_t r = 0; r < M.A.size(); ++r)
    for (size_t c = 0; c < h.U.size(); ++c)
      for (size_t k = 0; k < h.U.size(); ++k)
        prod[r][c] += M.A[r][k] * h.U[k][c];
  CHECK(prod == h.H);
  mpz_class det = determinant_integer(h.U);
  CHECK((det == 1 || det == -1));
}

TEST_CASE("birational monomial") {
  auto pp1 = ring_p1p1();
  CHECK(is_birational_monomial(map_of(pp1, {"x10*x20", "x11*x20", "x11*x21"})));
  CHECK_FALSE(is_birational_monomial(
      map_of(pp1, {"x10^2*x20^2", "x11^2*x20^2", "x11^2*x21^2"})));

  auto p1 = ring_p1();
  CHECK(is_birational_monomial(map_of(p1, {"x0", "x1"})));
  CHECK(is_birational_monomial(map_of(p1, {"x0^2", "x0*x1"})));
  CHECK_FALSE(is_birational_monomial(map_of(p1, {"x0^2", "x1^2"})));

  // Permuting the forms permutes columns of A and preserves the criterion.
  CHECK(is_birational_monomial(map_of(pp1, {"x11*x20", "x10*x20", "x11*x21"})));
  CHECK(is_birational_monomial(map_of(pp1, {"x11*x21", "x11*x20", "x10*x20"})));

  CHECK_THROWS_AS(is_birational_monomial(
                      map_of(pp1, {"x10*x20", "x11*x21", "x10*x20"})),
                  HypothesisError);
}
