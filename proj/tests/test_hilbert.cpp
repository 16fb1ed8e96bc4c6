#include <random>

#include "birat/errors.hpp"
#include "birat/hilbert.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace birat;
using namespace testutil;

TEST_CASE("ambient and graded dimensions") {
  auto p2 = ring_p2();
  CHECK(ambient_dimension(*p2, MultiDegree{{4}}) == 15);
  CHECK(graded_dimension(make_ideal(make_descriptor(p2), {}), MultiDegree{{4}}) ==
        15);
  CHECK(ambient_dimension(*p2, MultiDegree{{0}}) == 1);
  CHECK(ambient_dimension(*p2, MultiDegree{{-1}}) == 0);
  CHECK_THROWS_AS(ambient_dimension(*p2, MultiDegree{{1, 1}}), HypothesisError);

  // Quartic with one interior gap: the quotient keeps only x0^2x1^2 in
  // degree 4, and the ideal saturates to the whole ring.
  auto p1 = ring_p1();
  auto I = make_ideal(make_descriptor(p1),
                      pplist({"x0^4", "x0^3*x1", "x0*x1^3", "x1^4"}, p1));
  CHECK(graded_dimension(I, MultiDegree{{4}}) == 1);
  CHECK(ambient_dimension(*p1, MultiDegree{{4}}) - 1 == 4);
  CHECK(is_one(saturate_irrelevant(I)));

  auto pp1 = ring_p1p1();
  auto J = make_ideal(make_descriptor(pp1), pplist({"x11", "x20"}, pp1));
  CHECK(ambient_dimension(*pp1, MultiDegree{{1, 1}}) == 4);
  CHECK(graded_dimension(J, MultiDegree{{1, 1}}) == 1);

  // Relations fold in: on the conic the forms of degree n span 2n + 1.
  auto conic = make_descriptor(p2, {pplist({"x0*x2 - x1^2"}, p2)});
  auto zero = make_ideal(conic, {});
  CHECK(graded_dimension(zero, MultiDegree{{1}}) == 3);
  CHECK(graded_dimension(zero, MultiDegree{{2}}) == 5);
  CHECK(graded_dimension(zero, MultiDegree{{5}}) == 11);
}

TEST_CASE("graded dimension of the ideal matches a plain span computation") {
  // dim [I]_c read from standard monomials of LT(I) against the rank of the
  // raw multiplication span m*g; this is the Macaulay counting check.
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 15; ++trial) {
    Field f = trial % 3 == 2 ? Field::prime(101) : Field::rationals();
    RingPtr r = trial % 2 == 0 ? ring_p2(f) : ring_p1p1(f);
    std::uniform_int_distribution<int> deg(1, 2);
    std::vector<MultiPoly> gens;
    std::vector<MultiDegree> gdeg;
    for (int i = 0; i < 2 + trial % 2; ++i) {
      MultiDegree d{{deg(rng)}};
      if (r->n_blocks() == 2) d = MultiDegree{{deg(rng), deg(rng)}};
      auto g = random_form(r, d, rng, 4);
      if (g.terms.empty()) continue;
      gens.push_back(g);
      gdeg.push_back(d);
    }
    if (gens.empty()) continue;
    MultiDegree c{{3}};
    if (r->n_blocks() == 2) c = MultiDegree{{3, 3}};

    std::vector<MultiPoly> multiples;
    for (size_t i = 0; i < gens.size(); ++i) {
      MultiDegree rest{{}};
      rest.v.resize(c.v.size());
      bool ok = true;
      for (size_t b = 0; b < c.v.size(); ++b) {
        rest.v[b] = c.v[b] - gdeg[i].v[b];
        if (rest.v[b] < 0) ok = false;
      }
      if (!ok) continue;
      for (const auto& e : monomials_of_degree(*r, rest))
        multiples.push_back(MultiPoly::monomial(r, e, 1) * gens[i]);
    }
    long span = span_dimension(multiples);
    auto I = make_ideal(make_descriptor(r), gens);
    CHECK(span == ambient_dimension(*r, c) - graded_dimension(I, c));
  }
}

TEST_CASE("span dimension") {
  auto p2 = ring_p2();
  CHECK(span_dimension(pplist({"x0", "x1", "x0 + x1"}, p2)) == 2);
  CHECK(span_dimension({}) == 0);
  CHECK(span_dimension({MultiPoly::zero(p2)}) == 0);
  auto p2f = ring_p2(Field::prime(5));
  CHECK(span_dimension(pplist({"x0", "2*x0"}, p2f)) == 1);
  CHECK(span_dimension(pplist({"x0 + x1", "x0 + 2*x1", "x0 + 3*x1"}, p2f)) == 2);
}

TEST_CASE("finite difference fit") {
  auto fit = hilbert_fit({1, 4, 9, 16, 25, 36}, 3);
  CHECK(fit.stabilized);
  CHECK(fit.fitted_degree == 2);
  CHECK(fit.leading_delta == 2);

  fit = hilbert_fit({6, 6, 6, 6, 6, 6}, 2);
  CHECK(fit.stabilized);
  CHECK(fit.fitted_degree == 0);
  CHECK(fit.leading_delta == 6);

  fit = hilbert_fit({1, 8, 27, 64, 125, 216, 343, 512}, 4);
  CHECK(fit.fitted_degree == 3);
  CHECK(fit.leading_delta == 6);

  // Difference column of the square parametrization of the plane:
  // (3/2)n^2 + (3/2)n.
  fit = hilbert_fit({3, 9, 18, 30, 45, 63}, 3);
  CHECK(fit.stabilized);
  CHECK(fit.fitted_degree == 2);
  CHECK(fit.leading_delta == 3);

  // All-zero column fits as the zero constant.
  fit = hilbert_fit({0, 0, 0, 0, 0}, 2);
  CHECK(fit.stabilized);
  CHECK(fit.fitted_degree == 0);
  CHECK(fit.leading_delta == 0);

  // Exponential growth never flattens.
  fit = hilbert_fit({2, 4, 8, 16, 32, 64, 128, 256}, 3);
  CHECK_FALSE(fit.stabilized);
  CHECK(fit.fitted_degree == -1);

  // Certifying degree d needs d + window samples, not just max_degree + 2.
  fit = hilbert_fit({1, 4, 9, 16}, 2);
  CHECK_FALSE(fit.stabilized);

  CHECK_THROWS_AS(hilbert_fit({1, 2}, 3), HypothesisError);
  CHECK_THROWS_AS(hilbert_fit({1, 2, 3}, -1), HypothesisError);
}

TEST_CASE("variety dimension and degree") {
  auto p2 = ring_p2();
  auto d2 = make_descriptor(p2);
  CHECK(variety_degree_and_dim(make_ideal(d2, {})) ==
        std::pair<int, long>(2, 1));
  CHECK(variety_degree_and_dim(make_ideal(d2, pplist({"x0*x2 - x1^2"}, p2))) ==
        std::pair<int, long>(1, 2));
  CHECK(variety_degree_and_dim(make_ideal(d2, pplist({"x0", "x1"}, p2))) ==
        std::pair<int, long>(0, 1));
  CHECK(variety_degree_and_dim(make_ideal(d2, pplist({"x0", "x1*x2"}, p2))) ==
        std::pair<int, long>(0, 2));
  CHECK(variety_degree_and_dim(make_ideal(d2, pplist({"x0", "x1", "x2"}, p2))) ==
        std::pair<int, long>(0, 0));

  // Twisted cubic and rational quartic through their parametrizations.
  auto p1 = ring_p1();
  auto y3 = make_ring({{"y0", "y1", "y2", "y3"}}, Field::rationals(),
                      /*allow_reserved=*/true);
  auto cubic = ring_map_kernel(make_descriptor(p1),
                               pplist({"x0^3", "x0^2*x1", "x0*x1^2", "x1^3"}, p1),
                               y3);
  CHECK(variety_degree_and_dim(make_ideal(make_descriptor(y3), cubic)) ==
        std::pair<int, long>(1, 3));

  auto quartic = ring_map_kernel(
      make_descriptor(p1), pplist({"x0^4", "x0^3*x1", "x0*x1^3", "x1^4"}, p1),
      y3);
  CHECK(ideal_contains(make_ideal(make_descriptor(y3), quartic),
                       pp("y1*y2 - y0*y3", y3)));
  CHECK(variety_degree_and_dim(make_ideal(make_descriptor(y3), quartic)) ==
        std::pair<int, long>(1, 4));

  CHECK_THROWS_AS(
      variety_degree_and_dim(make_ideal(make_descriptor(ring_p1p1()), {})),
      HypothesisError);
  // Too few samples to certify a surface.
  CHECK_THROWS_AS(variety_degree_and_dim(make_ideal(d2, {}), 3),
                  UnstabilizedError);
}

TEST_CASE("block dimensions and degrees") {
  auto pp1 = ring_p1p1();
  CHECK(block_dimensions(make_descriptor(pp1)) == std::vector<int>{1, 1});
  CHECK(block_degrees(make_descriptor(pp1)) == std::vector<long>{1, 1});

  auto p2 = ring_p2();
  auto conic = make_descriptor(p2, {pplist({"x0*x2 - x1^2"}, p2)});
  CHECK(block_dimensions(conic) == std::vector<int>{1});
  CHECK(block_degrees(conic) == std::vector<long>{2});

  auto mixed = make_ring({{"x0", "x1"}, {"z0", "z1", "z2"}}, Field::rationals());
  auto mdesc = make_descriptor(mixed, {{}, pplist({"z0*z2 - z1^2"}, mixed)});
  CHECK(block_dimensions(mdesc) == std::vector<int>{1, 1});
  CHECK(block_degrees(mdesc) == std::vector<long>{1, 2});

  // A relation mixing blocks is rejected at descriptor construction.
  CHECK_THROWS_AS(
      make_descriptor(mixed, {pplist({"x0*z0 - x1*z1"}, mixed), {}}),
      HypothesisError);
}

TEST_CASE("segre degree") {
  CHECK(segre_degree(make_descriptor(ring_p1p1()), {1, 1}) == 2);
  CHECK(segre_degree(make_descriptor(ring_p2()), {1}) == 1);
  auto p1cubed =
      make_ring({{"a0", "a1"}, {"b0", "b1"}, {"c0", "c1"}}, Field::rationals());
  CHECK(segre_degree(make_descriptor(p1cubed), {1, 1, 1}) == 6);

  auto mixed = make_ring({{"x0", "x1"}, {"z0", "z1", "z2"}}, Field::rationals());
  auto mdesc = make_descriptor(mixed, {{}, pplist({"z0*z2 - z1^2"}, mixed)});
  CHECK(segre_degree(mdesc, block_degrees(mdesc)) == 4);

  CHECK_THROWS_AS(segre_degree(make_descriptor(ring_p1p1()), {1}),
                  HypothesisError);
}
