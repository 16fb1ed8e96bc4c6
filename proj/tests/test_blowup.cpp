#include <algorithm>

#include "birat/blowup.hpp"
#include "birat/errors.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace birat;
using namespace testutil;

namespace {

RationalMap map_of(RingPtr r, const std::vector<std::string>& ss) {
  return make_map(make_descriptor(r), pplist(ss, r));
}

std::vector<std::pair<int, int>> bidegrees(const BigradedIdeal& I) {
  std::vector<std::pair<int, int>> out;
  for (const auto& g : I.gens) out.emplace_back(g.xdeg.total(), g.ydeg);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("rees ideal") {
  auto p2 = ring_p2();

  // Regular sequence of linear forms: the Koszul 2x2 minors.
  auto R = rees_ideal(map_of(p2, {"x0", "x1", "x2"}));
  auto amb = R.ambient.ring;
  auto expected =
      pplist({"x1*y0 - x0*y1", "x2*y0 - x0*y2", "x2*y1 - x1*y2"}, amb);
  canonical_sort(expected);
  CHECK(R.polys() == expected);
  CHECK(bidegrees(R) ==
        std::vector<std::pair<int, int>>{{1, 1}, {1, 1}, {1, 1}});

  // Quadratic plane Cremona: exactly the two bilinear equations.
  auto C = rees_ideal(map_of(p2, {"x1*x2", "x0*x2", "x0*x1"}));
  CHECK(C.gens.size() == 2);
  CHECK(ideals_equal(
      C.ideal(),
      make_ideal(C.ambient,
                 pplist({"x0*y0 - x1*y1", "x1*y1 - x2*y2"}, C.ambient.ring))));

  // Monomial bigraded map: toric, so every minimal generator is a binomial.
  auto pp1 = ring_p1p1();
  auto M = rees_ideal(map_of(pp1, {"x10*x20", "x11*x20", "x11*x21"}));
  CHECK(M.gens.size() >= 2);
  for (const auto& g : M.gens) CHECK(g.poly.terms.size() == 2);
  CHECK(ideal_contains(M.ideal(), pp("x11*y0 - x10*y1", M.ambient.ring)));
  CHECK(ideal_contains(M.ideal(), pp("x21*y1 - x20*y2", M.ambient.ring)));

  // Rational quartic: the x-degree-zero part generates the image curve.
  auto p1 = ring_p1();
  auto Q = rees_ideal(map_of(p1, {"x0^4", "x0^3*x1", "x0*x1^3", "x1^4"}));
  CHECK(ideal_contains(Q.ideal(), pp("y1*y2 - y0*y3", Q.ambient.ring)));
  int image_gens = 0;
  for (const auto& g : Q.gens)
    if (g.xdeg.total() == 0) ++image_gens;
  CHECK(image_gens == 4);

  // Source with a relation: both lifted syzygies of (x0, x1) on the conic.
  auto conic = make_descriptor(p2, {pplist({"x0*x2 - x1^2"}, p2)});
  auto P = rees_ideal(make_map(conic, pplist({"x0", "x1"}, p2)));
  CHECK(ideal_contains(P.ideal(), pp("x1*y0 - x0*y1", P.ambient.ring)));
  CHECK(ideal_contains(P.ideal(), pp("x2*y0 - x1*y1", P.ambient.ring)));
}

TEST_CASE("sym ideal") {
  auto p1 = ring_p1();
  auto S = sym_ideal(map_of(p1, {"x0", "x1"}));
  CHECK(S.gens.size() == 1);
  CHECK(S.gens[0].poly == pp("x1*y0 - x0*y1", S.ambient.ring));

  auto p2 = ring_p2();
  auto C = sym_ideal(map_of(p2, {"x1*x2", "x0*x2", "x0*x1"}));
  CHECK(C.gens.size() == 2);
  CHECK(ideals_equal(
      C.ideal(),
      make_ideal(C.ambient,
                 pplist({"x0*y0 - x1*y1", "x1*y1 - x2*y2"}, C.ambient.ring))));

  // Degree-3 family with syzygy columns (x0, -x1, 0) and (x2^2, x0^2, x1^2):
  // one bilinear generator per column.
  auto lt = map_of(p2, {"x1^3", "x0*x1^2", "-x0^3 - x1*x2^2"});
  auto L = sym_ideal(lt);
  CHECK(L.gens.size() == 2);
  CHECK(ideals_equal(
      L.ideal(),
      make_ideal(L.ambient,
                 pplist({"x0*y0 - x1*y1", "x2^2*y0 + x0^2*y1 + x1^2*y2"},
                        L.ambient.ring))));
  CHECK(bidegrees(L) == std::vector<std::pair<int, int>>{{1, 1}, {2, 1}});
}

TEST_CASE("sym sits inside rees and matches its y-linear part") {
  auto p2 = ring_p2();
  auto p1 = ring_p1();
  std::vector<RationalMap> corpus = {
      map_of(p2, {"x1*x2", "x0*x2", "x0*x1"}),
      map_of(p2, {"x0^2", "x1^2", "x2^2"}),
      map_of(p1, {"x0^4", "x0^3*x1", "x0*x1^3", "x1^4"}),
      map_of(ring_p1p1(), {"x10*x20", "x11*x20", "x11*x21"}),
      map_of(p2, {"-x0*x1*x2", "-x0^2*x2", "x0*x1^2 + x1^2*x2"}),
  };
  for (const auto& F : corpus) {
    auto R = rees_ideal(F);
    auto S = sym_ideal(F);
    auto RI = R.ideal();
    for (const auto& g : S.gens) CHECK(ideal_contains(RI, g.poly));
    std::vector<MultiPoly> ylinear;
    for (const auto& g : R.gens)
      if (g.ydeg == 1) ylinear.push_back(g.poly);
    CHECK(ideals_equal(make_ideal(R.ambient, ylinear), S.ideal()));
  }
}

TEST_CASE("linear type") {
  auto p2 = ring_p2();
  auto p1 = ring_p1();
  CHECK(is_linear_type(map_of(p2, {"x1*x2", "x0*x2", "x0*x1"})));
  CHECK(is_linear_type(map_of(p2, {"x0", "x1", "x2"})));
  CHECK(is_linear_type(map_of(p1, {"x0", "x1"})));
  CHECK_FALSE(is_linear_type(map_of(p1, {"x0^3", "x0^2*x1", "x1^3"})));
  CHECK_FALSE(is_linear_type(map_of(p1, {"x0^4", "x0^3*x1", "x0*x1^3", "x1^4"})));

  // I_1(phi) = (x0, x1, x2^2) is irrelevant-primary: linear type.
  auto lt = map_of(p2, {"x1^3", "x0*x1^2", "-x0^3 - x1*x2^2"});
  CHECK(is_linear_type(lt));
  CHECK(ideals_equal(rees_ideal(lt).ideal(), sym_ideal(lt).ideal()));

  // I_1(phi) = (x0, x1) has a zero on P^2: the Rees algebra picks up one
  // extra equation of bidegree (1, 2) past the two symmetric ones.
  auto nlt = map_of(p2, {"-x0*x1*x2", "-x0^2*x2", "x0*x1^2 + x1^2*x2"});
  CHECK_FALSE(is_linear_type(nlt));
  CHECK_FALSE(ideals_equal(rees_ideal(nlt).ideal(), sym_ideal(nlt).ideal()));
  CHECK(bidegrees(rees_ideal(nlt)) ==
        std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}});
}

TEST_CASE("saturated fiber table") {
  auto p2 = ring_p2();

  auto sq = saturated_fiber_table(map_of(p2, {"x0^2", "x1^2", "x2^2"}), 6);
  CHECK(sq.table.size() == 7);
  CHECK(sq.table[0] == std::pair<long, long>(1, 1));
  CHECK(sq.table[1] == std::pair<long, long>(3, 6));
  CHECK(sq.table[6] == std::pair<long, long>(28, 91));
  CHECK(sq.differences == std::vector<long>{3, 9, 18, 30, 45, 63});
  CHECK(sq.fit.stabilized);
  CHECK(sq.fit.fitted_degree == 2);
  CHECK(sq.fit.leading_delta == 3);

  auto id = saturated_fiber_table(map_of(p2, {"x0", "x1", "x2"}), 4);
  CHECK(id.differences == std::vector<long>{0, 0, 0, 0});
  CHECK(id.fit.stabilized);
  CHECK(id.fit.fitted_degree == 0);
  CHECK(id.fit.leading_delta == 0);

  auto cr = saturated_fiber_table(map_of(p2, {"x1*x2", "x0*x2", "x0*x1"}), 5);
  CHECK(cr.differences == std::vector<long>{0, 0, 0, 0, 0});
  CHECK(cr.fit.stabilized);

  auto mo = saturated_fiber_table(
      map_of(ring_p1p1(), {"x10*x20", "x11*x20", "x11*x21"}), 4);
  CHECK(mo.differences == std::vector<long>{0, 0, 0, 0});

  // Quartic with unsaturated degree-4 piece: one missing section at n = 1,
  // nothing after.
  auto qu = saturated_fiber_table(
      map_of(ring_p1(), {"x0^4", "x0^3*x1", "x0*x1^3", "x1^4"}), 5);
  CHECK(qu.differences == std::vector<long>{1, 0, 0, 0, 0});
  CHECK(qu.fit.stabilized);
  CHECK(qu.fit.fitted_degree == 0);
  CHECK(qu.fit.leading_delta == 0);

  // Projection of the conic from a point on it.
  auto conic = make_descriptor(p2, {pplist({"x0*x2 - x1^2"}, p2)});
  auto pr = saturated_fiber_table(make_map(conic, pplist({"x0", "x1"}, p2)), 4);
  CHECK(pr.table[0] == std::pair<long, long>(1, 1));
  for (long d : pr.differences) CHECK(d >= 0);

  CHECK_THROWS_AS(saturated_fiber_table(map_of(p2, {"x0", "x1", "x2"}), 1),
                  HypothesisError);
}
