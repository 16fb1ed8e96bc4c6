#include "birat/birational.hpp"
#include "birat/errors.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace birat;
using namespace testutil;

namespace {

RationalMap map_of(RingPtr r, const std::vector<std::string>& ss) {
  return make_map(make_descriptor(r), pplist(ss, r));
}

// g_a(f) x_b == g_b(f) x_a within each block, with some g_a(f) nonzero.
void check_inverse_sound(const RationalMap& F, const MapAnalysis& an) {
  const Ring& src = *F.source.ring;
  REQUIRE(an.inverse.size() == static_cast<size_t>(src.n_blocks()));
  for (int i = 0; i < src.n_blocks(); ++i) {
    const auto& tuple = an.inverse[i];
    REQUIRE(tuple.size() == static_cast<size_t>(src.block_size(i)));
    std::vector<MultiPoly> gf;
    bool nonzero = false;
    for (const auto& g : tuple) {
      gf.push_back(substitute(g, F.source.ring, F.forms));
      nonzero = nonzero || !gf.back().is_zero();
    }
    CHECK(nonzero);
    auto x = [&](int k) {
      return MultiPoly::variable(F.source.ring, src.block_start[i] + k);
    };
    for (int a = 0; a < src.block_size(i); ++a)
      for (int b = a + 1; b < src.block_size(i); ++b) {
        MultiPoly cross = gf[a] * x(b) - gf[b] * x(a);
        if (F.source.has_relations())
          cross = normal_form(cross, groebner(make_ideal(F.source, {})));
        CHECK(cross.is_zero());
      }
  }
}

}  // namespace

TEST_CASE("jacobian dual assembly") {
  auto p2 = ring_p2();

  auto jd = jacobian_dual(rees_ideal(map_of(p2, {"x0", "x1", "x2"})));
  REQUIRE(jd.psi.size() == 1);
  REQUIRE(jd.psi[0].size() == 3);
  CHECK(jd.equations[0].size() == 3);
  // Euler identity: sum_k x_k psi[j][k] reproduces the source equation.
  auto amb = jd.equations[0].front().ring;
  for (size_t j = 0; j < jd.psi[0].size(); ++j) {
    MultiPoly sum = MultiPoly::zero(amb);
    for (int k = 0; k < 3; ++k)
      sum = sum + MultiPoly::variable(amb, k) * transport(jd.psi[0][j][k], amb);
    CHECK(sum == jd.equations[0][j]);
  }

  auto cj = jacobian_dual(rees_ideal(map_of(p2, {"x1*x2", "x0*x2", "x0*x1"})));
  REQUIRE(cj.psi[0].size() == 2);
  auto y = cj.target;
  CHECK(cj.psi[0][0] == pplist({"0", "y1", "-y2"}, y));
  CHECK(cj.psi[0][1] == pplist({"y0", "0", "-y2"}, y));

  auto mj = jacobian_dual(
      rees_ideal(map_of(ring_p1p1(), {"x10*x20", "x11*x20", "x11*x21"})));
  REQUIRE(mj.psi.size() == 2);
  CHECK(mj.psi[0].size() >= 1);
  CHECK(mj.psi[1].size() >= 1);
  for (const auto& row : mj.psi[0]) CHECK(row.size() == 2);

  // No x-linear equations at all for the squares map.
  auto sj = jacobian_dual(rees_ideal(map_of(p2, {"x0^2", "x1^2", "x2^2"})));
  CHECK(sj.psi[0].empty());
  CHECK_FALSE(sj.capped);

  // A y-degree cap of zero drops every bilinear equation.
  auto capped =
      jacobian_dual(rees_ideal(map_of(p2, {"x1*x2", "x0*x2", "x0*x1"})), 0);
  CHECK(capped.capped);
  CHECK(capped.psi[0].empty());
}

TEST_CASE("rank modulo image") {
  auto y3 = make_ring({{"y0", "y1", "y2"}}, Field::rationals(), true);
  auto zero = make_ideal(make_descriptor(y3), {});
  std::vector<std::vector<MultiPoly>> Z(2, pplist({"0", "0"}, y3));
  CHECK(rank_mod_image(Z, zero) == 0);
  CHECK(rank_mod_image({}, zero) == 0);

  std::vector<std::vector<MultiPoly>> M = {pplist({"y0", "y1"}, y3),
                                           pplist({"y1", "y2"}, y3)};
  CHECK(rank_mod_image(M, zero) == 2);
  // Modulo the conic the determinant y0 y2 - y1^2 collapses to rank 1.
  auto conic = make_ideal(make_descriptor(y3), pplist({"y0*y2 - y1^2"}, y3));
  CHECK(rank_mod_image(M, conic) == 1);
}

TEST_CASE("main criterion and inverse") {
  auto p2 = ring_p2();

  auto id = is_birational_jacdual(map_of(p2, {"x0", "x1", "x2"}));
  CHECK(id.verdict == Verdict::Birational);
  CHECK(id.image_dim == 2);
  CHECK(id.image_degree == 1);
  CHECK(id.ranks == std::vector<int>{2});
  REQUIRE(id.inverse.size() == 1);
  // Non-minimal but projectively correct representative y2 * (y0, y1, y2).
  CHECK(id.inverse[0] == pplist({"y0*y2", "y1*y2", "y2^2"}, id.image.ring()));

  auto cremona = map_of(p2, {"x1*x2", "x0*x2", "x0*x1"});
  auto cr = is_birational_jacdual(cremona);
  CHECK(cr.verdict == Verdict::Birational);
  CHECK(cr.inverse[0] ==
        pplist({"y1*y2", "y0*y2", "y0*y1"}, cr.image.ring()));
  check_inverse_sound(cremona, cr);

  auto monomial = map_of(ring_p1p1(), {"x10*x20", "x11*x20", "x11*x21"});
  auto mo = is_birational_jacdual(monomial);
  CHECK(mo.verdict == Verdict::Birational);
  CHECK(mo.ranks == std::vector<int>{1, 1});
  REQUIRE(mo.inverse.size() == 2);
  CHECK(mo.inverse[0] == pplist({"y0", "y1"}, mo.image.ring()));
  CHECK(mo.inverse[1] == pplist({"y1", "y2"}, mo.image.ring()));
  check_inverse_sound(monomial, mo);

  auto sq = is_birational_jacdual(map_of(p2, {"x0^2", "x1^2", "x2^2"}));
  CHECK(sq.verdict == Verdict::NotBirational);
  CHECK(sq.ranks == std::vector<int>{0});
  CHECK(sq.reason == "jacobian dual rank deficiency");

  // Image collapses to a line inside P^2.
  auto thin = is_birational_jacdual(
      map_of(ring_p1p1(), {"x10", "x11", "x10 + x11"}));
  CHECK(thin.verdict == Verdict::NotBirational);
  CHECK(thin.image_dim == 1);
  CHECK(thin.reason.find("not generically finite") == 0);

  // Parametrization of the rational quartic curve in P^3.
  auto quartic = map_of(ring_p1(), {"x0^4", "x0^3*x1", "x0*x1^3", "x1^4"});
  auto qu = is_birational_jacdual(quartic);
  CHECK(qu.verdict == Verdict::Birational);
  CHECK(qu.image_dim == 1);
  CHECK(qu.image_degree == 4);
  check_inverse_sound(quartic, qu);

  // A binding cap downgrades a failed rank check to undetermined.
  auto capped = is_birational_jacdual(cremona, 0);
  CHECK(capped.verdict == Verdict::Undetermined);
  auto uncapped = is_birational_jacdual(cremona, 1);
  CHECK(uncapped.verdict == Verdict::Birational);
}

TEST_CASE("rank inequalities across the corpus") {
  std::vector<RationalMap> corpus = {
      map_of(ring_p2(), {"x0", "x1", "x2"}),
      map_of(ring_p2(), {"x1*x2", "x0*x2", "x0*x1"}),
      map_of(ring_p2(), {"x0^2", "x1^2", "x2^2"}),
      map_of(ring_p2(), {"x0^3", "x1^3", "x2^3"}),
      map_of(ring_p1p1(), {"x10*x20", "x11*x20", "x11*x21"}),
      map_of(ring_p1(), {"x0^4", "x0^3*x1", "x0*x1^3", "x1^4"}),
  };
  for (const auto& F : corpus) {
    auto an = is_birational_jacdual(F);
    if (an.ranks.empty()) continue;
    const Ring& src = *F.source.ring;
    int delta = 0, rsum = 0, ranksum = 0;
    for (int b = 0; b < src.n_blocks(); ++b) {
      CHECK(an.ranks[b] <= src.block_size(b) - 1);
      delta += src.block_size(b) - 1;  // free blocks here
      rsum += src.block_size(b) - 1;
      ranksum += an.ranks[b];
    }
    CHECK(rsum - ranksum >= delta - an.image_dim);
  }
}

TEST_CASE("linear syzygy rank") {
  auto p2 = ring_p2();
  CHECK(linear_syzygy_rank(map_of(p2, {"x1*x2", "x0*x2", "x0*x1"})) == 2);
  CHECK(linear_syzygy_rank(map_of(p2, {"x0", "x1", "x2"})) == 2);
  CHECK(linear_syzygy_rank(map_of(p2, {"x0^3", "x1^3", "x2^3"})) == 0);
  CHECK(linear_syzygy_rank(map_of(p2, {"x0^2", "x1^2", "x2^2"})) == 0);
  CHECK(linear_syzygy_rank(
            map_of(ring_p1p1(), {"x10*x20", "x11*x20", "x11*x21"})) == 2);
  CHECK(linear_syzygy_rank(map_of(ring_p1(), {"x0", "x1"})) == 1);

  // Under linear type the full-rank condition characterizes birationality in
  // both directions.
  struct Case {
    RationalMap F;
    int expected_rank;
  };
  auto lt = map_of(p2, {"x1^3", "x0*x1^2", "-x0^3 - x1*x2^2"});
  REQUIRE(is_linear_type(lt));
  CHECK(linear_syzygy_rank(lt) == 1);
  CHECK(is_birational_jacdual(lt).verdict == Verdict::NotBirational);

  auto cremona = map_of(p2, {"x1*x2", "x0*x2", "x0*x1"});
  REQUIRE(is_linear_type(cremona));
  CHECK(linear_syzygy_rank(cremona) == 2);
  CHECK(is_birational_jacdual(cremona).verdict == Verdict::Birational);
}
