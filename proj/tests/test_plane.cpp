#include "birat/plane.hpp"

#include <random>

#include "birat/blowup.hpp"
#include "birat/degree.hpp"
#include "birat/errors.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace birat;
using namespace testutil;

namespace {

Ideal plane_ideal(const std::vector<std::string>& ss) {
  auto r = ring_p2();
  return make_ideal(make_descriptor(r), pplist(ss, r));
}

Ideal cremona() { return plane_ideal({"x1*x2", "x0*x2", "x0*x1"}); }

// Minors of [[x0, x1*x2], [-x1, x0*x2], [0, x0^2]].
Ideal d3() {
  return plane_ideal({"-x0^2*x1", "-x0^3", "x0^2*x2 + x1^2*x2"});
}

// Minors of [[x0, x2^2], [-x1, x0^2], [0, x1^2]]; the entries reach all
// three variables, so the entry ideal has height three.
Ideal lt3() { return plane_ideal({"x1^3", "x0*x1^2", "-x0^3 - x1*x2^2"}); }

// d3 pushed through x0 -> x0 + x2, so the linear column is (x0+x2, -x1, 0).
Ideal d3_shifted() {
  return plane_ideal({"-x0^2*x1 - 2*x0*x1*x2 - x1*x2^2",
                      "-x0^3 - 3*x0^2*x2 - 3*x0*x2^2 - x2^3",
                      "x0^2*x2 + x1^2*x2 + 2*x0*x2^2 + x2^3"});
}

// Minors of [[x0, x1^2*x2], [-x1, x0*x1*x2], [0, x0^3]]: the chain runs to
// its full length d - 2.
Ideal d4_birational() {
  return plane_ideal({"-x0^3*x1", "-x0^4", "x0^2*x1*x2 + x1^3*x2"});
}

// Minors of [[x0, x1*x2^2], [-x1, x0*x2^2], [0, x0^2*x1]]: the chain stops
// one step short and the map is a double cover.
Ideal d4_degree2() {
  return plane_ideal({"-x0^2*x1^2", "-x0^3*x1", "x0^2*x2^2 + x1^2*x2^2"});
}

// Minors of [[x0^2, x1*x2], [x1^2, x0*x2], [x2^2, x0*x1]]: both column
// degrees are two.
Ideal quadric_columns() {
  return plane_ideal(
      {"x0*x1^3 - x0*x2^3", "-x0^3*x1 + x1*x2^3", "x0^3*x2 - x1^3*x2"});
}

}  // namespace

TEST_CASE("hilbert-burch presentations") {
  SUBCASE("quadratic cremona") {
    auto I = cremona();
    auto r = I.desc.ring;
    auto hb = hilbert_burch(I);
    CHECK(hb.d == 2);
    CHECK(hb.mu1 == 1);
    CHECK(hb.mu2 == 1);
    CHECK(hb.saturated);
    CHECK(hb.ht_I1 == 3);
    CHECK(hb.phi[0][0].is_zero());
    CHECK(hb.phi[1][0] == pp("x1", r));
    CHECK(hb.phi[2][0] == pp("-x2", r));
    CHECK(hb.phi[0][1] == pp("x0", r));
    CHECK(hb.phi[1][1] == pp("-x1", r));
    CHECK(hb.phi[2][1].is_zero());
  }

  SUBCASE("cubic with a linear syzygy") {
    auto I = d3();
    auto r = I.desc.ring;
    auto hb = hilbert_burch(I);
    CHECK(hb.d == 3);
    CHECK(hb.mu1 == 1);
    CHECK(hb.mu2 == 2);
    CHECK(hb.saturated);
    CHECK(hb.ht_I1 == 2);
    CHECK(hb.phi[0][0] == pp("x0", r));
    CHECK(hb.phi[1][0] == pp("-x1", r));
    CHECK(hb.phi[2][0].is_zero());
    CHECK(hb.phi[0][1] == pp("x1*x2", r));
    CHECK(hb.phi[1][1] == pp("x0*x2", r));
    CHECK(hb.phi[2][1] == pp("x0^2", r));
  }

  SUBCASE("linear-type cubic") {
    auto I = lt3();
    auto r = I.desc.ring;
    auto hb = hilbert_burch(I);
    CHECK(hb.d == 3);
    CHECK(hb.mu1 == 1);
    CHECK(hb.mu2 == 2);
    CHECK(hb.saturated);
    CHECK(hb.ht_I1 == 3);
    CHECK(hb.phi[0][0] == pp("x0", r));
    CHECK(hb.phi[1][0] == pp("-x1", r));
    CHECK(hb.phi[2][0].is_zero());
    CHECK(hb.phi[0][1] == pp("x2^2", r));
    CHECK(hb.phi[1][1] == pp("x0^2", r));
    CHECK(hb.phi[2][1] == pp("x1^2", r));
  }

  SUBCASE("columns are syzygies of the generators") {
    for (const auto& I :
         {cremona(), d3(), lt3(), d4_birational(), quadric_columns()}) {
      auto hb = hilbert_burch(I);
      for (int j = 0; j < 2; ++j) {
        MultiPoly acc = MultiPoly::zero(hb.desc.ring);
        for (int i = 0; i < 3; ++i) acc = acc + hb.phi[i][j] * hb.gens[i];
        CHECK(acc.is_zero());
      }
    }
  }

  SUBCASE("three squares have three koszul syzygies") {
    CHECK_THROWS_AS(hilbert_burch(plane_ideal({"x0^2", "x1^2", "x2^2"})),
                    NotHilbertBurchError);
  }

  SUBCASE("wrong ambient or shape") {
    auto r1 = ring_p1();
    CHECK_THROWS_AS(
        hilbert_burch(make_ideal(make_descriptor(r1),
                                 pplist({"x0^2", "x0*x1", "x1^2"}, r1))),
        WrongShapeError);
    CHECK_THROWS_AS(hilbert_burch(plane_ideal({"x0", "x1^2", "x2^2"})),
                    WrongShapeError);
    CHECK_THROWS_AS(hilbert_burch(plane_ideal({"x0", "x1"})), WrongShapeError);
  }
}

TEST_CASE("normalization of the linear column") {
  SUBCASE("already normalized input is fixed") {
    auto hb = hilbert_burch(d3());
    auto r = hb.desc.ring;
    auto norm = normalize_mu1(hb);
    CHECK(norm.subst[0] == pp("x0", r));
    CHECK(norm.subst[1] == pp("x1", r));
    CHECK(norm.subst[2] == pp("x2", r));
    CHECK(norm.hb.gens == hb.gens);
    CHECK(norm.hb.phi == hb.phi);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(norm.gen_change.at(i, j) == (i == j ? 1 : 0));
  }

  SUBCASE("shifted cubic is brought back") {
    auto I = d3_shifted();
    auto r = I.desc.ring;
    auto hb = hilbert_burch(I);
    CHECK(hb.mu1 == 1);
    CHECK(hb.ht_I1 == 2);
    CHECK(hb.phi[0][0] == pp("x0 + x2", r));
    CHECK(hb.phi[1][0] == pp("-x1", r));
    CHECK(hb.phi[2][0].is_zero());
    auto norm = normalize_mu1(hb);
    CHECK(norm.subst[0] == pp("x0 - x2", r));
    CHECK(norm.subst[1] == pp("x1", r));
    CHECK(norm.subst[2] == pp("x2", r));
    CHECK(norm.hb.gens ==
          pplist({"-x0^2*x1", "-x0^3", "x0^2*x2 + x1^2*x2"}, r));
  }

  SUBCASE("degenerate linear span") {
    auto hb = hilbert_burch(d3());
    hb.phi[1][0] = -hb.phi[0][0];
    CHECK_THROWS_AS(normalize_mu1(hb), HypothesisError);
  }

  SUBCASE("height-three entry ideals are rejected") {
    CHECK_THROWS_AS(normalize_mu1(hilbert_burch(cremona())), HypothesisError);
    CHECK_THROWS_AS(normalize_mu1(hilbert_burch(lt3())), HypothesisError);
    CHECK_THROWS_AS(normalize_mu1(hilbert_burch(quadric_columns())),
                    HypothesisError);
  }
}

TEST_CASE("sylvester chains") {
  SUBCASE("cubic chain of length one") {
    auto chain = sylvester_chain(hilbert_burch(d3()));
    auto A = chain.ambient.ring;
    CHECK(chain.m == 1);
    CHECK(chain.g1 == pp("x0*y0 - x1*y1", A));
    CHECK(chain.g2 == pp("x1*x2*y0 + x0*x2*y1 + x0^2*y2", A));
    REQUIRE(chain.forms.size() == 1);
    CHECK(chain.forms[0] == pp("x2*y0^2 + x2*y1^2 + x0*y1*y2", A));
    REQUIRE(chain.splits.size() == 1);
    CHECK(chain.splits[0].first == pp("x2*y1 + x0*y2", A));
    CHECK(chain.splits[0].second == pp("x2*y0", A));
  }

  SUBCASE("bidegrees step down in x and up in y") {
    for (const auto& I : {d3(), d4_birational()}) {
      auto hb = hilbert_burch(I);
      auto norm = normalize_mu1(hb);
      auto chain = sylvester_chain(norm.hb);
      CHECK(multi_degree(chain.g1).v == std::vector<int>{1, 1});
      CHECK(multi_degree(chain.g2).v == std::vector<int>{hb.d - 1, 1});
      for (int i = 0; i < chain.m; ++i)
        CHECK(multi_degree(chain.forms[i]).v ==
              std::vector<int>{hb.d - 2 - i, i + 2});
    }
  }

  SUBCASE("quartic chain of length two") {
    auto norm = normalize_mu1(hilbert_burch(d4_birational()));
    auto chain = sylvester_chain(norm.hb);
    auto A = chain.ambient.ring;
    REQUIRE(chain.m == 2);
    CHECK(chain.forms[0] == pp("x1*x2*y0^2 + x0*x2*y0*y1 + x0^2*y1*y2", A));
    CHECK(chain.forms[1] == pp("x2*y0^3 + x2*y0*y1^2 + x0*y1^2*y2", A));

    auto norm2 = normalize_mu1(hilbert_burch(d4_degree2()));
    CHECK(sylvester_chain(norm2.hb).m == 1);
  }

  SUBCASE("chain in restored coordinates") {
    auto norm = normalize_mu1(hilbert_burch(d3_shifted()));
    auto chain = sylvester_chain(norm.hb);
    CHECK(chain.m == 1);
    CHECK(chain.g2 == pp("x1*x2*y0 + x0*x2*y1 + x0^2*y2", chain.ambient.ring));
  }

  SUBCASE("second column outside (x0, x1) stops immediately") {
    auto chain = sylvester_chain(hilbert_burch(lt3()));
    CHECK(chain.m == 0);
    CHECK(chain.forms.empty());
    CHECK(chain.g2 == pp("x2^2*y0 + x0^2*y1 + x1^2*y2", chain.ambient.ring));
  }

  SUBCASE("cremona after a column swap") {
    auto hb = hilbert_burch(cremona());
    for (int i = 0; i < 3; ++i) std::swap(hb.phi[i][0], hb.phi[i][1]);
    auto chain = sylvester_chain(hb);
    CHECK(chain.m == 0);
    CHECK(chain.g2 == pp("x1*y1 - x2*y2", chain.ambient.ring));
  }

  SUBCASE("unnormalized input is refused") {
    CHECK_THROWS_AS(sylvester_chain(hilbert_burch(cremona())),
                    HypothesisError);
  }
}

TEST_CASE("rees equations from the chain") {
  SUBCASE("cubic needs all three") {
    auto eqs = rees_equations_mu1(hilbert_burch(d3()));
    REQUIRE(eqs.gens.size() == 3);
    CHECK(eqs.gens[0].xdeg.v == std::vector<int>{1});
    CHECK(eqs.gens[0].ydeg == 1);
    CHECK(eqs.gens[1].xdeg.v == std::vector<int>{2});
    CHECK(eqs.gens[1].ydeg == 1);
    CHECK(eqs.gens[2].xdeg.v == std::vector<int>{1});
    CHECK(eqs.gens[2].ydeg == 2);
  }

  SUBCASE("quartic needs all four") {
    auto norm = normalize_mu1(hilbert_burch(d4_birational()));
    auto eqs = rees_equations_mu1(norm.hb);
    REQUIRE(eqs.gens.size() == 4);
    CHECK(eqs.gens[1].xdeg.v == std::vector<int>{3});
    CHECK(eqs.gens[2].xdeg.v == std::vector<int>{2});
    CHECK(eqs.gens[2].ydeg == 2);
    CHECK(eqs.gens[3].xdeg.v == std::vector<int>{1});
    CHECK(eqs.gens[3].ydeg == 3);
  }

  SUBCASE("empty chain matches linear type") {
    auto I = lt3();
    auto eqs = rees_equations_mu1(hilbert_burch(I));
    CHECK(eqs.gens.size() == 2);
    CHECK(is_linear_type(make_map(I.desc, I.gens)));

    auto hb = hilbert_burch(cremona());
    for (int i = 0; i < 3; ++i) std::swap(hb.phi[i][0], hb.phi[i][1]);
    CHECK(rees_equations_mu1(hb).gens.size() == 2);
  }
}

TEST_CASE("birationality of plane maps") {
  SUBCASE("frozen verdicts") {
    auto v = is_birational_mu1(d3());
    CHECK(v.birational);
    CHECK(v.d == 3);
    CHECK(v.ht_I1 == 2);
    CHECK(v.m == 1);

    auto w = is_birational_mu1(lt3());
    CHECK_FALSE(w.birational);
    CHECK(w.ht_I1 == 3);
    CHECK(w.m == -1);

    // Low degree never reaches the chain: deg <= mu1 * mu2 == 1 already.
    auto c = is_birational_mu1(cremona());
    CHECK(c.birational);
    CHECK(c.d == 2);
    CHECK(c.m == -1);

    CHECK(is_birational_mu1(d3_shifted()).birational);
  }

  SUBCASE("degree-four pair against the fiber count") {
    auto I = d4_birational();
    auto v = is_birational_mu1(I);
    CHECK(v.birational);
    CHECK(v.ht_I1 == 2);
    CHECK(v.m == 2);
    CHECK(fiber_oracle(make_map(I.desc, I.gens)) == 1);

    auto J = d4_degree2();
    auto w = is_birational_mu1(J);
    CHECK_FALSE(w.birational);
    CHECK(w.ht_I1 == 2);
    CHECK(w.m == 1);
    CHECK(fiber_oracle(make_map(J.desc, J.gens)) == 2);
  }

  SUBCASE("hypothesis failures") {
    CHECK_THROWS_AS(is_birational_mu1(plane_ideal({"x0^2", "x0*x1", "x1^2"})),
                    HypothesisError);
    CHECK_THROWS_AS(is_birational_mu1(quadric_columns()), HypothesisError);
  }

  SUBCASE("verdicts survive a change of coordinates") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> c(-1, 1);
    auto change = [&](const Ideal& I) {
      auto r = I.desc.ring;
      // Unit-triangular factors keep the substitution invertible.
      int l10 = c(rng), l20 = c(rng), l21 = c(rng);
      int u01 = c(rng), u02 = c(rng), u12 = c(rng);
      int A[3][3] = {{1, u01, u02},
                     {l10, l10 * u01 + 1, l10 * u02 + u12},
                     {l20, l20 * u01 + l21, l20 * u02 + l21 * u12 + 1}};
      std::vector<MultiPoly> images;
      for (int i = 0; i < 3; ++i) {
        MultiPoly f = MultiPoly::zero(r);
        for (int j = 0; j < 3; ++j)
          if (A[i][j] != 0) f = f + scale(MultiPoly::variable(r, j), A[i][j]);
        images.push_back(std::move(f));
      }
      std::vector<MultiPoly> gens;
      for (const auto& g : I.gens) gens.push_back(substitute(g, r, images));
      return make_ideal(I.desc, std::move(gens));
    };
    for (int t = 0; t < 3; ++t) {
      CHECK(is_birational_mu1(change(d3())).birational);
      CHECK_FALSE(is_birational_mu1(change(lt3())).birational);
    }
  }
}

TEST_CASE("degree bound from the column degrees") {
  SUBCASE("mu split bounds") {
    auto cb = degree_bound_mu(hilbert_burch(cremona()));
    CHECK(cb.bound == 1);
    CHECK(cb.exact_if_lci);

    auto db = degree_bound_mu(hilbert_burch(d3()));
    CHECK(db.bound == 2);
    CHECK_FALSE(db.exact_if_lci);

    auto lb = degree_bound_mu(hilbert_burch(lt3()));
    CHECK(lb.bound == 2);
    CHECK(lb.exact_if_lci);
  }

  SUBCASE("balanced quartic attains the bound") {
    auto I = quadric_columns();
    auto hb = hilbert_burch(I);
    CHECK(hb.mu1 == 2);
    CHECK(hb.mu2 == 2);
    CHECK(hb.ht_I1 == 3);
    CHECK(hb.saturated);
    auto b = degree_bound_mu(hb);
    CHECK(b.bound == 4);
    CHECK(b.exact_if_lci);
    CHECK(fiber_oracle(make_map(I.desc, I.gens)) == 4);
  }
}
