#include <doctest.h>

#include "fixtures.hpp"

using nk::Laurent;
using nk::Rat;
using Sizes = std::vector<std::size_t>;

namespace {

nk::Poly P(std::initializer_list<int> c) {
  std::vector<Rat> v;
  for (int x : c) v.emplace_back(x);
  return nk::Poly(std::move(v));
}

bool no_jumps(const std::vector<nk::DegreeJumps>& j) {
  for (const auto& d : j)
    if (!d.points.empty()) return false;
  return true;
}

void check_square_zero(const nk::CochainComplex& c) {
  for (std::size_t d = 0; d + 1 < c.coboundary.size(); ++d)
    CHECK(nk::is_zero(nk::multiply(c.coboundary[d + 1], c.coboundary[d])));
}

// Brute-force Betti numbers of the evaluated complex from Gaussian elimination only.
Sizes brute_betti(const nk::CochainComplex& c, const Rat& s0) {
  Sizes out;
  for (int d = 0; d <= c.top_degree(); ++d) {
    std::size_t b = c.dim(d);
    if (d < static_cast<int>(c.coboundary.size())) b -= nk::rank(nk::evaluate(c.coboundary[static_cast<std::size_t>(d)], s0));
    if (d >= 1) b -= nk::rank(nk::evaluate(c.coboundary[static_cast<std::size_t>(d - 1)], s0));
    out.push_back(b);
  }
  return out;
}

}  // namespace

TEST_CASE("circle with weight 1") {
  const auto in = fx::input(fx::circle(), {{1, Rat(1)}});
  const auto c = nk::build_deformed(in);
  REQUIRE(c.coboundary.size() == 1);
  CHECK(c.coboundary[0](0, 0) == Laurent(0, P({-1, 1})));
  const auto r = nk::novikov(in);
  CHECK(r.background == Sizes{0, 0});
  CHECK(r.scale == 1);
  REQUIRE(r.jumps.size() == 2);
  for (const auto& d : r.jumps) {
    REQUIRE(d.points.size() == 1);
    CHECK(d.points[0].s_interval.exact());
    CHECK(d.points[0].s_interval.lo == 1);
    CHECK(d.points[0].deficit == 1);
    CHECK(d.points[0].factor == P({-1, 1}));
  }
  CHECK(nk::betti_at(in, Rat(1)) == Sizes{1, 1});
  CHECK(nk::betti_at(in, Rat(1, 2)) == Sizes{0, 0});
}

TEST_CASE("circle with a fractional weight uses the scale N") {
  const auto in = fx::input(fx::circle(), {{1, Rat(-2, 3)}});
  const auto c = nk::build_deformed(in);
  CHECK(in.scale() == 3);
  CHECK(c.coboundary[0](0, 0) == Laurent(-2, P({1})) - Laurent(1));
  CHECK(nk::background_betti(in) == Sizes{0, 0});
}

TEST_CASE("torus with weights (1, 0)") {
  const auto in = fx::input(fx::torus(), {{1, Rat(1)}, {2, Rat(0)}});
  const auto c = nk::build_deformed(in);
  REQUIRE(c.coboundary.size() == 2);
  CHECK(c.coboundary[0](0, 0) == Laurent(0, P({-1, 1})));
  CHECK(c.coboundary[0](1, 0).is_zero());
  CHECK(c.coboundary[1](0, 0).is_zero());
  CHECK(c.coboundary[1](0, 1) == Laurent(0, P({-1, 1})));
  check_square_zero(c);
  CHECK(nk::background_betti(in) == Sizes{0, 0, 0});
  CHECK(nk::betti_at(in, Rat(1)) == Sizes{1, 2, 1});
  CHECK(nk::betti_at(in, Rat(3)) == Sizes{0, 0, 0});
  CHECK(brute_betti(c, Rat(1)) == Sizes{1, 2, 1});
  const auto jumps = nk::jump_points(in);
  REQUIRE(jumps.size() == 3);
  for (const auto& d : jumps) {
    REQUIRE(d.points.size() == 1);
    CHECK(d.points[0].s_interval.lo == 1);
    CHECK(d.points[0].s_interval.exact());
  }
  CHECK(jumps[0].points[0].deficit == 1);
  CHECK(jumps[1].points[0].deficit == 2);
  CHECK(jumps[2].points[0].deficit == 1);
  CHECK_THROWS_AS(nk::betti_at(in, Rat(0)), nk::ParameterError);
}

TEST_CASE("twisted torus without deformation") {
  // rank-1 system a -> 2, b -> 3 and zero cocycle: acyclic for every s
  nk::LocalSystem F{1, {{1, nk::RatMatrix::Constant(1, 1, Rat(2))}, {2, nk::RatMatrix::Constant(1, 1, Rat(3))}}};
  const auto in = fx::input(fx::torus(), {{1, Rat(0)}, {2, Rat(0)}}, {}, F);
  CHECK(nk::background_betti(in) == Sizes{0, 0, 0});
  CHECK(no_jumps(nk::jump_points(in)));
  // with a = 1/2 transport, the weight-1 deformation cancels it at s = 2
  F.transport[1] = nk::RatMatrix::Constant(1, 1, Rat(1, 2));
  F.transport[2] = nk::RatMatrix::Constant(1, 1, Rat(1));
  const auto twisted = fx::input(fx::torus(), {{1, Rat(1)}, {2, Rat(0)}}, {}, F);
  const auto j = nk::jump_points(twisted);
  REQUIRE(j[0].points.size() == 1);
  CHECK(j[0].points[0].s_interval.lo == 2);
  CHECK(nk::betti_at(twisted, Rat(2)) == Sizes{1, 2, 1});
}

TEST_CASE("interval pairs") {
  const auto both = fx::input(fx::interval(), {{2, Rat(0)}});
  CHECK(nk::background_betti(both) == Sizes{1, 0});
  auto end = fx::input(fx::interval(), {{2, Rat(0)}}, {0});
  CHECK(nk::background_betti(end) == Sizes{0, 0});
  CHECK(nk::background_betti(nk::build_cone(end)) == Sizes{0, 0, 0});
  auto ends = fx::input(fx::interval(), {{2, Rat(4, 3)}}, {0, 1});
  CHECK(nk::background_betti(ends) == Sizes{0, 1});
  CHECK(nk::background_betti(nk::build_cone(ends)) == Sizes{0, 1, 0});
  CHECK(no_jumps(nk::jump_points(ends)));
}

TEST_CASE("cone of an empty subcomplex is the absolute complex") {
  const auto in = fx::input(fx::torus(), {{1, Rat(1)}, {2, Rat(0)}});
  const auto cone = nk::build_cone(in);
  CHECK(nk::background_betti(cone) == Sizes{0, 0, 0, 0});
  CHECK(nk::betti_at(cone, Rat(1)) == Sizes{1, 2, 1, 0});
}

TEST_CASE("invalid inputs are rejected") {
  CHECK_THROWS_AS(nk::build_deformed(fx::input(fx::torus({{1, 1}, {2, 1}, {1, 1}, {2, 1}}), {{1, Rat(1)}, {2, Rat(0)}})),
                  nk::InputError);
  CHECK_THROWS_AS(nk::build_deformed(fx::input(fx::circle(), {})), nk::InputError);
  CHECK_THROWS_AS(nk::build_deformed(fx::input(fx::interval(), {{2, Rat(0)}}, {2})), nk::InputError);
}

TEST_CASE("three-cells use a transport path through the closure") {
  // h(0) = 0, h(1) = 1, h(2) = 3 and a rank-2 system with a nontrivial transport on a
  const auto ball = fx::pinched_ball();
  const auto w = fx::exact_weights(ball, {{0, Rat(0)}, {1, Rat(1)}, {2, Rat(3)}});
  nk::LocalSystem F{2, {{3, fx::mat2(2, 1, 1, 1)}, {4, fx::mat2(0, 1, 1, 0)}, {5, fx::mat2(0, 1, 1, 0)}}};
  const auto in = fx::input(ball, w, {}, F);
  const auto c = nk::build_deformed(in);
  check_square_zero(c);
  // the 3-cell is based at 0 and its face 7 at 1: entry -s * A(a)
  const auto& d2 = c.coboundary[2];
  CHECK(d2(0, 2) == Laurent::monomial(Rat(-2), 1));
  CHECK(d2(1, 3) == Laurent::monomial(Rat(-1), 1));
  CHECK(nk::background_betti(in) == Sizes{2, 0, 0, 0});
  CHECK(no_jumps(nk::jump_points(in)));

  auto overridden = in;
  overridden.incidence_transport[8][7] = {{3, 1}, {4, 1}, {4, -1}};
  CHECK(nk::build_deformed(overridden).coboundary[2] == d2);
  overridden.incidence_transport[8][7] = {{4, 1}};
  CHECK_THROWS_AS(nk::build_deformed(overridden), nk::InputError);
}

TEST_CASE("exact cocycles are gauge-equivalent to the untwisted complex") {
  const auto ball = fx::pinched_ball();
  const std::map<nk::CellId, Rat> h{{0, Rat(1, 2)}, {1, Rat(-1)}, {2, Rat(2, 3)}};
  const auto exact = fx::input(ball, fx::exact_weights(ball, h));
  std::map<nk::CellId, Rat> zero;
  for (nk::CellId e : ball.cells(1)) zero[e] = 0;
  const auto flat = fx::input(ball, zero);
  const auto a = nk::build_deformed(exact), b = nk::build_deformed(flat);
  const long N = exact.scale();
  CHECK(N == 6);
  // base vertices: 0 -> itself, edges at tails, faces 6, 7 at 0 and 1, the 3-cell at 0
  const std::map<nk::CellId, nk::CellId> base{{0, 0}, {1, 1}, {2, 2}, {3, 0}, {4, 1}, {5, 1}, {6, 0}, {7, 1}, {8, 0}};
  for (std::size_t d = 0; d < a.coboundary.size(); ++d)
    for (Eigen::Index i = 0; i < a.coboundary[d].rows(); ++i)
      for (Eigen::Index j = 0; j < a.coboundary[d].cols(); ++j) {
        const auto row = a.cells[d + 1][static_cast<std::size_t>(i)], col = a.cells[d][static_cast<std::size_t>(j)];
        const Rat k = Rat(N) * (h.at(base.at(col)) - h.at(base.at(row)));
        CHECK(a.coboundary[d](i, j) == Laurent::monomial(Rat(1), nk::numerator_of(k).convert_to<int>()) * b.coboundary[d](i, j));
      }
  CHECK(no_jumps(nk::jump_points(exact)));
  CHECK(nk::background_betti(exact) == nk::betti_at(exact, Rat(1)));
}

TEST_CASE("fuzzed exactness properties") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> num(1, 400);
  for (int trial = 0; trial < 200; ++trial) {
    CAPTURE(trial);
    const auto r = fx::random_input(rng);
    const auto& in = r.in;
    const auto c = nk::build_deformed(in);
    check_square_zero(c);
    const auto cone = nk::build_cone(in);
    for (std::size_t k = 0; k + 1 < cone.differential.size(); ++k)
      CHECK(nk::is_zero(nk::multiply(cone.differential[k + 1], cone.differential[k])));

    const auto result = nk::novikov(in);
    auto cone_betti = nk::background_betti(cone);
    REQUIRE(cone_betti.size() == result.background.size() + 1);
    CHECK(cone_betti.back() == 0);
    cone_betti.pop_back();
    CHECK(cone_betti == result.background);

    const long chi = in.F.rank * nk::euler_characteristic(in.pair);
    CHECK(nk::alternating_sum(result.background) == chi);
    for (int k = 0; k < 20; ++k) {
      const Rat s0 = Rat(num(rng), 40);
      const auto b = nk::betti_at(c, s0);
      CHECK(nk::alternating_sum(b) == chi);
      for (std::size_t i = 0; i < b.size(); ++i) CHECK(b[i] >= result.background[i]);
      if (k < 3) {
        auto cb = nk::betti_at(cone, s0);
        cb.pop_back();
        CHECK(cb == b);
      }
    }
    for (const auto& d : result.jumps)
      for (const auto& p : d.points) {
        CHECK(p.deficit > 0);
        if (p.s_interval.exact())
          CHECK(nk::betti_at(c, p.s_interval.lo)[static_cast<std::size_t>(d.degree)] ==
                result.background[static_cast<std::size_t>(d.degree)] + p.deficit);
      }
    if (r.exact) CHECK(no_jumps(result.jumps));

    if (r.integral) {
      auto scaled = in;
      const int k = 2;
      for (auto& [e, w] : scaled.omega.weight) w *= k;
      const auto sc = nk::build_deformed(scaled);
      CHECK(nk::background_betti(sc) == result.background);
      for (int q = 1; q <= 3; ++q) {
        const Rat s1 = Rat(q, 2);
        CHECK(nk::betti_at(sc, s1) == nk::betti_at(c, s1 * s1));
      }
    }
  }
}
