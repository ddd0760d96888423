#include <doctest.h>

#include "fixtures.hpp"

using nk::Rat;

namespace {

bool has_invariant(const nk::ValidationReport& r, const std::string& name) {
  for (const auto& v : r)
    if (v.invariant == name) return true;
  return false;
}

}  // namespace

TEST_CASE("standard models validate") {
  CHECK(nk::validate_complex(fx::circle()).empty());
  CHECK(nk::validate_complex(fx::torus()).empty());
  CHECK(nk::validate_complex(fx::interval()).empty());
  CHECK(nk::validate_complex(fx::pinched_ball()).empty());
}

TEST_CASE("corrupted torus incidence is reported") {
  const std::vector<nk::Letter> w{{1, 1}, {2, 1}, {1, -1}, {2, -1}};
  nk::CellComplex c({{0}, {1, 2}, {3}}, {{1, fx::edge(0, 0)}, {2, fx::edge(0, 0)}, {3, {{1, 1}, {2, 0}}}}, {{3, w}});
  const auto r = nk::validate_complex(c);
  REQUIRE_FALSE(r.empty());
  CHECK(r.front().cell == 3);
  CHECK(has_invariant(r, "incidence = abelianized word"));
}

TEST_CASE("structural violations") {
  SUBCASE("unknown face") {
    nk::CellComplex c({{0}, {1}}, {{1, fx::edge(0, 9)}}, {});
    CHECK(has_invariant(nk::validate_complex(c), "referenced cells exist"));
  }
  SUBCASE("wrong dimension") {
    nk::CellComplex c({{0}, {1}, {2}}, {{1, fx::edge(0, 0)}, {2, {{0, 1}}}}, {{2, {{1, 1}}}});
    CHECK(has_invariant(nk::validate_complex(c), "cell dimensions"));
  }
  SUBCASE("open attaching word") {
    nk::CellComplex c({{0, 1}, {2}, {3}}, {{2, fx::edge(0, 1)}, {3, {{2, 1}}}}, {{3, {{2, 1}}}});
    CHECK(has_invariant(nk::validate_complex(c), "attaching words"));
  }
  SUBCASE("double boundary") {
    nk::CellComplex c({{0}, {1}, {2}, {3}},
                      {{1, fx::edge(0, 0)}, {2, {{1, 1}, {1, -1}}}, {3, {{2, 1}}}},
                      {{2, {{1, 1}, {1, -1}}}});
    CHECK(nk::validate_complex(c).empty());  // 3-cell boundary 2 has zero boundary itself
    nk::CellComplex bad({{0, 1}, {2}, {3}}, {{2, fx::edge(0, 1)}, {3, {{2, 1}}}}, {{3, {{2, 1}, {2, -1}}}});
    CHECK(has_invariant(nk::validate_complex(bad), "incidence = abelianized word"));
  }
  SUBCASE("subcomplex closure") {
    nk::CellPair p{fx::interval(), {2}};
    CHECK(has_invariant(nk::validate_pair(p), "subcomplex"));
    p.sub = {0, 1, 2};
    CHECK(nk::validate_pair(p).empty());
  }
}

TEST_CASE("cocycle condition") {
  CHECK(nk::check_cocycle(fx::torus(), {{{1, Rat(1)}, {2, Rat(0)}}}).empty());
  const auto noncancelling = fx::torus({{1, 1}, {2, 1}, {1, 1}, {2, 1}});
  const auto r = nk::check_cocycle(noncancelling, {{{1, Rat(1)}, {2, Rat(0)}}});
  REQUIRE(r.size() == 1);
  CHECK(r.front().detail.find("2") != std::string::npos);
  CHECK_THROWS_AS(nk::check_cocycle(fx::torus(), {{{1, Rat(1)}}}), nk::InputError);
}

TEST_CASE("flatness of local systems") {
  const auto t = fx::torus();
  nk::LocalSystem scalar{1, {{1, nk::RatMatrix::Constant(1, 1, Rat(2))}, {2, nk::RatMatrix::Constant(1, 1, Rat(3))}}};
  CHECK(nk::check_flat(t, scalar).empty());
  nk::LocalSystem noncommuting{2, {{1, fx::mat2(1, 1, 0, 1)}, {2, fx::mat2(1, 0, 1, 1)}}};
  CHECK(nk::check_flat(t, noncommuting).size() == 1);
  CHECK(nk::check_flat(t, nk::LocalSystem::trivial()).empty());
  CHECK(nk::check_flat(fx::pinched_ball(), nk::LocalSystem::trivial(2)).empty());
  nk::LocalSystem singular{2, {{1, fx::mat2(1, 1, 1, 1)}}};
  CHECK_THROWS_AS(nk::check_flat(t, singular), nk::InputError);
}

TEST_CASE("relative cells and Euler characteristic") {
  const nk::CellPair circle{fx::circle(), {}};
  CHECK(nk::relative_subcomplex(circle) == std::vector<std::vector<nk::CellId>>{{0}, {1}});
  const nk::CellPair end{fx::interval(), {0}};
  CHECK(nk::relative_subcomplex(end) == std::vector<std::vector<nk::CellId>>{{1}, {2}});
  CHECK(nk::euler_characteristic({fx::torus(), {}}) == 0);
  CHECK(nk::euler_characteristic(circle) == 0);
  CHECK(nk::euler_characteristic(end) == 0);
}

TEST_CASE("random complexes have vanishing double boundary") {
  std::mt19937 rng(5);
  for (int i = 0; i < 100; ++i) {
    const auto r = fx::random_input(rng);
    CHECK(nk::validate_pair(r.in.pair).empty());
    CHECK(nk::check_cocycle(r.in.pair.complex, r.in.omega).empty());
    CHECK(nk::check_flat(r.in.pair.complex, r.in.F).empty());
    CHECK(r.in.pair.complex.cell_count() <= 40);
  }
}
