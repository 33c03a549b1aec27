#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "psiphi/rng.hpp"
#include "psiphi/spaces.hpp"

using namespace psiphi;

TEST_CASE("distances on the worked spaces") {
  Space e1 = Space::euclidean(1);
  CHECK(dist(e1, Point::d1(0.0), Point::d1(1.0)) == 1.0);

  Space dy = Space::dyadic();
  CHECK(dist(dy, Point::d1(0.5), Point::d1(0.125)) == 0.375);

  Space e2 = Space::euclidean(2);
  CHECK(dist(e2, Point::d2(0.0, 0.0), Point::d2(3.0, 4.0)) == 5.0);

  CHECK_THROWS_AS(dist(e2, Point::d1(0.0), Point::d2(0.0, 0.0)),
                  std::invalid_argument);
}

TEST_CASE("product metric") {
  Space e1 = Space::euclidean(1);
  ProductSpace ps{e1, e1};
  PointPair z{Point::d1(0.0), Point::d1(0.0)};
  PointPair w{Point::d1(1.0), Point::d1(2.0)};
  CHECK(product_dist(ps, z, w) == 2.0);
  CHECK(product_dist(ps, z, z) == 0.0);

  // worked dyadic pairs: d*((1/2^m, 1/2^n), (1/2^p, 0))
  Space dy = Space::dyadic();
  ProductSpace pdy{dy, dy};
  for (int m = 0; m <= 20; ++m)
    for (int n = 0; n <= 20; ++n)
      for (int p = 0; p <= 20; ++p) {
        double x = std::ldexp(1.0, -m), y = std::ldexp(1.0, -n),
               u = std::ldexp(1.0, -p);
        double got = product_dist(pdy, {Point::d1(x), Point::d1(y)},
                                  {Point::d1(u), Point::d1(0.0)});
        CHECK(got == std::max(std::abs(x - u), y));
      }
}

TEST_CASE("metric axioms hold on random triples") {
  SplitMix64 rng(7);
  std::vector<Space> spaces{Space::euclidean(1), Space::euclidean(2),
                            Space::euclidean(3), Space::dyadic()};
  for (int k = 0; k < 10000; ++k) {
    const Space& s = spaces[rng.below(spaces.size())];
    auto draw = [&]() {
      if (s.kind == SpaceKind::Dyadic) {
        std::uint64_t e = rng.below(42);
        return Point::d1(e == 41 ? 0.0 : std::ldexp(1.0, -static_cast<int>(e)));
      }
      return fixtures::lattice_point(rng, s.dim);
    };
    Point a = draw(), b = draw(), c = draw();
    double ab = dist(s, a, b), ba = dist(s, b, a);
    double ac = dist(s, a, c), cb = dist(s, c, b);
    CHECK(ab >= 0.0);
    CHECK(ab == ba);
    CHECK(dist(s, a, a) == 0.0);
    CHECK((ab == 0.0) == (a == b));  // zero exactly when the points coincide
    CHECK(ab <= ac + cb + 1e-12);
  }
}

TEST_CASE("product distance dominates its components") {
  SplitMix64 rng(8);
  Space e2 = Space::euclidean(2);
  ProductSpace ps{e2, e2};
  for (int k = 0; k < 2000; ++k) {
    PointPair z{fixtures::lattice_point(rng, 2), fixtures::lattice_point(rng, 2)};
    PointPair w{fixtures::lattice_point(rng, 2), fixtures::lattice_point(rng, 2)};
    double dl = dist(e2, z.first, w.first);
    double dr = dist(e2, z.second, w.second);
    double dp = product_dist(ps, z, w);
    CHECK(dp >= dl);
    CHECK(dp >= dr);
    CHECK((dp == dl || dp == dr));
  }
}

TEST_CASE("dyadic canonicalization") {
  Space dy = Space::dyadic();
  CHECK(canonical(dy, Point::d1(0.0))[0] == 0.0);
  CHECK(canonical(dy, Point::d1(1.0))[0] == 1.0);
  CHECK(canonical(dy, Point::d1(std::ldexp(1.0, -40)))[0] ==
        std::ldexp(1.0, -40));
  // exponents past 52 clamp to the fixed point
  CHECK(canonical(dy, Point::d1(std::ldexp(1.0, -53)))[0] == 0.0);
  // near-misses within 1e-15 snap to the exact power
  CHECK(canonical(dy, Point::d1(0.25 + 1e-16))[0] == 0.25);

  CHECK_THROWS_AS(canonical(dy, Point::d1(0.3)), std::invalid_argument);
  CHECK_THROWS_AS(canonical(dy, Point::d1(-0.5)), std::invalid_argument);
  CHECK(contains(dy, Point::d1(0.5)));
  CHECK_FALSE(contains(dy, Point::d1(0.3)));
  CHECK_FALSE(contains(dy, Point::d2(0.5, 0.5)));
}

TEST_CASE("points validate and order") {
  CHECK_THROWS_AS(Point::d1(std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(Point::d2(0.0, INFINITY), std::invalid_argument);
  CHECK(Point::origin(3) == Point::d3(0.0, 0.0, 0.0));

  CHECK(lex_less(Point::d2(0.0, 1.0), Point::d2(1.0, 0.0)));
  CHECK(lex_less(Point::d2(1.0, 0.0), Point::d2(1.0, 2.0)));
  CHECK_FALSE(lex_less(Point::d2(1.0, 2.0), Point::d2(1.0, 2.0)));
}
