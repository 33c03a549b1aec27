#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "psiphi/fractal.hpp"
#include "psiphi/rng.hpp"

using namespace psiphi;

namespace {

const Space kE1 = Space::euclidean(1);

CompactSet set1d(std::vector<double> xs, double r = 1e-3) {
  std::vector<Point> pts;
  for (double x : xs) pts.push_back(Point::d1(x));
  return CompactSet::make(kE1, std::move(pts), r);
}

IFS cantor_ifs() {
  return IFS{{SelfMapSpec{AffineMap{{1.0 / 3.0}, {0.0}}, kE1},
              SelfMapSpec{AffineMap{{1.0 / 3.0}, {2.0 / 3.0}}, kE1}},
             identity_fn(),
             {linear_fn(0.5), linear_fn(0.5)}};
}

}  // namespace

TEST_CASE("directed distance by enumeration") {
  CompactSet a = set1d({0.0, 0.5});
  CompactSet b = set1d({0.2, 0.9});
  CHECK(directed_distance(a, b) == doctest::Approx(0.3).epsilon(1e-12));

  CHECK(directed_distance(set1d({0.0}), set1d({0.0, 1.0})) == 0.0);
  CHECK(directed_distance(a, a) == 0.0);

  CompactSet dy = CompactSet::make(Space::dyadic(), {Point::d1(0.5)}, 1e-3);
  CHECK_THROWS_AS(directed_distance(a, dy), std::invalid_argument);
}

TEST_CASE("hausdorff distance examples") {
  CHECK(hausdorff(set1d({0.0, 1.0}), set1d({0.0})) == 1.0);
  CHECK(hausdorff(set1d({0.25}), set1d({0.25})) == 0.0);

  CompactSet unit = CompactSet::make(kE1, fixtures::grid1d(0.0, 1.0, 1e-3), 1e-3);
  CompactSet twothirds =
      CompactSet::make(kE1, fixtures::grid1d(0.0, 2.0 / 3.0, 1e-3), 1e-3);
  // the farthest point 1 sits 1/3 from [0, 2/3]
  CHECK(std::abs(hausdorff(unit, twothirds) - 1.0 / 3.0) <= 1e-3);
}

TEST_CASE("apply_map_set reproduces the worked images") {
  RunConfig s4 = fixtures::s4();
  CompactSet unit = CompactSet::make(kE1, fixtures::grid1d(0.0, 1.0, 1e-3), 1e-3);

  CompactSet img1 = apply_map_set(s4.self_maps[0], unit);
  CompactSet low =
      CompactSet::make(kE1, fixtures::grid1d(0.0, 2.0 / 3.0, 1e-3), 1e-3);
  CHECK(hausdorff(img1, low) <= 2e-3);

  CompactSet img2 = apply_map_set(s4.self_maps[1], unit);
  CompactSet high =
      CompactSet::make(kE1, fixtures::grid1d(2.0 / 3.0, 1.0, 1e-3), 1e-3);
  CHECK(hausdorff(img2, high) <= 2e-3);

  // w1(-3) = w1(3) = 2; dedup collapses the image to a single point
  CompactSet pair = set1d({-3.0, 3.0});
  CompactSet img = apply_map_set(s4.self_maps[0], pair);
  REQUIRE(img.size() == 1);
  CHECK(img.points()[0] == Point::d1(2.0));

  SelfMapSpec ident{AffineMap{{1.0}, {0.0}}, kE1};
  CHECK(apply_map_set(ident, unit).points() == unit.points());
}

TEST_CASE("apply_ifs unions the per-map images") {
  RunConfig s4 = fixtures::s4();
  IFS ifs{s4.self_maps, *s4.psi, s4.phis};
  CompactSet unit = CompactSet::make(kE1, fixtures::grid1d(0.0, 1.0, 1e-3), 1e-3);

  CHECK(hausdorff(apply_ifs(ifs, unit), unit) <= 2e-3);

  IFS single{{s4.self_maps[0]}, *s4.psi, {s4.phis[0]}};
  CHECK(apply_ifs(single, unit).points() ==
        apply_map_set(s4.self_maps[0], unit).points());

  CompactSet origin = set1d({0.0});
  CompactSet image = apply_ifs(ifs, origin);
  REQUIRE(image.size() == 2);
  CHECK(image.points()[0] == Point::d1(0.0));
  CHECK(std::abs(image.points()[1][0] - 2.0 / 3.0) <= 1e-3);
}

TEST_CASE("apply_ifs distributes over its maps") {
  SplitMix64 rng(1123);
  RunConfig s4 = fixtures::s4();
  IFS ifs{s4.self_maps, *s4.psi, s4.phis};
  for (int round = 0; round < 50; ++round) {
    CompactSet a = fixtures::random_set(rng, kE1, 16, 1e-3);
    std::vector<Point> merged;
    for (const SelfMapSpec& w : ifs.maps) {
      CompactSet img = apply_map_set(w, a);
      merged.insert(merged.end(), img.points().begin(), img.points().end());
    }
    CompactSet manual = CompactSet::make(kE1, merged, a.resolution());
    CHECK(apply_ifs(ifs, a).points() == manual.points());
  }
}

TEST_CASE("attractor_solve finds the unit interval") {
  RunConfig s4 = fixtures::s4();
  IFS ifs{s4.self_maps, *s4.psi, s4.phis};
  CompactSet a0 = set1d({0.0});

  AttractorReport rep = attractor_solve(ifs, a0, 5e-3, 100000);
  CHECK(rep.converged);
  CHECK(rep.iterations < 200);
  CHECK(rep.hausdorff_trace.size() == rep.iterations);
  for (const ConditionReport& c : rep.map_conditions) CHECK(c.all_pass());

  CompactSet unit = CompactSet::make(kE1, fixtures::grid1d(0.0, 1.0, 1e-3), 1e-3);
  CHECK(hausdorff(rep.attractor, unit) < 5e-3);

  // idempotence: one more application moves the attractor by < 2 tol
  CHECK(hausdorff(rep.attractor, apply_ifs(ifs, rep.attractor)) < 2 * 5e-3);
}

TEST_CASE("attractor_solve edge behavior") {
  IFS halving{{fixtures::scaling_map(0.5, kE1)}, identity_fn(), {linear_fn(0.5)}};

  CompactSet one = set1d({1.0}, 1e-9);
  AttractorReport rep = attractor_solve(halving, one, 1e-6, 100000);
  CHECK(rep.converged);
  REQUIRE(rep.attractor.size() == 1);
  CHECK(std::abs(rep.attractor.points()[0][0]) < 1e-6);

  CompactSet origin = set1d({0.0}, 1e-9);
  AttractorReport fixed = attractor_solve(halving, origin, 1e-6, 100000);
  CHECK(fixed.converged);
  CHECK(fixed.iterations == 1);
  CHECK(fixed.hausdorff_trace == std::vector<double>{0.0});

  // tolerance below the snap pitch is rejected
  CHECK_THROWS_AS(attractor_solve(halving, set1d({1.0}, 1e-3), 1e-4, 10),
                  std::invalid_argument);
  // one phi per map
  IFS lopsided{{fixtures::scaling_map(0.5, kE1)}, identity_fn(), {}};
  CHECK_THROWS_AS(attractor_solve(lopsided, one, 1e-6, 10),
                  std::invalid_argument);
}

TEST_CASE("exhaustion reports converged=false") {
  RunConfig s4 = fixtures::s4();
  IFS ifs{s4.self_maps, *s4.psi, s4.phis};
  AttractorReport rep = attractor_solve(ifs, set1d({0.0}), 5e-3, 2);
  CHECK_FALSE(rep.converged);
  CHECK(rep.iterations == 2);
}

TEST_CASE("fractal_contraction_check lifts the pointwise bound") {
  RunConfig s4 = fixtures::s4();
  SetCheckReport ok = fractal_contraction_check(s4.self_maps[0], *s4.psi,
                                                s4.phis[0], 1000, 21);
  CHECK(ok.passed);
  CHECK(ok.checked > 0);

  SetCheckReport ok2 = fractal_contraction_check(s4.self_maps[1], *s4.psi,
                                                 s4.phis[1], 1000, 21);
  CHECK(ok2.passed);

  SelfMapSpec doubling = fixtures::scaling_map(2.0, kE1);
  SetCheckReport bad = fractal_contraction_check(doubling, identity_fn(),
                                                 linear_fn(0.5), 1000, 21);
  CHECK_FALSE(bad.passed);
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->lhs > bad.witness->rhs);

  PiecewiseFn dipping({{0.0, -1.0, 1.0}, {1.0, 1.0, -1.0}});
  CHECK_THROWS_AS(fractal_contraction_check(doubling, dipping, linear_fn(0.5),
                                            10, 1),
                  std::invalid_argument);

  // a constant map collapses every image pair, so every sample is skipped
  SelfMapSpec constant{AffineMap{{0.0}, {4.0}}, kE1};
  SetCheckReport vacuous = fractal_contraction_check(constant, identity_fn(),
                                                     linear_fn(0.5), 100, 5);
  CHECK(vacuous.passed);
  CHECK(vacuous.checked == 0);
  CHECK(vacuous.skipped == 100);
}

TEST_CASE("hausdorff metric axioms on random canonical sets") {
  SplitMix64 rng(31);
  std::vector<Space> spaces{Space::euclidean(1), Space::euclidean(2),
                            Space::euclidean(3)};
  for (int k = 0; k < 300; ++k) {
    const Space& s = spaces[rng.below(spaces.size())];
    CompactSet a = fixtures::random_set(rng, s, 16, 1.0 / 16.0);
    CompactSet b = fixtures::random_set(rng, s, 16, 1.0 / 16.0);
    CompactSet c = fixtures::random_set(rng, s, 16, 1.0 / 16.0);
    double ab = hausdorff(a, b);
    CHECK(ab == hausdorff(b, a));
    CHECK(ab >= 0.0);
    CHECK(hausdorff(a, a) == 0.0);
    if (ab <= 1e-12) CHECK(a.points() == b.points());
    CHECK(ab <= hausdorff(a, c) + hausdorff(c, b) + 1e-12);
  }
}

TEST_CASE("union bound over exact collections") {
  SplitMix64 rng(47);
  for (int k = 0; k < 300; ++k) {
    int dim = static_cast<int>(rng.below(3)) + 1;
    Space s = Space::euclidean(dim);
    std::size_t n = rng.below(4) + 1;
    double bound = 0.0;
    std::vector<Point> ua, ub;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Point> a = fixtures::random_raw_points(rng, dim, 8);
      std::vector<Point> b = fixtures::random_raw_points(rng, dim, 8);
      bound = std::max(bound, hausdorff(a, b, s));
      ua.insert(ua.end(), a.begin(), a.end());
      ub.insert(ub.end(), b.begin(), b.end());
    }
    CHECK(hausdorff(ua, ub, s) <= bound + 1e-12);
  }
}

TEST_CASE("images of decimated sets settle onto the image of the limit") {
  RunConfig s4 = fixtures::s4();
  const SelfMapSpec& w = s4.self_maps[0];
  const double r = 0x1.0p-12;

  std::vector<Point> dense = fixtures::grid1d(0.0, 1.0, 0x1.0p-9);
  CompactSet limit = CompactSet::make(kE1, dense, r);
  CompactSet limit_img = apply_map_set(w, limit);

  double prev = INFINITY;
  for (int stride : {32, 16, 8, 4, 2, 1}) {
    std::vector<Point> sparse;
    for (std::size_t i = 0; i < dense.size(); i += static_cast<std::size_t>(stride))
      sparse.push_back(dense[i]);
    CompactSet an = CompactSet::make(kE1, sparse, r);
    double h = hausdorff(apply_map_set(w, an), limit_img);
    CHECK(h <= prev + 2 * r);
    prev = h;
  }
  CHECK(prev == 0.0);  // the final decimation is the limit set itself
}

TEST_CASE("snapping changes distances by at most r * sqrt(dim)") {
  SplitMix64 rng(53);
  for (int k = 0; k < 200; ++k) {
    int dim = static_cast<int>(rng.below(3)) + 1;
    Space s = Space::euclidean(dim);
    double r = 0.25;
    std::vector<Point> a = fixtures::random_raw_points(rng, dim, 12);
    std::vector<Point> b = fixtures::random_raw_points(rng, dim, 12);
    double exact = hausdorff(a, b, s);
    double snapped = hausdorff(CompactSet::make(s, a, r),
                               CompactSet::make(s, b, r));
    CHECK(std::abs(snapped - exact) <= r * std::sqrt(dim) + 1e-12);
  }
}

TEST_CASE("pair clouds use the product metric") {
  ProductSpace ps{kE1, kE1};
  PairSet a = PairSet::make(
      ps, {{Point::d1(0.0), Point::d1(0.0)}, {Point::d1(1.0), Point::d1(3.0)}},
      1e-3);
  PairSet b = PairSet::make(ps, {{Point::d1(0.0), Point::d1(1.0)}}, 1e-3);
  // farthest pair (1,3): max(|1-0|, |3-1|) = 2
  CHECK(directed_distance(a, b) == 2.0);
  CHECK(hausdorff(a, b) == 2.0);

  CHECK(project_first(a).points() ==
        std::vector<Point>{Point::d1(0.0), Point::d1(1.0)});
  CHECK(project_second(a).points() ==
        std::vector<Point>{Point::d1(0.0), Point::d1(3.0)});
}

TEST_CASE("coupled attractor collapses linear examples") {
  ProductSpace ps{kE1, kE1};

  CoupledIFS avg{{CoupledMapSpec{BilinearAffine{0.25, 0.25, {0.0}}, kE1}},
                 identity_fn(),
                 {linear_fn(0.5)}};
  PairSet c0 = PairSet::make(ps, {{Point::d1(1.0), Point::d1(1.0)}}, 1e-9);
  CoupledAttractorReport rep = coupled_attractor_solve(avg, c0, 1e-6, 100000);
  CHECK(rep.converged);
  REQUIRE(rep.attractor_a.size() == 1);
  CHECK(std::abs(rep.attractor_a.points()[0][0]) < 1e-6);
  CHECK(std::abs(rep.attractor_b.points()[0][0]) < 1e-6);

  CoupledIFS cross{{CoupledMapSpec{BilinearAffine{0.0, 0.5, {1.0}}, kE1}},
                   identity_fn(),
                   {linear_fn(0.5)}};
  PairSet origin = PairSet::make(ps, {{Point::d1(0.0), Point::d1(0.0)}}, 1e-9);
  CoupledAttractorReport two = coupled_attractor_solve(cross, origin, 1e-6,
                                                       100000);
  CHECK(two.converged);
  REQUIRE(two.attractor_a.size() == 1);
  CHECK(std::abs(two.attractor_a.points()[0][0] - 2.0) < 1e-5);
  CHECK(std::abs(two.attractor_b.points()[0][0] - 2.0) < 1e-5);
}

TEST_CASE("y-independent coupled systems reduce to the plain attractor") {
  const double tol = 5e-3, r = 1e-3;

  AttractorReport plain =
      attractor_solve(cantor_ifs(), set1d({0.0}, r), tol, 100000);
  REQUIRE(plain.converged);

  CoupledIFS coupled{{CoupledMapSpec{BilinearAffine{1.0 / 3.0, 0.0, {0.0}}, kE1},
                      CoupledMapSpec{BilinearAffine{1.0 / 3.0, 0.0, {2.0 / 3.0}}, kE1}},
                     identity_fn(),
                     {linear_fn(0.5), linear_fn(0.5)}};
  ProductSpace ps{kE1, kE1};
  PairSet c0 = PairSet::make(ps, {{Point::d1(0.0), Point::d1(0.0)}}, r);
  CoupledAttractorReport rep = coupled_attractor_solve(coupled, c0, tol, 100000);
  REQUIRE(rep.converged);

  CHECK(hausdorff(rep.attractor_a, plain.attractor) <= 2 * tol);
  CHECK(hausdorff(rep.attractor_b, plain.attractor) <= 2 * tol);

  // the fixed-pair equations hold at the reported cloud
  PairSet once_more = apply_coupled_ifs(coupled, rep.pairs);
  CHECK(hausdorff(rep.pairs, once_more) < 2 * tol);
  CHECK(hausdorff(rep.attractor_a, project_first(once_more)) < 2 * tol);
  CHECK(hausdorff(rep.attractor_b, project_second(once_more)) < 2 * tol);
}

TEST_CASE("compact sets stay canonical") {
  CompactSet a = set1d({0.9, 0.1, 0.1004, -2.0});
  // snapped to 1e-3 and sorted; 0.1 and 0.1004 collide
  REQUIRE(a.size() == 3);
  CHECK(a.points()[0][0] == -2.0);
  CHECK(std::abs(a.points()[1][0] - 0.1) <= 1e-3);
  CHECK(std::abs(a.points()[2][0] - 0.9) <= 1e-3);

  CHECK_THROWS_AS(CompactSet::make(kE1, {}, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(CompactSet::make(kE1, {Point::d1(0.0)}, 0.0),
                  std::invalid_argument);
}
