#pragma once

#include <cmath>
#include <vector>

#include "psiphi/config.hpp"
#include "psiphi/fractal.hpp"
#include "psiphi/rng.hpp"

namespace fixtures {

using namespace psiphi;

inline RunConfig s2() { return builtin_config("example-s2-dyadic"); }
inline RunConfig s4() { return builtin_config("example-s4-ifs"); }

inline SelfMapSpec scaling_map(double factor, const Space& s) {
  return {AffineMap{{factor}, {0.0}}, s};
}

inline std::vector<Point> grid1d(double lo, double hi, double step) {
  std::vector<Point> pts;
  long n = std::lround((hi - lo) / step);
  for (long k = 0; k <= n; ++k) pts.push_back(Point::d1(lo + step * k));
  return pts;
}

/// Random points on the 1/16 lattice in [-8, 8] so exact comparisons stay
/// meaningful (no near-ulp coordinate gaps).
inline Point lattice_point(SplitMix64& rng, int dim) {
  std::vector<double> c;
  for (int i = 0; i < dim; ++i)
    c.push_back((static_cast<double>(rng.below(257)) - 128.0) / 16.0);
  return Point::from(c);
}

inline CompactSet random_set(SplitMix64& rng, const Space& s,
                             std::size_t max_pts, double resolution) {
  std::size_t n = rng.below(max_pts) + 1;
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back(lattice_point(rng, s.dim));
  return CompactSet::make(s, std::move(pts), resolution);
}

inline std::vector<Point> random_raw_points(SplitMix64& rng, int dim,
                                            std::size_t max_pts) {
  std::size_t n = rng.below(max_pts) + 1;
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> c;
    for (int d = 0; d < dim; ++d) c.push_back(rng.uniform(-8.0, 8.0));
    pts.push_back(Point::from(c));
  }
  return pts;
}

/// Random piecewise-affine function with lattice coefficients (slopes in
/// steps of 1/8, intercepts 1/16, breakpoints 1/8) so analytic verdicts and
/// double sampling can never disagree by rounding.
inline PiecewiseFn random_fn(SplitMix64& rng, bool nondecreasing = false) {
  std::size_t n = rng.below(4) + 1;
  std::vector<double> starts{0.0};
  while (starts.size() < n) {
    double b = static_cast<double>(rng.below(32) + 1) / 8.0;
    bool dup = false;
    for (double s : starts) dup = dup || s == b;
    if (!dup) starts.push_back(b);
  }
  std::sort(starts.begin(), starts.end());

  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    double slope =
        nondecreasing
            ? static_cast<double>(rng.below(17)) / 8.0
            : (static_cast<double>(rng.below(33)) - 16.0) / 8.0;
    double intercept;
    if (nondecreasing && i > 0) {
      // keep the jump at this breakpoint upward
      const Piece& prev = pieces.back();
      double left = prev.slope * starts[i] + prev.intercept;
      double bump = static_cast<double>(rng.below(17)) / 16.0;
      intercept = left + bump - slope * starts[i];
    } else {
      intercept = (static_cast<double>(rng.below(65)) - 32.0) / 16.0;
    }
    pieces.push_back({starts[i], slope, intercept});
  }
  return PiecewiseFn(std::move(pieces));
}

}  // namespace fixtures
