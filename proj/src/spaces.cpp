#include "psiphi/spaces.hpp"

#include <cmath>
#include <stdexcept>

namespace psiphi {

namespace {

constexpr double kDyadicTol = 1e-15;
constexpr int kMaxDyadicExp = 52;

void require_finite(double x) {
  if (!std::isfinite(x))
    throw std::invalid_argument("point coordinates must be finite");
}

// Nearest value of {1/2^n : 0 <= n <= 52} ∪ {0}; exponents past 52 clamp
// to 0. Throws when x is not within 1e-15 of the universe.
double canonical_dyadic_value(double x) {
  if (std::abs(x) <= kDyadicTol) return 0.0;
  if (x < 0.0) throw std::invalid_argument("dyadic points are nonnegative");
  const double floor_value = std::ldexp(1.0, -kMaxDyadicExp);
  if (x < 0.75 * floor_value) return 0.0;  // exhausted: clamp to the fixed point
  int n = static_cast<int>(std::lround(-std::log2(x)));
  if (n < 0) n = 0;
  if (n > kMaxDyadicExp) n = kMaxDyadicExp;
  double v = std::ldexp(1.0, -n);
  if (std::abs(x - v) <= kDyadicTol) return v;
  throw std::invalid_argument("point is not in the dyadic universe");
}

}  // namespace

Point::Point(std::array<double, 3> c, int dim) : c_(c), dim_(dim) {
  if (dim_ < 1 || dim_ > 3)
    throw std::invalid_argument("point dimension must be 1..3");
  for (int i = 0; i < dim_; ++i) require_finite(c_[static_cast<std::size_t>(i)]);
}

Point Point::d1(double x) { return Point({x, 0.0, 0.0}, 1); }
Point Point::d2(double x, double y) { return Point({x, y, 0.0}, 2); }
Point Point::d3(double x, double y, double z) { return Point({x, y, z}, 3); }

Point Point::from(std::span<const double> coords) {
  if (coords.size() < 1 || coords.size() > 3)
    throw std::invalid_argument("point dimension must be 1..3");
  std::array<double, 3> c{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < coords.size(); ++i) c[i] = coords[i];
  return Point(c, static_cast<int>(coords.size()));
}

Point Point::origin(int dim) { return Point({0.0, 0.0, 0.0}, dim); }

bool lex_less(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  for (int i = 0; i < a.dim(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

Space Space::euclidean(int dim) {
  if (dim < 1 || dim > 3)
    throw std::invalid_argument("euclidean dimension must be 1..3");
  return {SpaceKind::Euclidean, dim};
}

Space Space::dyadic() { return {SpaceKind::Dyadic, 1}; }

bool contains(const Space& s, const Point& p) {
  if (p.dim() != s.dim) return false;
  if (s.kind == SpaceKind::Euclidean) return true;
  try {
    canonical_dyadic_value(p[0]);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

Point canonical(const Space& s, const Point& p) {
  if (p.dim() != s.dim)
    throw std::invalid_argument("point dimension does not match the space");
  if (s.kind == SpaceKind::Euclidean) return p;
  return Point::d1(canonical_dyadic_value(p[0]));
}

double dist(const Space& s, const Point& a, const Point& b) {
  if (a.dim() != s.dim || b.dim() != s.dim)
    throw std::invalid_argument("point dimension does not match the space");
  if (s.dim == 1) return std::abs(a[0] - b[0]);
  double sq = 0.0;
  for (int i = 0; i < s.dim; ++i) {
    double d = a[i] - b[i];
    sq += d * d;
  }
  return std::sqrt(sq);
}

double product_dist(const ProductSpace& p, const PointPair& z,
                    const PointPair& w) {
  return std::max(dist(p.left, z.first, w.first),
                  dist(p.right, z.second, w.second));
}

}  // namespace psiphi
