#pragma once

#include <array>
#include <span>
#include <utility>

namespace psiphi {

/// A point with up to three coordinates. Coordinates are validated finite.
class Point {
 public:
  Point() = default;  // origin of a 1-D space

  static Point d1(double x);
  static Point d2(double x, double y);
  static Point d3(double x, double y, double z);
  static Point from(std::span<const double> coords);
  static Point origin(int dim);

  int dim() const { return dim_; }
  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  std::span<const double> coords() const {
    return {c_.data(), static_cast<std::size_t>(dim_)};
  }

  bool operator==(const Point&) const = default;

 private:
  Point(std::array<double, 3> c, int dim);

  std::array<double, 3> c_{0.0, 0.0, 0.0};
  int dim_ = 1;
};

/// Lexicographic order by dimension, then coordinates.
bool lex_less(const Point& a, const Point& b);

enum class SpaceKind { Euclidean, Dyadic };

/// Metric space descriptor: Euclidean R^dim (dim <= 3), or the dyadic set
/// {1/2^n : n >= 0} together with 0 under |x - y|.
struct Space {
  SpaceKind kind = SpaceKind::Euclidean;
  int dim = 1;

  static Space euclidean(int dim);
  static Space dyadic();

  bool operator==(const Space&) const = default;
};

/// True iff p is a valid point of s (dimension matches; dyadic values lie
/// in the universe within 1e-15).
bool contains(const Space& s, const Point& p);

/// Validated canonical form of p in s. Dyadic values snap to the exact
/// power of two; exponents past 52 clamp to 0 (double precision runs out
/// there). Euclidean points pass through. Throws std::invalid_argument for
/// points outside the space.
Point canonical(const Space& s, const Point& p);

/// The space's metric. Throws std::invalid_argument on dimension mismatch.
double dist(const Space& s, const Point& a, const Point& b);

struct ProductSpace {
  Space left, right;

  bool operator==(const ProductSpace&) const = default;
};

using PointPair = std::pair<Point, Point>;

/// max{d(x,u), d(y,v)} — the max product metric.
double product_dist(const ProductSpace& p, const PointPair& z,
                    const PointPair& w);

}  // namespace psiphi
