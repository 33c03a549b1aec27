#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "psiphi/piecewise.hpp"
#include "psiphi/solver.hpp"
#include "psiphi/spaces.hpp"

namespace psiphi {

/// A finite, nonempty, deduplicated point cloud standing in for a compact
/// subset of a space. Euclidean coordinates are snapped to the resolution
/// grid; dyadic points are canonicalized instead (the dyadic universe is
/// already discrete and grid multiples would leave it). The point list is
/// kept lexicographically sorted.
class CompactSet {
 public:
  static CompactSet make(const Space& s, std::vector<Point> pts,
                         double resolution);

  const std::vector<Point>& points() const { return points_; }
  const Space& space() const { return space_; }
  double resolution() const { return resolution_; }
  std::size_t size() const { return points_.size(); }

  bool operator==(const CompactSet&) const = default;

 private:
  CompactSet(Space s, std::vector<Point> pts, double r);

  Space space_;
  std::vector<Point> points_;
  double resolution_ = 0.0;
};

/// max over a of the distance from a to the nearest point of b. The exact
/// double loop is the baseline; the inner loop stops early once it cannot
/// affect the running max, which is output-identical.
double directed_distance(std::span<const Point> a, std::span<const Point> b,
                         const Space& s);
double directed_distance(const CompactSet& a, const CompactSet& b);

/// max of the two directed distances.
double hausdorff(std::span<const Point> a, std::span<const Point> b,
                 const Space& s);
double hausdorff(const CompactSet& a, const CompactSet& b);

/// Pointwise image of the set under w, snapped and canonicalized.
CompactSet apply_map_set(const SelfMapSpec& w, const CompactSet& a);

/// An iterated function system with one control pair (psi, phi_i) per map.
struct IFS {
  std::vector<SelfMapSpec> maps;
  PiecewiseFn psi;
  std::vector<PiecewiseFn> phis;
};

/// Union of the per-map images, snapped and canonicalized.
CompactSet apply_ifs(const IFS& ifs, const CompactSet& a);

struct AttractorReport {
  CompactSet attractor;
  bool converged = false;
  std::size_t iterations = 0;
  std::vector<double> hausdorff_trace;  // h(A_n, A_{n+1}) per iteration
  std::vector<std::size_t> size_trace;  // |A_{n+1}| per iteration
  std::vector<ConditionReport> map_conditions;  // check_proinov per map
};

/// Iterates A_{n+1} = W(A_n) until the successive Hausdorff distance drops
/// below tol. Requires tol > 2 * resolution (below the snap pitch the
/// distance is noise). Condition reports for each (psi, phi_i) pair are
/// embedded; iteration proceeds even if they fail.
AttractorReport attractor_solve(const IFS& ifs, const CompactSet& a0,
                                double tol, std::size_t max_iter);

struct SetWitness {
  std::size_t index = 0;
  std::vector<Point> a, b;
  double image_dist = 0.0;
  double arg_dist = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct SetCheckReport {
  bool passed = true;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  std::optional<SetWitness> witness;
};

/// Samples random finite sets A, B (size <= 8) and asserts the lifted
/// inequality psi(h(wA, wB)) <= phi(h(A, B)) with exact (unsnapped)
/// distances. Requires nondecreasing psi and phi; throws otherwise.
SetCheckReport fractal_contraction_check(const SelfMapSpec& w,
                                         const PiecewiseFn& psi,
                                         const PiecewiseFn& phi,
                                         std::size_t samples,
                                         std::uint64_t seed);

/// A canonical cloud of pairs over a product space, under the max metric.
class PairSet {
 public:
  static PairSet make(const ProductSpace& s, std::vector<PointPair> pts,
                      double resolution);

  const std::vector<PointPair>& points() const { return points_; }
  const ProductSpace& space() const { return space_; }
  double resolution() const { return resolution_; }
  std::size_t size() const { return points_.size(); }

  bool operator==(const PairSet&) const = default;

 private:
  PairSet(ProductSpace s, std::vector<PointPair> pts, double r);

  ProductSpace space_;
  std::vector<PointPair> points_;
  double resolution_ = 0.0;
};

double directed_distance(std::span<const PointPair> a,
                         std::span<const PointPair> b, const ProductSpace& s);
double directed_distance(const PairSet& a, const PairSet& b);
double hausdorff(std::span<const PointPair> a, std::span<const PointPair> b,
                 const ProductSpace& s);
double hausdorff(const PairSet& a, const PairSet& b);

/// Coupled system: every map is a two-argument self map on a common space.
struct CoupledIFS {
  std::vector<CoupledMapSpec> maps;
  PiecewiseFn psi;
  std::vector<PiecewiseFn> phis;
};

/// One step of the lifted pair operator:
/// C -> union_i {(w_i(x,y), w_i(y,x)) : (x,y) in C}.
PairSet apply_coupled_ifs(const CoupledIFS& cifs, const PairSet& c);

CompactSet project_first(const PairSet& c);
CompactSet project_second(const PairSet& c);

struct CoupledAttractorReport {
  CompactSet attractor_a;  // first-coordinate projection of the pair cloud
  CompactSet attractor_b;  // second-coordinate projection
  PairSet pairs;           // the converged pair cloud itself
  bool converged = false;
  std::size_t iterations = 0;
  std::vector<double> hausdorff_trace;
  std::vector<std::size_t> size_trace;
  std::vector<ConditionReport> map_conditions;
};

/// Iterates the lifted pair operator on the product space and projects the
/// converged cloud to the attractor pair (A*, B*).
CoupledAttractorReport coupled_attractor_solve(const CoupledIFS& cifs,
                                               const PairSet& c0, double tol,
                                               std::size_t max_iter);

}  // namespace psiphi
