#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "psiphi/piecewise.hpp"
#include "psiphi/rng.hpp"
#include "psiphi/spaces.hpp"

namespace psiphi {

/// w(x) = A x + c, row-major dim x dim matrix.
struct AffineMap {
  std::vector<double> matrix;
  std::vector<double> offset;
};

/// 1-D map with separate affine branches for x >= 0 and x < 0.
struct AbsAffine1D {
  double pos_slope = 0.0;
  double pos_intercept = 0.0;
  double neg_slope = 0.0;
  double neg_intercept = 0.0;
};

/// x -> x/2 on the dyadic space.
struct DyadicHalving {};

/// A parametric self map w: X -> X.
struct SelfMapSpec {
  std::variant<AffineMap, AbsAffine1D, DyadicHalving> map;
  Space domain;
};

Point apply(const SelfMapSpec& w, const Point& x);

/// T(x,y) = a*x + b*y + c componentwise.
struct BilinearAffine {
  double a = 0.0;
  double b = 0.0;
  std::vector<double> c;
};

/// T(x,y) = half of the larger coordinate on the dyadic space: both inputs
/// in M means 1/2^(min{m,n}+1), one zero input means half the other, and
/// (0,0) is fixed.
struct DyadicMin {};

/// A parametric coupled map T: X x X -> X (also used for the factors of an
/// extended pair, where the domain field is the codomain space).
struct CoupledMapSpec {
  std::variant<BilinearAffine, DyadicMin> map;
  Space domain;
};

Point apply(const CoupledMapSpec& t, const Point& x, const Point& y);

/// T: X x Y -> X and S: X x Y -> Y, iterated through
/// F(x,y) = (T(x,y), S(x,y)) on the product space.
struct ExtendedPairSpec {
  CoupledMapSpec t_map;  // codomain = left space
  CoupledMapSpec s_map;  // codomain = right space
};

struct SolveReport {
  bool converged = false;
  Point point;
  std::optional<Point> second;  // set for coupled/extended solves
  std::size_t iterations = 0;
  std::vector<double> residual_trace;  // residual_n = d(x_n, x_{n+1})
  std::optional<ConditionReport> conditions;
};

/// Successive-application engine: steps until d(x_n, x_{n+1}) < tol or
/// max_iter is reached (converged=false, no exception). A start mapped
/// exactly to itself converges with zero iterations and an empty trace.
SolveReport picard_iterate(const Space& s,
                           const std::function<Point(const Point&)>& step,
                           const Point& x0, double tol, std::size_t max_iter);

/// Same engine over the product space; the residual is the max metric.
SolveReport picard_iterate_pair(
    const ProductSpace& s,
    const std::function<PointPair(const PointPair&)>& step,
    const PointPair& z0, double tol, std::size_t max_iter);

SolveReport picard_solve(const SelfMapSpec& w, const Point& x0, double tol,
                         std::size_t max_iter);

/// Runs Picard on T*(x,y) = (T(x,y), T(y,x)) under the max metric; on
/// convergence the pair satisfies x ~ T(x,y) and y ~ T(y,x).
SolveReport coupled_solve(const CoupledMapSpec& t, const Point& x0,
                          const Point& y0, double tol, std::size_t max_iter);

/// Runs Picard on F(x,y) = (T(x,y), S(x,y)) under the max metric; on
/// convergence the pair satisfies x ~ T(x,y) and y ~ S(x,y).
SolveReport extended_solve(const ExtendedPairSpec& pair, const Point& x0,
                           const Point& y0, double tol, std::size_t max_iter);

struct VerifyWitness {
  std::size_t index = 0;           // sample index (smallest violating)
  std::vector<Point> z, w;         // one point each for self maps, two for pairs
  double image_dist = 0.0;
  double arg_dist = 0.0;
  double lhs = 0.0;                // psi(image_dist)
  double rhs = 0.0;                // phi(arg_dist)
  std::string inequality;          // "T" or "S" for extended pairs
};

struct VerifyReport {
  bool passed = true;
  std::size_t checked = 0;
  std::size_t skipped = 0;  // pairs whose image distance was 0
  std::optional<VerifyWitness> witness;
};

/// Samples pairs from the bounded verification region (euclidean coords in
/// [-10,10]; dyadic exponents in {0..40} plus the point 0) and asserts
/// psi(image distance) <= phi(argument distance), skipping zero image
/// distances. The witness, if any, is the one with the smallest index.
VerifyReport verify_contraction(const SelfMapSpec& w, const PiecewiseFn& psi,
                                const PiecewiseFn& phi, std::size_t samples,
                                std::uint64_t seed);
VerifyReport verify_contraction(const CoupledMapSpec& t, const PiecewiseFn& psi,
                                const PiecewiseFn& phi, std::size_t samples,
                                std::uint64_t seed);
/// Checks both inequalities of the extended pair (phi1 for T, phi2 for S).
VerifyReport verify_contraction(const ExtendedPairSpec& ts,
                                const PiecewiseFn& psi,
                                const PiecewiseFn& phi1,
                                const PiecewiseFn& phi2, std::size_t samples,
                                std::uint64_t seed);

/// One random point of the verification region of s.
Point sample_point(SplitMix64& rng, const Space& s);

}  // namespace psiphi
