#include "psiphi/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace psiphi {

namespace {

// Relative slack for the sampled inequality checks: the analytic bound can
// hold with equality, and separate roundings of both sides must not read
// as a violation.
bool leq_with_slack(double lhs, double rhs) {
  double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  return lhs <= rhs + 1e-9 * scale;
}

void check_square(const AffineMap& m, int dim) {
  if (m.matrix.size() != static_cast<std::size_t>(dim * dim) ||
      m.offset.size() != static_cast<std::size_t>(dim))
    throw std::invalid_argument("affine map shape does not match the space");
}

}  // namespace

Point apply(const SelfMapSpec& w, const Point& x) {
  if (x.dim() != w.domain.dim)
    throw std::invalid_argument("point dimension does not match the map");
  const int dim = w.domain.dim;
  Point out = std::visit(
      [&](const auto& m) -> Point {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, AffineMap>) {
          check_square(m, dim);
          std::array<double, 3> y{0.0, 0.0, 0.0};
          for (int i = 0; i < dim; ++i) {
            double acc = m.offset[static_cast<std::size_t>(i)];
            for (int j = 0; j < dim; ++j)
              acc += m.matrix[static_cast<std::size_t>(i * dim + j)] * x[j];
            y[static_cast<std::size_t>(i)] = acc;
          }
          return Point::from({y.data(), static_cast<std::size_t>(dim)});
        } else if constexpr (std::is_same_v<M, AbsAffine1D>) {
          if (dim != 1)
            throw std::invalid_argument("abs_affine_1d needs a 1-D space");
          double v = x[0] >= 0.0 ? m.pos_slope * x[0] + m.pos_intercept
                                 : m.neg_slope * x[0] + m.neg_intercept;
          return Point::d1(v);
        } else {
          if (w.domain.kind != SpaceKind::Dyadic)
            throw std::invalid_argument("dyadic_halving needs the dyadic space");
          return Point::d1(x[0] / 2.0);
        }
      },
      w.map);
  return canonical(w.domain, out);
}

Point apply(const CoupledMapSpec& t, const Point& x, const Point& y) {
  if (x.dim() != t.domain.dim || y.dim() != t.domain.dim)
    throw std::invalid_argument("point dimension does not match the map");
  const int dim = t.domain.dim;
  Point out = std::visit(
      [&](const auto& m) -> Point {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, BilinearAffine>) {
          if (m.c.size() != static_cast<std::size_t>(dim))
            throw std::invalid_argument(
                "bilinear offset shape does not match the space");
          std::array<double, 3> v{0.0, 0.0, 0.0};
          for (int i = 0; i < dim; ++i)
            v[static_cast<std::size_t>(i)] =
                m.a * x[i] + m.b * y[i] + m.c[static_cast<std::size_t>(i)];
          return Point::from({v.data(), static_cast<std::size_t>(dim)});
        } else {
          if (t.domain.kind != SpaceKind::Dyadic)
            throw std::invalid_argument("dyadic_min needs the dyadic space");
          return Point::d1(std::max(x[0], y[0]) / 2.0);
        }
      },
      t.map);
  return canonical(t.domain, out);
}

namespace {

template <class State, class StepFn, class DistFn>
SolveReport run_picard(State x, StepFn step, DistFn metric, double tol,
                       std::size_t max_iter) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  SolveReport rep;
  for (std::size_t n = 1; n <= max_iter; ++n) {
    State next = step(x);
    double r = metric(x, next);
    if (n == 1 && r == 0.0) {
      // Start is already fixed: zero iterations, empty trace.
      rep.converged = true;
      break;
    }
    rep.residual_trace.push_back(r);
    rep.iterations = n;
    x = next;
    if (r < tol) {
      rep.converged = true;
      break;
    }
  }
  if constexpr (std::is_same_v<State, PointPair>) {
    rep.point = x.first;
    rep.second = x.second;
  } else {
    rep.point = x;
  }
  return rep;
}

}  // namespace

SolveReport picard_iterate(const Space& s,
                           const std::function<Point(const Point&)>& step,
                           const Point& x0, double tol, std::size_t max_iter) {
  return run_picard(
      canonical(s, x0), [&](const Point& p) { return step(p); },
      [&](const Point& a, const Point& b) { return dist(s, a, b); }, tol,
      max_iter);
}

SolveReport picard_iterate_pair(
    const ProductSpace& s,
    const std::function<PointPair(const PointPair&)>& step,
    const PointPair& z0, double tol, std::size_t max_iter) {
  PointPair start{canonical(s.left, z0.first), canonical(s.right, z0.second)};
  return run_picard(
      start, [&](const PointPair& z) { return step(z); },
      [&](const PointPair& a, const PointPair& b) {
        return product_dist(s, a, b);
      },
      tol, max_iter);
}

SolveReport picard_solve(const SelfMapSpec& w, const Point& x0, double tol,
                         std::size_t max_iter) {
  return picard_iterate(
      w.domain, [&](const Point& p) { return apply(w, p); }, x0, tol,
      max_iter);
}

SolveReport coupled_solve(const CoupledMapSpec& t, const Point& x0,
                          const Point& y0, double tol, std::size_t max_iter) {
  ProductSpace ps{t.domain, t.domain};
  return picard_iterate_pair(
      ps,
      [&](const PointPair& z) {
        return PointPair{apply(t, z.first, z.second),
                         apply(t, z.second, z.first)};
      },
      {x0, y0}, tol, max_iter);
}

SolveReport extended_solve(const ExtendedPairSpec& pair, const Point& x0,
                           const Point& y0, double tol, std::size_t max_iter) {
  ProductSpace ps{pair.t_map.domain, pair.s_map.domain};
  return picard_iterate_pair(
      ps,
      [&](const PointPair& z) {
        return PointPair{apply(pair.t_map, z.first, z.second),
                         apply(pair.s_map, z.first, z.second)};
      },
      {x0, y0}, tol, max_iter);
}

Point sample_point(SplitMix64& rng, const Space& s) {
  if (s.kind == SpaceKind::Dyadic) {
    // Exponents 0..40, plus the fixed point 0 itself.
    std::uint64_t k = rng.below(42);
    return Point::d1(k == 41 ? 0.0 : std::ldexp(1.0, -static_cast<int>(k)));
  }
  std::array<double, 3> c{0.0, 0.0, 0.0};
  for (int i = 0; i < s.dim; ++i)
    c[static_cast<std::size_t>(i)] = rng.uniform(-10.0, 10.0);
  return Point::from({c.data(), static_cast<std::size_t>(s.dim)});
}

namespace {

void require_samples(std::size_t samples) {
  if (samples < 1) throw std::invalid_argument("need at least one sample");
}

}  // namespace

VerifyReport verify_contraction(const SelfMapSpec& w, const PiecewiseFn& psi,
                                const PiecewiseFn& phi, std::size_t samples,
                                std::uint64_t seed) {
  require_samples(samples);
  SplitMix64 rng(seed);
  VerifyReport rep;
  for (std::size_t i = 0; i < samples; ++i) {
    Point x = sample_point(rng, w.domain);
    Point y = sample_point(rng, w.domain);
    double image = dist(w.domain, apply(w, x), apply(w, y));
    if (image == 0.0) {
      ++rep.skipped;
      continue;
    }
    double arg = dist(w.domain, x, y);
    double lhs = psi(image);
    double rhs = phi(arg);
    ++rep.checked;
    if (!leq_with_slack(lhs, rhs)) {
      rep.passed = false;
      rep.witness = VerifyWitness{i, {x}, {y}, image, arg, lhs, rhs, ""};
      return rep;
    }
  }
  return rep;
}

VerifyReport verify_contraction(const CoupledMapSpec& t, const PiecewiseFn& psi,
                                const PiecewiseFn& phi, std::size_t samples,
                                std::uint64_t seed) {
  require_samples(samples);
  SplitMix64 rng(seed);
  ProductSpace ps{t.domain, t.domain};
  VerifyReport rep;
  for (std::size_t i = 0; i < samples; ++i) {
    PointPair z{sample_point(rng, t.domain), sample_point(rng, t.domain)};
    PointPair w{sample_point(rng, t.domain), sample_point(rng, t.domain)};
    double image =
        dist(t.domain, apply(t, z.first, z.second), apply(t, w.first, w.second));
    if (image == 0.0) {
      ++rep.skipped;
      continue;
    }
    double arg = product_dist(ps, z, w);
    double lhs = psi(image);
    double rhs = phi(arg);
    ++rep.checked;
    if (!leq_with_slack(lhs, rhs)) {
      rep.passed = false;
      rep.witness = VerifyWitness{
          i, {z.first, z.second}, {w.first, w.second}, image, arg, lhs, rhs, ""};
      return rep;
    }
  }
  return rep;
}

VerifyReport verify_contraction(const ExtendedPairSpec& ts,
                                const PiecewiseFn& psi,
                                const PiecewiseFn& phi1,
                                const PiecewiseFn& phi2, std::size_t samples,
                                std::uint64_t seed) {
  require_samples(samples);
  SplitMix64 rng(seed);
  ProductSpace ps{ts.t_map.domain, ts.s_map.domain};
  VerifyReport rep;
  for (std::size_t i = 0; i < samples; ++i) {
    PointPair z{sample_point(rng, ps.left), sample_point(rng, ps.right)};
    PointPair w{sample_point(rng, ps.left), sample_point(rng, ps.right)};
    double arg = product_dist(ps, z, w);
    bool any_checked = false;

    double image_t = dist(ps.left, apply(ts.t_map, z.first, z.second),
                          apply(ts.t_map, w.first, w.second));
    if (image_t > 0.0) {
      any_checked = true;
      double lhs = psi(image_t), rhs = phi1(arg);
      if (!leq_with_slack(lhs, rhs)) {
        rep.passed = false;
        ++rep.checked;
        rep.witness = VerifyWitness{
            i, {z.first, z.second}, {w.first, w.second}, image_t, arg, lhs, rhs,
            "T"};
        return rep;
      }
    }
    double image_s = dist(ps.right, apply(ts.s_map, z.first, z.second),
                          apply(ts.s_map, w.first, w.second));
    if (image_s > 0.0) {
      any_checked = true;
      double lhs = psi(image_s), rhs = phi2(arg);
      if (!leq_with_slack(lhs, rhs)) {
        rep.passed = false;
        ++rep.checked;
        rep.witness = VerifyWitness{
            i, {z.first, z.second}, {w.first, w.second}, image_s, arg, lhs, rhs,
            "S"};
        return rep;
      }
    }
    any_checked ? ++rep.checked : ++rep.skipped;
  }
  return rep;
}

}  // namespace psiphi
