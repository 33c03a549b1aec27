#include "psiphi/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace psiphi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Point snap_point(const Space& s, const Point& p, double r) {
  if (s.kind == SpaceKind::Dyadic) return canonical(s, p);
  std::array<double, 3> c{0.0, 0.0, 0.0};
  for (int i = 0; i < p.dim(); ++i)
    c[static_cast<std::size_t>(i)] = r * std::round(p[i] / r);
  return Point::from({c.data(), static_cast<std::size_t>(p.dim())});
}

void canonicalize(std::vector<Point>& pts) {
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

bool pair_lex_less(const PointPair& a, const PointPair& b) {
  if (lex_less(a.first, b.first)) return true;
  if (lex_less(b.first, a.first)) return false;
  return lex_less(a.second, b.second);
}

void check_resolution(double r) {
  if (!(r > 0.0)) throw std::invalid_argument("resolution must be positive");
}

void check_ifs_shapes(std::size_t maps, std::size_t phis) {
  if (maps == 0) throw std::invalid_argument("an IFS needs at least one map");
  if (maps != phis)
    throw std::invalid_argument("an IFS needs one phi per map");
}

void check_tol_vs_resolution(double tol, double r) {
  if (!(tol > 2.0 * r))
    throw std::invalid_argument(
        "tolerance must exceed twice the resolution (below the snap pitch "
        "the Hausdorff distance is noise)");
}

}  // namespace

CompactSet::CompactSet(Space s, std::vector<Point> pts, double r)
    : space_(s), points_(std::move(pts)), resolution_(r) {}

CompactSet CompactSet::make(const Space& s, std::vector<Point> pts,
                            double resolution) {
  check_resolution(resolution);
  if (pts.empty())
    throw std::invalid_argument("compact sets are nonempty");
  for (Point& p : pts) p = snap_point(s, p, resolution);
  canonicalize(pts);
  return CompactSet(s, std::move(pts), resolution);
}

double directed_distance(std::span<const Point> a, std::span<const Point> b,
                         const Space& s) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("directed distance needs nonempty sets");
  double best = 0.0;
  for (const Point& pa : a) {
    double m = kInf;
    for (const Point& pb : b) {
      m = std::min(m, dist(s, pa, pb));
      if (m <= best) break;  // cannot raise the running max
    }
    if (m > best) best = m;
  }
  return best;
}

double directed_distance(const CompactSet& a, const CompactSet& b) {
  if (!(a.space() == b.space()))
    throw std::invalid_argument("sets live in different spaces");
  return directed_distance(a.points(), b.points(), a.space());
}

double hausdorff(std::span<const Point> a, std::span<const Point> b,
                 const Space& s) {
  return std::max(directed_distance(a, b, s), directed_distance(b, a, s));
}

double hausdorff(const CompactSet& a, const CompactSet& b) {
  if (!(a.space() == b.space()))
    throw std::invalid_argument("sets live in different spaces");
  return hausdorff(a.points(), b.points(), a.space());
}

CompactSet apply_map_set(const SelfMapSpec& w, const CompactSet& a) {
  if (!(w.domain == a.space()))
    throw std::invalid_argument("map domain does not match the set's space");
  std::vector<Point> out;
  out.reserve(a.size());
  for (const Point& p : a.points()) out.push_back(apply(w, p));
  return CompactSet::make(a.space(), std::move(out), a.resolution());
}

CompactSet apply_ifs(const IFS& ifs, const CompactSet& a) {
  check_ifs_shapes(ifs.maps.size(), ifs.phis.size());
  std::vector<Point> out;
  out.reserve(a.size() * ifs.maps.size());
  for (const SelfMapSpec& w : ifs.maps) {
    CompactSet img = apply_map_set(w, a);
    out.insert(out.end(), img.points().begin(), img.points().end());
  }
  return CompactSet::make(a.space(), std::move(out), a.resolution());
}

AttractorReport attractor_solve(const IFS& ifs, const CompactSet& a0,
                                double tol, std::size_t max_iter) {
  check_ifs_shapes(ifs.maps.size(), ifs.phis.size());
  check_tol_vs_resolution(tol, a0.resolution());
  AttractorReport rep{a0, false, 0, {}, {}, {}};
  for (std::size_t i = 0; i < ifs.maps.size(); ++i)
    rep.map_conditions.push_back(check_proinov(ifs.psi, ifs.phis[i]));

  CompactSet cur = a0;
  for (std::size_t n = 1; n <= max_iter; ++n) {
    CompactSet next = apply_ifs(ifs, cur);
    double h = hausdorff(cur, next);
    rep.hausdorff_trace.push_back(h);
    rep.size_trace.push_back(next.size());
    rep.iterations = n;
    cur = next;
    if (h < tol) {
      rep.converged = true;
      break;
    }
  }
  rep.attractor = cur;
  return rep;
}

SetCheckReport fractal_contraction_check(const SelfMapSpec& w,
                                         const PiecewiseFn& psi,
                                         const PiecewiseFn& phi,
                                         std::size_t samples,
                                         std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  if (!is_nondecreasing(psi) || !is_nondecreasing(phi))
    throw std::invalid_argument(
        "the lifted contraction check needs nondecreasing psi and phi");
  SplitMix64 rng(seed);
  SetCheckReport rep;
  for (std::size_t i = 0; i < samples; ++i) {
    std::vector<Point> a(rng.below(8) + 1), b(rng.below(8) + 1);
    for (Point& p : a) p = sample_point(rng, w.domain);
    for (Point& p : b) p = sample_point(rng, w.domain);
    std::vector<Point> wa, wb;
    for (const Point& p : a) wa.push_back(apply(w, p));
    for (const Point& p : b) wb.push_back(apply(w, p));
    double image = hausdorff(wa, wb, w.domain);
    if (image == 0.0) {
      ++rep.skipped;
      continue;
    }
    double arg = hausdorff(a, b, w.domain);
    double lhs = psi(image);
    double rhs = phi(arg);
    ++rep.checked;
    double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    if (lhs > rhs + 1e-9 * scale) {
      rep.passed = false;
      rep.witness = SetWitness{i, a, b, image, arg, lhs, rhs};
      return rep;
    }
  }
  return rep;
}

PairSet::PairSet(ProductSpace s, std::vector<PointPair> pts, double r)
    : space_(s), points_(std::move(pts)), resolution_(r) {}

PairSet PairSet::make(const ProductSpace& s, std::vector<PointPair> pts,
                      double resolution) {
  check_resolution(resolution);
  if (pts.empty())
    throw std::invalid_argument("compact sets are nonempty");
  for (PointPair& p : pts) {
    p.first = snap_point(s.left, p.first, resolution);
    p.second = snap_point(s.right, p.second, resolution);
  }
  std::sort(pts.begin(), pts.end(), pair_lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return PairSet(s, std::move(pts), resolution);
}

double directed_distance(std::span<const PointPair> a,
                         std::span<const PointPair> b, const ProductSpace& s) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("directed distance needs nonempty sets");
  double best = 0.0;
  for (const PointPair& pa : a) {
    double m = kInf;
    for (const PointPair& pb : b) {
      m = std::min(m, product_dist(s, pa, pb));
      if (m <= best) break;
    }
    if (m > best) best = m;
  }
  return best;
}

double directed_distance(const PairSet& a, const PairSet& b) {
  if (!(a.space() == b.space()))
    throw std::invalid_argument("sets live in different spaces");
  return directed_distance(a.points(), b.points(), a.space());
}

double hausdorff(std::span<const PointPair> a, std::span<const PointPair> b,
                 const ProductSpace& s) {
  return std::max(directed_distance(a, b, s), directed_distance(b, a, s));
}

double hausdorff(const PairSet& a, const PairSet& b) {
  if (!(a.space() == b.space()))
    throw std::invalid_argument("sets live in different spaces");
  return hausdorff(a.points(), b.points(), a.space());
}

PairSet apply_coupled_ifs(const CoupledIFS& cifs, const PairSet& c) {
  check_ifs_shapes(cifs.maps.size(), cifs.phis.size());
  std::vector<PointPair> out;
  out.reserve(c.size() * cifs.maps.size());
  for (const CoupledMapSpec& w : cifs.maps) {
    if (!(w.domain == c.space().left))
      throw std::invalid_argument("map domain does not match the pair cloud");
    for (const PointPair& z : c.points())
      out.emplace_back(apply(w, z.first, z.second),
                       apply(w, z.second, z.first));
  }
  return PairSet::make(c.space(), std::move(out), c.resolution());
}

CompactSet project_first(const PairSet& c) {
  std::vector<Point> pts;
  pts.reserve(c.size());
  for (const PointPair& z : c.points()) pts.push_back(z.first);
  return CompactSet::make(c.space().left, std::move(pts), c.resolution());
}

CompactSet project_second(const PairSet& c) {
  std::vector<Point> pts;
  pts.reserve(c.size());
  for (const PointPair& z : c.points()) pts.push_back(z.second);
  return CompactSet::make(c.space().right, std::move(pts), c.resolution());
}

CoupledAttractorReport coupled_attractor_solve(const CoupledIFS& cifs,
                                               const PairSet& c0, double tol,
                                               std::size_t max_iter) {
  check_ifs_shapes(cifs.maps.size(), cifs.phis.size());
  check_tol_vs_resolution(tol, c0.resolution());
  CoupledAttractorReport rep{project_first(c0), project_second(c0), c0,
                             false,             0,                  {},
                             {},                {}};
  for (std::size_t i = 0; i < cifs.maps.size(); ++i)
    rep.map_conditions.push_back(check_proinov(cifs.psi, cifs.phis[i]));

  PairSet cur = c0;
  for (std::size_t n = 1; n <= max_iter; ++n) {
    PairSet next = apply_coupled_ifs(cifs, cur);
    double h = hausdorff(cur, next);
    rep.hausdorff_trace.push_back(h);
    rep.size_trace.push_back(next.size());
    rep.iterations = n;
    cur = next;
    if (h < tol) {
      rep.converged = true;
      break;
    }
  }
  rep.pairs = cur;
  rep.attractor_a = project_first(cur);
  rep.attractor_b = project_second(cur);
  return rep;
}

}  // namespace psiphi
