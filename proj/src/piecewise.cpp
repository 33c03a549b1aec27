#include "psiphi/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "psiphi/rng.hpp"

namespace psiphi {

namespace {

constexpr double kStartMergeTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Relative slack absorbing envelope-crossing rounding in jump comparisons.
inline double jump_slack(double a, double b) {
  return 32.0 * std::numeric_limits<double>::epsilon() *
         std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

PiecewiseFn::PiecewiseFn(std::vector<Piece> pieces) {
  if (pieces.empty())
    throw std::invalid_argument("piecewise function needs at least one piece");
  for (const Piece& p : pieces) {
    if (!std::isfinite(p.start) || !std::isfinite(p.slope) ||
        !std::isfinite(p.intercept))
      throw std::invalid_argument("piece fields must be finite");
    if (p.start < 0.0)
      throw std::invalid_argument("piece start must be >= 0");
  }
  pieces_.reserve(pieces.size());
  for (Piece& p : pieces) {
    if (!pieces_.empty()) {
      double prev = pieces_.back().start;
      if (p.start < prev)
        throw std::invalid_argument("piece starts must be increasing");
      if (p.start - prev < kStartMergeTol) {
        // Degenerate sliver: the later piece takes over from the same start.
        p.start = prev;
        pieces_.back() = p;
        continue;
      }
    }
    pieces_.push_back(p);
  }
}

std::size_t PiecewiseFn::index_at(double t) const {
  std::size_t idx = 0;
  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    if (pieces_[i].start <= t)
      idx = i;
    else
      break;
  }
  return idx;
}

std::size_t PiecewiseFn::index_before(double t) const {
  std::size_t idx = 0;
  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    if (pieces_[i].start < t)
      idx = i;
    else
      break;
  }
  return idx;
}

double PiecewiseFn::operator()(double t) const {
  if (!(t > 0.0))
    throw std::domain_error("control functions are defined on (0, inf)");
  const Piece& p = pieces_[index_at(t)];
  return p.slope * t + p.intercept;
}

double PiecewiseFn::right_limit(double eps) const {
  if (!(eps >= 0.0))
    throw std::domain_error("right limit needs eps >= 0");
  const Piece& p = pieces_[index_at(eps)];
  return p.slope * eps + p.intercept;
}

double PiecewiseFn::left_limit(double eps) const {
  if (!(eps > 0.0))
    throw std::domain_error("left limit needs eps > 0");
  const Piece& p = pieces_[index_before(eps)];
  return p.slope * eps + p.intercept;
}

std::vector<double> PiecewiseFn::breakpoints() const {
  std::vector<double> bs;
  for (std::size_t i = 1; i < pieces_.size(); ++i)
    bs.push_back(pieces_[i].start);
  return bs;
}

PiecewiseFn linear_fn(double slope) {
  return PiecewiseFn({{0.0, slope, 0.0}});
}

PiecewiseFn identity_fn() { return linear_fn(1.0); }

bool is_nondecreasing(const PiecewiseFn& f) {
  const auto& ps = f.pieces();
  for (const Piece& p : ps)
    if (p.slope < 0.0) return false;
  for (std::size_t i = 1; i < ps.size(); ++i) {
    double b = ps[i].start;
    double left = ps[i - 1].slope * b + ps[i - 1].intercept;
    double right = ps[i].slope * b + ps[i].intercept;
    if (left > right + jump_slack(left, right)) return false;
  }
  return true;
}

namespace {

struct AffineDiff {
  double slope = 0.0;
  double intercept = 0.0;
  double at(double t) const { return slope * t + intercept; }
};

// Common refinement edges: 0 followed by every distinct breakpoint.
std::vector<double> merged_edges(const PiecewiseFn& a, const PiecewiseFn& b) {
  std::vector<double> edges{0.0};
  for (const PiecewiseFn* f : {&a, &b})
    for (double t : f->breakpoints()) edges.push_back(t);
  std::sort(edges.begin(), edges.end());
  std::vector<double> out;
  for (double e : edges)
    if (out.empty() || e - out.back() >= kStartMergeTol) out.push_back(e);
  return out;
}

struct Cell {
  double lo = 0.0;
  double hi = kInf;  // infinity for the last cell
  bool bounded() const { return std::isfinite(hi); }
};

std::vector<Cell> cells_of(const std::vector<double>& edges) {
  std::vector<Cell> cs;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    Cell c;
    c.lo = edges[i];
    c.hi = (i + 1 < edges.size()) ? edges[i + 1] : kInf;
    cs.push_back(c);
  }
  return cs;
}

const Piece& active_piece(const PiecewiseFn& f, const Cell& c) {
  const auto& ps = f.pieces();
  std::size_t idx = 0;
  for (std::size_t i = 1; i < ps.size(); ++i) {
    if (ps[i].start <= c.lo + kStartMergeTol / 2)
      idx = i;
    else
      break;
  }
  return ps[idx];
}

struct DominationOutcome {
  bool holds = true;
  std::optional<double> witness;
};

// Picks a t in (max(lo,0), hi) where the direct evaluations confirm
// phi(t) >= psi(t); falls back to the first analytic candidate.
double confirm_witness(const PiecewiseFn& psi, const PiecewiseFn& phi,
                       const Cell& c, const AffineDiff& g) {
  std::vector<double> cands;
  double hi = c.bounded() ? c.hi : c.lo + 2.0;
  double mid = c.lo + (hi - c.lo) / 2.0;
  if (c.lo > 0.0) cands.push_back(c.lo);
  cands.push_back(mid);
  if (g.slope != 0.0) {
    double root = -g.intercept / g.slope;
    if (std::isfinite(root)) {
      cands.push_back(root + (hi - root) / 2.0);  // past the crossing
      cands.push_back(root / 2.0 + c.lo / 2.0);   // before the crossing
      if (!c.bounded()) cands.push_back(root + 1.0);
    }
  }
  for (int k = 1; k < 16; ++k)
    cands.push_back(c.lo + (hi - c.lo) * k / 16.0);
  for (double t : cands) {
    if (!(t > 0.0)) continue;
    if (t < c.lo || (c.bounded() && t >= c.hi)) continue;
    if (phi(t) >= psi(t)) return t;
  }
  for (double t : cands)
    if (t > 0.0) return t;
  return mid > 0.0 ? mid : 1.0;
}

// phi(t) < psi(t) on every cell, decided from the affine difference
// g = phi - psi: negative (limit) values at both cell ends keep an affine
// function negative on the half-open interior; the open end at 0 and the
// unbounded tail get the slope-sign rules.
DominationOutcome dominates_impl(const PiecewiseFn& psi,
                                 const PiecewiseFn& phi) {
  for (const Cell& c : cells_of(merged_edges(psi, phi))) {
    const Piece& pp = active_piece(psi, c);
    const Piece& fp = active_piece(phi, c);
    AffineDiff g{fp.slope - pp.slope, fp.intercept - pp.intercept};
    bool ok;
    if (c.bounded()) {
      bool left_ok = c.lo > 0.0
                         ? g.at(c.lo) < 0.0
                         : (g.intercept < 0.0 ||
                            (g.intercept == 0.0 && g.slope < 0.0));
      ok = left_ok && g.at(c.hi) <= 0.0;
    } else {
      bool left_ok = c.lo > 0.0
                         ? g.at(c.lo) < 0.0
                         : (g.intercept < 0.0 ||
                            (g.intercept == 0.0 && g.slope < 0.0));
      ok = left_ok && g.slope <= 0.0;
    }
    if (!ok) return {false, confirm_witness(psi, phi, c, g)};
  }
  return {true, std::nullopt};
}

struct NondecreasingOutcome {
  bool holds = true;
  std::optional<double> witness;
};

NondecreasingOutcome nondecreasing_impl(const PiecewiseFn& f) {
  const auto& ps = f.pieces();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (ps[i].slope < 0.0) {
      double lo = std::max(ps[i].start, 0.0);
      double hi = (i + 1 < ps.size()) ? ps[i + 1].start : lo + 2.0;
      return {false, lo + (hi - lo) / 2.0};
    }
  }
  for (std::size_t i = 1; i < ps.size(); ++i) {
    double b = ps[i].start;
    double left = ps[i - 1].slope * b + ps[i - 1].intercept;
    double right = ps[i].slope * b + ps[i].intercept;
    if (left > right + jump_slack(left, right)) return {false, b};
  }
  return {true, std::nullopt};
}

ConditionCheck make_check(std::string name, bool pass,
                          std::optional<double> witness) {
  return {std::move(name), pass ? CheckStatus::Pass : CheckStatus::Fail,
          pass ? std::nullopt : witness};
}

// phi(e+) < psi(e+) at every common breakpoint e > 0.
ConditionCheck right_limit_gap_at_breakpoints(const PiecewiseFn& psi,
                                              const PiecewiseFn& phi) {
  for (double e : merged_edges(psi, phi)) {
    if (e <= 0.0) continue;
    if (!(phi.right_limit(e) < psi.right_limit(e)))
      return make_check("right_limit_gap", false, e);
  }
  return make_check("right_limit_gap", true, std::nullopt);
}

// phi < psi pointwise on every open cell interior (the right limits equal
// the values there).
ConditionCheck right_limit_gap_with_interiors(const PiecewiseFn& psi,
                                              const PiecewiseFn& phi) {
  ConditionCheck bp = right_limit_gap_at_breakpoints(psi, phi);
  if (bp.status == CheckStatus::Fail) return bp;
  for (const Cell& c : cells_of(merged_edges(psi, phi))) {
    const Piece& pp = active_piece(psi, c);
    const Piece& fp = active_piece(phi, c);
    AffineDiff g{fp.slope - pp.slope, fp.intercept - pp.intercept};
    double v_lo = g.at(c.lo);
    bool ok;
    if (c.bounded()) {
      double v_hi = g.at(c.hi);
      ok = v_lo <= 0.0 && v_hi <= 0.0 && !(g.slope == 0.0 && v_lo == 0.0);
    } else {
      ok = g.slope < 0.0 ? v_lo <= 0.0 : (g.slope == 0.0 && v_lo < 0.0);
    }
    if (!ok)
      return make_check("right_limit_gap", false,
                        confirm_witness(psi, phi, c, g));
  }
  return make_check("right_limit_gap", true, std::nullopt);
}

// phi(0+) < min(liminf_{t->e} psi(t), psi(e)) for every e > 0. At
// breakpoints the two-sided liminf is min(left limit, value); on open cell
// interiors the affine infimum is approached at the cell ends, so equality
// with an unattained end value is allowed.
ConditionCheck zero_limit_gap(const PiecewiseFn& psi, const PiecewiseFn& phi) {
  const double phi0 = phi.right_limit(0.0);
  auto edges = merged_edges(psi, phi);
  for (double e : edges) {
    if (e <= 0.0) continue;
    double two_sided = std::min(psi.left_limit(e), psi.right_limit(e));
    if (!(phi0 < two_sided)) return make_check("zero_limit_gap", false, e);
  }
  for (const Cell& c : cells_of(edges)) {
    const Piece& pp = active_piece(psi, c);
    double v_lo = pp.slope * c.lo + pp.intercept;
    bool ok;
    std::optional<double> witness;
    if (!c.bounded()) {
      if (pp.slope < 0.0) {
        ok = false;
        witness = std::max(c.lo, 1.0) + std::max(1.0, std::abs(v_lo / (pp.slope == 0.0 ? 1.0 : pp.slope)));
      } else if (pp.slope == 0.0) {
        ok = v_lo > phi0;
      } else {
        ok = v_lo >= phi0;
      }
    } else {
      double v_hi = pp.slope * c.hi + pp.intercept;
      if (pp.slope == 0.0)
        ok = v_lo > phi0;
      else
        ok = std::min(v_lo, v_hi) >= phi0;
    }
    if (!ok) {
      if (!witness) witness = c.lo + (c.bounded() ? (c.hi - c.lo) / 2.0 : 1.0);
      return make_check("zero_limit_gap", false, *witness);
    }
  }
  return make_check("zero_limit_gap", true, std::nullopt);
}

// Falsification search for the decreasing-sequence condition: geometric
// approaches t_n = eps + delta/2^n to each breakpoint and to random
// targets. A sequence falsifies when psi(t_n) is strictly decreasing and
// psi, phi approach a common limit while t_n stays away from 0. Evidence
// only; a pass proves nothing.
ConditionCheck decreasing_sequences_heuristic(const PiecewiseFn& psi,
                                              const PiecewiseFn& phi) {
  std::vector<double> targets;
  for (const PiecewiseFn* f : {&psi, &phi})
    for (double b : f->breakpoints())
      if (b > 0.0) targets.push_back(b);
  SplitMix64 rng(0x5eed5eed5eed5eedull);
  const std::size_t kSequences = 1000;
  const double spreads[] = {1.0, 0x1.0p-4, 0x1.0p-10};
  while (targets.size() * 3 < kSequences)
    targets.push_back(static_cast<double>(rng.below(1024) + 1) / 16.0);

  for (double eps : targets) {
    for (double spread : spreads) {
      bool strictly_dec = true;
      double prev = 0.0;
      double t = eps;
      for (int n = 0; n <= 40; ++n) {
        t = eps + spread * std::ldexp(1.0, -n);
        double v = psi(t);
        if (n > 0 && !(v < prev)) {
          strictly_dec = false;
          break;
        }
        prev = v;
      }
      if (!strictly_dec) continue;
      double gap = std::abs(psi(t) - phi(t));
      if (gap <= 1e-9 * std::max(1.0, std::abs(psi(t))))
        return {"decreasing_sequences", CheckStatus::HeuristicFail, eps};
    }
  }
  return {"decreasing_sequences", CheckStatus::HeuristicPass, std::nullopt};
}

}  // namespace

bool strictly_dominates(const PiecewiseFn& psi, const PiecewiseFn& phi) {
  return dominates_impl(psi, phi).holds;
}

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::HeuristicPass: return "HEURISTIC-PASS";
    case CheckStatus::HeuristicFail: return "HEURISTIC-FAIL";
  }
  return "?";
}

bool ConditionReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ConditionCheck& c) { return c.passed(); });
}

bool ConditionReport::analytic_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const ConditionCheck& c) {
    return c.heuristic() || c.passed();
  });
}

const ConditionCheck* ConditionReport::find(std::string_view name) const {
  for (const ConditionCheck& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

ConditionReport check_proinov(const PiecewiseFn& psi, const PiecewiseFn& phi) {
  ConditionReport rep;
  auto nd = nondecreasing_impl(psi);
  rep.checks.push_back(make_check("psi_nondecreasing", nd.holds, nd.witness));
  auto dom = dominates_impl(psi, phi);
  rep.checks.push_back(
      make_check("phi_strictly_below_psi", dom.holds, dom.witness));
  rep.checks.push_back(right_limit_gap_at_breakpoints(psi, phi));
  return rep;
}

ConditionReport check_popescu(const PiecewiseFn& psi, const PiecewiseFn& phi) {
  ConditionReport rep;
  auto nd = nondecreasing_impl(psi);
  rep.checks.push_back(make_check("psi_nondecreasing", nd.holds, nd.witness));
  // Bounded cells of an affine family always have a finite inf; only a
  // descending unbounded tail escapes to -inf.
  const Piece& last = psi.pieces().back();
  rep.checks.push_back(make_check("psi_inf_finite", last.slope >= 0.0,
                                  std::max(last.start, 1.0) + 1.0));
  rep.checks.push_back(decreasing_sequences_heuristic(psi, phi));
  rep.checks.push_back(right_limit_gap_with_interiors(psi, phi));
  rep.checks.push_back(zero_limit_gap(psi, phi));
  return rep;
}

PiecewiseFn max_combine(const std::vector<PiecewiseFn>& fns) {
  if (fns.empty())
    throw std::invalid_argument("max_combine: need at least one function");
  if (fns.size() == 1) return fns.front();

  std::vector<double> edges{0.0};
  for (const PiecewiseFn& f : fns)
    for (double b : f.breakpoints()) edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  std::vector<double> uniq;
  for (double e : edges)
    if (uniq.empty() || e - uniq.back() >= kStartMergeTol) uniq.push_back(e);

  std::vector<Piece> out;
  auto emit = [&out](double start, double slope, double intercept) {
    if (!out.empty() && out.back().slope == slope &&
        out.back().intercept == intercept)
      return;  // same line continues through the edge
    out.push_back({start, slope, intercept});
  };

  for (std::size_t ci = 0; ci < uniq.size(); ++ci) {
    const double lo = uniq[ci];
    const double hi = (ci + 1 < uniq.size()) ? uniq[ci + 1] : kInf;
    Cell cell{lo, hi};
    std::vector<AffineDiff> lines;
    for (const PiecewiseFn& f : fns) {
      const Piece& p = active_piece(f, cell);
      lines.push_back({p.slope, p.intercept});
    }
    // Upper-envelope sweep: the winner at t is the (value, slope) maximum,
    // and only a steeper line can overtake it later in the cell.
    double t = lo;
    std::size_t win = 0;
    for (std::size_t j = 1; j < lines.size(); ++j) {
      double vw = lines[win].at(t), vj = lines[j].at(t);
      if (vj > vw || (vj == vw && lines[j].slope > lines[win].slope)) win = j;
    }
    while (true) {
      emit(t, lines[win].slope, lines[win].intercept);
      double best_x = hi;
      std::size_t best_j = lines.size();
      for (std::size_t j = 0; j < lines.size(); ++j) {
        if (lines[j].slope <= lines[win].slope) continue;
        double x = (lines[win].intercept - lines[j].intercept) /
                   (lines[j].slope - lines[win].slope);
        if (!(x > t) || x >= hi) continue;
        if (x < best_x ||
            (x == best_x && lines[j].slope > lines[best_j].slope)) {
          best_x = x;
          best_j = j;
        }
      }
      if (best_j == lines.size()) break;
      t = best_x;
      win = best_j;
    }
  }
  return PiecewiseFn(std::move(out));
}

}  // namespace psiphi
