#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace psiphi {

/// One affine segment: value(t) = slope*t + intercept on [start, next_start),
/// the last segment extending to +infinity.
struct Piece {
  double start = 0.0;
  double slope = 0.0;
  double intercept = 0.0;

  bool operator==(const Piece&) const = default;
};

/// A scalar control function on (0, inf) built from finitely many affine
/// pieces on half-open intervals. The first piece also covers (0, start_2),
/// so evaluation is total on (0, inf); a first start of 0 is the usual way
/// to spell that. Starts are strictly increasing; starts closer than 1e-12
/// are merged on construction.
class PiecewiseFn {
 public:
  explicit PiecewiseFn(std::vector<Piece> pieces);

  /// Value at t > 0. Throws std::domain_error for t <= 0 (or NaN).
  double operator()(double t) const;

  /// Limit from the right at eps >= 0. Piecewise-affine functions are
  /// continuous from the right on half-open pieces, so this is also the
  /// right limsup and right liminf.
  double right_limit(double eps) const;

  /// Limit from the left at eps > 0.
  double left_limit(double eps) const;

  const std::vector<Piece>& pieces() const { return pieces_; }

  /// Interior breakpoints: starts of all pieces after the first.
  std::vector<double> breakpoints() const;

  bool operator==(const PiecewiseFn&) const = default;

 private:
  std::size_t index_at(double t) const;      // last piece with start <= t
  std::size_t index_before(double t) const;  // last piece with start < t

  std::vector<Piece> pieces_;
};

/// f(t) = slope * t.
PiecewiseFn linear_fn(double slope);

/// f(t) = t.
PiecewiseFn identity_fn();

/// True iff every slope is >= 0 and no breakpoint jumps downward. Jump
/// comparisons carry a few-ulp relative slack so that breakpoints produced
/// by exact envelope crossings do not read as spurious downward jumps.
bool is_nondecreasing(const PiecewiseFn& f);

/// True iff phi(t) < psi(t) for every t > 0, decided analytically on the
/// common breakpoint refinement (no sampling).
bool strictly_dominates(const PiecewiseFn& psi, const PiecewiseFn& phi);

enum class CheckStatus { Pass, Fail, HeuristicPass, HeuristicFail };

std::string_view to_string(CheckStatus s);

struct ConditionCheck {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::optional<double> witness;  // a t at which the condition fails

  bool passed() const {
    return status == CheckStatus::Pass || status == CheckStatus::HeuristicPass;
  }
  bool heuristic() const {
    return status == CheckStatus::HeuristicPass ||
           status == CheckStatus::HeuristicFail;
  }
};

/// Outcome of a condition suite. Heuristic entries are sampled evidence,
/// not proofs; analytic entries are decided exactly from the pieces.
struct ConditionReport {
  std::vector<ConditionCheck> checks;

  bool all_pass() const;
  bool analytic_pass() const;
  const ConditionCheck* find(std::string_view name) const;
};

/// Proinov-style conditions for a (psi, phi) pair:
///   psi_nondecreasing        every slope >= 0, no downward jump
///   phi_strictly_below_psi   phi(t) < psi(t) for all t > 0
///   right_limit_gap          phi(e+) < psi(e+) at every common breakpoint
/// Cell interiors are continuous, so the third reduces to the second there.
ConditionReport check_proinov(const PiecewiseFn& psi, const PiecewiseFn& phi);

/// Popescu-style conditions for a (psi, phi) pair:
///   psi_nondecreasing        as above
///   psi_inf_finite           inf_{t>e} psi(t) finite for all e > 0
///   decreasing_sequences     heuristic falsification search (see below)
///   right_limit_gap          phi(e+) < psi(e+) at breakpoints and interiors
///   zero_limit_gap           phi(0+) < min(liminf psi at e, psi(e)) for e > 0
/// The sequence condition quantifies over all strictly decreasing psi-chains
/// and cannot be decided from finitely many evaluations; the entry reports a
/// heuristic search over geometric approaches to each breakpoint and to
/// random targets.
ConditionReport check_popescu(const PiecewiseFn& psi, const PiecewiseFn& phi);

/// Exact pointwise maximum of the given functions as a PiecewiseFn. Within
/// each refinement cell the upper envelope of the active lines is swept and
/// crossings become new breakpoints, so eval(result, t) reproduces
/// max_i eval(fns[i], t) exactly for every t > 0.
PiecewiseFn max_combine(const std::vector<PiecewiseFn>& fns);

}  // namespace psiphi
