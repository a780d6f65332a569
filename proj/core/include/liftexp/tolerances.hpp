#pragma once

namespace liftexp {

/// Default tolerance for merging near-equal support values and for matching
/// probabilities. Overridable per call (and via the CLI --tol flag).
inline constexpr double kMergeTol = 1e-9;

/// Slack for comparisons that are algebraically exact and only pick up
/// floating-point rounding.
inline constexpr double kExactTol = 1e-12;

/// Allowed deviation of a weight vector's sum from one.
inline constexpr double kWeightSumTol = 1e-9;

/// Two branch slopes closer than this at a crossing cannot be told apart;
/// the continuation reconstruction refuses to re-match them.
inline constexpr double kGradientTieTol = 1e-7;

}  // namespace liftexp
