#pragma once

#include <cstddef>
#include <vector>

#include "liftexp/sample.hpp"
#include "liftexp/tolerances.hpp"
#include "liftexp/vec.hpp"

namespace liftexp {

struct WeightedValue {
    double value;
    double weight;
};

/// Exact piecewise-linear convex stop-loss curve
///
///     L(t) = sum_i w_i (t + h_i)_+
///
/// for the support values h_i of one direction. Breakpoints are the merged,
/// ascending values -h_i; the slope right of breakpoint j is the cumulative
/// weight, pinned to exactly 1 at the top so that L(t) = t + mean holds
/// exactly beyond the last breakpoint (and L = 0 exactly below the first).
/// Evaluation is pure sorting plus partial sums, never iterative.
class StopLossCurve {
public:
    /// Builds the canonical curve from (support value, weight) atoms.
    /// Values within merge_tol collapse into one atom with summed weight.
    static StopLossCurve from_support_values(std::vector<WeightedValue> values,
                                             double merge_tol = kMergeTol);

    double value(double t) const;  ///< L(t)
    double mean() const { return mean_; }

    /// min_t [L(t) - alpha * t], attained at the first breakpoint whose
    /// cumulative weight reaches alpha; exact slope scan, alpha in (0, 1].
    double slice_min(double alpha) const;

    std::size_t size() const { return breakpoints_.size(); }
    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& atom_weights() const { return atom_weights_; }
    const std::vector<double>& slopes() const { return cum_weight_; }

private:
    StopLossCurve() = default;

    std::vector<double> breakpoints_;   // sorted ascending, strictly increasing
    std::vector<double> atom_weights_;  // per breakpoint, > 0
    std::vector<double> cum_weight_;    // prefix sums; back() == 1.0 exactly
    std::vector<double> cum_wb_;        // prefix sums of weight * breakpoint
    double mean_ = 0.0;                 // = -cum_wb_.back()
};

/// Stop-loss curve of h_X(u) under the empirical law of the sample.
StopLossCurve stop_loss_curve(const BodySample& sample, const Vec& u,
                              double merge_tol = kMergeTol);

}  // namespace liftexp
