#include "liftexp/stop_loss.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "liftexp/error.hpp"

namespace liftexp {

StopLossCurve StopLossCurve::from_support_values(std::vector<WeightedValue> values,
                                                 double merge_tol) {
    if (values.empty()) throw ValidationError("StopLossCurve: no atoms");
    for (auto& a : values) {
        if (!std::isfinite(a.value)) throw ValidationError("StopLossCurve: non-finite value");
        if (!std::isfinite(a.weight) || a.weight <= 0.0)
            throw ValidationError("StopLossCurve: weights must be positive");
        a.value = -a.value;  // breakpoint
    }
    std::sort(values.begin(), values.end(), [](const WeightedValue& a, const WeightedValue& b) {
        return a.value < b.value || (a.value == b.value && a.weight < b.weight);
    });

    StopLossCurve c;
    for (const auto& a : values) {
        // merge against the group anchor so the representative value is exact
        if (!c.breakpoints_.empty() && a.value - c.breakpoints_.back() <= merge_tol) {
            c.atom_weights_.back() += a.weight;
        } else {
            c.breakpoints_.push_back(a.value);
            c.atom_weights_.push_back(a.weight);
        }
    }

    double cw = 0.0;
    double cwb = 0.0;
    c.cum_weight_.reserve(c.breakpoints_.size());
    c.cum_wb_.reserve(c.breakpoints_.size());
    for (std::size_t j = 0; j < c.breakpoints_.size(); ++j) {
        cw += c.atom_weights_[j];
        cwb += c.atom_weights_[j] * c.breakpoints_[j];
        c.cum_weight_.push_back(cw);
        c.cum_wb_.push_back(cwb);
    }
    if (std::abs(cw - 1.0) > kWeightSumTol)
        throw ValidationError("StopLossCurve: weights sum to " + std::to_string(cw) +
                              ", expected 1");
    // pin the top slope so the asymptote L(t) = t + mean is exact
    c.cum_weight_.back() = 1.0;
    c.mean_ = -c.cum_wb_.back();
    return c;
}

double StopLossCurve::value(double t) const {
    if (!std::isfinite(t)) throw ValidationError("StopLossCurve::value: non-finite t");
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
    const std::size_t k = static_cast<std::size_t>(it - breakpoints_.begin());
    if (k == 0) return 0.0;
    return cum_weight_[k - 1] * t - cum_wb_[k - 1];
}

double StopLossCurve::slice_min(double alpha) const {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw ValidationError("slice: alpha must lie in (0, 1], got " + std::to_string(alpha));
    const auto it = std::lower_bound(cum_weight_.begin(), cum_weight_.end(), alpha);
    const std::size_t k =
        it == cum_weight_.end() ? cum_weight_.size() - 1
                                : static_cast<std::size_t>(it - cum_weight_.begin());
    const double t = breakpoints_[k];
    return value(t) - alpha * t;
}

StopLossCurve stop_loss_curve(const BodySample& sample, const Vec& u, double merge_tol) {
    std::vector<WeightedValue> atoms;
    atoms.reserve(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i)
        atoms.push_back({support(sample.body(i), u), sample.weight(i)});
    return StopLossCurve::from_support_values(std::move(atoms), merge_tol);
}

}  // namespace liftexp
