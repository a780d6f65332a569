#include "liftexp/lift.hpp"

#include <cmath>
#include <string>

#include "liftexp/error.hpp"

namespace liftexp {

namespace {

void require_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw ValidationError("alpha must lie in (0, 1], got " + std::to_string(alpha));
}

double ipow(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

}  // namespace

double expectation_support(const BodySample& sample, const Vec& u) {
    double s = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i)
        s += sample.weight(i) * support(sample.body(i), u);
    return s;
}

double lift_support(const BodySample& sample, double u0, const Vec& u) {
    if (!std::isfinite(u0)) throw ValidationError("lift_support: non-finite u0");
    return stop_loss_curve(sample, u).value(u0);
}

double slice_support(const BodySample& sample, double alpha, const Vec& u) {
    require_alpha(alpha);
    return stop_loss_curve(sample, u).slice_min(alpha);
}

double trimmed_region_support(const BodySample& sample, double alpha, const Vec& u) {
    require_alpha(alpha);
    return stop_loss_curve(sample, u).slice_min(alpha) / alpha;
}

bool is_outlier(const BodySample& sample, double alpha, const ConvexBody& candidate,
                std::span<const Vec> directions, double tol) {
    require_alpha(alpha);
    if (directions.empty()) throw ValidationError("is_outlier: empty direction list");
    if (candidate.dim() != sample.dim())
        throw ValidationError("is_outlier: candidate dimension does not match sample");
    for (const Vec& u : directions) {
        if (support(candidate, u) > trimmed_region_support(sample, alpha, u) + tol)
            return true;
    }
    return false;
}

double hoeffding_support(const BodySample& sample, int n, const Vec& u) {
    if (n < 1) throw ValidationError("hoeffding_support: n must be >= 1");
    const StopLossCurve curve = stop_loss_curve(sample, u);
    const std::size_t m = curve.size();
    // ascending support values are the breakpoints negated, reversed
    double acc = 0.0;
    double prev_pow = 0.0;
    double cdf = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t r = m - 1 - j;  // atom with j-th smallest value
        const double v = -curve.breakpoints()[r];
        cdf = (j + 1 == m) ? 1.0 : cdf + curve.atom_weights()[r];
        const double p = ipow(cdf, n);
        acc += v * (p - prev_pow);
        prev_pow = p;
    }
    return acc;
}

}  // namespace liftexp
