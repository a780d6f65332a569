#include "liftexp/order.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "liftexp/error.hpp"
#include "liftexp/lift.hpp"
#include "liftexp/stop_loss.hpp"

namespace liftexp {

namespace {

void require_same_sample_dim(const BodySample& a, const BodySample& b, const char* what) {
    if (a.dim() != b.dim())
        throw ValidationError(std::string(what) + ": samples of different dimension");
}

// first t with L_a(t) > L_b(t) + tol, scanning both breakpoint sets and the
// asymptote; nullopt means dominance
std::optional<std::pair<double, std::pair<double, double>>> icx_violation(
    const StopLossCurve& la, const StopLossCurve& lb, double tol) {
    std::vector<double> ts;
    ts.reserve(la.size() + lb.size() + 1);
    ts.insert(ts.end(), la.breakpoints().begin(), la.breakpoints().end());
    ts.insert(ts.end(), lb.breakpoints().begin(), lb.breakpoints().end());
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    for (double t : ts) {
        const double lhs = la.value(t);
        const double rhs = lb.value(t);
        if (lhs > rhs + tol) return std::make_pair(t, std::make_pair(lhs, rhs));
    }
    if (la.mean() > lb.mean() + tol) {
        const double t = std::max(la.breakpoints().back(), lb.breakpoints().back()) + 1.0;
        return std::make_pair(t, std::make_pair(la.value(t), lb.value(t)));
    }
    return std::nullopt;
}

}  // namespace

bool icx_dominates(const BodySample& a, const BodySample& b, const Vec& u) {
    require_same_sample_dim(a, b, "icx_dominates");
    return !icx_violation(stop_loss_curve(a, u), stop_loss_curve(b, u), kExactTol).has_value();
}

std::optional<InclusionWitness> lift_inclusion_witness(const BodySample& a, const BodySample& b,
                                                       const DirectionGrid& grid) {
    require_same_sample_dim(a, b, "lift_inclusion_witness");
    if (grid.dim() != a.dim())
        throw ValidationError("lift_inclusion_witness: grid dimension does not match samples");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Vec& u = grid[i];
        const auto v = icx_violation(stop_loss_curve(a, u), stop_loss_curve(b, u), kExactTol);
        if (v) return InclusionWitness{i, u, v->first, v->second.first, v->second.second};
    }
    return std::nullopt;
}

bool lift_included(const BodySample& a, const BodySample& b, const DirectionGrid& grid) {
    return !lift_inclusion_witness(a, b, grid).has_value();
}

BodySample mix_samples(const BodySample& a, const BodySample& b, double t) {
    if (!(t >= 0.0 && t <= 1.0))
        throw ValidationError("mix_samples: t must lie in [0, 1], got " + std::to_string(t));
    if (a.size() != b.size())
        throw ValidationError("mix_samples: samples must be coupled per index (length mismatch)");
    require_same_sample_dim(a, b, "mix_samples");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.weight(i) != b.weight(i))
            throw ValidationError(
                "mix_samples: weights must match elementwise (the coupling is per "
                "sample point, not by product)");
    std::vector<ConvexBody> bodies;
    bodies.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        bodies.push_back(MinkowskiCombo{{{t, a.body(i)}, {1.0 - t, b.body(i)}}});
    if (a.has_exact_weights() && b.has_exact_weights()) {
        std::vector<Rational> w;
        w.reserve(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) w.push_back(*a.exact_weight(i));
        return BodySample(std::move(bodies), std::move(w));
    }
    return BodySample(std::move(bodies), a.weights());
}

double convexity_gap(const BodySample& a, const BodySample& b, double t, double u0,
                     const Vec& u) {
    const BodySample mix = mix_samples(a, b, t);
    return t * lift_support(a, u0, u) + (1.0 - t) * lift_support(b, u0, u) -
           lift_support(mix, u0, u);
}

bool same_lift(const BodySample& a, const BodySample& b, const DirectionGrid& grid,
               double tol) {
    if (grid.dim() != a.dim())
        throw ValidationError("same_lift: grid dimension does not match samples");
    return same_lift(a, b, grid.vectors(), tol);
}

bool same_lift(const BodySample& a, const BodySample& b, std::span<const Vec> directions,
               double tol) {
    require_same_sample_dim(a, b, "same_lift");
    if (tol < 0.0) throw ValidationError("same_lift: negative tolerance");
    for (const Vec& u : directions) {
        const StopLossCurve ca = stop_loss_curve(a, u);
        const StopLossCurve cb = stop_loss_curve(b, u);
        if (ca.size() != cb.size()) return false;
        for (std::size_t j = 0; j < ca.size(); ++j) {
            if (std::abs(ca.breakpoints()[j] - cb.breakpoints()[j]) > tol) return false;
            if (std::abs(ca.atom_weights()[j] - cb.atom_weights()[j]) > tol) return false;
        }
    }
    return true;
}

}  // namespace liftexp
