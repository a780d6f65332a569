#include "liftexp/tuples.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "liftexp/error.hpp"
#include "liftexp/stop_loss.hpp"

namespace liftexp {

namespace {

void validate_weights(const std::vector<double>& w, std::size_t n, const char* what) {
    if (w.size() != n) throw ValidationError(std::string(what) + ": weight length mismatch");
    double sum = 0.0;
    for (double x : w) {
        if (!std::isfinite(x) || x <= 0.0)
            throw ValidationError(std::string(what) + ": weights must be positive");
        sum += x;
    }
    if (std::abs(sum - 1.0) > kWeightSumTol)
        throw ValidationError(std::string(what) + ": weights sum to " + std::to_string(sum));
}

double positive_part(double x) { return x > 0.0 ? x : 0.0; }

}  // namespace

CoupledTupleSample::CoupledTupleSample(std::vector<std::vector<ConvexBody>> observations,
                                       std::vector<double> weights)
    : observations_(std::move(observations)), weights_(std::move(weights)) {
    validate();
}

CoupledTupleSample::CoupledTupleSample(std::vector<std::vector<ConvexBody>> observations,
                                       std::vector<Rational> weights)
    : observations_(std::move(observations)) {
    weights_.reserve(weights.size());
    for (const Rational& r : weights) weights_.push_back(r.to_double());
    validate();
}

CoupledTupleSample CoupledTupleSample::uniform(
    std::vector<std::vector<ConvexBody>> observations) {
    const std::size_t n = observations.size();
    if (n == 0) throw ValidationError("CoupledTupleSample: empty sample");
    return CoupledTupleSample(std::move(observations),
                              std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

void CoupledTupleSample::validate() const {
    if (observations_.empty()) throw ValidationError("CoupledTupleSample: empty sample");
    const std::size_t n = observations_.front().size();
    if (n == 0) throw ValidationError("CoupledTupleSample: empty tuples");
    for (const auto& obs : observations_) {
        if (obs.size() != n)
            throw ValidationError("CoupledTupleSample: observations are not rectangular");
        for (std::size_t j = 0; j < n; ++j)
            if (obs[j].dim() != observations_.front()[j].dim())
                throw ValidationError("CoupledTupleSample: slot " + std::to_string(j) +
                                      " has mixed dimensions");
    }
    validate_weights(weights_, observations_.size(), "CoupledTupleSample");
}

double tuple_lift_support(const CoupledTupleSample& sample, double u0,
                          std::span<const Vec> us) {
    if (!std::isfinite(u0)) throw ValidationError("tuple_lift_support: non-finite u0");
    if (us.size() != sample.tuple_len())
        throw ValidationError("tuple_lift_support: expected " +
                              std::to_string(sample.tuple_len()) + " directions, got " +
                              std::to_string(us.size()));
    for (std::size_t j = 0; j < us.size(); ++j)
        if (us[j].dim() != sample.slot_dim(j))
            throw ValidationError("tuple_lift_support: direction dimension mismatch at slot " +
                                  std::to_string(j));
    // evaluate through the canonical stop-loss curve of the summed support
    // values so slot marginalization agrees with lift_support bit for bit
    std::vector<WeightedValue> atoms;
    atoms.reserve(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < us.size(); ++j) s += support(sample.body(i, j), us[j]);
        atoms.push_back({s, sample.weight(i)});
    }
    return StopLossCurve::from_support_values(std::move(atoms)).value(u0);
}

bool self_tuple_distinguishes(const BodySample& a, const BodySample& b, int n,
                              std::span<const double> u0_grid, std::span<const Vec> directions,
                              double tol) {
    if (n < 1) throw ValidationError("self_tuple_distinguishes: n must be >= 1");
    if (a.dim() != b.dim())
        throw ValidationError("self_tuple_distinguishes: samples of different dimension");
    if (u0_grid.empty() || directions.empty())
        throw ValidationError("self_tuple_distinguishes: empty grid");

    // support matrices; also the origin-containment hypothesis check
    const auto support_matrix = [&](const BodySample& s, const char* name) {
        std::vector<std::vector<double>> h(s.size(), std::vector<double>(directions.size()));
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t g = 0; g < directions.size(); ++g) {
                h[i][g] = support(s.body(i), directions[g]);
                if (h[i][g] < 0.0)
                    throw ValidationError(
                        std::string("self_tuple_distinguishes: sample ") + name +
                        " has a body with negative support; every body must contain the origin");
            }
        return h;
    };
    const auto ha = support_matrix(a, "a");
    const auto hb = support_matrix(b, "b");

    // odometer over n-fold direction tuples, early exit on the first witness
    std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
    std::vector<double> sa(a.size()), sb(b.size());
    while (true) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < idx.size(); ++j) s += ha[i][idx[j]];
            sa[i] = s;
        }
        for (std::size_t i = 0; i < b.size(); ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < idx.size(); ++j) s += hb[i][idx[j]];
            sb[i] = s;
        }
        for (double u0 : u0_grid) {
            double va = 0.0, vb = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i)
                va += a.weight(i) * positive_part(u0 + sa[i]);
            for (std::size_t i = 0; i < b.size(); ++i)
                vb += b.weight(i) * positive_part(u0 + sb[i]);
            if (std::abs(va - vb) > tol) return true;
        }
        std::size_t j = 0;
        for (; j < idx.size(); ++j) {
            if (++idx[j] < directions.size()) break;
            idx[j] = 0;
        }
        if (j == idx.size()) break;
    }
    return false;
}

VectorSample::VectorSample(std::vector<Vec> points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
    if (points_.empty()) throw ValidationError("VectorSample: empty sample");
    for (const Vec& p : points_) {
        if (p.dim() == 0 || !p.finite())
            throw ValidationError("VectorSample: invalid point");
        if (p.dim() != points_.front().dim())
            throw ValidationError("VectorSample: points of mixed dimension");
    }
    validate_weights(weights_, points_.size(), "VectorSample");
}

VectorSample VectorSample::uniform(std::vector<Vec> points) {
    const std::size_t n = points.size();
    if (n == 0) throw ValidationError("VectorSample: empty sample");
    return VectorSample(std::move(points), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

double zonoid_support(const VectorSample& sample, const Vec& u) {
    double acc = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i)
        acc += sample.weight(i) * positive_part(dot(sample.point(i), u));
    return acc;
}

double lift_zonoid_support(const VectorSample& sample, double u0, const Vec& u) {
    if (!std::isfinite(u0)) throw ValidationError("lift_zonoid_support: non-finite u0");
    double acc = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i)
        acc += sample.weight(i) * positive_part(u0 + dot(sample.point(i), u));
    return acc;
}

IntervalPairProjections::IntervalPairProjections(const BodySample& interval_sample) {
    if (interval_sample.dim() != 1)
        throw ValidationError("interval_pair_projections: expected a d = 1 interval sample");
    for (std::size_t i = 0; i < interval_sample.size(); ++i) {
        const auto bounds = as_interval(interval_sample.body(i));
        if (!bounds)
            throw ValidationError("interval_pair_projections: expected interval bodies");
        lo_.push_back(bounds->first);
        hi_.push_back(bounds->second);
        w_.push_back(interval_sample.weight(i));
    }
}

double IntervalPairProjections::pair_lift(double u0, double v, double w) const {
    std::vector<WeightedValue> atoms;
    atoms.reserve(w_.size());
    for (std::size_t i = 0; i < w_.size(); ++i) {
        const double hv = std::max(lo_[i] * v, hi_[i] * v);
        const double hw = std::max(lo_[i] * w, hi_[i] * w);
        atoms.push_back({hv + hw, w_[i]});
    }
    return StopLossCurve::from_support_values(std::move(atoms)).value(u0);
}

double IntervalPairProjections::first_slot(double u0, double v) const {
    return pair_lift(u0, v, 0.0);
}

double IntervalPairProjections::second_slot(double u0, double w) const {
    return pair_lift(u0, 0.0, w);
}

double IntervalPairProjections::slot_plane(double v, double w) const {
    return pair_lift(0.0, v, w);
}

double IntervalPairProjections::endpoint_zonoid(double v, double w) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < w_.size(); ++i)
        acc += w_[i] * positive_part(lo_[i] * v + hi_[i] * w);
    return acc;
}

double IntervalPairProjections::endpoint_lift_zonoid(double u0, double v, double w) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < w_.size(); ++i)
        acc += w_[i] * positive_part(u0 + lo_[i] * v + hi_[i] * w);
    return acc;
}

double IntervalPairProjections::plane_zonoid_gap(double v, double w) const {
    return slot_plane(v, w) - endpoint_zonoid(v, w);
}

IntervalPairProjections interval_pair_projections(const BodySample& interval_sample) {
    return IntervalPairProjections(interval_sample);
}

}  // namespace liftexp
