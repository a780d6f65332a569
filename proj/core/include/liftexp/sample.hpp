#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "liftexp/bodies.hpp"
#include "liftexp/rational.hpp"

namespace liftexp {

/// Weighted finite sample of convex bodies: the empirical law of a random
/// convex body. Weights are positive and sum to one (within kWeightSumTol).
/// When the weights are exactly representable (uniform samples, rational
/// input) the exact values ride along for the reconstruction algorithms.
/// Immutable after construction.
class BodySample {
public:
    BodySample(std::vector<ConvexBody> bodies, std::vector<double> weights);
    BodySample(std::vector<ConvexBody> bodies, std::vector<Rational> weights);

    static BodySample uniform(std::vector<ConvexBody> bodies);

    std::size_t size() const { return bodies_.size(); }
    std::size_t dim() const { return dim_; }
    const ConvexBody& body(std::size_t i) const { return bodies_[i]; }
    const std::vector<ConvexBody>& bodies() const { return bodies_; }
    double weight(std::size_t i) const { return weights_[i]; }
    const std::vector<double>& weights() const { return weights_; }

    bool has_exact_weights() const { return !exact_.empty(); }
    std::optional<Rational> exact_weight(std::size_t i) const {
        if (exact_.empty()) return std::nullopt;
        return exact_[i];
    }

private:
    void validate();

    std::vector<ConvexBody> bodies_;
    std::vector<double> weights_;
    std::vector<Rational> exact_;  // empty unless all weights are exact
    std::size_t dim_ = 0;
};

}  // namespace liftexp
