#include "liftexp/sample.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "liftexp/error.hpp"
#include "liftexp/tolerances.hpp"

namespace liftexp {

BodySample::BodySample(std::vector<ConvexBody> bodies, std::vector<double> weights)
    : bodies_(std::move(bodies)), weights_(std::move(weights)) {
    validate();
}

BodySample::BodySample(std::vector<ConvexBody> bodies, std::vector<Rational> weights)
    : bodies_(std::move(bodies)), exact_(std::move(weights)) {
    weights_.reserve(exact_.size());
    std::optional<Rational> sum = Rational{0, 1};
    for (const Rational& r : exact_) {
        weights_.push_back(r.to_double());
        sum = rational_add(sum, r);
    }
    if (!sum || !sum->is_one())
        throw ValidationError("BodySample: exact weights must sum to one");
    validate();
}

BodySample BodySample::uniform(std::vector<ConvexBody> bodies) {
    const std::size_t n = bodies.size();
    if (n == 0) throw ValidationError("BodySample: empty sample");
    std::vector<Rational> w(n, Rational{1, static_cast<std::int64_t>(n)});
    return BodySample(std::move(bodies), std::move(w));
}

void BodySample::validate() {
    if (bodies_.empty()) throw ValidationError("BodySample: empty sample");
    if (weights_.size() != bodies_.size())
        throw ValidationError("BodySample: weights and bodies differ in length");
    const std::size_t d = bodies_.front().dim();
    for (const ConvexBody& b : bodies_)
        if (b.dim() != d)
            throw ValidationError("BodySample: bodies of mixed dimension (" +
                                  std::to_string(d) + " vs " + std::to_string(b.dim()) + ")");
    double sum = 0.0;
    for (double w : weights_) {
        if (!std::isfinite(w) || w <= 0.0)
            throw ValidationError("BodySample: weights must be positive and finite");
        sum += w;
    }
    if (std::abs(sum - 1.0) > kWeightSumTol)
        throw ValidationError("BodySample: weights sum to " + std::to_string(sum) +
                              ", expected 1");
    dim_ = d;
}

}  // namespace liftexp
