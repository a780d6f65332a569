#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "liftexp/rational.hpp"
#include "liftexp/sample.hpp"
#include "liftexp/tolerances.hpp"
#include "liftexp/vec.hpp"

namespace liftexp {

/// Weighted sample of coupled n-tuples of convex bodies: observation i is
/// one joint draw (body_{i,1}, ..., body_{i,n}). Rectangular by invariant;
/// slot j has a fixed dimension across observations.
class CoupledTupleSample {
public:
    CoupledTupleSample(std::vector<std::vector<ConvexBody>> observations,
                       std::vector<double> weights);
    CoupledTupleSample(std::vector<std::vector<ConvexBody>> observations,
                       std::vector<Rational> weights);
    static CoupledTupleSample uniform(std::vector<std::vector<ConvexBody>> observations);

    std::size_t size() const { return observations_.size(); }
    std::size_t tuple_len() const { return observations_.front().size(); }
    std::size_t slot_dim(std::size_t j) const { return observations_.front()[j].dim(); }
    const ConvexBody& body(std::size_t i, std::size_t j) const { return observations_[i][j]; }
    double weight(std::size_t i) const { return weights_[i]; }

private:
    void validate() const;

    std::vector<std::vector<ConvexBody>> observations_;
    std::vector<double> weights_;
};

/// Support function of the tuple lift expectation in R^{n d + 1}:
/// sum_i w_i (u0 + sum_j h(body_{i,j}, u_j))_+.
double tuple_lift_support(const CoupledTupleSample& sample, double u0, std::span<const Vec> us);

/// Desk-scale probe of self-tuple identification: true iff some grid point
/// (u0, u_1, ..., u_n) separates the self-tuple lifts of a and b by more
/// than tol. Both samples must contain the origin (support >= 0 in every
/// grid direction; checked).
bool self_tuple_distinguishes(const BodySample& a, const BodySample& b, int n,
                              std::span<const double> u0_grid, std::span<const Vec> directions,
                              double tol = kMergeTol);

/// Weighted point sample: the empirical law of a random vector.
class VectorSample {
public:
    VectorSample(std::vector<Vec> points, std::vector<double> weights);
    static VectorSample uniform(std::vector<Vec> points);

    std::size_t size() const { return points_.size(); }
    std::size_t dim() const { return points_.front().dim(); }
    const Vec& point(std::size_t i) const { return points_[i]; }
    double weight(std::size_t i) const { return weights_[i]; }

private:
    std::vector<Vec> points_;
    std::vector<double> weights_;
};

/// Support of the zonoid E[0, xi]: sum_i w_i <x_i, u>_+.
double zonoid_support(const VectorSample& sample, const Vec& u);

/// Support of the lift zonoid of xi: sum_i w_i (u0 + <x_i, u>)_+.
double lift_zonoid_support(const VectorSample& sample, double u0, const Vec& u);

/// Coordinate-plane projections of the self-pair lift of a d = 1 interval
/// sample, living in R^3 = (u0, slot 1, slot 2). The plane projection onto
/// the two slots and the end-point zonoid are both exposed so their gap can
/// be measured rather than assumed away.
class IntervalPairProjections {
public:
    explicit IntervalPairProjections(const BodySample& interval_sample);

    double pair_lift(double u0, double v, double w) const;  ///< full R^3 support
    double first_slot(double u0, double v) const;   ///< projection onto (u0, slot 1)
    double second_slot(double u0, double w) const;  ///< projection onto (u0, slot 2)
    double slot_plane(double v, double w) const;    ///< projection onto (slot 1, slot 2)

    double endpoint_zonoid(double v, double w) const;  ///< zonoid of (lo, hi)
    double endpoint_lift_zonoid(double u0, double v, double w) const;

    /// slot_plane minus endpoint_zonoid; generally nonzero.
    double plane_zonoid_gap(double v, double w) const;

private:
    std::vector<double> lo_, hi_, w_;
};

IntervalPairProjections interval_pair_projections(const BodySample& interval_sample);

}  // namespace liftexp
