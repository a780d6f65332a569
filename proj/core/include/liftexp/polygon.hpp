#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "liftexp/sample.hpp"
#include "liftexp/tolerances.hpp"

namespace liftexp {

struct Point2 {
    double x;
    double y;

    friend bool operator==(const Point2&, const Point2&) = default;
};

/// Convex polygon with counterclockwise vertex order, implicitly closed.
/// Degenerate polygons (a segment) are allowed and have zero area.
class Polygon2D {
public:
    explicit Polygon2D(std::vector<Point2> vertices, double convexity_tol = kExactTol);

    const std::vector<Point2>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }

    double area() const;                         ///< shoelace, >= 0 for ccw input
    double support(double ux, double uy) const;  ///< max over vertices of <v, u>

private:
    std::vector<Point2> vertices_;
};

/// Exact vertex list of the planar lift expectation of a d = 1 interval
/// sample (singletons count as degenerate intervals). The lower boundary is
/// the lower Lorenz curve of the left end-points, the upper boundary the
/// upper Lorenz curve of the right end-points; both are cumulative partial
/// sums, with collinear vertices merged. Starts at (0, 0).
Polygon2D polygon_1d(const BodySample& sample);

struct GiniArea {
    double area;       ///< shoelace area of the lift polygon
    double gmd_upper;  ///< 2 * area; equals the Gini mean difference for
                       ///< singleton samples and bounds it for intervals
};

GiniArea gini_area(const BodySample& sample);

/// The alpha-slice of the lift polygon rescaled by 1/alpha: the interval
/// [tail mean of the smallest alpha-mass of lo, tail mean of the largest
/// alpha-mass of hi]. Computed by sorted partial sums.
std::pair<double, double> avar_interval(const BodySample& sample, double alpha);

}  // namespace liftexp
