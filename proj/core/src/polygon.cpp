#include "liftexp/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "liftexp/error.hpp"

namespace liftexp {

namespace {

double cross(const Point2& a, const Point2& b) { return a.x * b.y - b.x * a.y; }

double edge_cross(const Point2& a, const Point2& b, const Point2& c) {
    return cross({b.x - a.x, b.y - a.y}, {c.x - b.x, c.y - b.y});
}

struct EndPoints {
    std::vector<double> lo;
    std::vector<double> hi;
    std::vector<double> w;
};

EndPoints end_points(const BodySample& sample) {
    if (sample.dim() != 1) throw ValidationError("expected a d = 1 interval sample");
    EndPoints e;
    e.lo.reserve(sample.size());
    e.hi.reserve(sample.size());
    e.w.reserve(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const auto bounds = as_interval(sample.body(i));
        if (!bounds) throw ValidationError("expected a d = 1 interval sample");
        e.lo.push_back(bounds->first);
        e.hi.push_back(bounds->second);
        e.w.push_back(sample.weight(i));
    }
    return e;
}

void append_merged(std::vector<Point2>& pts, const Point2& p, double tol) {
    if (!pts.empty() && pts.back() == p) return;
    pts.push_back(p);
    while (pts.size() >= 3) {
        const double c = edge_cross(pts[pts.size() - 3], pts[pts.size() - 2], pts.back());
        if (std::abs(c) > tol) break;
        pts.erase(pts.end() - 2);
    }
}

}  // namespace

Polygon2D::Polygon2D(std::vector<Point2> vertices, double convexity_tol)
    : vertices_(std::move(vertices)) {
    if (vertices_.size() < 2) throw ValidationError("Polygon2D: fewer than two vertices");
    for (const Point2& p : vertices_)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw ValidationError("Polygon2D: non-finite vertex");
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double c =
            edge_cross(vertices_[i], vertices_[(i + 1) % n], vertices_[(i + 2) % n]);
        if (c < -convexity_tol)
            throw ValidationError("Polygon2D: vertices not convex/counterclockwise (cross " +
                                  std::to_string(c) + " at vertex " + std::to_string(i) + ")");
    }
}

double Polygon2D::area() const {
    double s = 0.0;
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) s += cross(vertices_[i], vertices_[(i + 1) % n]);
    return 0.5 * s;
}

double Polygon2D::support(double ux, double uy) const {
    double best = -std::numeric_limits<double>::infinity();
    for (const Point2& p : vertices_) best = std::max(best, p.x * ux + p.y * uy);
    return best;
}

Polygon2D polygon_1d(const BodySample& sample) {
    const EndPoints e = end_points(sample);
    const std::size_t n = e.w.size();

    std::vector<std::size_t> by_lo(n), by_hi(n);
    for (std::size_t i = 0; i < n; ++i) by_lo[i] = by_hi[i] = i;
    std::sort(by_lo.begin(), by_lo.end(), [&](std::size_t a, std::size_t b) {
        return e.lo[a] < e.lo[b] || (e.lo[a] == e.lo[b] && a < b);
    });
    std::sort(by_hi.begin(), by_hi.end(), [&](std::size_t a, std::size_t b) {
        return e.hi[a] > e.hi[b] || (e.hi[a] == e.hi[b] && a < b);
    });

    std::vector<Point2> pts;
    append_merged(pts, {0.0, 0.0}, kExactTol);

    double x = 0.0, y = 0.0;
    for (std::size_t i : by_lo) {  // lower Lorenz curve of lo, ascending
        x += e.w[i];
        y += e.w[i] * e.lo[i];
        append_merged(pts, {x, y}, kExactTol);
    }
    const Point2 lower_end = pts.back();

    std::vector<Point2> upper;  // upper Lorenz curve of hi, built forward
    x = 0.0;
    y = 0.0;
    for (std::size_t i : by_hi) {
        x += e.w[i];
        y += e.w[i] * e.hi[i];
        append_merged(upper, {x, y}, kExactTol);
    }
    // Walk it backwards from (1, E hi) down to the origin. Both chains sum
    // the same weights, so their ends carry the same total mass up to
    // rounding; pin the x-coordinates together, and when the sample is all
    // singletons (E lo == E hi up to rounding) keep the lower end-point.
    bool at_junction = true;
    for (auto it = upper.rbegin(); it != upper.rend(); ++it) {
        Point2 p = *it;
        if (at_junction) {
            at_junction = false;
            p.x = lower_end.x;
            if (std::abs(p.y - lower_end.y) <= 1e-12 * (1.0 + std::abs(lower_end.y))) continue;
        }
        append_merged(pts, p, kExactTol);
    }

    // wrap-around merges around the pinned origin vertex
    while (pts.size() > 2 &&
           std::abs(edge_cross(pts[pts.size() - 2], pts.back(), pts.front())) <= kExactTol)
        pts.pop_back();

    return Polygon2D(std::move(pts));
}

GiniArea gini_area(const BodySample& sample) {
    const double a = polygon_1d(sample).area();
    return {a, 2.0 * a};
}

namespace {

// mean of the first alpha mass of atoms taken in the given order
double tail_mean(const std::vector<std::size_t>& order, const std::vector<double>& value,
                 const std::vector<double>& weight, double alpha) {
    double taken = 0.0;
    double acc = 0.0;
    for (std::size_t i : order) {
        const double take = std::min(weight[i], alpha - taken);
        if (take <= 0.0) break;
        acc += take * value[i];
        taken += take;
    }
    return acc / alpha;
}

}  // namespace

std::pair<double, double> avar_interval(const BodySample& sample, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw ValidationError("avar_interval: alpha must lie in (0, 1], got " +
                              std::to_string(alpha));
    const EndPoints e = end_points(sample);
    const std::size_t n = e.w.size();
    std::vector<std::size_t> asc(n), desc(n);
    for (std::size_t i = 0; i < n; ++i) asc[i] = desc[i] = i;
    std::sort(asc.begin(), asc.end(), [&](std::size_t a, std::size_t b) {
        return e.lo[a] < e.lo[b] || (e.lo[a] == e.lo[b] && a < b);
    });
    std::sort(desc.begin(), desc.end(), [&](std::size_t a, std::size_t b) {
        return e.hi[a] > e.hi[b] || (e.hi[a] == e.hi[b] && a < b);
    });
    return {tail_mean(asc, e.lo, e.w, alpha), tail_mean(desc, e.hi, e.w, alpha)};
}

}  // namespace liftexp
