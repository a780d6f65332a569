#include "liftexp/bodies.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "liftexp/error.hpp"
#include "liftexp/tolerances.hpp"

namespace liftexp {

namespace {

constexpr double kPsdEigTol = 1e-9;

void require_finite_vec(const Vec& v, const char* what) {
    if (v.dim() == 0) throw ValidationError(std::string(what) + ": empty vector");
    if (!v.finite()) throw ValidationError(std::string(what) + ": non-finite coordinate");
}

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw ValidationError(std::string(what) + ": non-finite value");
}

}  // namespace

ConvexBody::ConvexBody(Singleton s) : rep_(std::move(s)) {
    const auto& b = std::get<Singleton>(rep_);
    require_finite_vec(b.point, "Singleton");
    dim_ = b.point.dim();
}

ConvexBody::ConvexBody(Segment s) : rep_(std::move(s)) {
    const auto& b = std::get<Segment>(rep_);
    require_finite_vec(b.a, "Segment");
    require_finite_vec(b.b, "Segment");
    require_same_dim(b.a, b.b, "Segment");
    dim_ = b.a.dim();
}

ConvexBody::ConvexBody(Interval s) : rep_(s) {
    require_finite(s.lo, "Interval.lo");
    require_finite(s.hi, "Interval.hi");
    if (s.lo > s.hi) throw ValidationError("Interval: lo > hi");
    dim_ = 1;
}

ConvexBody::ConvexBody(Polytope s) : rep_(std::move(s)) {
    const auto& b = std::get<Polytope>(rep_);
    if (b.vertices.empty()) throw ValidationError("Polytope: no vertices");
    for (const Vec& v : b.vertices) {
        require_finite_vec(v, "Polytope vertex");
        require_same_dim(v, b.vertices.front(), "Polytope");
    }
    dim_ = b.vertices.front().dim();
}

ConvexBody::ConvexBody(Ball s) : rep_(std::move(s)) {
    const auto& b = std::get<Ball>(rep_);
    require_finite_vec(b.center, "Ball.center");
    require_finite(b.radius, "Ball.radius");
    if (b.radius < 0.0) throw ValidationError("Ball: negative radius");
    dim_ = b.center.dim();
}

ConvexBody::ConvexBody(Ellipsoid s) : rep_(std::move(s)) {
    auto& b = std::get<Ellipsoid>(rep_);
    const std::size_t d = b.dim;
    if (d == 0) throw ValidationError("Ellipsoid: dimension zero");
    if (b.shape.size() != d * d) throw ValidationError("Ellipsoid: shape matrix is not d x d");
    for (double v : b.shape) require_finite(v, "Ellipsoid.shape");
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            if (std::abs(b.shape[i * d + j] - b.shape[j * d + i]) > kPsdEigTol)
                throw ValidationError("Ellipsoid: shape matrix not symmetric");
    // store the symmetrised matrix so the quadratic form is canonical
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            const double m = 0.5 * (b.shape[i * d + j] + b.shape[j * d + i]);
            b.shape[i * d + j] = m;
            b.shape[j * d + i] = m;
        }
    Eigen::Map<const Eigen::MatrixXd> q(b.shape.data(), static_cast<Eigen::Index>(d),
                                        static_cast<Eigen::Index>(d));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(q, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success)
        throw ValidationError("Ellipsoid: eigenvalue computation failed");
    if (eig.eigenvalues().minCoeff() < -kPsdEigTol)
        throw ValidationError("Ellipsoid: shape matrix not positive semidefinite");
    dim_ = d;
}

ConvexBody::ConvexBody(ScaledL1Ball s) : rep_(std::move(s)) {
    const auto& b = std::get<ScaledL1Ball>(rep_);
    if (b.scales.empty()) throw ValidationError("ScaledL1Ball: no scales");
    for (double v : b.scales) {
        require_finite(v, "ScaledL1Ball.scales");
        if (v <= 0.0) throw ValidationError("ScaledL1Ball: scales must be positive");
    }
    dim_ = b.scales.size();
}

ConvexBody::ConvexBody(MinkowskiCombo s) : rep_(std::move(s)) {
    const auto& b = std::get<MinkowskiCombo>(rep_);
    if (b.terms.empty()) throw ValidationError("MinkowskiCombo: no terms");
    for (const ScaledTerm& t : b.terms) {
        require_finite(t.scale, "MinkowskiCombo.scale");
        if (t.scale < 0.0) throw ValidationError("MinkowskiCombo: negative scale");
        if (t.body.dim() != b.terms.front().body.dim())
            throw ValidationError("MinkowskiCombo: mixed dimensions");
    }
    dim_ = b.terms.front().body.dim();
}

namespace {

// Support evaluation without re-validating u; public support() checks once.
double support_unchecked(const ConvexBody& body, const Vec& u);

struct SupportVisitor {
    const Vec& u;

    double operator()(const Singleton& b) const { return dot(b.point, u); }

    double operator()(const Segment& b) const {
        return std::max(dot(b.a, u), dot(b.b, u));
    }

    double operator()(const Interval& b) const {
        return std::max(b.lo * u[0], b.hi * u[0]);
    }

    double operator()(const Polytope& b) const {
        double best = -std::numeric_limits<double>::infinity();
        for (const Vec& v : b.vertices) best = std::max(best, dot(v, u));
        return best;
    }

    double operator()(const Ball& b) const { return dot(b.center, u) + b.radius * norm(u); }

    double operator()(const Ellipsoid& b) const {
        const std::size_t d = b.dim;
        double q = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < d; ++j) row += b.shape[i * d + j] * u[j];
            q += row * u[i];
        }
        return std::sqrt(std::max(q, 0.0));
    }

    double operator()(const ScaledL1Ball& b) const {
        double best = 0.0;
        for (std::size_t i = 0; i < b.scales.size(); ++i)
            best = std::max(best, std::abs(b.scales[i] * u[i]));
        return best;
    }

    double operator()(const MinkowskiCombo& b) const {
        double s = 0.0;
        for (const ScaledTerm& t : b.terms) s += t.scale * support_unchecked(t.body, u);
        return s;
    }
};

double support_unchecked(const ConvexBody& body, const Vec& u) {
    return std::visit(SupportVisitor{u}, body.rep());
}

Vec support_point_unchecked(const ConvexBody& body, const Vec& u);

Vec lex_min_maximizer(const std::vector<Vec>& candidates, const Vec& u) {
    const Vec* best = &candidates.front();
    double best_val = dot(*best, u);
    for (const Vec& v : candidates) {
        const double val = dot(v, u);
        if (val > best_val || (val == best_val && lex_less(v, *best))) {
            best = &v;
            best_val = val;
        }
    }
    return *best;
}

struct SupportPointVisitor {
    const Vec& u;

    Vec operator()(const Singleton& b) const { return b.point; }

    Vec operator()(const Segment& b) const {
        const double da = dot(b.a, u);
        const double db = dot(b.b, u);
        if (da > db) return b.a;
        if (db > da) return b.b;
        return lex_less(b.a, b.b) ? b.a : b.b;
    }

    Vec operator()(const Interval& b) const {
        return Vec{u[0] > 0.0 ? b.hi : b.lo};
    }

    Vec operator()(const Polytope& b) const { return lex_min_maximizer(b.vertices, u); }

    Vec operator()(const Ball& b) const {
        const double n = norm(u);
        std::vector<double> c(b.center.coords());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.radius * (u[i] / n);
        return Vec(std::move(c));
    }

    Vec operator()(const Ellipsoid& b) const {
        const std::size_t d = b.dim;
        std::vector<double> qu(d, 0.0);
        double q = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < d; ++j) row += b.shape[i * d + j] * u[j];
            qu[i] = row;
            q += row * u[i];
        }
        if (q <= 0.0) throw ValidationError("Ellipsoid support_point: degenerate direction");
        const double s = std::sqrt(q);
        for (double& v : qu) v /= s;
        return Vec(std::move(qu));
    }

    Vec operator()(const ScaledL1Ball& b) const {
        const std::size_t d = b.scales.size();
        double best = -1.0;
        for (std::size_t i = 0; i < d; ++i) best = std::max(best, std::abs(b.scales[i] * u[i]));
        std::vector<Vec> candidates;
        for (std::size_t i = 0; i < d; ++i) {
            if (std::abs(b.scales[i] * u[i]) == best && u[i] != 0.0) {
                Vec v = Vec::zero(d);
                v[i] = u[i] > 0.0 ? b.scales[i] : -b.scales[i];
                candidates.push_back(std::move(v));
            }
        }
        if (candidates.empty())
            throw ValidationError("ScaledL1Ball support_point: zero direction");
        Vec best_v = candidates.front();
        for (const Vec& v : candidates)
            if (lex_less(v, best_v)) best_v = v;
        return best_v;
    }

    Vec operator()(const MinkowskiCombo& b) const {
        Vec acc = Vec::zero(u.dim());
        for (const ScaledTerm& t : b.terms)
            acc = acc + t.scale * support_point_unchecked(t.body, u);
        return acc;
    }
};

Vec support_point_unchecked(const ConvexBody& body, const Vec& u) {
    return std::visit(SupportPointVisitor{u}, body.rep());
}

void validate_direction(const ConvexBody& body, const Vec& u, const char* what) {
    if (u.dim() != body.dim())
        throw ValidationError(std::string(what) + ": direction dimension " +
                              std::to_string(u.dim()) + " does not match body dimension " +
                              std::to_string(body.dim()));
    if (!u.finite()) throw ValidationError(std::string(what) + ": non-finite direction");
}

}  // namespace

double support(const ConvexBody& body, const Vec& u) {
    validate_direction(body, u, "support");
    return support_unchecked(body, u);
}

Vec support_point(const ConvexBody& body, const Vec& u) {
    validate_direction(body, u, "support_point");
    bool all_zero = true;
    for (double v : u)
        if (v != 0.0) all_zero = false;
    if (all_zero) throw ValidationError("support_point: direction must be nonzero");
    return support_point_unchecked(body, u);
}

std::optional<std::pair<double, double>> as_interval(const ConvexBody& body) {
    if (const auto* iv = std::get_if<Interval>(&body.rep())) return std::make_pair(iv->lo, iv->hi);
    if (const auto* s = std::get_if<Singleton>(&body.rep()); s && s->point.dim() == 1)
        return std::make_pair(s->point[0], s->point[0]);
    return std::nullopt;
}

}  // namespace liftexp
