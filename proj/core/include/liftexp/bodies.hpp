#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "liftexp/vec.hpp"

namespace liftexp {

class ConvexBody;

/// One point {p}.
struct Singleton {
    Vec point;
};

/// Segment with end-points a and b.
struct Segment {
    Vec a;
    Vec b;
};

/// One-dimensional interval [lo, hi]; convenience representation for d = 1.
struct Interval {
    double lo;
    double hi;
};

/// Convex hull of a nonempty vertex list. Stored in V-representation only;
/// every downstream quantity is a support-function query, so facets are
/// never enumerated.
struct Polytope {
    std::vector<Vec> vertices;
};

/// Euclidean ball.
struct Ball {
    Vec center;
    double radius;
};

/// Centered ellipsoid {x : <Q^{-1}x, x> <= 1} with symmetric PSD shape
/// matrix Q (row-major), support function sqrt(<Qu, u>).
struct Ellipsoid {
    std::vector<double> shape;
    std::size_t dim;
};

/// l1 ball scaled per coordinate: {(s_1 x_1, ..., s_d x_d) : sum |x_i| <= 1},
/// support function max_i |s_i u_i|.
struct ScaledL1Ball {
    std::vector<double> scales;
};

struct ScaledTerm;

/// Nonnegative Minkowski combination sum_k scale_k * body_k.
struct MinkowskiCombo {
    std::vector<ScaledTerm> terms;
};

/// Immutable convex body with a closed-form support function. Invariants
/// are checked once at construction; all operations are pure functions, so
/// concurrent reads need no synchronisation.
class ConvexBody {
public:
    using Rep = std::variant<Singleton, Segment, Interval, Polytope, Ball, Ellipsoid,
                             ScaledL1Ball, MinkowskiCombo>;

    ConvexBody(Singleton s);    // NOLINT: implicit by design, bodies read naturally
    ConvexBody(Segment s);      // NOLINT
    ConvexBody(Interval s);     // NOLINT
    ConvexBody(Polytope s);     // NOLINT
    ConvexBody(Ball s);         // NOLINT
    ConvexBody(Ellipsoid s);    // NOLINT
    ConvexBody(ScaledL1Ball s); // NOLINT
    ConvexBody(MinkowskiCombo s); // NOLINT

    std::size_t dim() const { return dim_; }
    const Rep& rep() const { return rep_; }

private:
    Rep rep_;
    std::size_t dim_ = 0;
};

struct ScaledTerm {
    double scale;
    ConvexBody body;
};

/// Support function h_body(u) = sup{<x, u> : x in body}. The direction u
/// may be any finite vector of matching dimension, including zero.
double support(const ConvexBody& body, const Vec& u);

/// A maximizer of <x, u> over the body, u != 0. On polytope faces the tie
/// breaks to the lexicographically smallest maximizing vertex.
Vec support_point(const ConvexBody& body, const Vec& u);

/// (lo, hi) when the body is a d = 1 interval or singleton, else nullopt.
std::optional<std::pair<double, double>> as_interval(const ConvexBody& body);

}  // namespace liftexp
