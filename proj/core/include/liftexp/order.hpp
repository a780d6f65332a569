#pragma once

#include <optional>
#include <span>

#include "liftexp/direction_grid.hpp"
#include "liftexp/sample.hpp"
#include "liftexp/tolerances.hpp"
#include "liftexp/vec.hpp"

namespace liftexp {

/// True iff h_a(u) precedes h_b(u) in the increasing convex order:
/// L_a(t) <= L_b(t) + 1e-12 for all t. Both curves are piecewise linear and
/// vanish at -infinity, so checking the union of breakpoints plus the
/// asymptotic mean comparison decides the order exactly.
bool icx_dominates(const BodySample& a, const BodySample& b, const Vec& u);

struct InclusionWitness {
    std::size_t direction_index;
    Vec u;
    double t;
    double lhs;  ///< L_a(t)
    double rhs;  ///< L_b(t)
};

/// First grid point violating directionwise icx dominance, if any. Empty
/// result certifies lift-expectation inclusion on the grid.
std::optional<InclusionWitness> lift_inclusion_witness(const BodySample& a, const BodySample& b,
                                                       const DirectionGrid& grid);

bool lift_included(const BodySample& a, const BodySample& b, const DirectionGrid& grid);

/// Coupled mixture t a_i + (1 - t) b_i with the common weights. The samples
/// must be coupled per index: equal lengths and elementwise equal weights.
BodySample mix_samples(const BodySample& a, const BodySample& b, double t);

/// t h_a + (1 - t) h_b - h_mix at one lift point; >= -1e-12 by convexity of
/// the lift expectation under Minkowski mixtures.
double convexity_gap(const BodySample& a, const BodySample& b, double t, double u0,
                     const Vec& u);

/// True iff the canonical stop-loss curves of the two samples agree within
/// tol (breakpoints and atom weights) in every grid direction. tol = 0
/// demands bitwise equality.
bool same_lift(const BodySample& a, const BodySample& b, const DirectionGrid& grid, double tol);
bool same_lift(const BodySample& a, const BodySample& b, std::span<const Vec> directions,
               double tol);

}  // namespace liftexp
