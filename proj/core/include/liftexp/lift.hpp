#pragma once

#include <span>

#include "liftexp/sample.hpp"
#include "liftexp/stop_loss.hpp"
#include "liftexp/tolerances.hpp"
#include "liftexp/vec.hpp"

namespace liftexp {

/// Support function of the selection expectation: sum_i w_i h_i(u).
double expectation_support(const BodySample& sample, const Vec& u);

/// Support function of the lift expectation at (u0, u):
/// E(u0 + h_X(u))_+, evaluated on the exact stop-loss curve.
double lift_support(const BodySample& sample, double u0, const Vec& u);

/// Support function at u of the slice {x : (alpha, x) in lift body},
/// computed as min_t [L(t) - alpha t] by an exact slope scan.
double slice_support(const BodySample& sample, double alpha, const Vec& u);

/// Support function of the depth-trimmed region alpha^{-1} * slice(alpha).
double trimmed_region_support(const BodySample& sample, double alpha, const Vec& u);

/// True iff some direction witnesses the candidate sticking out of the
/// trimmed region at level alpha by more than tol.
bool is_outlier(const BodySample& sample, double alpha, const ConvexBody& candidate,
                std::span<const Vec> directions, double tol = kMergeTol);

/// h of the expected convex hull of n i.i.d. copies: E max of n draws of
/// h_X(u), exact under the empirical law via sum_j v_j (F_j^n - F_{j-1}^n).
double hoeffding_support(const BodySample& sample, int n, const Vec& u);

}  // namespace liftexp
