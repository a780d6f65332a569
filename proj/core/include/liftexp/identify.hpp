#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "liftexp/rational.hpp"
#include "liftexp/sample.hpp"
#include "liftexp/tolerances.hpp"
#include "liftexp/vec.hpp"

namespace liftexp {

/// Finite distribution of one support-function value: (value, probability)
/// atoms in canonical form — sorted by value, near-equal values merged with
/// summed probabilities. Probabilities keep their exact rational form when
/// the inputs had one.
class FiniteSupportDist {
public:
    struct Atom {
        double value;
        double prob;
        std::optional<Rational> exact_prob;
    };

    FiniteSupportDist(std::vector<Atom> atoms, double merge_tol = kMergeTol);

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }

private:
    std::vector<Atom> atoms_;
};

/// One-dimensional marginal laws of h_X(u) along an ordered direction path.
/// angles holds the path's angles in radians when it is angular (d = 2
/// circles, d = 1 as {0, pi}); otherwise it is empty.
struct MarginalOracle {
    std::vector<Vec> directions;
    std::vector<double> angles;
    std::vector<FiniteSupportDist> dists;

    std::size_t size() const { return dists.size(); }
};

/// True iff a single permutation sorts both end-point coordinates
/// nondecreasingly, i.e. no pair is strictly discordant.
bool is_comonotonic_endpoints(std::span<const std::pair<double, double>> endpoints);

/// Convenience overload for a d = 1 interval sample.
bool is_comonotonic_endpoints(const BodySample& interval_sample);

MarginalOracle marginal_oracle(const BodySample& sample, std::span<const Vec> path,
                               double merge_tol = kMergeTol);

/// Oracle along the closed circular path of m equally spaced angles (d = 2).
MarginalOracle circular_marginal_oracle(const BodySample& sample, std::size_t angle_count,
                                        double merge_tol = kMergeTol);

struct Realization {
    std::vector<double> support_values;  ///< one per oracle direction, path order
    double prob;
    std::optional<Rational> exact_prob;
};

struct ReconstructionResult {
    std::vector<Realization> realizations;
    std::vector<std::string> diagnostics;  ///< crossing / ambiguity events
};

/// Recovers the realizations of a finitely supported random body from its
/// marginal oracle by matching atoms across directions on probability
/// alone. Requires some direction where the atom count is maximal and all
/// probabilities are pairwise distinct; collided atoms elsewhere are split
/// among the realizations whose probabilities sum to them.
ReconstructionResult reconstruct_distinct_probs(const MarginalOracle& oracle,
                                                double merge_tol = kMergeTol);

/// Recovers the realizations from a fine angular oracle (d = 2, full circle)
/// by continuing value branches angle-by-angle. Branches are matched by
/// linear prediction; when two branches collide within the merge tolerance
/// they are re-matched through one-sided angular difference quotients.
/// Fails with "unresolvable crossing" when three or more branches collide
/// at one angle and with "gradient tie" when the colliding branches' slopes
/// are indistinguishable (realizations sharing a support point).
ReconstructionResult reconstruct_continuation(const MarginalOracle& oracle,
                                              double merge_tol = kMergeTol);

}  // namespace liftexp
