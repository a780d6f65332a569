#include "liftexp/identify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "liftexp/direction_grid.hpp"
#include "liftexp/error.hpp"
#include "liftexp/tolerances.hpp"

namespace liftexp {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

FiniteSupportDist::FiniteSupportDist(std::vector<Atom> atoms, double merge_tol) {
    if (atoms.empty()) throw ValidationError("FiniteSupportDist: no atoms");
    for (const Atom& a : atoms) {
        if (!std::isfinite(a.value)) throw ValidationError("FiniteSupportDist: non-finite value");
        if (!std::isfinite(a.prob) || a.prob <= 0.0)
            throw ValidationError("FiniteSupportDist: probabilities must be positive");
    }
    std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) {
        return a.value < b.value || (a.value == b.value && a.prob < b.prob);
    });
    for (const Atom& a : atoms) {
        if (!atoms_.empty() && a.value - atoms_.back().value <= merge_tol) {
            atoms_.back().prob += a.prob;
            atoms_.back().exact_prob = rational_add(atoms_.back().exact_prob, a.exact_prob);
        } else {
            atoms_.push_back(a);
        }
    }
    double sum = 0.0;
    for (const Atom& a : atoms_) sum += a.prob;
    if (std::abs(sum - 1.0) > kWeightSumTol)
        throw ValidationError("FiniteSupportDist: probabilities sum to " + std::to_string(sum));
}

bool is_comonotonic_endpoints(std::span<const std::pair<double, double>> endpoints) {
    for (const auto& [lo, hi] : endpoints) {
        if (!std::isfinite(lo) || !std::isfinite(hi))
            throw ValidationError("is_comonotonic_endpoints: non-finite end-point");
        if (lo > hi) throw ValidationError("is_comonotonic_endpoints: lo > hi");
    }
    const std::size_t n = endpoints.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return endpoints[a] < endpoints[b];
    });
    // scan groups of equal lo: every hi seen at a strictly smaller lo must
    // stay below the group's smallest hi
    double max_hi_before = -std::numeric_limits<double>::infinity();
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        double group_min = std::numeric_limits<double>::infinity();
        double group_max = -std::numeric_limits<double>::infinity();
        while (j < n && endpoints[idx[j]].first == endpoints[idx[i]].first) {
            group_min = std::min(group_min, endpoints[idx[j]].second);
            group_max = std::max(group_max, endpoints[idx[j]].second);
            ++j;
        }
        if (max_hi_before > group_min) return false;
        max_hi_before = std::max(max_hi_before, group_max);
        i = j;
    }
    return true;
}

bool is_comonotonic_endpoints(const BodySample& interval_sample) {
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(interval_sample.size());
    for (std::size_t i = 0; i < interval_sample.size(); ++i) {
        const auto bounds = as_interval(interval_sample.body(i));
        if (!bounds) throw ValidationError("is_comonotonic_endpoints: expected interval bodies");
        pairs.push_back(*bounds);
    }
    return is_comonotonic_endpoints(pairs);
}

MarginalOracle marginal_oracle(const BodySample& sample, std::span<const Vec> path,
                               double merge_tol) {
    if (path.empty()) throw ValidationError("marginal_oracle: empty path");
    MarginalOracle oracle;
    oracle.directions.assign(path.begin(), path.end());
    oracle.dists.reserve(path.size());
    for (const Vec& u : path) {
        std::vector<FiniteSupportDist::Atom> atoms;
        atoms.reserve(sample.size());
        for (std::size_t i = 0; i < sample.size(); ++i)
            atoms.push_back(
                {support(sample.body(i), u), sample.weight(i), sample.exact_weight(i)});
        oracle.dists.emplace_back(std::move(atoms), merge_tol);
    }
    return oracle;
}

MarginalOracle circular_marginal_oracle(const BodySample& sample, std::size_t angle_count,
                                        double merge_tol) {
    if (sample.dim() != 2)
        throw ValidationError("circular_marginal_oracle: sample must have dimension 2");
    const DirectionGrid grid = DirectionGrid::circle(angle_count);
    MarginalOracle oracle = marginal_oracle(sample, grid.vectors(), merge_tol);
    oracle.angles.reserve(angle_count);
    for (std::size_t k = 0; k < angle_count; ++k)
        oracle.angles.push_back(kTwoPi * static_cast<double>(k) /
                                static_cast<double>(angle_count));
    return oracle;
}

namespace {

bool prob_compatible(double p, const std::optional<Rational>& pe,
                     const FiniteSupportDist::Atom& atom, double tol) {
    if (pe && atom.exact_prob) return *pe == *atom.exact_prob;
    return std::abs(p - atom.prob) <= tol;
}

// Backtracking assignment of items (probabilities) to atoms (capacities).
// Items are processed in descending-probability order; an assignment is
// feasible when every capacity is consumed to within the slack and, where
// exact probabilities exist on both sides, exactly.
struct AssignmentSearch {
    const std::vector<double>& probs;
    const std::vector<std::optional<Rational>>& exacts;
    const std::vector<FiniteSupportDist::Atom>& atoms;
    const std::vector<double>* preds = nullptr;  // enables min-cost mode
    double slack;

    std::vector<std::size_t> order;      // items, descending prob
    std::vector<double> remaining;       // per atom
    std::vector<int> current;            // atom index per item
    std::vector<int> best;
    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<std::vector<int>> found;  // feasibility mode: up to limit solutions
    std::size_t found_limit = 1;
    long budget = 4'000'000;

    AssignmentSearch(const std::vector<double>& probs_,
                     const std::vector<std::optional<Rational>>& exacts_,
                     const FiniteSupportDist& dist, double tol)
        : probs(probs_), exacts(exacts_), atoms(dist.atoms()),
          slack(tol * static_cast<double>(probs_.size() + 2)) {
        order.resize(probs.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return probs[a] > probs[b]; });
        remaining.reserve(atoms.size());
        for (const auto& a : atoms) remaining.push_back(a.prob);
        current.assign(probs.size(), -1);
    }

    bool leaf_feasible() const {
        for (double r : remaining)
            if (std::abs(r) > slack) return false;
        for (std::size_t j = 0; j < atoms.size(); ++j) {
            if (!atoms[j].exact_prob) continue;
            std::optional<Rational> sum = Rational{0, 1};
            bool all_exact = true;
            for (std::size_t i = 0; i < probs.size(); ++i) {
                if (current[i] != static_cast<int>(j)) continue;
                if (!exacts[i]) {
                    all_exact = false;
                    break;
                }
                sum = rational_add(sum, exacts[i]);
            }
            if (all_exact && sum && !(*sum == *atoms[j].exact_prob)) return false;
        }
        return true;
    }

    void run_cost(std::size_t step, double cost) {
        if (--budget < 0) return;
        if (cost >= best_cost) return;
        if (step == order.size()) {
            if (leaf_feasible()) {
                best = current;
                best_cost = cost;
            }
            return;
        }
        const std::size_t item = order[step];
        // try atoms nearest to the prediction first
        std::vector<std::size_t> js(atoms.size());
        std::iota(js.begin(), js.end(), std::size_t{0});
        if (preds) {
            std::sort(js.begin(), js.end(), [&](std::size_t a, std::size_t b) {
                return std::abs((*preds)[item] - atoms[a].value) <
                       std::abs((*preds)[item] - atoms[b].value);
            });
        }
        for (std::size_t j : js) {
            if (remaining[j] < probs[item] - slack) continue;
            remaining[j] -= probs[item];
            current[item] = static_cast<int>(j);
            const double c = preds ? std::abs((*preds)[item] - atoms[j].value) : 0.0;
            run_cost(step + 1, cost + c);
            current[item] = -1;
            remaining[j] += probs[item];
        }
    }

    void run_enumerate(std::size_t step) {
        if (--budget < 0) return;
        if (found.size() >= found_limit) return;
        if (step == order.size()) {
            if (leaf_feasible()) found.push_back(current);
            return;
        }
        const std::size_t item = order[step];
        for (std::size_t j = 0; j < atoms.size(); ++j) {
            if (remaining[j] < probs[item] - slack) continue;
            remaining[j] -= probs[item];
            current[item] = static_cast<int>(j);
            run_enumerate(step + 1);
            current[item] = -1;
            remaining[j] += probs[item];
        }
    }
};

std::optional<std::vector<int>> min_cost_assignment(const std::vector<double>& preds,
                                                    const std::vector<double>& probs,
                                                    const std::vector<std::optional<Rational>>& exacts,
                                                    const FiniteSupportDist& dist, double tol) {
    AssignmentSearch s(probs, exacts, dist, tol);
    s.preds = &preds;
    s.run_cost(0, 0.0);
    if (!std::isfinite(s.best_cost)) return std::nullopt;
    return s.best;
}

std::vector<std::vector<int>> enumerate_partitions(const std::vector<double>& probs,
                                                   const std::vector<std::optional<Rational>>& exacts,
                                                   const FiniteSupportDist& dist, double tol,
                                                   std::size_t limit) {
    AssignmentSearch s(probs, exacts, dist, tol);
    s.found_limit = limit;
    s.run_enumerate(0);
    return s.found;
}

// subadditivity spot-check of the reconstructed support restrictions on
// angular paths: 2 cos(g dtheta) h(mid) <= h(i) + h(i + 2g) for on-path
// bisectors, and h(u) + h(-u) >= 0 for antipodal pairs
void spot_check_subadditivity(const MarginalOracle& oracle, const ReconstructionResult& result) {
    const std::size_t m = oracle.size();
    if (oracle.angles.size() != m || m < 2) return;
    const double dtheta = kTwoPi / static_cast<double>(m);
    for (const Realization& r : result.realizations) {
        double scale = 1.0;
        for (double v : r.support_values) scale = std::max(scale, std::abs(v));
        const double tol = 1e-6 * scale;
        const std::size_t stride = std::max<std::size_t>(1, m / 64);
        if (m % 2 == 0) {
            for (std::size_t i = 0; i < m / 2; i += stride)
                if (r.support_values[i] + r.support_values[i + m / 2] < -tol)
                    throw AlgorithmError(
                        "reconstructed support values violate subadditivity; oracle "
                        "inconsistent");
        }
        if (m < 4) continue;
        for (std::size_t i = 0; i < m; i += stride) {
            for (std::size_t g : {std::size_t{1}, std::size_t{2}, std::size_t{8}}) {
                if (2 * g >= m) continue;
                const double c = 2.0 * std::cos(static_cast<double>(g) * dtheta);
                if (c <= 0.1) continue;
                const double lhs = c * r.support_values[(i + g) % m];
                const double rhs =
                    r.support_values[i] + r.support_values[(i + 2 * g) % m];
                if (lhs > rhs + tol)
                    throw AlgorithmError(
                        "reconstructed support values violate subadditivity; oracle "
                        "inconsistent");
            }
        }
    }
}

std::string fmt_angle(std::size_t k) { return "angle index " + std::to_string(k); }

}  // namespace

ReconstructionResult reconstruct_distinct_probs(const MarginalOracle& oracle, double merge_tol) {
    const std::size_t m = oracle.size();
    if (m == 0) throw ValidationError("reconstruct_distinct_probs: empty oracle");

    std::size_t n_real = 0;
    for (const auto& d : oracle.dists) n_real = std::max(n_real, d.size());

    // a direction that separates: maximal atom count, pairwise distinct probs
    std::optional<std::size_t> sep;
    for (std::size_t k = 0; k < m && !sep; ++k) {
        const auto& atoms = oracle.dists[k].atoms();
        if (atoms.size() != n_real) continue;
        bool distinct = true;
        for (std::size_t i = 0; i < atoms.size() && distinct; ++i)
            for (std::size_t j = i + 1; j < atoms.size() && distinct; ++j)
                if (std::abs(atoms[i].prob - atoms[j].prob) <= 2.0 * merge_tol) distinct = false;
        if (distinct) sep = k;
    }
    if (!sep) throw AlgorithmError("probabilities not separating, use continuation");

    ReconstructionResult result;
    const auto& sep_atoms = oracle.dists[*sep].atoms();
    std::vector<double> probs;
    std::vector<std::optional<Rational>> exacts;
    for (const auto& a : sep_atoms) {
        Realization r;
        r.support_values.assign(m, 0.0);
        r.prob = a.prob;
        r.exact_prob = a.exact_prob;
        result.realizations.push_back(std::move(r));
        probs.push_back(a.prob);
        exacts.push_back(a.exact_prob);
    }

    for (std::size_t k = 0; k < m; ++k) {
        const auto& dist = oracle.dists[k];
        if (k == *sep) {
            for (std::size_t i = 0; i < n_real; ++i)
                result.realizations[i].support_values[k] = sep_atoms[i].value;
            continue;
        }
        if (dist.size() > n_real)
            throw AlgorithmError("oracle inconsistent: atom count at " + fmt_angle(k) +
                                 " exceeds the maximum");
        if (dist.size() == n_real) {
            // bijective match on probabilities
            std::vector<bool> used(n_real, false);
            for (const auto& atom : dist.atoms()) {
                std::optional<std::size_t> match;
                double best = std::numeric_limits<double>::infinity();
                for (std::size_t i = 0; i < n_real; ++i) {
                    if (used[i] || !prob_compatible(probs[i], exacts[i], atom, merge_tol))
                        continue;
                    const double d = std::abs(probs[i] - atom.prob);
                    if (d < best) {
                        best = d;
                        match = i;
                    }
                }
                if (!match)
                    throw AlgorithmError("oracle inconsistent: no probability match at " +
                                         fmt_angle(k));
                used[*match] = true;
                result.realizations[*match].support_values[k] = atom.value;
            }
            continue;
        }
        // collided values: split atom probabilities over realization subsets
        const auto partitions = enumerate_partitions(probs, exacts, dist, merge_tol, 2);
        if (partitions.empty())
            throw AlgorithmError("oracle inconsistent: no probability split matches at " +
                                 fmt_angle(k));
        if (partitions.size() > 1)
            result.diagnostics.push_back("ambiguous probability split at direction " +
                                         std::to_string(k) + "; first match used");
        for (std::size_t i = 0; i < n_real; ++i)
            result.realizations[i].support_values[k] =
                dist.atoms()[static_cast<std::size_t>(partitions.front()[i])].value;
    }

    spot_check_subadditivity(oracle, result);
    return result;
}

ReconstructionResult reconstruct_continuation(const MarginalOracle& oracle, double merge_tol) {
    const std::size_t m = oracle.size();
    if (m == 0) throw ValidationError("reconstruct_continuation: empty oracle");
    if (oracle.angles.size() != m)
        throw ValidationError("reconstruct_continuation: requires an angular (circular) path");
    if (m < 8) throw ValidationError("reconstruct_continuation: angular path too coarse");
    const double dtheta = kTwoPi / static_cast<double>(m);
    for (std::size_t k = 0; k < m; ++k)
        if (std::abs(oracle.angles[k] - (oracle.angles[0] + dtheta * static_cast<double>(k))) >
            1e-9)
            throw ValidationError(
                "reconstruct_continuation: angles must be equally spaced over a full circle");

    std::size_t n_branch = 0;
    for (const auto& d : oracle.dists) n_branch = std::max(n_branch, d.size());

    // start where the branch count is maximal, preferably with two more
    // maximal angles following so the first slope estimates are clean
    std::optional<std::size_t> start;
    for (std::size_t k = 0; k < m && !start; ++k)
        if (oracle.dists[k].size() == n_branch &&
            oracle.dists[(k + 1) % m].size() == n_branch &&
            oracle.dists[(k + 2) % m].size() == n_branch)
            start = k;
    if (!start)
        for (std::size_t k = 0; k < m && !start; ++k)
            if (oracle.dists[k].size() == n_branch) start = k;
    const std::size_t k0 = *start;

    ReconstructionResult result;
    std::vector<std::vector<double>> hist(n_branch);
    std::vector<double> probs;
    std::vector<std::optional<Rational>> exacts;
    for (const auto& a : oracle.dists[k0].atoms()) {
        probs.push_back(a.prob);
        exacts.push_back(a.exact_prob);
    }
    for (std::size_t i = 0; i < n_branch; ++i)
        hist[i].push_back(oracle.dists[k0].atoms()[i].value);

    const auto predictions = [&]() {
        std::vector<double> preds(n_branch);
        for (std::size_t i = 0; i < n_branch; ++i) {
            const auto& h = hist[i];
            preds[i] = h.size() >= 2 ? 2.0 * h[h.size() - 1] - h[h.size() - 2] : h.back();
        }
        return preds;
    };

    const auto sorted_bijection = [&](const std::vector<double>& preds,
                                      const FiniteSupportDist& dist)
        -> std::optional<std::vector<int>> {
        // identity matching of sorted predictions against sorted atom values
        // minimizes total displacement; verify probabilities afterwards
        std::vector<std::size_t> order(n_branch);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return preds[a] < preds[b]; });
        std::vector<int> assign(n_branch, -1);
        for (std::size_t r = 0; r < n_branch; ++r) {
            const std::size_t i = order[r];
            if (!prob_compatible(probs[i], exacts[i], dist.atoms()[r], merge_tol))
                return std::nullopt;
            assign[i] = static_cast<int>(r);
        }
        return assign;
    };

    for (std::size_t s = 1; s < m; ++s) {
        const std::size_t k = (k0 + s) % m;
        const auto& dist = oracle.dists[k];
        if (dist.size() > n_branch)
            throw AlgorithmError("oracle inconsistent: atom count at " + fmt_angle(k) +
                                 " exceeds the starting maximum");
        const std::vector<double> preds = predictions();

        std::optional<std::vector<int>> assign;
        if (dist.size() == n_branch) assign = sorted_bijection(preds, dist);
        if (!assign) assign = min_cost_assignment(preds, probs, exacts, dist, merge_tol);
        if (!assign)
            throw AlgorithmError("oracle inconsistent: branches cannot be matched at " +
                                 fmt_angle(k));

        // collision handling: branches sharing one atom are a crossing
        for (std::size_t j = 0; j < dist.size(); ++j) {
            std::vector<std::size_t> group;
            for (std::size_t i = 0; i < n_branch; ++i)
                if ((*assign)[i] == static_cast<int>(j)) group.push_back(i);
            if (group.size() < 2) continue;
            if (group.size() >= 3)
                throw AlgorithmError("unresolvable crossing: three or more branches collide at " +
                                     fmt_angle(k));
            result.diagnostics.push_back(
                "crossing at " + fmt_angle(k) + ": branches " + std::to_string(group[0]) +
                " and " + std::to_string(group[1]) + " share value " +
                std::to_string(dist.atoms()[j].value));
            const auto& h0 = hist[group[0]];
            const auto& h1 = hist[group[1]];
            if (h0.size() >= 2 && h1.size() >= 2) {
                const double s0 = (h0[h0.size() - 1] - h0[h0.size() - 2]) / dtheta;
                const double s1 = (h1[h1.size() - 1] - h1[h1.size() - 2]) / dtheta;
                if (std::abs(s0 - s1) < kGradientTieTol)
                    throw AlgorithmError(
                        "gradient tie - realizations may share a support point (" +
                        fmt_angle(k) + ")");
            }
        }

        for (std::size_t i = 0; i < n_branch; ++i)
            hist[i].push_back(dist.atoms()[static_cast<std::size_t>((*assign)[i])].value);
    }

    // closing the loop must return every branch to its starting atom
    {
        const std::vector<double> preds = predictions();
        const auto assign = sorted_bijection(preds, oracle.dists[k0]);
        bool identity = assign.has_value();
        if (assign)
            for (std::size_t i = 0; i < n_branch; ++i)
                if ((*assign)[i] != static_cast<int>(i)) identity = false;
        if (!identity)
            throw AlgorithmError(
                "wrap-around mismatch: branch tracing did not close; oracle inconsistent");
    }

    for (std::size_t i = 0; i < n_branch; ++i) {
        Realization r;
        r.prob = probs[i];
        r.exact_prob = exacts[i];
        r.support_values.resize(m);
        for (std::size_t d = 0; d < m; ++d)
            r.support_values[d] = hist[i][(d + m - k0) % m];
        result.realizations.push_back(std::move(r));
    }

    spot_check_subadditivity(oracle, result);
    return result;
}

}  // namespace liftexp
