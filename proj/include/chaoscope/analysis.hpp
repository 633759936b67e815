#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chaos_game.hpp"
#include "cloud.hpp"
#include "ifs.hpp"
#include "report.hpp"
#include "space.hpp"

namespace chaoscope {

/// Hausdorff distance of each orbit tail {x_k : k >= K} to the reference,
/// for an increasing ladder of burn-in values. Converged means the largest
/// burn-in entry lands at or below tol.
inline ConvergenceReport tail_convergence(const OrbitRecord& orbit, const PointCloud& reference,
                                          const std::vector<long long>& burn_in_ladder,
                                          double tol, std::string reference_label = "reference") {
    if (!(tol > 0.0) || !std::isfinite(tol))
        throw std::invalid_argument("tail_convergence: tol must be positive");
    if (burn_in_ladder.empty()) throw std::invalid_argument("tail_convergence: empty ladder");
    for (std::size_t i = 1; i < burn_in_ladder.size(); ++i)
        if (burn_in_ladder[i] <= burn_in_ladder[i - 1])
            throw std::invalid_argument("tail_convergence: ladder must be strictly increasing");
    ConvergenceReport rep;
    rep.reference = std::move(reference_label);
    rep.tol = tol;
    for (long long k : burn_in_ladder) {
        PointCloud tail = tail_cloud(orbit, k);  // validates the range
        rep.ladder.push_back({k, hausdorff(tail, reference)});
    }
    rep.converged = rep.ladder.back().dh <= tol;
    return rep;
}

/// Follows the decimated set iteration started from a single probe point
/// and compares each iterate against the reference set.
///   attracted: distance stayed at or below tol for three consecutive checks
///   diverged:  a coordinate left the guard range (or overflowed)
///   otherwise: budget exhausted
inline BasinVerdict basin_probe(const IFSSystem& sys, const SpacePoint& probe,
                                const PointCloud& reference, long long k_max, double eps,
                                double tol) {
    if (!(sys.space == reference.space))
        throw std::invalid_argument("basin_probe: reference space mismatch");
    if (k_max < 1) throw std::invalid_argument("basin_probe: k_max must be >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("basin_probe: tol must be positive");
    SpacePoint x = canonicalize(sys.space, probe);
    BasinVerdict v{x, BasinOutcome::not_attracted_within_budget, 0,
                   std::numeric_limits<double>::infinity()};
    PointCloud s = decimate(PointCloud::from_points(sys.space, {x}), eps);
    int consecutive = 0;
    for (long long k = 1; k <= k_max; ++k) {
        try {
            s = decimate(hutchinson(sys, s), eps);
        } catch (const std::invalid_argument&) {
            v.outcome = BasinOutcome::diverged;  // non-finite image
            v.k_reached = k;
            return v;
        }
        for (const SpacePoint& p : s.points)
            for (double c : p.coords)
                if (std::abs(c) > divergence_guard) {
                    v.outcome = BasinOutcome::diverged;
                    v.k_reached = k;
                    return v;
                }
        v.final_dh = hausdorff(s, reference);
        v.k_reached = k;
        consecutive = v.final_dh <= tol ? consecutive + 1 : 0;
        if (consecutive >= 3) {
            v.outcome = BasinOutcome::attracted;
            return v;
        }
    }
    return v;
}

struct BasinViolation {
    SpacePoint probe;
    std::size_t map_index = 0;
    BasinVerdict image_verdict;
};

struct BasinInvarianceSummary {
    std::size_t probes_checked = 0;
    std::size_t attracted = 0;
    std::vector<BasinViolation> violations;

    bool pass() const { return violations.empty(); }
};

/// For every probe that lands in the attracted set, each map image of the
/// probe must land there too. Reported violations falsify invariance of the
/// pointwise basin under the family of maps.
inline BasinInvarianceSummary basin_invariance_check(const IFSSystem& sys,
                                                     const std::vector<SpacePoint>& probes,
                                                     const PointCloud& reference, long long k_max,
                                                     double eps, double tol) {
    BasinInvarianceSummary summary;
    for (const SpacePoint& probe : probes) {
        ++summary.probes_checked;
        BasinVerdict v = basin_probe(sys, probe, reference, k_max, eps, tol);
        if (v.outcome != BasinOutcome::attracted) continue;
        ++summary.attracted;
        for (std::size_t i = 0; i < sys.maps.size(); ++i) {
            SpacePoint image = apply_map(sys.space, sys.maps[i], v.probe);
            BasinVerdict iv = basin_probe(sys, image, reference, k_max, eps, tol);
            if (iv.outcome != BasinOutcome::attracted)
                summary.violations.push_back({v.probe, i, iv});
        }
    }
    return summary;
}

/// Runs the chaos game from a point already on the reference set and checks
/// that the whole orbit (no burn-in) stays within tol of it in Hausdorff
/// distance. Requires x0 to start on the reference (within tol).
inline ConvergenceReport semiattractor_orbit_check(const IFSSystem& sys, const SpacePoint& x0,
                                                   long long n_steps, const SelectionModel& model,
                                                   std::uint64_t seed, const PointCloud& reference,
                                                   double tol,
                                                   std::string reference_label = "reference") {
    SpacePoint start = canonicalize(sys.space, x0);
    double nearest = std::numeric_limits<double>::infinity();
    for (const SpacePoint& r : reference.points)
        nearest = std::min(nearest, distance(sys.space, start, r));
    if (nearest > tol)
        throw std::invalid_argument("semiattractor_orbit_check: x0 does not start on the reference");
    OrbitRecord orbit = run_chaos_game(sys, start, n_steps, model, seed);
    return tail_convergence(orbit, reference, {0}, tol, std::move(reference_label));
}

/// Norm of the k-fold diagonal-map image of x in the truncated sequence
/// space, computed two ways: by iterating the map and by the closed form
/// prod_i (1-1/(i+1))^k applied coordinatewise.
struct DiagonalNorms {
    double iterated = 0.0;
    double closed_form = 0.0;
};

inline DiagonalNorms diagonal_decay_norms(int dim, const std::vector<double>& x, long long k) {
    if (k < 0) throw std::invalid_argument("diagonal_decay_norms: k must be >= 0");
    SpaceModel space = SpaceModel::sequence(dim);
    detail::require_arity(space, x.size(), "diagonal_decay_norms");
    MapSpec map = MapSpec::builtin_map(BuiltinMap::hilbert_diagonal);
    SpacePoint p = canonicalize(space, x);
    for (long long i = 0; i < k; ++i) p = apply_map(space, map, p);
    double itn = 0.0, cfn = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        itn += p.coords[j] * p.coords[j];
        double f = 1.0 - 1.0 / static_cast<double>(j + 2);
        double c = std::pow(f, static_cast<double>(k)) * x[j];
        cfn += c * c;
    }
    return {std::sqrt(itn), std::sqrt(cfn)};
}

/// Norm of the k-fold image of the k-th standard basis vector, which the
/// closed form gives as (1 - 1/(k+1))^k. Unlike any fixed vector these stay
/// bounded away from zero, approaching 1/e.
inline DiagonalNorms moving_basis_norms(int dim, long long k) {
    if (k < 1 || k > dim)
        throw std::invalid_argument("moving_basis_norms: need 1 <= k <= dim");
    std::vector<double> e(static_cast<std::size_t>(dim), 0.0);
    e[static_cast<std::size_t>(k - 1)] = 1.0;
    DiagonalNorms n = diagonal_decay_norms(dim, e, k);
    n.closed_form = std::pow(1.0 - 1.0 / (static_cast<double>(k) + 1.0), static_cast<double>(k));
    return n;
}

}  // namespace chaoscope
