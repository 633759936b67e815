#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "space.hpp"

namespace chaoscope {

/// Finite nonempty set of canonical points, kept sorted lexicographically
/// with exact duplicates removed. `resolution` records the grid spacing the
/// cloud was last decimated at (empty means exact).
struct PointCloud {
    SpaceModel space;
    std::vector<SpacePoint> points;
    std::optional<double> resolution;

    static PointCloud from_points(const SpaceModel& space, std::vector<SpacePoint> pts,
                                  std::optional<double> resolution = std::nullopt) {
        if (pts.empty()) throw std::invalid_argument("point cloud must be nonempty");
        for (const SpacePoint& p : pts)
            detail::require_arity(space, p.coords.size(), "point cloud");
        std::sort(pts.begin(), pts.end(), lex_less);
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        return PointCloud{space, std::move(pts), resolution};
    }

    std::size_t size() const { return points.size(); }

    // Resolution is bookkeeping, not part of set identity.
    bool operator==(const PointCloud& o) const {
        return space == o.space && points == o.points;
    }
};

inline bool is_subset(const PointCloud& a, const PointCloud& b) {
    return std::includes(b.points.begin(), b.points.end(), a.points.begin(), a.points.end(),
                         lex_less);
}

inline PointCloud cloud_union(const PointCloud& a, const PointCloud& b) {
    if (!(a.space == b.space)) throw std::invalid_argument("cloud_union: space mismatch");
    std::vector<SpacePoint> merged;
    merged.reserve(a.points.size() + b.points.size());
    std::merge(a.points.begin(), a.points.end(), b.points.begin(), b.points.end(),
               std::back_inserter(merged), lex_less);
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    std::optional<double> res;
    if (a.resolution && b.resolution && *a.resolution == *b.resolution) res = a.resolution;
    return PointCloud{a.space, std::move(merged), res};
}

enum class HausdorffMode { automatic, brute_force, accelerated };

namespace detail {

inline double directed_hausdorff_brute(const PointCloud& a, const PointCloud& b) {
    double worst = 0.0;
    for (const SpacePoint& p : a.points) {
        double best = std::numeric_limits<double>::infinity();
        for (const SpacePoint& q : b.points) {
            double d = distance(a.space, p, q);
            if (d < best) best = d;
        }
        if (best > worst) worst = best;
    }
    return worst;
}

// Circle points sorted lexicographically are sorted by angle, so the nearest
// neighbour in arc distance is one of the cyclic neighbours of the query.
inline double directed_hausdorff_circle(const PointCloud& a, const PointCloud& b) {
    const std::vector<SpacePoint>& tb = b.points;
    double worst = 0.0;
    for (const SpacePoint& p : a.points) {
        auto it = std::lower_bound(tb.begin(), tb.end(), p, lex_less);
        double best = std::numeric_limits<double>::infinity();
        auto consider = [&](const SpacePoint& q) {
            double d = distance(a.space, p, q);
            if (d < best) best = d;
        };
        if (it != tb.end()) consider(*it);
        if (it != tb.begin()) consider(*(it - 1));
        consider(tb.front());
        consider(tb.back());
        if (best > worst) worst = best;
    }
    return worst;
}

// Uniform bucket grid over raw coordinates (arity <= 3). Nearest-neighbour
// queries expand Chebyshev rings of cells until the remaining cells provably
// cannot beat the best distance found; every candidate is compared with the
// exact metric, so results match the brute-force scan bit for bit.
struct BucketGrid {
    const PointCloud* cloud = nullptr;
    int dims = 0;
    double cell = 1.0;
    std::array<double, 3> lo{};
    std::array<std::int64_t, 3> cells{};
    std::unordered_map<std::int64_t, std::vector<std::uint32_t>> buckets;

    explicit BucketGrid(const PointCloud& target) : cloud(&target) {
        dims = target.space.dim;
        std::array<double, 3> hi{};
        for (int d = 0; d < dims; ++d) {
            lo[d] = std::numeric_limits<double>::infinity();
            hi[d] = -std::numeric_limits<double>::infinity();
        }
        for (const SpacePoint& p : target.points)
            for (int d = 0; d < dims; ++d) {
                lo[d] = std::min(lo[d], p.coords[d]);
                hi[d] = std::max(hi[d], p.coords[d]);
            }
        double extent = 0.0;
        for (int d = 0; d < dims; ++d) extent = std::max(extent, hi[d] - lo[d]);
        if (extent <= 0.0) extent = 1.0;
        double step = extent * std::pow(1.0 / static_cast<double>(target.size()), 1.0 / dims);
        cell = std::max(step, extent / (1 << 20));
        for (int d = 0; d < dims; ++d) {
            cells[d] = static_cast<std::int64_t>(std::floor((hi[d] - lo[d]) / cell)) + 1;
            cells[d] = std::max<std::int64_t>(cells[d], 1);
        }
        buckets.reserve(target.size());
        for (std::uint32_t i = 0; i < target.points.size(); ++i)
            buckets[key_of(index_of(target.points[i].coords))].push_back(i);
    }

    std::array<std::int64_t, 3> index_of(const std::vector<double>& c) const {
        std::array<std::int64_t, 3> ix{};
        for (int d = 0; d < dims; ++d) {
            std::int64_t i = static_cast<std::int64_t>(std::floor((c[d] - lo[d]) / cell));
            ix[d] = std::clamp<std::int64_t>(i, 0, cells[d] - 1);
        }
        return ix;
    }

    std::int64_t key_of(const std::array<std::int64_t, 3>& ix) const {
        return (ix[0] << 42) ^ (ix[1] << 21) ^ ix[2];
    }

    template <class Fn>
    void for_bucket(const std::array<std::int64_t, 3>& ix, Fn&& fn) const {
        auto it = buckets.find(key_of(ix));
        if (it == buckets.end()) return;
        for (std::uint32_t i : it->second) fn(cloud->points[i]);
    }

    // Visits every cell whose Chebyshev distance from `center` is exactly r.
    template <class Fn>
    void for_ring(const std::array<std::int64_t, 3>& center, std::int64_t r, Fn&& fn) const {
        std::array<std::int64_t, 3> ix{};
        auto onion = [&](auto&& self, int d, bool bound) -> void {
            if (d == dims) {
                if (bound) fn(ix);
                return;
            }
            std::int64_t from = center[d] - r, to = center[d] + r;
            if (d == dims - 1 && !bound) {
                // No earlier axis pins the radius, so only the two extreme
                // slices complete a ring cell (r >= 1 here, from < to).
                for (std::int64_t i : {from, to}) {
                    if (i < 0 || i > cells[d] - 1) continue;
                    ix[d] = i;
                    self(self, d + 1, true);
                }
                return;
            }
            for (std::int64_t i = std::max<std::int64_t>(from, 0);
                 i <= std::min<std::int64_t>(to, cells[d] - 1); ++i) {
                ix[d] = i;
                self(self, d + 1, bound || i == from || i == to);
            }
        };
        onion(onion, 0, r == 0);
    }

    bool ring_in_range(const std::array<std::int64_t, 3>& center, std::int64_t r) const {
        for (int d = 0; d < dims; ++d)
            if (center[d] - r >= 0 || center[d] + r <= cells[d] - 1) return true;
        return false;
    }
};

// Metric balls expressed as coordinate-space radii, used only to prune cells.
// A slack factor keeps the pruning conservative so the exact comparisons
// decide everything.
inline double pruning_radius(const SpaceModel& space, double metric_dist) {
    double r = metric_dist;
    if (space.kind == SpaceKind::projective2)
        r = 2.0 * std::sin(0.5 * std::min(metric_dist, std::numbers::pi));
    return r * (1.0 + 1e-9) + 1e-300;
}

inline double grid_nearest(const BucketGrid& grid, const SpaceModel& space, const SpacePoint& p,
                           const std::vector<std::vector<double>>& query_reps) {
    double best = std::numeric_limits<double>::infinity();
    std::int64_t max_r = 0;
    for (int d = 0; d < grid.dims; ++d) max_r = std::max(max_r, grid.cells[d]);
    std::vector<std::array<std::int64_t, 3>> centers;
    centers.reserve(query_reps.size());
    for (const std::vector<double>& rep : query_reps) centers.push_back(grid.index_of(rep));
    for (std::int64_t r = 0; r <= max_r + 1; ++r) {
        bool any_in_range = false;
        for (const auto& c : centers) {
            if (!grid.ring_in_range(c, r) && r > 0) continue;
            any_in_range = true;
            grid.for_ring(c, r, [&](const std::array<std::int64_t, 3>& ix) {
                grid.for_bucket(ix, [&](const SpacePoint& q) {
                    double d = distance(space, p, q);
                    if (d < best) best = d;
                });
            });
        }
        if (std::isfinite(best)) {
            // Cells on ring r+1 lie at coordinate distance >= r*cell from the
            // query representative; once that exceeds the pruning radius no
            // closer point can appear.
            double reach = static_cast<double>(r) * grid.cell;
            if (reach > pruning_radius(space, best)) break;
        }
        if (!any_in_range && r > 0) break;
    }
    return best;
}

inline double directed_hausdorff_grid(const PointCloud& a, const PointCloud& b) {
    BucketGrid grid(b);
    double worst = 0.0;
    std::vector<std::vector<double>> reps;
    for (const SpacePoint& p : a.points) {
        reps.clear();
        reps.push_back(p.coords);
        if (a.space.kind == SpaceKind::projective2) {
            std::vector<double> neg(3);
            for (int d = 0; d < 3; ++d) neg[d] = detail::scrub_zero(-p.coords[d]);
            reps.push_back(std::move(neg));
        }
        double best = grid_nearest(grid, a.space, p, reps);
        if (best > worst) worst = best;
    }
    return worst;
}

inline bool grid_eligible(const SpaceModel& space) {
    switch (space.kind) {
        case SpaceKind::euclidean: return space.dim <= 3;
        case SpaceKind::projective2: return true;
        case SpaceKind::circle: return true;  // handled by the sorted scan
        case SpaceKind::sequence: return space.dim <= 3;
    }
    return false;
}

}  // namespace detail

/// max over a of min over b of distance(a, b). The accelerated path prunes
/// with conservative geometric bounds but evaluates the same metric on a
/// candidate set that provably contains the nearest neighbour, so brute
/// force and accelerated results are bit-identical.
inline double directed_hausdorff(const PointCloud& a, const PointCloud& b,
                                 HausdorffMode mode = HausdorffMode::automatic) {
    if (!(a.space == b.space)) throw std::invalid_argument("hausdorff: space mismatch");
    bool accel = false;
    switch (mode) {
        case HausdorffMode::brute_force: accel = false; break;
        case HausdorffMode::accelerated: accel = detail::grid_eligible(a.space); break;
        case HausdorffMode::automatic:
            accel = detail::grid_eligible(a.space) && a.size() * b.size() > 1u << 16;
            break;
    }
    if (!accel) return detail::directed_hausdorff_brute(a, b);
    if (a.space.kind == SpaceKind::circle) return detail::directed_hausdorff_circle(a, b);
    return detail::directed_hausdorff_grid(a, b);
}

inline double hausdorff(const PointCloud& a, const PointCloud& b,
                        HausdorffMode mode = HausdorffMode::automatic) {
    return std::max(directed_hausdorff(a, b, mode), directed_hausdorff(b, a, mode));
}

namespace detail {

inline double snap_coord(double x, double eps) {
    return scrub_zero(eps * std::round(x / eps));
}

}  // namespace detail

/// Snaps every point to an eps-grid (ties round half away from zero) and
/// removes duplicates. Moves each point by at most eps*sqrt(dim)/2, so
/// hausdorff(decimate(S, eps), S) <= eps*sqrt(dim)/2. Idempotent at fixed
/// eps: decimating an already decimated cloud reproduces it exactly.
inline PointCloud decimate(const PointCloud& s, double eps) {
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw std::invalid_argument("decimate: eps must be positive and finite");
    std::vector<SpacePoint> out;
    out.reserve(s.points.size());
    switch (s.space.kind) {
        case SpaceKind::euclidean:
        case SpaceKind::sequence:
            for (const SpacePoint& p : s.points) {
                std::vector<double> c(p.coords.size());
                for (std::size_t i = 0; i < c.size(); ++i)
                    c[i] = detail::snap_coord(p.coords[i], eps);
                out.push_back(SpacePoint{std::move(c)});
            }
            break;
        case SpaceKind::circle:
            for (const SpacePoint& p : s.points) {
                double snapped = detail::snap_coord(p.coords[0], eps);
                if (snapped >= two_pi) snapped = 0.0;  // grid cell straddling the seam
                out.push_back(SpacePoint{{snapped}});
            }
            break;
        case SpaceKind::projective2:
            // Snap the representative scaled so its largest-magnitude
            // coordinate is exactly 1, then re-canonicalize. Snapping that
            // representative (rather than the unit triple) keeps the grid
            // cell stable under the renormalization, which makes the
            // operation idempotent for power-of-two eps.
            for (const SpacePoint& p : s.points) {
                std::size_t piv = 0;
                for (std::size_t i = 1; i < 3; ++i)
                    if (std::abs(p.coords[i]) > std::abs(p.coords[piv])) piv = i;
                std::vector<double> c(3);
                bool all_zero = true;
                for (std::size_t i = 0; i < 3; ++i) {
                    c[i] = detail::snap_coord(p.coords[i] / p.coords[piv], eps);
                    if (c[i] != 0.0) all_zero = false;
                }
                // Grids coarser than the whole sphere collapse to zero; keep
                // the original point in that degenerate case.
                out.push_back(all_zero ? p : canonicalize(s.space, std::move(c)));
            }
            break;
    }
    return PointCloud::from_points(s.space, std::move(out), eps);
}

}  // namespace chaoscope
