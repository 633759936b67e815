#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cloud.hpp"
#include "report.hpp"
#include "space.hpp"

namespace chaoscope {

/// Orbit coordinates beyond this magnitude count as numerically divergent.
inline constexpr double divergence_guard = 1e12;

/// Thrown when an orbit trips the divergence guard.
struct divergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class BuiltinMap {
    successor_compactification,  // circle: pushes the embedded naturals n -> n+1
    hilbert_diagonal,            // sequence: coordinate i scaled by 1 - 1/(i+1)
    two_arrows_1,                // unit square: (x, j) -> (x/2, j)
    two_arrows_2,                // unit square: (x, j) -> ((x+1)/2, j)
    two_arrows_3,                // unit square: (x, j) -> (1-x, 1-j)
};

inline const char* builtin_map_name(BuiltinMap b) {
    switch (b) {
        case BuiltinMap::successor_compactification: return "successor-compactification";
        case BuiltinMap::hilbert_diagonal: return "hilbert-diagonal";
        case BuiltinMap::two_arrows_1: return "two-arrows-1";
        case BuiltinMap::two_arrows_2: return "two-arrows-2";
        case BuiltinMap::two_arrows_3: return "two-arrows-3";
    }
    return "?";
}

/// One map of a system. Supported kinds:
///   affine      y = A x + b on euclidean/sequence coordinates
///   rotation    angle shift on the circle, or a rotation about the origin
///               in the euclidean plane
///   identity    any space
///   projective  invertible 3x3 matrix acting on homogeneous triples
///   builtin     named special-purpose maps, see BuiltinMap
struct MapSpec {
    enum class Kind { affine, rotation, identity, projective, builtin };

    Kind kind = Kind::identity;
    std::vector<double> matrix;  // affine: dim*dim row-major; projective: 9 entries
    std::vector<double> offset;  // affine only
    double angle = 0.0;          // rotation only
    BuiltinMap builtin = BuiltinMap::successor_compactification;

    static MapSpec affine(std::vector<double> m, std::vector<double> b) {
        MapSpec s;
        s.kind = Kind::affine;
        s.matrix = std::move(m);
        s.offset = std::move(b);
        return s;
    }
    static MapSpec rotation(double angle) {
        MapSpec s;
        s.kind = Kind::rotation;
        s.angle = angle;
        return s;
    }
    static MapSpec identity() { return MapSpec{}; }
    static MapSpec projective(std::vector<double> m) {
        MapSpec s;
        s.kind = Kind::projective;
        s.matrix = std::move(m);
        return s;
    }
    static MapSpec builtin_map(BuiltinMap b) {
        MapSpec s;
        s.kind = Kind::builtin;
        s.builtin = b;
        return s;
    }

    bool operator==(const MapSpec&) const = default;
};

inline double det3(const std::vector<double>& m) {
    if (m.size() != 9) throw std::invalid_argument("det3: expected 9 entries");
    return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
}

/// Stereographic-style embedding of the extended naturals into the circle:
/// n -> 2*arctan(1/n), with the limit point at angle 0.
inline double successor_embed(double n) {
    if (std::isinf(n)) return 0.0;
    if (!(n >= 1.0)) throw std::invalid_argument("successor_embed: n must be >= 1 or inf");
    return 2.0 * std::atan(1.0 / n);
}

namespace detail {

inline void validate_map(const SpaceModel& space, const MapSpec& map) {
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("map incompatible with space " +
                                    std::string(space_kind_name(space.kind)) + ": " + why);
    };
    std::size_t d = static_cast<std::size_t>(space.dim);
    switch (map.kind) {
        case MapSpec::Kind::affine:
            if (space.kind != SpaceKind::euclidean && space.kind != SpaceKind::sequence)
                fail("affine maps need coordinate space");
            if (map.matrix.size() != d * d) fail("affine matrix must be dim*dim");
            if (map.offset.size() != d) fail("affine offset must have dim entries");
            require_finite(map.matrix, "affine matrix");
            require_finite(map.offset, "affine offset");
            break;
        case MapSpec::Kind::rotation:
            if (!(space.kind == SpaceKind::circle ||
                  (space.kind == SpaceKind::euclidean && space.dim == 2)))
                fail("rotation needs the circle or the euclidean plane");
            if (!std::isfinite(map.angle)) fail("rotation angle must be finite");
            break;
        case MapSpec::Kind::identity:
            break;
        case MapSpec::Kind::projective: {
            if (space.kind != SpaceKind::projective2) fail("projective maps need projective2");
            require_finite(map.matrix, "projective matrix");
            double det = det3(map.matrix);
            if (std::abs(det) <= 1e-12) fail("projective matrix must be invertible");
            break;
        }
        case MapSpec::Kind::builtin:
            switch (map.builtin) {
                case BuiltinMap::successor_compactification:
                    if (space.kind != SpaceKind::circle) fail("successor map lives on the circle");
                    break;
                case BuiltinMap::hilbert_diagonal:
                    if (space.kind != SpaceKind::sequence) fail("diagonal map needs sequence space");
                    break;
                case BuiltinMap::two_arrows_1:
                case BuiltinMap::two_arrows_2:
                case BuiltinMap::two_arrows_3:
                    if (!(space.kind == SpaceKind::euclidean && space.dim == 2))
                        fail("two-arrows maps act on the euclidean plane");
                    break;
            }
            break;
    }
}

}  // namespace detail

/// Applies one map to a canonical point and returns the canonical image.
inline SpacePoint apply_map(const SpaceModel& space, const MapSpec& map, const SpacePoint& p) {
    detail::require_arity(space, p.coords.size(), "apply_map");
    std::size_t d = p.coords.size();
    switch (map.kind) {
        case MapSpec::Kind::identity:
            return p;
        case MapSpec::Kind::affine: {
            std::vector<double> y(d);
            for (std::size_t i = 0; i < d; ++i) {
                double acc = map.offset[i];
                const double* row = map.matrix.data() + i * d;
                for (std::size_t j = 0; j < d; ++j) acc += row[j] * p.coords[j];
                y[i] = acc;
            }
            return canonicalize(space, std::move(y));
        }
        case MapSpec::Kind::rotation: {
            if (space.kind == SpaceKind::circle)
                return canonicalize(space, {p.coords[0] + map.angle});
            double c = std::cos(map.angle), s = std::sin(map.angle);
            return canonicalize(space, {c * p.coords[0] - s * p.coords[1],
                                        s * p.coords[0] + c * p.coords[1]});
        }
        case MapSpec::Kind::projective: {
            std::vector<double> y(3);
            for (std::size_t i = 0; i < 3; ++i)
                y[i] = map.matrix[3 * i] * p.coords[0] + map.matrix[3 * i + 1] * p.coords[1] +
                       map.matrix[3 * i + 2] * p.coords[2];
            return canonicalize(space, std::move(y));
        }
        case MapSpec::Kind::builtin:
            switch (map.builtin) {
                case BuiltinMap::successor_compactification: {
                    double th = p.coords[0];
                    if (th == 0.0) return p;  // the limit point is fixed
                    double n = std::round(1.0 / std::tan(0.5 * th));
                    if (!(n >= 1.0)) n = 1.0;          // angles past pi/2 read as n = 1
                    if (n > 9e15) n = 9e15;            // keep n+1 exact in double
                    return SpacePoint{{2.0 * std::atan(1.0 / (n + 1.0))}};
                }
                case BuiltinMap::hilbert_diagonal: {
                    std::vector<double> y(d);
                    for (std::size_t i = 0; i < d; ++i)
                        y[i] = (1.0 - 1.0 / static_cast<double>(i + 2)) * p.coords[i];
                    return canonicalize(space, std::move(y));
                }
                case BuiltinMap::two_arrows_1:
                    return canonicalize(space, {0.5 * p.coords[0], p.coords[1]});
                case BuiltinMap::two_arrows_2:
                    return canonicalize(space, {0.5 * (p.coords[0] + 1.0), p.coords[1]});
                case BuiltinMap::two_arrows_3:
                    return canonicalize(space, {1.0 - p.coords[0], 1.0 - p.coords[1]});
            }
    }
    throw std::logic_error("apply_map: unknown map kind");
}

/// A finite family of maps acting on one space.
struct IFSSystem {
    SpaceModel space;
    std::vector<MapSpec> maps;
    std::string name;

    IFSSystem(SpaceModel sp, std::vector<MapSpec> ms, std::string nm = "")
        : space(sp), maps(std::move(ms)), name(std::move(nm)) {
        if (maps.empty()) throw std::invalid_argument("system needs at least one map");
        for (const MapSpec& m : maps) detail::validate_map(space, m);
    }

    std::size_t map_count() const { return maps.size(); }

    bool operator==(const IFSSystem&) const = default;
};

/// One application of the set map S -> union of map images of S.
inline PointCloud hutchinson(const IFSSystem& sys, const PointCloud& s) {
    if (!(s.space == sys.space)) throw std::invalid_argument("hutchinson: space mismatch");
    std::vector<SpacePoint> out;
    out.reserve(s.points.size() * sys.maps.size());
    for (const MapSpec& m : sys.maps)
        for (const SpacePoint& p : s.points) out.push_back(apply_map(sys.space, m, p));
    return PointCloud::from_points(sys.space, std::move(out));
}

/// k rounds of (hutchinson then decimate), after decimating the seed.
/// Each decimation moves points by at most eps*sqrt(dim)/2, so the result
/// stays within k*eps*sqrt(dim)/2 of the exact k-fold image.
inline PointCloud iterate_hutchinson(const IFSSystem& sys, const PointCloud& s0, long long k,
                                     double eps) {
    if (k < 0) throw std::invalid_argument("iterate_hutchinson: k must be >= 0");
    PointCloud s = decimate(s0, eps);
    for (long long i = 0; i < k; ++i) s = decimate(hutchinson(sys, s), eps);
    return s;
}

struct AttractorResult {
    PointCloud cloud;
    ConvergenceReport report;
};

/// Fixed-point iteration of the decimated set map. Convergence heuristic:
/// three consecutive successive distances at or below tol. Non-convergence
/// within max_iter is reported, not thrown.
inline AttractorResult deterministic_attractor(const IFSSystem& sys, const PointCloud& s0,
                                               double eps, double tol, long long max_iter = 200) {
    if (!(tol > 0.0) || !std::isfinite(tol))
        throw std::invalid_argument("deterministic_attractor: tol must be positive");
    if (max_iter < 1) throw std::invalid_argument("deterministic_attractor: max_iter must be >= 1");
    PointCloud prev = decimate(s0, eps);
    ConvergenceReport rep;
    rep.reference = "successive-iterates";
    rep.tol = tol;
    int consecutive = 0;
    for (long long it = 1; it <= max_iter; ++it) {
        PointCloud next = decimate(hutchinson(sys, prev), eps);
        double dh = hausdorff(next, prev);
        rep.ladder.push_back({it, dh});
        consecutive = dh <= tol ? consecutive + 1 : 0;
        prev = std::move(next);
        if (consecutive >= 3) {
            rep.converged = true;
            break;
        }
    }
    return {std::move(prev), std::move(rep)};
}

}  // namespace chaoscope
