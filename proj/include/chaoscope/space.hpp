#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace chaoscope {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Coordinate arity and metric come from the space model. Four models are
/// supported: flat d-dimensional space, the unit circle (one angle), the
/// real projective plane (homogeneous triples), and a finite truncation of
/// the space of square-summable sequences.
enum class SpaceKind { euclidean, circle, projective2, sequence };

struct SpaceModel {
    SpaceKind kind = SpaceKind::euclidean;
    int dim = 1;  // coordinate arity of a point in this model

    static SpaceModel euclidean(int d) {
        if (d < 1) throw std::invalid_argument("euclidean dimension must be >= 1");
        return {SpaceKind::euclidean, d};
    }
    static SpaceModel circle() { return {SpaceKind::circle, 1}; }
    static SpaceModel projective2() { return {SpaceKind::projective2, 3}; }
    static SpaceModel sequence(int d = 256) {
        if (d < 1) throw std::invalid_argument("sequence truncation must be >= 1");
        return {SpaceKind::sequence, d};
    }

    bool operator==(const SpaceModel&) const = default;
};

inline const char* space_kind_name(SpaceKind k) {
    switch (k) {
        case SpaceKind::euclidean: return "euclidean";
        case SpaceKind::circle: return "circle";
        case SpaceKind::projective2: return "projective2";
        case SpaceKind::sequence: return "sequence";
    }
    return "?";
}

/// A point in canonical form. Interpretation of coords depends on the
/// space: euclidean/sequence coordinates, a single angle in [0, 2*pi), or a
/// unit homogeneous triple whose first nonzero entry is positive.
struct SpacePoint {
    std::vector<double> coords;

    bool operator==(const SpacePoint&) const = default;
};

inline bool lex_less(const SpacePoint& a, const SpacePoint& b) {
    return a.coords < b.coords;
}

namespace detail {

inline void require_arity(const SpaceModel& space, std::size_t n, const char* what) {
    if (static_cast<std::size_t>(space.dim) != n)
        throw std::invalid_argument(std::string(what) + ": expected " +
                                    std::to_string(space.dim) + " coordinates, got " +
                                    std::to_string(n));
}

inline void require_finite(const std::vector<double>& v, const char* what) {
    for (double x : v)
        if (!std::isfinite(x))
            throw std::invalid_argument(std::string(what) + ": non-finite coordinate");
}

// Normalizes negative zero so equal points are bit-identical.
inline double scrub_zero(double x) { return x == 0.0 ? 0.0 : x; }

inline double reduce_angle(double a) {
    double r = std::fmod(a, two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r -= two_pi;  // fmod/rounding can land exactly on 2*pi
    return scrub_zero(r);
}

}  // namespace detail

/// Canonical form of a raw coordinate vector.
///   euclidean/sequence: unchanged (negative zeros scrubbed)
///   circle:             angle reduced mod 2*pi into [0, 2*pi)
///   projective2:        unit norm, first nonzero coordinate positive
/// Idempotent: feeding the result back in reproduces it bit for bit.
inline SpacePoint canonicalize(const SpaceModel& space, std::vector<double> raw) {
    detail::require_arity(space, raw.size(), "canonicalize");
    detail::require_finite(raw, "canonicalize");
    switch (space.kind) {
        case SpaceKind::euclidean:
        case SpaceKind::sequence:
            for (double& x : raw) x = detail::scrub_zero(x);
            return SpacePoint{std::move(raw)};
        case SpaceKind::circle:
            raw[0] = detail::reduce_angle(raw[0]);
            return SpacePoint{std::move(raw)};
        case SpaceKind::projective2: {
            double m = 0.0;
            for (double x : raw) m = std::max(m, std::abs(x));
            if (m == 0.0)
                throw std::invalid_argument("canonicalize: projective zero vector");
            double n2 = raw[0] * raw[0] + raw[1] * raw[1] + raw[2] * raw[2];
            // Already unit (previously canonicalized): skip the renormalization
            // so canonicalize is bit-idempotent.
            if (std::abs(n2 - 1.0) > 1e-13) {
                // Scale by the largest magnitude first. Dividing a vector and a
                // scalar multiple of it by their respective pivots yields the
                // same intermediate for dyadic multiples, so e.g. (1,1,1) and
                // (2,2,2) canonicalize to bit-identical points.
                for (double& x : raw) x /= m;
                double s = std::sqrt(raw[0] * raw[0] + raw[1] * raw[1] + raw[2] * raw[2]);
                for (double& x : raw) x /= s;
            }
            for (std::size_t i = 0; i < 3; ++i) {
                if (raw[i] == 0.0) continue;
                if (raw[i] < 0.0)
                    for (double& x : raw) x = -x;
                break;
            }
            for (double& x : raw) x = detail::scrub_zero(x);
            return SpacePoint{std::move(raw)};
        }
    }
    throw std::logic_error("canonicalize: unknown space kind");
}

inline SpacePoint canonicalize(const SpaceModel& space, const SpacePoint& p) {
    return canonicalize(space, p.coords);
}

/// Metric of the space model.
///   euclidean/sequence: Euclidean norm of the difference
///   circle:             arc length min(|a-b|, 2*pi-|a-b|)
///   projective2:        angle between lines, arccos(min(1,|<u,v>|)) --
///                       evaluated through the chordal form
///                       2*asin(min(|u-v|,|u+v|)/2), which is the same value
///                       but exact for identical points and well conditioned
///                       for nearly parallel lines.
inline double distance(const SpaceModel& space, const SpacePoint& p, const SpacePoint& q) {
    detail::require_arity(space, p.coords.size(), "distance(p)");
    detail::require_arity(space, q.coords.size(), "distance(q)");
    switch (space.kind) {
        case SpaceKind::euclidean:
        case SpaceKind::sequence: {
            double s = 0.0;
            for (std::size_t i = 0; i < p.coords.size(); ++i) {
                double d = p.coords[i] - q.coords[i];
                s += d * d;
            }
            return std::sqrt(s);
        }
        case SpaceKind::circle: {
            double a = std::abs(p.coords[0] - q.coords[0]);
            return std::min(a, two_pi - a);
        }
        case SpaceKind::projective2: {
            double dm = 0.0, dp = 0.0;
            for (std::size_t i = 0; i < 3; ++i) {
                double u = p.coords[i], v = q.coords[i];
                dm += (u - v) * (u - v);
                dp += (u + v) * (u + v);
            }
            double chord = std::sqrt(std::min(dm, dp));
            return 2.0 * std::asin(std::min(1.0, 0.5 * chord));
        }
    }
    throw std::logic_error("distance: unknown space kind");
}

inline constexpr double default_chart_threshold = 1e-6;

/// Affine chart z=1 of the projective plane. Points whose third homogeneous
/// coordinate is below the threshold sit near the line at infinity and are
/// reported as absent (clipped from rendering).
inline std::optional<std::array<double, 2>> chart_project(const SpacePoint& p,
                                                          double threshold = default_chart_threshold) {
    if (p.coords.size() != 3)
        throw std::invalid_argument("chart_project: expected a projective triple");
    double z = p.coords[2];
    if (std::abs(z) <= threshold) return std::nullopt;
    return std::array<double, 2>{p.coords[0] / z, p.coords[1] / z};
}

}  // namespace chaoscope
