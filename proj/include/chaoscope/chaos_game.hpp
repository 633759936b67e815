#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "cloud.hpp"
#include "ifs.hpp"
#include "space.hpp"

namespace chaoscope {

/// How the next map index is chosen at each step. Every model except
/// `decaying` guarantees a fixed floor: each map has probability at least
/// `floor_p` at every step regardless of history. The decaying model only
/// keeps a floor that shrinks like 1/log(n) down to `decay_floor`; it is
/// experimental and sits outside the fixed-floor convergence guarantee.
struct SelectionModel {
    enum class Kind { iid, cyclic, markov, decaying };

    Kind kind = Kind::iid;
    int n_maps = 1;
    // iid/decaying: one row. cyclic: one row per schedule slot. markov: row
    // per previous index (row-stochastic transition matrix).
    std::vector<std::vector<double>> weights;
    double floor_p = 1.0;      // guaranteed per-step floor (fixed-floor kinds)
    double decay_floor = 0.0;  // decaying: floor the decay never goes below
    double decay_scale = 0.0;  // decaying: c in c/log(n+e)

    static SelectionModel iid(std::vector<double> w);
    static SelectionModel iid_uniform(int n);
    static SelectionModel cyclic(std::vector<std::vector<double>> schedule);
    static SelectionModel markov(std::vector<std::vector<double>> transition);
    static SelectionModel decaying(std::vector<double> base, double p_min, double c = 0.0);

    bool experimental() const { return kind == Kind::decaying; }

    /// Distribution over map indices at 1-based step n. `prev` is the index
    /// drawn at step n-1 (markov only; ignored elsewhere).
    std::vector<double> step_distribution(long long n, std::optional<int> prev = std::nullopt) const;

    bool operator==(const SelectionModel&) const = default;
};

namespace detail {

inline void validate_weight_row(const std::vector<double>& row, bool positive, const char* what) {
    if (row.empty()) throw std::invalid_argument(std::string(what) + ": empty weight vector");
    double sum = 0.0;
    for (double w : row) {
        if (!std::isfinite(w) || w < 0.0)
            throw std::invalid_argument(std::string(what) + ": weights must be finite and >= 0");
        if (positive && w <= 0.0)
            throw std::invalid_argument(std::string(what) + ": every weight must be > 0");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument(std::string(what) + ": weights must sum to 1");
}

inline double min_entry(const std::vector<std::vector<double>>& rows) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& row : rows)
        for (double w : row) m = std::min(m, w);
    return m;
}

}  // namespace detail

inline SelectionModel SelectionModel::iid(std::vector<double> w) {
    detail::validate_weight_row(w, true, "iid weights");
    SelectionModel m;
    m.kind = Kind::iid;
    m.n_maps = static_cast<int>(w.size());
    m.weights = {std::move(w)};
    m.floor_p = detail::min_entry(m.weights);
    return m;
}

inline SelectionModel SelectionModel::iid_uniform(int n) {
    if (n < 1) throw std::invalid_argument("iid_uniform: need at least one map");
    return iid(std::vector<double>(n, 1.0 / n));
}

inline SelectionModel SelectionModel::cyclic(std::vector<std::vector<double>> schedule) {
    if (schedule.empty()) throw std::invalid_argument("cyclic: empty schedule");
    for (const auto& row : schedule) {
        detail::validate_weight_row(row, true, "cyclic schedule");
        if (row.size() != schedule.front().size())
            throw std::invalid_argument("cyclic: schedule rows must have equal length");
    }
    SelectionModel m;
    m.kind = Kind::cyclic;
    m.n_maps = static_cast<int>(schedule.front().size());
    m.weights = std::move(schedule);
    m.floor_p = detail::min_entry(m.weights);
    return m;
}

inline SelectionModel SelectionModel::markov(std::vector<std::vector<double>> transition) {
    if (transition.empty()) throw std::invalid_argument("markov: empty transition matrix");
    for (const auto& row : transition) {
        detail::validate_weight_row(row, true, "markov row");
        if (row.size() != transition.size())
            throw std::invalid_argument("markov: transition matrix must be square");
    }
    SelectionModel m;
    m.kind = Kind::markov;
    m.n_maps = static_cast<int>(transition.size());
    m.weights = std::move(transition);
    m.floor_p = detail::min_entry(m.weights);
    return m;
}

inline SelectionModel SelectionModel::decaying(std::vector<double> base, double p_min, double c) {
    detail::validate_weight_row(base, false, "decaying base weights");
    int n = static_cast<int>(base.size());
    if (!(p_min >= 0.0) || p_min > 1.0 / n)
        throw std::invalid_argument("decaying: p_min must lie in [0, 1/n_maps]");
    if (c == 0.0) c = 1.0 / n;
    if (!(c > 0.0) || !std::isfinite(c))
        throw std::invalid_argument("decaying: scale must be positive");
    SelectionModel m;
    m.kind = Kind::decaying;
    m.n_maps = n;
    m.weights = {std::move(base)};
    m.floor_p = 0.0;
    m.decay_floor = p_min;
    m.decay_scale = c;
    return m;
}

inline std::vector<double> SelectionModel::step_distribution(long long n,
                                                             std::optional<int> prev) const {
    if (n < 1) throw std::invalid_argument("step_distribution: steps are 1-based");
    switch (kind) {
        case Kind::iid:
            return weights[0];
        case Kind::cyclic:
            return weights[static_cast<std::size_t>((n - 1) % static_cast<long long>(weights.size()))];
        case Kind::markov:
            // No previous index at the first step: start uniformly.
            if (n == 1 || !prev) return std::vector<double>(n_maps, 1.0 / n_maps);
            if (*prev < 0 || *prev >= n_maps)
                throw std::invalid_argument("step_distribution: previous index out of range");
            return weights[static_cast<std::size_t>(*prev)];
        case Kind::decaying: {
            double f = std::max(decay_floor,
                                decay_scale / std::log(static_cast<double>(n) + std::numbers::e));
            f = std::min(f, 1.0 / n_maps);
            std::vector<double> dist(weights[0]);
            for (double& w : dist) w = f + (1.0 - n_maps * f) * w;
            return dist;
        }
    }
    throw std::logic_error("step_distribution: unknown kind");
}

/// Effective per-step floor of the decaying model at 1-based step n.
inline double decaying_floor_at(const SelectionModel& m, long long n) {
    if (m.kind != SelectionModel::Kind::decaying)
        throw std::invalid_argument("decaying_floor_at: not a decaying model");
    double f = std::max(m.decay_floor,
                        m.decay_scale / std::log(static_cast<double>(n) + std::numbers::e));
    return std::min(f, 1.0 / m.n_maps);
}

inline const char* rng_algorithm_id = "mt19937_64";

/// Uniform double in [0, 1) from the top 53 bits of one generator draw.
inline double canonical_uniform(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// Inverse-CDF draw: walks the cumulative sums in ascending index order.
inline int draw_index(const SelectionModel& model, long long n, std::optional<int> prev,
                      std::mt19937_64& gen) {
    std::vector<double> dist = model.step_distribution(n, prev);
    double u = canonical_uniform(gen);
    double cum = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        cum += dist[i];
        if (u < cum) return static_cast<int>(i);
    }
    return static_cast<int>(dist.size()) - 1;
}

/// Full record of one chaos-game run: enough to replay it exactly.
struct OrbitRecord {
    IFSSystem system;
    SpacePoint x0;
    SelectionModel model;
    std::uint64_t seed = 0;
    std::string rng_algorithm = rng_algorithm_id;
    std::vector<int> indices;       // sigma_1..sigma_n, 0-based map indices
    std::vector<SpacePoint> points; // x_0..x_n, canonical

    bool operator==(const OrbitRecord&) const = default;
};

/// Runs the chaos game for n_steps steps from x0 (canonicalized first).
/// Deterministic: the same (system, x0, model, seed) yields bit-identical
/// records. Throws divergence_error if a coordinate leaves the guard range.
inline OrbitRecord run_chaos_game(const IFSSystem& sys, const SpacePoint& x0, long long n_steps,
                                  const SelectionModel& model, std::uint64_t seed) {
    if (n_steps < 0) throw std::invalid_argument("run_chaos_game: n_steps must be >= 0");
    if (model.n_maps != static_cast<int>(sys.maps.size()))
        throw std::invalid_argument("run_chaos_game: model arity does not match map count");
    OrbitRecord rec{sys, canonicalize(sys.space, x0), model, seed, rng_algorithm_id, {}, {}};
    rec.indices.reserve(static_cast<std::size_t>(n_steps));
    rec.points.reserve(static_cast<std::size_t>(n_steps) + 1);
    rec.points.push_back(rec.x0);
    std::mt19937_64 gen(seed);
    std::optional<int> prev;
    SpacePoint x = rec.x0;
    for (long long n = 1; n <= n_steps; ++n) {
        int idx = draw_index(model, n, prev, gen);
        x = apply_map(sys.space, sys.maps[static_cast<std::size_t>(idx)], x);
        for (double c : x.coords)
            if (std::abs(c) > divergence_guard)
                throw divergence_error("orbit coordinate exceeded divergence guard at step " +
                                       std::to_string(n));
        rec.indices.push_back(idx);
        rec.points.push_back(x);
        prev = idx;
    }
    return rec;
}

/// Recomputes the orbit points from the recorded index sequence.
inline std::vector<SpacePoint> replay_points(const IFSSystem& sys, const SpacePoint& x0,
                                             const std::vector<int>& indices) {
    std::vector<SpacePoint> pts;
    pts.reserve(indices.size() + 1);
    SpacePoint x = canonicalize(sys.space, x0);
    pts.push_back(x);
    for (int idx : indices) {
        if (idx < 0 || idx >= static_cast<int>(sys.maps.size()))
            throw std::invalid_argument("replay_points: map index out of range");
        x = apply_map(sys.space, sys.maps[static_cast<std::size_t>(idx)], x);
        pts.push_back(x);
    }
    return pts;
}

/// Cloud of the orbit tail x_K..x_n. K must leave at least one point.
inline PointCloud tail_cloud(const OrbitRecord& orbit, long long burn_in) {
    if (burn_in < 0) throw std::invalid_argument("tail_cloud: burn-in must be >= 0");
    if (burn_in >= static_cast<long long>(orbit.points.size()))
        throw std::invalid_argument("tail_cloud: burn-in leaves no points");
    std::vector<SpacePoint> pts(orbit.points.begin() + burn_in, orbit.points.end());
    return PointCloud::from_points(orbit.system.space, std::move(pts));
}

}  // namespace chaoscope
