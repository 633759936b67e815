#pragma once

// Helpers shared by the test suites: seeded random points and clouds for
// each space model.

#include <cmath>
#include <random>
#include <vector>

#include <chaoscope/chaoscope.hpp>

namespace testsupport {

using namespace chaoscope;

inline SpacePoint random_point(const SpaceModel& space, std::mt19937_64& gen) {
    switch (space.kind) {
        case SpaceKind::euclidean:
        case SpaceKind::sequence: {
            std::uniform_real_distribution<double> unit(-1.0, 1.0);
            std::vector<double> c(static_cast<std::size_t>(space.dim));
            for (double& x : c) x = unit(gen);
            return canonicalize(space, std::move(c));
        }
        case SpaceKind::circle: {
            std::uniform_real_distribution<double> angle(0.0, two_pi);
            return canonicalize(space, {angle(gen)});
        }
        case SpaceKind::projective2: {
            std::normal_distribution<double> g(0.0, 1.0);
            std::vector<double> c;
            do {
                c = {g(gen), g(gen), g(gen)};
            } while (std::abs(c[0]) + std::abs(c[1]) + std::abs(c[2]) < 1e-6);
            return canonicalize(space, std::move(c));
        }
    }
    throw std::logic_error("random_point: unknown space kind");
}

inline PointCloud random_cloud(const SpaceModel& space, std::mt19937_64& gen,
                               std::size_t max_pts = 12) {
    std::uniform_int_distribution<std::size_t> n(1, max_pts);
    std::vector<SpacePoint> pts;
    std::size_t count = n(gen);
    for (std::size_t i = 0; i < count; ++i) pts.push_back(random_point(space, gen));
    return PointCloud::from_points(space, std::move(pts));
}

inline std::vector<SpaceModel> all_spaces() {
    return {SpaceModel::euclidean(2), SpaceModel::euclidean(3), SpaceModel::circle(),
            SpaceModel::projective2(), SpaceModel::sequence(8)};
}

}  // namespace testsupport
