#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "ifs.hpp"
#include "space.hpp"

namespace chaoscope {

/// Suggested run parameters for a gallery system. x0 is given as raw
/// coordinates (canonicalized at the point of use).
struct GalleryDefaults {
    std::vector<double> x0;
    long long n_steps = 100000;
    std::vector<long long> burn_in_ladder{0, 100, 1000, 10000};
    double eps = 0x1p-9;
    double tol = 0.02;

    bool operator==(const GalleryDefaults&) const = default;
};

struct GalleryEntry {
    std::string name;
    IFSSystem system;
    GalleryDefaults defaults;
    std::string description;
};

inline const std::vector<std::string>& gallery_names() {
    static const std::vector<std::string> names = {
        "sierpinski",     "circle-rotation",          "projective-bv",
        "two-arrows-maps", "successor-compactification", "hilbert-diagonal",
    };
    return names;
}

/// Builds a named system with its suggested defaults. Construction is pure:
/// the same name always yields an identical entry.
inline GalleryEntry gallery_build(const std::string& name) {
    if (name == "sierpinski") {
        // Three half-scale similitudes toward the triangle vertices. The
        // default start sits at the centroid, inside the central hole, so a
        // zero burn-in tail is visibly off the attractor.
        SpaceModel space = SpaceModel::euclidean(2);
        double h = std::sqrt(3.0) / 2.0;
        std::vector<MapSpec> maps;
        for (auto [vx, vy] : {std::pair{0.0, 0.0}, {1.0, 0.0}, {0.5, h}})
            maps.push_back(MapSpec::affine({0.5, 0.0, 0.0, 0.5}, {vx / 2.0, vy / 2.0}));
        GalleryDefaults d;
        d.x0 = {0.5, std::sqrt(3.0) / 6.0};
        d.n_steps = 100000;
        d.burn_in_ladder = {0, 100, 1000, 10000};
        d.eps = 0x1p-9;
        d.tol = 0.02;
        return {name, IFSSystem(space, std::move(maps), name), d,
                "three half-scale contractions toward the vertices of an equilateral triangle"};
    }
    if (name == "circle-rotation") {
        // Identity plus rotation by the golden-ratio angle. Irrational
        // rotation: every orbit is dense, the whole circle attracts.
        SpaceModel space = SpaceModel::circle();
        double angle = two_pi * (std::sqrt(5.0) - 1.0) / 2.0;
        std::vector<MapSpec> maps{MapSpec::identity(), MapSpec::rotation(angle)};
        GalleryDefaults d;
        d.x0 = {0.0};
        d.n_steps = 1000000;
        d.burn_in_ladder = {0, 100, 1000};
        d.eps = 1e-4;
        d.tol = 0.01;
        return {name, IFSSystem(space, std::move(maps), name), d,
                "identity and an irrational (golden angle) rotation; the attractor is the whole circle"};
    }
    if (name == "projective-bv") {
        // Two invertible matrices acting on homogeneous triples.
        SpaceModel space = SpaceModel::projective2();
        std::vector<MapSpec> maps{
            MapSpec::projective({41.0, -19.0, 19.0, -19.0, 41.0, 19.0, 19.0, 19.0, 41.0}),
            MapSpec::projective({-10.0, -1.0, 19.0, -10.0, 21.0, 1.0, 10.0, 10.0, 10.0}),
        };
        GalleryDefaults d;
        d.x0 = {1.0, 1.0, 1.0};
        d.n_steps = 100000;
        d.burn_in_ladder = {0, 100, 1000, 10000};
        d.eps = 0x1p-10;
        d.tol = 0.02;
        return {name, IFSSystem(space, std::move(maps), name), d,
                "a pair of invertible 3x3 matrices acting on the projective plane"};
    }
    if (name == "two-arrows-maps") {
        // Base-2 digit maps plus the flip (x, j) -> (1-x, 1-j) on the two
        // unit segments j = 0, 1.
        SpaceModel space = SpaceModel::euclidean(2);
        std::vector<MapSpec> maps{MapSpec::builtin_map(BuiltinMap::two_arrows_1),
                                  MapSpec::builtin_map(BuiltinMap::two_arrows_2),
                                  MapSpec::builtin_map(BuiltinMap::two_arrows_3)};
        GalleryDefaults d;
        d.x0 = {1.0 / 3.0, 0.0};
        d.n_steps = 100000;
        d.burn_in_ladder = {0, 100, 1000, 10000};
        d.eps = 0x1p-9;
        d.tol = 0.02;
        return {name, IFSSystem(space, std::move(maps), name), d,
                "halving maps and an end-to-end flip on two stacked unit segments"};
    }
    if (name == "successor-compactification") {
        // Single map pushing the embedded naturals toward their limit point
        // at angle 0. Every single orbit converges to the pole, yet the
        // iterated images of sets keep their distance; see the analysis
        // diagnostics.
        SpaceModel space = SpaceModel::circle();
        std::vector<MapSpec> maps{MapSpec::builtin_map(BuiltinMap::successor_compactification)};
        GalleryDefaults d;
        d.x0 = {successor_embed(1.0)};
        d.n_steps = 60;
        d.burn_in_ladder = {0, 10};
        d.eps = 1e-9;
        d.tol = 0.05;
        return {name, IFSSystem(space, std::move(maps), name), d,
                "the step map n -> n+1 on the one-point compactification of the naturals, "
                "embedded in the circle"};
    }
    if (name == "hilbert-diagonal") {
        // Diagonal contraction-per-coordinate with factors 1 - 1/(i+1),
        // which approach 1; truncated to 256 coordinates.
        SpaceModel space = SpaceModel::sequence(256);
        std::vector<MapSpec> maps{MapSpec::builtin_map(BuiltinMap::hilbert_diagonal)};
        GalleryDefaults d;
        d.x0 = std::vector<double>(256, 0.0);
        d.x0[0] = 1.0;
        d.n_steps = 2000;
        d.burn_in_ladder = {0, 100};
        d.eps = 1e-3;
        d.tol = 0.05;
        return {name, IFSSystem(space, std::move(maps), name), d,
                "coordinatewise decay with factors approaching 1 on truncated square-summable "
                "sequences"};
    }
    std::string msg = "unknown system '" + name + "'; valid names:";
    for (const std::string& n : gallery_names()) msg += " " + n;
    throw std::invalid_argument(msg);
}

}  // namespace chaoscope
