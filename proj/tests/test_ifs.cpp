#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "support.hpp"

using namespace chaoscope;
using Catch::Matchers::WithinAbs;

namespace {

IFSSystem sierpinski() { return gallery_build("sierpinski").system; }

PointCloud single(const SpaceModel& space, std::vector<double> coords) {
    return PointCloud::from_points(space, {canonicalize(space, std::move(coords))});
}

// k-fold map images without any decimation, as a reference enumeration.
PointCloud exact_iterates(const IFSSystem& sys, PointCloud s, long long k) {
    for (long long i = 0; i < k; ++i) s = hutchinson(sys, s);
    return s;
}

}  // namespace

TEST_CASE("affine maps evaluate exactly on dyadic inputs") {
    IFSSystem sys = sierpinski();
    SpacePoint origin = canonicalize(sys.space, {0.0, 0.0});
    SpacePoint a = apply_map(sys.space, sys.maps[0], origin);
    SpacePoint b = apply_map(sys.space, sys.maps[1], origin);
    SpacePoint c = apply_map(sys.space, sys.maps[2], origin);
    REQUIRE(a.coords == std::vector<double>{0.0, 0.0});
    REQUIRE(b.coords == std::vector<double>{0.5, 0.0});
    REQUIRE(c.coords == std::vector<double>{0.25, std::sqrt(3.0) / 4.0});
}

TEST_CASE("identity map returns its input bit for bit") {
    std::mt19937_64 gen(3);
    for (const SpaceModel& space : testsupport::all_spaces()) {
        MapSpec id = MapSpec::identity();
        for (int i = 0; i < 50; ++i) {
            SpacePoint p = testsupport::random_point(space, gen);
            REQUIRE(apply_map(space, id, p) == p);
        }
    }
}

TEST_CASE("rotations") {
    SECTION("circle rotation adds the angle mod 2*pi") {
        SpaceModel c = SpaceModel::circle();
        MapSpec rot = MapSpec::rotation(1.0);
        SpacePoint p = canonicalize(c, {6.0});
        REQUIRE_THAT(apply_map(c, rot, p).coords[0], WithinAbs(7.0 - two_pi, 1e-15));
    }
    SECTION("planar rotation by pi/2") {
        SpaceModel e2 = SpaceModel::euclidean(2);
        MapSpec rot = MapSpec::rotation(std::numbers::pi / 2.0);
        SpacePoint p = apply_map(e2, rot, canonicalize(e2, {1.0, 0.0}));
        REQUIRE_THAT(p.coords[0], WithinAbs(0.0, 1e-15));
        REQUIRE_THAT(p.coords[1], WithinAbs(1.0, 1e-15));
    }
}

TEST_CASE("projective matrix action") {
    SpaceModel p = SpaceModel::projective2();
    IFSSystem sys = gallery_build("projective-bv").system;
    SECTION("frozen determinants") {
        REQUIRE(det3(sys.maps[0].matrix) == 10800.0);
        REQUIRE(det3(sys.maps[1].matrix) == -8000.0);
    }
    SECTION("image of the diagonal line under the first matrix") {
        SpacePoint u = canonicalize(p, {1.0, 1.0, 1.0});
        SpacePoint v = apply_map(p, sys.maps[0], u);
        // rows sum to (41, 41, 79)
        REQUIRE_THAT(distance(p, v, canonicalize(p, {41.0, 41.0, 79.0})), WithinAbs(0.0, 1e-12));
    }
    SECTION("representative scaling does not change the image") {
        std::mt19937_64 gen(5);
        for (int i = 0; i < 100; ++i) {
            SpacePoint u = testsupport::random_point(p, gen);
            std::vector<double> up(u.coords), um(u.coords);
            for (double& x : um) x = -x;
            SpacePoint iu = apply_map(p, sys.maps[1], u);
            REQUIRE(apply_map(p, sys.maps[1], canonicalize(p, um)) == iu);
            for (double& x : up) x *= 0.01;
            REQUIRE_THAT(distance(p, apply_map(p, sys.maps[1], canonicalize(p, up)), iu),
                         WithinAbs(0.0, 1e-12));
        }
    }
}

TEST_CASE("two-arrows maps") {
    SpaceModel e2 = SpaceModel::euclidean(2);
    SpacePoint p = canonicalize(e2, {0.25, 0.0});
    REQUIRE(apply_map(e2, MapSpec::builtin_map(BuiltinMap::two_arrows_1), p).coords ==
            std::vector<double>{0.125, 0.0});
    REQUIRE(apply_map(e2, MapSpec::builtin_map(BuiltinMap::two_arrows_2), p).coords ==
            std::vector<double>{0.625, 0.0});
    REQUIRE(apply_map(e2, MapSpec::builtin_map(BuiltinMap::two_arrows_3), p).coords ==
            std::vector<double>{0.75, 1.0});
}

TEST_CASE("diagonal sequence map") {
    SpaceModel s4 = SpaceModel::sequence(4);
    MapSpec diag = MapSpec::builtin_map(BuiltinMap::hilbert_diagonal);
    SECTION("first coordinate halves exactly") {
        SpacePoint e1 = canonicalize(s4, {1.0, 0.0, 0.0, 0.0});
        REQUIRE(apply_map(s4, diag, e1).coords == std::vector<double>{0.5, 0.0, 0.0, 0.0});
    }
    SECTION("coordinate i scales by 1 - 1/(i+1)") {
        SpacePoint x = canonicalize(s4, {1.0, 1.0, 1.0, 1.0});
        SpacePoint y = apply_map(s4, diag, x);
        REQUIRE(y.coords[0] == 0.5);
        REQUIRE_THAT(y.coords[1], WithinAbs(2.0 / 3.0, 1e-15));
        REQUIRE(y.coords[2] == 0.75);
        REQUIRE_THAT(y.coords[3], WithinAbs(4.0 / 5.0, 1e-15));
    }
}

TEST_CASE("successor map walks the embedded naturals") {
    SpaceModel c = SpaceModel::circle();
    MapSpec succ = MapSpec::builtin_map(BuiltinMap::successor_compactification);
    SECTION("embedding basics") {
        REQUIRE_THAT(successor_embed(1.0), WithinAbs(std::numbers::pi / 2.0, 1e-15));
        REQUIRE(successor_embed(std::numeric_limits<double>::infinity()) == 0.0);
        REQUIRE_THROWS_AS(successor_embed(0.5), std::invalid_argument);
        REQUIRE_THROWS_AS(successor_embed(-3.0), std::invalid_argument);
    }
    SECTION("one step sends embed(n) exactly to embed(n+1)") {
        SpacePoint x{{successor_embed(1.0)}};
        for (int n = 1; n <= 50; ++n) {
            x = apply_map(c, succ, x);
            REQUIRE(x.coords[0] == successor_embed(static_cast<double>(n + 1)));
        }
    }
    SECTION("the limit point is fixed") {
        SpacePoint pole{{0.0}};
        REQUIRE(apply_map(c, succ, pole) == pole);
    }
}

TEST_CASE("nonexpansive maps do not increase distances", "[property]") {
    std::mt19937_64 gen(7);
    struct Case {
        SpaceModel space;
        MapSpec map;
    };
    std::vector<Case> cases{
        {SpaceModel::circle(), MapSpec::rotation(2.39996)},
        {SpaceModel::euclidean(2), MapSpec::rotation(0.77)},
        {SpaceModel::euclidean(3), MapSpec::identity()},
        {SpaceModel::sequence(16), MapSpec::builtin_map(BuiltinMap::hilbert_diagonal)},
        {SpaceModel::euclidean(2), MapSpec::builtin_map(BuiltinMap::two_arrows_3)},
    };
    for (const Case& tc : cases) {
        for (int i = 0; i < 1000; ++i) {
            SpacePoint x = testsupport::random_point(tc.space, gen);
            SpacePoint y = testsupport::random_point(tc.space, gen);
            double before = distance(tc.space, x, y);
            double after =
                distance(tc.space, apply_map(tc.space, tc.map, x), apply_map(tc.space, tc.map, y));
            REQUIRE(after <= before * (1.0 + 1e-12) + 1e-15);
        }
    }
}

TEST_CASE("half-scale similitudes contract by exactly one half", "[property]") {
    IFSSystem sys = sierpinski();
    std::mt19937_64 gen(9);
    for (int i = 0; i < 300; ++i) {
        SpacePoint x = testsupport::random_point(sys.space, gen);
        SpacePoint y = testsupport::random_point(sys.space, gen);
        double before = distance(sys.space, x, y);
        if (before == 0.0) continue;
        for (const MapSpec& m : sys.maps) {
            double after = distance(sys.space, apply_map(sys.space, m, x),
                                    apply_map(sys.space, m, y));
            REQUIRE_THAT(after / before, WithinAbs(0.5, 1e-12));
        }
    }
}

TEST_CASE("map/space compatibility is validated") {
    SpaceModel e2 = SpaceModel::euclidean(2);
    SpaceModel c = SpaceModel::circle();
    SpaceModel p = SpaceModel::projective2();
    auto reject = [](SpaceModel sp, MapSpec m) {
        REQUIRE_THROWS_AS(IFSSystem(sp, {std::move(m)}), std::invalid_argument);
    };
    reject(c, MapSpec::affine({1.0}, {0.0, 0.0}));                 // wrong space
    reject(e2, MapSpec::affine({1.0, 0.0, 0.0, 1.0}, {0.0}));      // offset arity
    reject(e2, MapSpec::affine({1.0, 0.0, 1.0}, {0.0, 0.0}));      // matrix arity
    reject(SpaceModel::euclidean(3), MapSpec::rotation(1.0));      // rotation needs the plane
    reject(e2, MapSpec::projective({1, 0, 0, 0, 1, 0, 0, 0, 1}));  // projective needs projective2
    reject(p, MapSpec::projective({1, 2, 3, 4, 5, 6, 7, 8, 9}));   // singular
    reject(e2, MapSpec::builtin_map(BuiltinMap::successor_compactification));
    reject(c, MapSpec::builtin_map(BuiltinMap::hilbert_diagonal));
    reject(c, MapSpec::builtin_map(BuiltinMap::two_arrows_1));
    REQUIRE_THROWS_AS(IFSSystem(e2, {}), std::invalid_argument);
}

TEST_CASE("hutchinson of a single point under the triangle maps") {
    IFSSystem sys = sierpinski();
    PointCloud s0 = single(sys.space, {0.0, 0.0});
    PointCloud w1 = hutchinson(sys, s0);
    REQUIRE(w1.size() == 3);
    REQUIRE(w1.points[0].coords == std::vector<double>{0.0, 0.0});
    REQUIRE(w1.points[1].coords == std::vector<double>{0.25, std::sqrt(3.0) / 4.0});
    REQUIRE(w1.points[2].coords == std::vector<double>{0.5, 0.0});
}

TEST_CASE("hutchinson under the identity-only system is the identity") {
    std::mt19937_64 gen(11);
    for (const SpaceModel& space : testsupport::all_spaces()) {
        IFSSystem sys(space, {MapSpec::identity()});
        PointCloud s = testsupport::random_cloud(space, gen);
        REQUIRE(hutchinson(sys, s) == s);
    }
}

TEST_CASE("hutchinson is additive and monotone over unions", "[property]") {
    std::mt19937_64 gen(13);
    for (const char* name : {"sierpinski", "circle-rotation", "projective-bv", "two-arrows-maps"}) {
        IFSSystem sys = gallery_build(name).system;
        for (int i = 0; i < 100; ++i) {
            PointCloud a = testsupport::random_cloud(sys.space, gen);
            PointCloud b = testsupport::random_cloud(sys.space, gen);
            PointCloud u = cloud_union(a, b);
            REQUIRE(hutchinson(sys, u) == cloud_union(hutchinson(sys, a), hutchinson(sys, b)));
            REQUIRE(is_subset(hutchinson(sys, a), hutchinson(sys, u)));
        }
    }
}

TEST_CASE("hutchinson validates the space") {
    IFSSystem sys = sierpinski();
    PointCloud wrong = single(SpaceModel::euclidean(3), {0.0, 0.0, 0.0});
    REQUIRE_THROWS_AS(hutchinson(sys, wrong), std::invalid_argument);
}

TEST_CASE("iterated set map with decimation") {
    IFSSystem sys = sierpinski();
    PointCloud s0 = single(sys.space, {0.0, 0.0});
    SECTION("k = 0 only decimates the seed") {
        REQUIRE(iterate_hutchinson(sys, s0, 0, 0x1p-10) == decimate(s0, 0x1p-10));
    }
    SECTION("negative k is rejected") {
        REQUIRE_THROWS_AS(iterate_hutchinson(sys, s0, -1, 0x1p-10), std::invalid_argument);
    }
    SECTION("three rounds stay within the decimation error of the exact images") {
        PointCloud approx = iterate_hutchinson(sys, s0, 3, 0x1p-10);
        PointCloud exact = exact_iterates(sys, s0, 3);
        REQUIRE(exact.size() == 27);
        REQUIRE(approx.size() == 27);
        double bound = 3.0 * 0x1p-10 * std::sqrt(2.0) / 2.0;
        REQUIRE(hausdorff(approx, exact) <= bound * (1.0 + 1e-9));
    }
}

TEST_CASE("deterministic attractor iteration") {
    SECTION("single contraction collapses to the fixed point") {
        SpaceModel e1 = SpaceModel::euclidean(1);
        IFSSystem sys(e1, {MapSpec::affine({0.5}, {0.0})});
        AttractorResult res = deterministic_attractor(sys, single(e1, {1.0}), 1e-3, 1e-3, 100);
        REQUIRE(res.report.converged);
        REQUIRE(res.cloud.size() == 1);
        // half-away rounding can stall one grid cell from the fixed point
        REQUIRE(std::abs(res.cloud.points[0].coords[0]) <= 1e-3 * (1.0 + 1e-12));
        REQUIRE(res.report.reference == "successive-iterates");
        for (std::size_t i = 0; i < res.report.ladder.size(); ++i)
            REQUIRE(res.report.ladder[i].k == static_cast<long long>(i + 1));
    }
    SECTION("triangle attractor is stable under one more application") {
        IFSSystem sys = sierpinski();
        PointCloud seed = single(sys.space, {0.0, 0.0});
        AttractorResult res = deterministic_attractor(sys, seed, 0x1p-9, 0x1p-8, 200);
        REQUIRE(res.report.converged);
        REQUIRE(res.cloud.size() > 1000);
        PointCloud next = decimate(hutchinson(sys, res.cloud), 0x1p-9);
        REQUIRE(hausdorff(res.cloud, next) <= 0x1p-8);
    }
    SECTION("unreachable tolerance reports non-convergence") {
        IFSSystem sys = gallery_build("circle-rotation").system;
        PointCloud seed = single(sys.space, {0.0});
        AttractorResult res = deterministic_attractor(sys, seed, 1e-4, 1e-15, 5);
        REQUIRE_FALSE(res.report.converged);
        REQUIRE(res.report.ladder.size() == 5);
    }
    SECTION("argument validation") {
        SpaceModel e1 = SpaceModel::euclidean(1);
        IFSSystem sys(e1, {MapSpec::affine({0.5}, {0.0})});
        REQUIRE_THROWS_AS(deterministic_attractor(sys, single(e1, {1.0}), 1e-3, 0.0),
                          std::invalid_argument);
        REQUIRE_THROWS_AS(deterministic_attractor(sys, single(e1, {1.0}), 1e-3, 1e-3, 0),
                          std::invalid_argument);
    }
}
