#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "support.hpp"

using namespace chaoscope;
using Catch::Matchers::WithinAbs;

TEST_CASE("euclidean distance") {
    SpaceModel e2 = SpaceModel::euclidean(2);
    SpacePoint a = canonicalize(e2, {0.0, 0.0});
    SpacePoint b = canonicalize(e2, {3.0, 4.0});
    REQUIRE(distance(e2, a, b) == 5.0);
    REQUIRE(distance(e2, a, a) == 0.0);
}

TEST_CASE("circle arc distance wraps around the seam") {
    SpaceModel c = SpaceModel::circle();
    SpacePoint a = canonicalize(c, {0.1});
    SpacePoint b = canonicalize(c, {6.2});
    // arc runs across the seam: 2*pi - 6.1
    REQUIRE_THAT(distance(c, a, b), WithinAbs(0.18318530717958598, 1e-15));
    REQUIRE(distance(c, a, b) == distance(c, b, a));
}

TEST_CASE("projective distance between orthogonal lines is pi/2") {
    SpaceModel p = SpaceModel::projective2();
    SpacePoint e1 = canonicalize(p, {1.0, 0.0, 0.0});
    SpacePoint e2 = canonicalize(p, {0.0, 1.0, 0.0});
    REQUIRE_THAT(distance(p, e1, e2), WithinAbs(std::numbers::pi / 2.0, 1e-12));
}

TEST_CASE("projective distance ignores the representative scaling") {
    SpaceModel p = SpaceModel::projective2();
    SpacePoint a = canonicalize(p, {1.0, 1.0, 1.0});
    SpacePoint b = canonicalize(p, {2.0, 2.0, 2.0});
    REQUIRE(a == b);
    REQUIRE(distance(p, a, b) == 0.0);
}

TEST_CASE("circle canonical form reduces mod 2*pi") {
    SpaceModel c = SpaceModel::circle();
    REQUIRE_THAT(canonicalize(c, {7.0}).coords[0], WithinAbs(7.0 - two_pi, 1e-15));
    REQUIRE(canonicalize(c, {0.0}).coords[0] == 0.0);
    SECTION("tiny negative angles land exactly on zero, not 2*pi") {
        double a = canonicalize(c, {-1e-18}).coords[0];
        REQUIRE(a >= 0.0);
        REQUIRE(a < two_pi);
        REQUIRE_FALSE(std::signbit(a));
    }
    SECTION("negative angles wrap into range") {
        REQUIRE_THAT(canonicalize(c, {-0.5}).coords[0], WithinAbs(two_pi - 0.5, 1e-15));
    }
}

TEST_CASE("projective canonical form") {
    SpaceModel p = SpaceModel::projective2();
    SECTION("sign rule: first nonzero coordinate positive") {
        SpacePoint q = canonicalize(p, {-2.0, 0.0, 0.0});
        REQUIRE(q.coords == std::vector<double>{1.0, 0.0, 0.0});
    }
    SECTION("unit norm with exact rational coordinates") {
        SpacePoint q = canonicalize(p, {0.0, -3.0, 4.0});
        REQUIRE(q.coords == std::vector<double>{0.0, 0.6, -0.8});
    }
    SECTION("zero vector rejected") {
        REQUIRE_THROWS_AS(canonicalize(p, {0.0, 0.0, 0.0}), std::invalid_argument);
    }
    SECTION("norm invariant") {
        std::mt19937_64 gen(11);
        for (int i = 0; i < 200; ++i) {
            SpacePoint q = testsupport::random_point(p, gen);
            double n2 = q.coords[0] * q.coords[0] + q.coords[1] * q.coords[1] +
                        q.coords[2] * q.coords[2];
            REQUIRE_THAT(std::sqrt(n2), WithinAbs(1.0, 1e-12));
        }
    }
}

TEST_CASE("canonicalize scrubs negative zero") {
    SpaceModel e2 = SpaceModel::euclidean(2);
    SpacePoint q = canonicalize(e2, {-0.0, 1.0});
    REQUIRE_FALSE(std::signbit(q.coords[0]));
    REQUIRE(q == canonicalize(e2, {0.0, 1.0}));
}

TEST_CASE("canonicalize is bit-idempotent", "[property]") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> wild(-100.0, 100.0);
    for (const SpaceModel& space : testsupport::all_spaces()) {
        for (int i = 0; i < 500; ++i) {
            std::vector<double> raw(static_cast<std::size_t>(space.dim));
            for (double& x : raw) x = wild(gen);
            if (space.kind == SpaceKind::projective2 &&
                std::abs(raw[0]) + std::abs(raw[1]) + std::abs(raw[2]) == 0.0)
                continue;
            SpacePoint once = canonicalize(space, raw);
            SpacePoint twice = canonicalize(space, once);
            REQUIRE(once == twice);
        }
    }
}

TEST_CASE("metric axioms", "[property]") {
    std::mt19937_64 gen(13);
    for (const SpaceModel& space : testsupport::all_spaces()) {
        for (int i = 0; i < 300; ++i) {
            SpacePoint a = testsupport::random_point(space, gen);
            SpacePoint b = testsupport::random_point(space, gen);
            SpacePoint c = testsupport::random_point(space, gen);
            REQUIRE(distance(space, a, a) == 0.0);
            REQUIRE(distance(space, a, b) >= 0.0);
            REQUIRE(distance(space, a, b) == distance(space, b, a));
            REQUIRE(distance(space, a, c) <= distance(space, a, b) + distance(space, b, c) + 1e-12);
        }
    }
}

TEST_CASE("projective scaling of a representative does not move the point", "[property]") {
    SpaceModel p = SpaceModel::projective2();
    std::mt19937_64 gen(17);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        std::vector<double> raw{g(gen), g(gen), g(gen)};
        if (std::abs(raw[0]) + std::abs(raw[1]) + std::abs(raw[2]) < 1e-6) continue;
        SpacePoint base = canonicalize(p, raw);
        for (double lam : {-1.0, 0.5, -4.0}) {
            // dyadic scalings cancel exactly in the pivot division
            std::vector<double> scaled{lam * raw[0], lam * raw[1], lam * raw[2]};
            REQUIRE(canonicalize(p, scaled) == base);
        }
        for (double lam : {0.01, 100.0, -3.7}) {
            std::vector<double> scaled{lam * raw[0], lam * raw[1], lam * raw[2]};
            REQUIRE_THAT(distance(p, canonicalize(p, scaled), base), WithinAbs(0.0, 1e-12));
        }
    }
}

TEST_CASE("chart projection") {
    SpaceModel p = SpaceModel::projective2();
    SECTION("generic point") {
        SpacePoint q = canonicalize(p, {41.0, 41.0, 79.0});
        auto xy = chart_project(q);
        REQUIRE(xy.has_value());
        REQUIRE_THAT((*xy)[0], WithinAbs(41.0 / 79.0, 1e-12));
        REQUIRE_THAT((*xy)[1], WithinAbs(41.0 / 79.0, 1e-12));
    }
    SECTION("line at infinity is clipped") {
        REQUIRE_FALSE(chart_project(canonicalize(p, {1.0, 0.0, 0.0})).has_value());
    }
    SECTION("origin of the chart") {
        auto xy = chart_project(canonicalize(p, {0.0, 0.0, 1.0}));
        REQUIRE(xy.has_value());
        REQUIRE((*xy)[0] == 0.0);
        REQUIRE((*xy)[1] == 0.0);
    }
}

TEST_CASE("input validation") {
    SpaceModel e2 = SpaceModel::euclidean(2);
    REQUIRE_THROWS_AS(canonicalize(e2, {1.0}), std::invalid_argument);
    REQUIRE_THROWS_AS(canonicalize(e2, {1.0, std::nan("")}), std::invalid_argument);
    REQUIRE_THROWS_AS(canonicalize(e2, {1.0, std::numeric_limits<double>::infinity()}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(SpaceModel::euclidean(0), std::invalid_argument);
    REQUIRE_THROWS_AS(SpaceModel::sequence(0), std::invalid_argument);
    SpacePoint a = canonicalize(e2, {0.0, 0.0});
    SpacePoint bad{{1.0, 2.0, 3.0}};
    REQUIRE_THROWS_AS(distance(e2, a, bad), std::invalid_argument);
    REQUIRE_THROWS_AS(chart_project(a), std::invalid_argument);
}
