#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "pwlnet/shatter.hpp"
#include "pwlnet/to_cpwl.hpp"

using namespace pwlnet;

TEST_CASE("sign convention puts zero on the positive side") {
    CHECK(sign_of(0.0) == 1);
    CHECK(sign_of(-0.0) == 1);
    CHECK(sign_of(1e-300) == 1);
    CHECK(sign_of(-1e-300) == -1);
}

TEST_CASE("mesh parameter is the smallest N with capacity 2N^2 >= n+1") {
    CHECK(shatter_mesh_parameter(1) == 1);
    CHECK(shatter_mesh_parameter(8) == 3);
    CHECK(shatter_mesh_parameter(16) == 3);
    CHECK(shatter_mesh_parameter(32) == 5);
    CHECK(shatter_mesh_parameter(64) == 6);
    CHECK(shatter_mesh_parameter(100) == 8);
    CHECK(shatter_mesh_parameter(128) == 9);
    CHECK(shatter_mesh_parameter(256) == 12);
}

TEST_CASE("realize_pattern interpolates the signs exactly") {
    std::vector<double> pts{0.25, 0.75};
    std::vector<int> signs{1, -1};
    ReluNetwork net = realize_pattern(pts, signs);
    CHECK(net.depth() == 3);
    CHECK(net.eval1(0.25) == doctest::Approx(1.0));
    CHECK(net.eval1(0.75) == doctest::Approx(-1.0));
    CHECK(sign_of(net.eval1(0.25)) == 1);
    CHECK(sign_of(net.eval1(0.75)) == -1);
    // the realizing function is flat outside the outermost points
    CHECK(net.eval1(0.05) == doctest::Approx(1.0));
    CHECK(net.eval1(0.95) == doctest::Approx(-1.0));
}

TEST_CASE("realize_pattern validates points and signs") {
    CHECK_THROWS_AS(realize_pattern({}, {}), ValidationError);
    CHECK_THROWS_AS(realize_pattern({0.5}, {1, -1}), ValidationError);
    CHECK_THROWS_AS(realize_pattern({0.0, 0.5}, {1, 1}), ValidationError);
    CHECK_THROWS_AS(realize_pattern({0.5, 1.0}, {1, 1}), ValidationError);
    CHECK_THROWS_AS(realize_pattern({0.5, 0.4}, {1, 1}), ValidationError);
    CHECK_THROWS_AS(realize_pattern({0.4, 0.5}, {1, 0}), ValidationError);
}

TEST_CASE("shatter experiment realizes every random pattern") {
    ShatterReport rep = run_shatter_experiment(8, 1e-3, 5, 404);
    REQUIRE(rep.points.size() == 8);
    REQUIRE(rep.trials.size() == 5);
    CHECK(rep.successes == 5);
    for (const ShatterTrial& t : rep.trials) {
        CHECK(t.success);
        CHECK(t.n_points == 8);
        // n=8 -> N=3 -> two-layer width 10 deepened over 2 stages
        CHECK(t.shatter_count == 574);
        CHECK(t.bound == doctest::Approx(8.0 / 6.0));
        CHECK(static_cast<double>(t.shatter_count) >= t.bound);
    }
    CHECK_THROWS_AS(run_shatter_experiment(8, 1e-3, 0, 404), ValidationError);
}

TEST_CASE("growth rows carry the architecture capacity per point count") {
    auto rows = run_growth_experiment({16, 32}, 1e-3, 505);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].n_points == 16);
    CHECK(rows[0].shatter_count == 574);
    CHECK(rows[0].success);
    CHECK(rows[1].n_points == 32);
    CHECK(rows[1].shatter_count == 1294);
    CHECK(rows[1].success);
}
