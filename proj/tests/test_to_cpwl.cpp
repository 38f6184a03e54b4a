#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "pwlnet/ramp.hpp"
#include "pwlnet/rng.hpp"
#include "pwlnet/to_cpwl.hpp"

using namespace pwlnet;

TEST_CASE("two composed hats fold the domain twice") {
    // hat(x) = s(2x) - 2 s(2x-1); feeding it into itself doubles the kinks
    ReluNetwork net(1, {AffineLayer{{{2.0}, {2.0}}, {0.0, -1.0}},
                        AffineLayer{{{2.0, -4.0}, {2.0, -4.0}}, {0.0, -1.0}},
                        AffineLayer{{{1.0, -2.0}}, {0.0}}});
    CpwlFunction f = to_cpwl(net);
    CHECK(f.grid().nodes() == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    CHECK(f.values() == std::vector<double>{0.0, 1.0, 0.0, 1.0, 0.0});
}

TEST_CASE("a pair of shifted relus recovers its plateau breakpoints") {
    ReluNetwork net(1, {AffineLayer{{{1.0}, {1.0}}, {-1.0 / 3.0, -2.0 / 3.0}},
                        AffineLayer{{{1.0, -1.0}}, {0.0}}});
    CpwlFunction f = to_cpwl(net);
    CHECK(f.grid().nodes() == std::vector<double>{0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0});
    CHECK(f.value(0) == 0.0);
    CHECK(f.value(1) == 0.0);
    CHECK(f.value(2) == doctest::Approx(1.0 / 3.0));
    CHECK(f.value(3) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("network to cpwl round-trips rendered ramp sums node by node") {
    Rng rng(909);
    for (int rep = 0; rep < 20; ++rep) {
        std::size_t interior = 1 + rng.index(12);
        std::vector<double> anchors{0.0};
        for (double p : sample_separated_points(rng, interior, 1e-2))
            anchors.push_back(p);
        RampSum r;
        r.lo = 0.0;
        r.hi = 1.0;
        r.anchors = std::move(anchors);
        r.bias = rng.uniform(-2.0, 2.0);
        for (std::size_t j = 0; j < r.anchors.size(); ++j) {
            // weights bounded away from zero so every kink survives pruning
            double w = rng.uniform(0.1, 3.0) * static_cast<double>(rng.sign());
            r.weights.push_back(w);
        }
        CpwlFunction direct = prune_collinear(ramp_to_cpwl(r));
        CpwlFunction via_net = to_cpwl(render_network(r));
        REQUIRE(via_net.grid().node_count() == direct.grid().node_count());
        CHECK(via_net.grid().nodes() == direct.grid().nodes());
        CHECK(via_net.values() == direct.values());
    }
}

TEST_CASE("collinear kinks vanish from the recovered function") {
    // w=0 neuron and a dead neuron leave no trace
    ReluNetwork net(1, {AffineLayer{{{1.0}, {1.0}, {-1.0}}, {-0.5, -0.25, -2.0}},
                        AffineLayer{{{1.0, 0.0, 5.0}}, {0.0}}});
    CpwlFunction f = to_cpwl(net);
    CHECK(f.grid().nodes() == std::vector<double>{0.0, 0.5, 1.0});
}

TEST_CASE("to_cpwl distance of an interpolating ramp is rounding-level") {
    CpwlFunction target(Grid(std::vector<double>{0.0, 0.3, 0.7, 1.0}),
                        std::vector<double>{1.0, -0.5, 2.0, 0.0});
    RampSum r = build_ramp_interpolant(target.grid().nodes(), target.values(), 0.0, 1.0);
    CHECK(network_cpwl_distance(render_network(r), target) <= 1e-12);
}

TEST_CASE("to_cpwl validates its arguments") {
    ReluNetwork two_out(1, {AffineLayer{{{1.0}}, {0.0}},
                            AffineLayer{{{1.0}, {-1.0}}, {0.0, 0.0}}});
    CHECK_THROWS_AS(to_cpwl(two_out, 0.0, 1.0), ValidationError);
    ReluNetwork ok(1, {AffineLayer{{{1.0}}, {0.0}}, AffineLayer{{{1.0}}, {0.0}}});
    CHECK_THROWS_AS(to_cpwl(ok, 1.0, 1.0), ValidationError);
    CHECK_THROWS_AS(to_cpwl(ok, 1.0, 0.0), ValidationError);
}

TEST_CASE("domains that cut through kinks keep only interior ones") {
    // relu(x - 0.5) seen on [0.6, 1.0] is affine: one segment, no kinks
    ReluNetwork net(1, {AffineLayer{{{1.0}}, {-0.5}}, AffineLayer{{{1.0}}, {0.0}}});
    CpwlFunction f = to_cpwl(net, 0.6, 1.0);
    CHECK(f.grid().node_count() == 2);
    CHECK(f.value(0) == doctest::Approx(0.1));
    CHECK(f.value(1) == doctest::Approx(0.5));

    CpwlFunction g = to_cpwl(net, 0.0, 1.0);
    CHECK(g.grid().nodes() == std::vector<double>{0.0, 0.5, 1.0});
}
