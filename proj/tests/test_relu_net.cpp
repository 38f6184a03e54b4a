#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "pwlnet/relu_net.hpp"
#include "pwlnet/rng.hpp"

using namespace pwlnet;

namespace {

// 1 -> 3 -> 2 -> 1, arbitrary but fixed entries
ReluNetwork small_net() {
    std::vector<AffineLayer> layers;
    layers.push_back(AffineLayer{{{1.0}, {-2.0}, {0.5}}, {0.0, 1.0, -0.25}});
    layers.push_back(AffineLayer{{{1.0, 1.0, 0.0}, {0.0, -1.0, 2.0}}, {0.1, -0.2}});
    layers.push_back(AffineLayer{{{3.0, -1.0}}, {0.5}});
    return ReluNetwork(1, std::move(layers));
}

ReluNetwork relu_of_x() {
    return ReluNetwork(1, {AffineLayer{{{1.0}}, {0.0}}, AffineLayer{{{1.0}}, {0.0}}});
}

ReluNetwork relu_of_minus_x() {
    return ReluNetwork(1, {AffineLayer{{{-1.0}}, {0.0}}, AffineLayer{{{1.0}}, {0.0}}});
}

}  // namespace

TEST_CASE("layer shape validation") {
    CHECK_THROWS_AS(AffineLayer{}.validate(), ValidationError);
    CHECK_THROWS_AS((AffineLayer{{{1.0}, {2.0, 3.0}}, {0.0, 0.0}}).validate(),
                    ValidationError);
    CHECK_THROWS_AS((AffineLayer{{{1.0}}, {0.0, 0.0}}).validate(), ValidationError);

    AffineLayer l{{{2.0, -1.0}}, {1.0}};
    l.validate();
    CHECK(l.in_dim() == 2);
    CHECK(l.out_dim() == 1);
    CHECK(l.apply({3.0, 4.0})[0] == doctest::Approx(3.0));
}

TEST_CASE("network shape validation") {
    std::vector<AffineLayer> bad;
    bad.push_back(AffineLayer{{{1.0}}, {0.0}});
    bad.push_back(AffineLayer{{{1.0, 1.0}}, {0.0}});
    CHECK_THROWS_AS(ReluNetwork(1, std::move(bad)), ValidationError);
    CHECK_THROWS_AS(ReluNetwork(1, std::vector<AffineLayer>{}), ValidationError);

    ReluNetwork n = small_net();
    CHECK(n.input_dim() == 1);
    CHECK(n.output_dim() == 1);
    CHECK(n.depth() == 2);
    CHECK(n.max_width() == 3);
    CHECK(n.architecture().hidden_widths == std::vector<std::size_t>{3, 2});
}

TEST_CASE("parameter and capacity counts") {
    ReluNetwork n = small_net();
    // (1+1)*3 + (3+1)*2 + (2+1)*1
    CHECK(param_count(n) == 17);
    // hidden layers count weights+biases, the read-out only its fan-in
    CHECK(shatter_count(n) == 16);
}

TEST_CASE("eval matches a hand computation") {
    ReluNetwork n = small_net();
    // x=1: h1=relu({1,-1,0.25})={1,0,0.25}; h2=relu({1.1,0.3}); y=3.3-0.3+0.5
    CHECK(n.eval1(1.0) == doctest::Approx(3.5));
    std::vector<double> out = n.eval({1.0});
    REQUIRE(out.size() == 1);
    CHECK(out[0] == doctest::Approx(3.5));
    CHECK_THROWS_AS(n.eval({1.0, 2.0}), ValidationError);
}

TEST_CASE("eval_batch agrees with eval across the chunk boundary") {
    ReluNetwork n = small_net();
    Rng r(5);
    std::vector<double> xs(600);
    for (auto& x : xs) x = r.uniform(-2.0, 2.0);
    std::vector<double> ys = n.eval_batch(xs, xs.size());
    REQUIRE(ys.size() == xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        CHECK(ys[i] == doctest::Approx(n.eval1(xs[i])).epsilon(1e-12));
    CHECK_THROWS_AS(n.eval_batch(xs, xs.size() + 1), ValidationError);
}

TEST_CASE("serial composition fuses the junction affinely") {
    // inner ends in read-out 2h+1, outer starts with 3u-2: fused row is 6h+1
    ReluNetwork inner(1, {AffineLayer{{{1.0}}, {0.0}}, AffineLayer{{{2.0}}, {1.0}}});
    ReluNetwork outer(1, {AffineLayer{{{3.0}}, {-2.0}}, AffineLayer{{{1.0}}, {0.0}}});
    ReluNetwork c = compose_serial(outer, inner);
    CHECK(c.depth() == 2);
    CHECK(c.layers()[1].weights == std::vector<std::vector<double>>{{6.0}});
    CHECK(c.layers()[1].biases == std::vector<double>{1.0});
    for (double x : {-3.0, -0.5, 0.0, 0.7, 2.0})
        CHECK(c.eval1(x) == doctest::Approx(outer.eval1(inner.eval1(x))));

    ReluNetwork two_out(1, {AffineLayer{{{1.0}}, {0.0}},
                            AffineLayer{{{1.0}, {-1.0}}, {0.0, 0.0}}});
    CHECK_THROWS_AS(compose_serial(outer, two_out), ValidationError);
}

TEST_CASE("extend_depth carries values through extra relu layers") {
    ReluNetwork n = small_net();
    SUBCASE("signed carry uses a mirrored pair") {
        ReluNetwork e = extend_depth(n, 2);
        CHECK(e.depth() == n.depth() + 2);
        for (double x : {-1.0, -0.3, 0.0, 0.4, 1.5})
            CHECK(e.eval1(x) == doctest::Approx(n.eval1(x)).epsilon(1e-12));
    }
    SUBCASE("nonnegative outputs carry on a single channel") {
        ReluNetwork abs1(1, {AffineLayer{{{1.0}, {-1.0}}, {0.0, 0.0}},
                             AffineLayer{{{1.0, 1.0}}, {0.0}}});
        ReluNetwork e = extend_depth(abs1, 3, true);
        CHECK(e.depth() == abs1.depth() + 3);
        CHECK(e.max_width() == 2);
        for (double x : {-2.0, -0.1, 0.0, 0.9})
            CHECK(e.eval1(x) == doctest::Approx(std::fabs(x)));
    }
    SUBCASE("zero extra layers is the identity") {
        ReluNetwork e = extend_depth(n, 0);
        CHECK(e.depth() == n.depth());
        CHECK(e.eval1(0.3) == doctest::Approx(n.eval1(0.3)));
    }
}

TEST_CASE("parallel_stack shares inputs across branches") {
    ReluNetwork a = relu_of_x();
    ReluNetwork b = relu_of_minus_x();

    SUBCASE("distinct inputs") {
        ReluNetwork s = parallel_stack<double>({a, b}, {{0}, {1}}, 2);
        CHECK(s.input_dim() == 2);
        CHECK(s.output_dim() == 2);
        std::vector<double> y = s.eval({0.7, 0.4});
        CHECK(y[0] == doctest::Approx(0.7));
        CHECK(y[1] == doctest::Approx(0.0));
    }
    SUBCASE("shared input feeds both branches") {
        ReluNetwork s = parallel_stack<double>({a, b}, {{0}, {0}}, 1);
        CHECK(s.input_dim() == 1);
        std::vector<double> y = s.eval({-0.6});
        CHECK(y[0] == doctest::Approx(0.0));
        CHECK(y[1] == doctest::Approx(0.6));
    }
    SUBCASE("depths are padded to match") {
        ReluNetwork deep = extend_depth(a, 2);
        ReluNetwork s = parallel_stack<double>({deep, b}, {{0}, {0}}, 1);
        CHECK(s.depth() == deep.depth());
        std::vector<double> y = s.eval({0.5});
        CHECK(y[0] == doctest::Approx(0.5));
        CHECK(y[1] == doctest::Approx(0.0));
    }
    SUBCASE("bad maps are rejected") {
        CHECK_THROWS_AS(parallel_stack<double>({a, b}, {{0}}, 1), ValidationError);
        CHECK_THROWS_AS(parallel_stack<double>({a, b}, {{0}, {2}}, 2), ValidationError);
    }
}

TEST_CASE("sum_parallel adds scalar networks with coefficients") {
    ReluNetwork s = sum_parallel(relu_of_x(), relu_of_minus_x(), 2.0, -3.0);
    // 2*relu(x) - 3*relu(-x)
    CHECK(s.eval1(1.0) == doctest::Approx(2.0));
    CHECK(s.eval1(-1.0) == doctest::Approx(-3.0));
    CHECK(s.input_dim() == 1);
    CHECK(s.output_dim() == 1);
}

TEST_CASE("affine_network wraps a bare map with no hidden layer") {
    ReluNetwork f = affine_network(AffineLayer{{{2.5}}, {-1.0}});
    CHECK(f.depth() == 0);
    for (double x : {-2.0, 0.0, 3.0})
        CHECK(f.eval1(x) == doctest::Approx(2.5 * x - 1.0));
}
