#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "pwlnet/cpwl.hpp"
#include "pwlnet/ramp.hpp"
#include "pwlnet/relu_net.hpp"
#include "pwlnet/to_cpwl.hpp"

namespace pwlnet {

/// Everything the two-layer compiler needs in one place: the target on a
/// blocks*block_size grid, the positivity shift, and the anchor skeleton.
/// `shifted` is values + shift with every entry >= 1, which keeps all
/// per-block profile lines oriented the same way.
template <class T>
struct CompilePlan {
    BasicGrid<T> grid;
    std::vector<T> values;
    std::size_t blocks = 0;
    std::size_t block_size = 0;
    T shift{0};
    std::vector<T> shifted;
    BlockAnchors<T> anchors;

    std::size_t anchor_slot(std::size_t node_index) const {
        auto it = std::lower_bound(anchors.node_index.begin(), anchors.node_index.end(),
                                   node_index);
        if (it == anchors.node_index.end() || *it != node_index)
            throw ValidationError("node is not an anchor");
        return static_cast<std::size_t>(it - anchors.node_index.begin());
    }
};

template <class T>
CompilePlan<T> make_compile_plan(const BasicCpwl<T>& target, std::size_t blocks,
                                 std::size_t block_size) {
    CompilePlan<T> p{target.grid(), target.values(), blocks, block_size,
                     T(0),          {},              {}};
    p.anchors = build_block_anchors(target.grid(), blocks, block_size);
    T mn = target.min_value();
    p.shift = T(1) - mn;
    p.shifted.reserve(p.values.size());
    for (const T& v : p.values) p.shifted.push_back(v + p.shift);
    return p;
}

namespace detail {

template <class T>
BasicRampSum<T> ramp_from_anchor_values(const CompilePlan<T>& p, std::vector<T> anchor_values) {
    return build_ramp_interpolant(p.anchors.position, anchor_values, p.grid.lo(),
                                  p.grid.hi());
}

/// ca * a + cb * b over a shared anchor set.
template <class T>
BasicRampSum<T> combine_ramps(const BasicRampSum<T>& a, const BasicRampSum<T>& b, const T& ca,
                              const T& cb) {
    BasicRampSum<T> r = a;
    r.bias = ca * a.bias + cb * b.bias;
    for (std::size_t j = 0; j < r.weights.size(); ++j)
        r.weights[j] = ca * a.weights[j] + cb * b.weights[j];
    return r;
}

template <class T>
BasicRampSum<T> scale_ramp(const BasicRampSum<T>& a, const T& c) {
    BasicRampSum<T> r = a;
    r.bias = c * a.bias;
    for (T& w : r.weights) w = c * w;
    return r;
}

} // namespace detail

/// Profile carrying the shifted target values at the block boundary nodes
/// and vanishing at every other anchor. Nonnegative everywhere, so it passes
/// through a ReLU unchanged.
template <class T>
BasicRampSum<T> profile_boundary(const CompilePlan<T>& p) {
    std::vector<T> av(p.anchors.position.size(), T(0));
    for (std::size_t j = 0; j <= p.blocks; ++j) {
        const std::size_t node = j * p.block_size;
        av[p.anchor_slot(node)] = p.shifted[node];
    }
    return detail::ramp_from_anchor_values(p, std::move(av));
}

/// In each block, the line through (x_{jM+k}, value) and (x_{jM+k+1}, 0)
/// extended to the anchors at offsets 1 and M-1; zero at block boundaries.
/// Its ReLU keeps exactly the falling edge of the hat at offset k plus a
/// rising ramp left of it. Valid for k in [1, M-2].
template <class T>
BasicRampSum<T> profile_fall(const CompilePlan<T>& p, std::size_t k) {
    const std::size_t M = p.block_size;
    if (k < 1 || k > M - 2)
        throw ValidationError("profile_fall: offset out of range");
    std::vector<T> av(p.anchors.position.size(), T(0));
    for (std::size_t j = 0; j < p.blocks; ++j) {
        const std::size_t base = j * M;
        const T& y = p.shifted[base + k];
        const T& xk = p.grid.node(base + k);
        const T& xk1 = p.grid.node(base + k + 1);
        auto line = [&](const T& x) { return y * (xk1 - x) / (xk1 - xk); };
        av[p.anchor_slot(base + 1)] = (k == 1) ? y : line(p.grid.node(base + 1));
        av[p.anchor_slot(base + M - 1)] = line(p.grid.node(base + M - 1));
    }
    return detail::ramp_from_anchor_values(p, std::move(av));
}

/// Mirror image of profile_fall: the line through (x_{jM+k-1}, 0) and
/// (x_{jM+k}, value) extended to the anchors at offsets 1 and M-1. Valid for
/// k in [2, M-1].
template <class T>
BasicRampSum<T> profile_rise(const CompilePlan<T>& p, std::size_t k) {
    const std::size_t M = p.block_size;
    if (k < 2 || k > M - 1)
        throw ValidationError("profile_rise: offset out of range");
    std::vector<T> av(p.anchors.position.size(), T(0));
    for (std::size_t j = 0; j < p.blocks; ++j) {
        const std::size_t base = j * M;
        const T& y = p.shifted[base + k];
        const T& xkm = p.grid.node(base + k - 1);
        const T& xk = p.grid.node(base + k);
        auto line = [&](const T& x) { return y * (x - xkm) / (xk - xkm); };
        av[p.anchor_slot(base + 1)] = line(p.grid.node(base + 1));
        av[p.anchor_slot(base + M - 1)] =
            (k == M - 1) ? y : line(p.grid.node(base + M - 1));
    }
    return detail::ramp_from_anchor_values(p, std::move(av));
}

/// The compiled second layer, row by row: each entry is a ramp profile whose
/// ReLU image contributes with the given read-out coefficient. The sum of
/// coefficient * relu(profile) over all rows equals the shifted interpolant.
template <class T>
std::vector<std::pair<BasicRampSum<T>, T>> second_layer_rows(const CompilePlan<T>& p) {
    const std::size_t M = p.block_size;
    if (M < 3)
        throw ValidationError("second_layer_rows: block size must be at least 3");
    std::vector<std::pair<BasicRampSum<T>, T>> rows;
    rows.reserve(3 * (M - 2));
    rows.emplace_back(profile_boundary(p), T(1));
    rows.emplace_back(profile_fall(p, 1), T(1));
    for (std::size_t k = 2; k + 2 <= M; ++k) {
        BasicRampSum<T> f = profile_fall(p, k);
        BasicRampSum<T> r = profile_rise(p, k);
        rows.emplace_back(f, T(1));
        rows.emplace_back(detail::combine_ramps(f, r, T(1), T(-1)), T(-1));
        rows.emplace_back(detail::scale_ramp(r, T(-1)), T(1));
    }
    rows.emplace_back(profile_rise(p, M - 1), T(1));
    return rows;
}

/// Exact one-hidden-layer interpolant of the target on all of its nodes.
/// Width is node count (trailing neuron has zero weight).
template <class T>
BasicReluNetwork<T> compile_one_layer(const BasicCpwl<T>& target) {
    return render_network(build_ramp_interpolant(target.grid().nodes(), target.values(),
                                                 target.lo(), target.hi()));
}

/// Compiles a CPwL target on a blocks*block_size grid into a network with
/// two hidden layers of widths exactly (3*blocks + 1, 3*(block_size - 2)).
/// The first layer holds one ramp per anchor; the second applies the block
/// profiles; the read-out undoes the positivity shift. Exact on the whole
/// domain, not just at nodes. Requires block_size >= 3; for smaller blocks
/// use compile_one_layer.
template <class T>
BasicReluNetwork<T> compile_two_layer(const BasicCpwl<T>& target, std::size_t blocks,
                                      std::size_t block_size) {
    if (block_size < 3)
        throw ValidationError("compile_two_layer: block size must be at least 3");
    CompilePlan<T> p = make_compile_plan(target, blocks, block_size);
    auto rows = second_layer_rows(p);

    BasicAffineLayer<T> first;
    const std::size_t W = p.anchors.position.size();
    first.weights.assign(W, std::vector<T>{T(1)});
    first.biases.reserve(W);
    for (const T& a : p.anchors.position) first.biases.push_back(-a);

    BasicAffineLayer<T> second;
    second.weights.reserve(rows.size());
    second.biases.reserve(rows.size());
    BasicAffineLayer<T> out;
    out.weights.emplace_back();
    out.weights[0].reserve(rows.size());
    out.biases.push_back(-p.shift);
    for (auto& [ramp, coef] : rows) {
        second.weights.push_back(std::move(ramp.weights));
        second.biases.push_back(ramp.bias);
        out.weights[0].push_back(coef);
    }
    return BasicReluNetwork<T>(1, {std::move(first), std::move(second), std::move(out)});
}

template <class T>
struct BlockDecompositionReport {
    std::size_t violations = 0;
    T max_profile_dev{0};
    T max_sum_dev{0};
    T tol{0};
};

/// Checks, node by node on the full grid, that every recombined block
/// profile equals the plain sum of scaled hats it is supposed to represent,
/// and that the profiles sum to the shifted interpolant. All kinks of both
/// sides are grid nodes, so node equality here is function equality.
template <class T>
BlockDecompositionReport<T> verify_block_decomposition(const BasicCpwl<T>& target,
                                                       std::size_t blocks,
                                                       std::size_t block_size) {
    const std::size_t M = block_size;
    if (M < 3)
        throw ValidationError("verify_block_decomposition: block size must be at least 3");
    CompilePlan<T> p = make_compile_plan(target, blocks, M);
    auto rows = second_layer_rows(p);
    const auto& xs = p.grid.nodes();
    const std::size_t n = xs.size();

    // relu(profile) at every grid node, and the largest pre-relu magnitude
    // (sets the rounding scale for the tolerance)
    std::vector<std::vector<T>> relu_vals(rows.size(), std::vector<T>(n));
    T scale(1);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t i = 0; i < n; ++i) {
            T v = rows[r].first.eval(xs[i]);
            scale = std::max(scale, scalar_abs(v));
            relu_vals[r][i] = v < T(0) ? T(0) : v;
        }
    }
    BlockDecompositionReport<T> rep;
    rep.tol = ScalarTraits<T>::is_exact ? T(0) : T(1e-12) * scale;

    // row layout produced by second_layer_rows: hats at offset 0, 1, then
    // triples for 2..M-2, then M-1
    auto hat_rows = [&](std::size_t k) -> std::vector<std::pair<std::size_t, T>> {
        if (k == 0) return {{0, T(1)}};
        if (k == 1) return {{1, T(1)}};
        if (k == M - 1) return {{rows.size() - 1, T(1)}};
        std::size_t b = 2 + 3 * (k - 2);
        return {{b, T(1)}, {b + 1, T(-1)}, {b + 2, T(1)}};
    };

    std::vector<T> total(n, T(0));
    for (std::size_t k = 0; k < M; ++k) {
        // direct form: the shifted value at every node at offset k, zero at
        // all other nodes
        std::vector<T> direct(n, T(0));
        for (std::size_t j = 0; j < p.blocks; ++j) direct[j * M + k] = p.shifted[j * M + k];
        if (k == 0) direct[n - 1] = p.shifted[n - 1];

        for (std::size_t i = 0; i < n; ++i) {
            T rec(0);
            for (auto [row, coef] : hat_rows(k)) rec += coef * relu_vals[row][i];
            total[i] += rec;
            T dev = scalar_abs(T(rec - direct[i]));
            rep.max_profile_dev = std::max(rep.max_profile_dev, dev);
            if (dev > rep.tol) ++rep.violations;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        T dev = scalar_abs(T(total[i] - p.shifted[i]));
        rep.max_sum_dev = std::max(rep.max_sum_dev, dev);
        if (dev > rep.tol) ++rep.violations;
    }
    return rep;
}

/// Refines a CPwL function to exactly `segments` pieces without changing the
/// function: repeatedly splits whichever segment currently has the longest
/// sub-piece. Never merges.
template <class T>
BasicCpwl<T> pad_segments(const BasicCpwl<T>& f, std::size_t segments) {
    const std::size_t P = f.segment_count();
    if (P > segments)
        throw ValidationError("pad_segments cannot reduce the segment count");
    if (P == segments) return f;
    const auto& xs = f.grid().nodes();
    const auto& vs = f.values();
    std::vector<std::size_t> cuts(P, 1); // pieces per original segment
    for (std::size_t extra = segments - P; extra > 0; --extra) {
        std::size_t best = 0;
        T best_len = (xs[1] - xs[0]) / T(static_cast<double>(cuts[0]));
        for (std::size_t i = 1; i < P; ++i) {
            T len = (xs[i + 1] - xs[i]) / T(static_cast<double>(cuts[i]));
            if (len > best_len) {
                best_len = len;
                best = i;
            }
        }
        ++cuts[best];
    }
    std::vector<T> nodes, values;
    nodes.reserve(segments + 1);
    values.reserve(segments + 1);
    for (std::size_t i = 0; i < P; ++i) {
        for (std::size_t q = 0; q < cuts[i]; ++q) {
            T t = T(static_cast<double>(q)) / T(static_cast<double>(cuts[i]));
            nodes.push_back(xs[i] + t * (xs[i + 1] - xs[i]));
            values.push_back(vs[i] + t * (vs[i + 1] - vs[i]));
        }
    }
    nodes.push_back(xs.back());
    values.push_back(vs.back());
    return BasicCpwl<T>(BasicGrid<T>(std::move(nodes)), std::move(values));
}

/// Reshapes a (W, K)-two-hidden-layer scalar network with K <= W*stages into
/// an equivalent network with `stages`+1 hidden layers, none wider than
/// 2W+2. The input is carried forward through one channel, the W first-layer
/// features are recomputed at every stage, each stage evaluates one block of
/// W second-layer neurons, and a single accumulator channel collects the
/// partial read-out, kept nonnegative by a constant shift that the final
/// read-out removes. Exact: ReLU never clips a carried value.
template <class T>
BasicReluNetwork<T> deepen(const BasicReluNetwork<T>& net, std::size_t stages, const T& lo,
                           const T& hi) {
    if (stages == 0) throw ValidationError("deepen: stages must be positive");
    if (stages == 1) return net;
    if (net.input_dim() != 1 || net.output_dim() != 1)
        throw ValidationError("deepen needs a scalar-to-scalar network");
    if (net.depth() != 2)
        throw ValidationError("deepen needs exactly two hidden layers");
    const std::size_t L = stages;
    const std::size_t W = net.layers()[0].out_dim();
    const std::size_t K = net.layers()[1].out_dim();
    if (K > W * L)
        throw CapacityError("deepen: second hidden layer wider than W*stages");

    // padded copies of the original parameters
    std::vector<T> a(W), c(W);
    for (std::size_t i = 0; i < W; ++i) {
        a[i] = net.layers()[0].weights[i][0];
        c[i] = net.layers()[0].biases[i];
    }
    std::vector<std::vector<T>> V(W * L, std::vector<T>(W, T(0)));
    std::vector<T> d(W * L, T(0)), u(W * L, T(0));
    for (std::size_t n = 0; n < K; ++n) {
        V[n] = net.layers()[1].weights[n];
        d[n] = net.layers()[1].biases[n];
        u[n] = net.layers()[2].weights[0][n];
    }
    const T e = net.layers()[2].biases[0];

    // The accumulator shift must dominate the minimum of every partial
    // read-out sum(n <= k) u_n * g_n(x). Each partial sum is CPwL with all
    // kinks on the propagated breakpoint set of the two hidden layers, so
    // scanning nodes gives the exact minima.
    T worst(0);
    {
        detail::CpwlChannels<T> ch = detail::relu_image<T>(net.layers(), 2, lo, hi);
        for (std::size_t j = 0; j < ch.nodes.size(); ++j) {
            Accum<T> acc;
            for (std::size_t n = 0; n < K; ++n) {
                acc.add_prod(u[n], ch.vals[n][j]);
                T partial = acc.total();
                if (partial < worst) worst = partial;
            }
        }
    }
    const T B = T(2) * std::max(T(1), T(-worst));

    // channel layout: [X, F(W), A] after stage 1, [X, F(W), G(W), A] after
    // stages 2..L, [G(W), A] after stage L+1
    std::vector<BasicAffineLayer<T>> layers;
    layers.reserve(L + 2);
    {
        BasicAffineLayer<T> s1;
        s1.weights.assign(W + 2, std::vector<T>{T(0)});
        s1.biases.assign(W + 2, T(0));
        s1.weights[0][0] = T(1);
        s1.biases[0] = -lo;
        for (std::size_t i = 0; i < W; ++i) {
            s1.weights[1 + i][0] = a[i];
            s1.biases[1 + i] = c[i];
        }
        s1.biases[W + 1] = B;
        layers.push_back(std::move(s1));
    }
    for (std::size_t s = 2; s <= L; ++s) {
        const std::size_t in = (s == 2) ? W + 2 : 2 * W + 2;
        const std::size_t prev_a = in - 1;
        BasicAffineLayer<T> ly;
        ly.weights.assign(2 * W + 2, std::vector<T>(in, T(0)));
        ly.biases.assign(2 * W + 2, T(0));
        ly.weights[0][0] = T(1);
        for (std::size_t i = 0; i < W; ++i) {
            ly.weights[1 + i][0] = a[i];
            ly.biases[1 + i] = c[i] + a[i] * lo;
        }
        for (std::size_t n = 0; n < W; ++n) {
            const std::size_t r = (s - 2) * W + n;
            for (std::size_t i = 0; i < W; ++i) ly.weights[W + 1 + n][1 + i] = V[r][i];
            ly.biases[W + 1 + n] = d[r];
        }
        ly.weights[2 * W + 1][prev_a] = T(1);
        if (s >= 3)
            for (std::size_t n = 0; n < W; ++n)
                ly.weights[2 * W + 1][W + 1 + n] = u[(s - 3) * W + n];
        ly.biases[2 * W + 1] = B;
        layers.push_back(std::move(ly));
    }
    {
        const std::size_t in = 2 * W + 2;
        BasicAffineLayer<T> ly;
        ly.weights.assign(W + 1, std::vector<T>(in, T(0)));
        ly.biases.assign(W + 1, T(0));
        for (std::size_t n = 0; n < W; ++n) {
            const std::size_t r = (L - 1) * W + n;
            for (std::size_t i = 0; i < W; ++i) ly.weights[n][1 + i] = V[r][i];
            ly.biases[n] = d[r];
        }
        ly.weights[W][in - 1] = T(1);
        for (std::size_t n = 0; n < W; ++n) ly.weights[W][W + 1 + n] = u[(L - 2) * W + n];
        ly.biases[W] = B;
        layers.push_back(std::move(ly));
    }
    {
        BasicAffineLayer<T> out;
        out.weights.assign(1, std::vector<T>(W + 1, T(0)));
        for (std::size_t n = 0; n < W; ++n) out.weights[0][n] = u[(L - 1) * W + n];
        out.weights[0][W] = T(1);
        out.biases.assign(1, e - T(static_cast<double>(L + 1)) * B);
        layers.push_back(std::move(out));
    }
    return BasicReluNetwork<T>(1, std::move(layers));
}

/// Compiles a CPwL target with at most blocks^2 * stages segments into a
/// network with stages+1 hidden layers, every width at most 6*blocks + 4.
/// The grid is first padded to exactly blocks^2 * stages segments (splitting
/// never changes the function), compiled with block size blocks*stages, and
/// the two-layer result reshaped in depth.
template <class T>
BasicReluNetwork<T> compile_deep(const BasicCpwl<T>& target, std::size_t blocks,
                                 std::size_t stages) {
    if (blocks == 0 || stages == 0)
        throw ValidationError("compile_deep: blocks and stages must be positive");
    const std::size_t capacity = blocks * blocks * stages;
    if (target.segment_count() > capacity)
        throw CapacityError("compile_deep: target needs more segments than blocks^2*stages");
    BasicCpwl<T> padded = pad_segments(target, capacity);
    const std::size_t M = blocks * stages;
    if (M >= 3) {
        BasicReluNetwork<T> two = compile_two_layer(padded, blocks, M);
        if (stages == 1) return two;
        return deepen(two, stages, target.lo(), target.hi());
    }
    // degenerate tiny architectures: a one-layer interpolant padded in depth
    return extend_depth(compile_one_layer(padded), stages);
}

} // namespace pwlnet
