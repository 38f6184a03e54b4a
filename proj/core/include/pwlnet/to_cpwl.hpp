#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "pwlnet/cpwl.hpp"
#include "pwlnet/relu_net.hpp"

namespace pwlnet {

namespace detail {

template <class T>
struct CpwlChannels {
    std::vector<T> nodes;
    std::vector<std::vector<T>> vals;
};

/// Pushes the identity on [lo, hi] through the first `count` hidden layers
/// (affine map + ReLU each), refining the breakpoint set at every sign
/// crossing: each pre-activation channel is linear between current nodes, so
/// a ReLU can only add kinks where a channel crosses zero inside a segment.
/// The returned channels are exactly CPwL on the returned nodes.
template <class T>
CpwlChannels<T> relu_image(const std::vector<BasicAffineLayer<T>>& layers, std::size_t count,
                           const T& lo, const T& hi) {
    const T tol = ScalarTraits<T>::merge_tol(hi - lo);
    std::vector<T> nodes{lo, hi};
    std::vector<std::vector<T>> vals{{lo, hi}};
    for (std::size_t k = 0; k < count; ++k) {
        const auto& L = layers[k];
        std::vector<std::vector<T>> pre(L.out_dim(), std::vector<T>(nodes.size()));
        for (std::size_t o = 0; o < L.out_dim(); ++o) {
            for (std::size_t n = 0; n < nodes.size(); ++n) {
                Accum<T> acc;
                acc.add(L.biases[o]);
                for (std::size_t i = 0; i < L.in_dim(); ++i)
                    acc.add_prod(L.weights[o][i], vals[i][n]);
                pre[o][n] = acc.total();
            }
        }
        // sign crossings strictly inside a segment become new nodes
        std::vector<T> crossings;
        for (const auto& ch : pre) {
            for (std::size_t s = 0; s + 1 < nodes.size(); ++s) {
                const T& a = ch[s];
                const T& b = ch[s + 1];
                if ((a < T(0) && b > T(0)) || (a > T(0) && b < T(0))) {
                    T x = nodes[s] + (T(0) - a) * (nodes[s + 1] - nodes[s]) / (b - a);
                    if (x - nodes[s] > tol && nodes[s + 1] - x > tol)
                        crossings.push_back(x);
                }
            }
        }
        if (!crossings.empty()) {
            std::sort(crossings.begin(), crossings.end());
            std::vector<T> refined;
            refined.reserve(nodes.size() + crossings.size());
            std::size_t ci = 0;
            for (std::size_t n = 0; n + 1 < nodes.size(); ++n) {
                refined.push_back(nodes[n]);
                while (ci < crossings.size() && crossings[ci] < nodes[n + 1]) {
                    if (crossings[ci] - refined.back() > tol &&
                        nodes[n + 1] - crossings[ci] > tol)
                        refined.push_back(crossings[ci]);
                    ++ci;
                }
            }
            refined.push_back(nodes.back());
            // re-interpolate each channel onto the refined nodes (linear on
            // every old segment, so this is exact)
            std::vector<std::vector<T>> moved(pre.size(), std::vector<T>(refined.size()));
            std::size_t seg = 0;
            for (std::size_t n = 0; n < refined.size(); ++n) {
                const T& x = refined[n];
                while (seg + 1 < nodes.size() - 1 && !(x < nodes[seg + 1])) ++seg;
                if (x == nodes[seg]) {
                    for (std::size_t o = 0; o < pre.size(); ++o) moved[o][n] = pre[o][seg];
                } else if (x == nodes[seg + 1]) {
                    for (std::size_t o = 0; o < pre.size(); ++o) moved[o][n] = pre[o][seg + 1];
                } else {
                    T t = (x - nodes[seg]) / (nodes[seg + 1] - nodes[seg]);
                    for (std::size_t o = 0; o < pre.size(); ++o)
                        moved[o][n] = pre[o][seg] + t * (pre[o][seg + 1] - pre[o][seg]);
                }
            }
            nodes = std::move(refined);
            pre = std::move(moved);
        }
        for (auto& ch : pre)
            for (T& v : ch)
                if (v < T(0)) v = T(0);
        vals = std::move(pre);
    }
    return {std::move(nodes), std::move(vals)};
}

} // namespace detail

/// Recovers the exact CPwL function a scalar-to-scalar network computes on
/// [lo, hi]: breakpoint propagation through the hidden layers, then the
/// affine read-out at the propagated nodes. The result is pruned to
/// canonical form (no collinear interior nodes).
template <class T>
BasicCpwl<T> to_cpwl(const BasicReluNetwork<T>& net, const T& lo, const T& hi) {
    if (net.input_dim() != 1 || net.output_dim() != 1)
        throw ValidationError("to_cpwl needs a scalar-to-scalar network");
    if (!(lo < hi))
        throw ValidationError("to_cpwl: empty domain");
    const auto& layers = net.layers();
    detail::CpwlChannels<T> ch = detail::relu_image(layers, layers.size() - 1, lo, hi);
    const auto& L = layers.back();
    std::vector<T> out(ch.nodes.size());
    for (std::size_t n = 0; n < ch.nodes.size(); ++n) {
        Accum<T> acc;
        acc.add(L.biases[0]);
        for (std::size_t i = 0; i < L.in_dim(); ++i) acc.add_prod(L.weights[0][i], ch.vals[i][n]);
        out[n] = acc.total();
    }
    return prune_collinear(BasicCpwl<T>(BasicGrid<T>(std::move(ch.nodes)), std::move(out)));
}

inline CpwlFunction to_cpwl(const ReluNetwork& net, double lo = 0.0, double hi = 1.0) {
    return to_cpwl<double>(net, lo, hi);
}

/// Sup distance between what the network computes and a target CPwL
/// function, exact up to the scalar type: both sides are CPwL, so the
/// difference attains its extrema on the union of breakpoints.
template <class T>
T network_cpwl_distance(const BasicReluNetwork<T>& net, const BasicCpwl<T>& target) {
    BasicCpwl<T> g = to_cpwl<T>(net, target.lo(), target.hi());
    return sup_distance(g, target);
}

} // namespace pwlnet
