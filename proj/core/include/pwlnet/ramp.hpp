#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "pwlnet/cpwl.hpp"
#include "pwlnet/relu_net.hpp"

namespace pwlnet {

/// Sum of shifted ramps: r(x) = bias + sum_j weights[j] * relu(x - anchors[j])
/// on [lo, hi]. This is exactly what a one-hidden-layer network with unit
/// input weights computes, and it is CPwL with kinks only at the anchors.
template <class T>
struct BasicRampSum {
    T lo, hi;
    std::vector<T> anchors;
    std::vector<T> weights;
    T bias;

    void validate() const {
        if (!(lo < hi)) throw ValidationError("ramp sum: empty domain");
        if (anchors.empty() || anchors.size() != weights.size())
            throw ValidationError("ramp sum: one weight per anchor");
        if (anchors.front() < lo || hi < anchors.back())
            throw ValidationError("ramp sum: anchors outside domain");
        for (std::size_t i = 1; i < anchors.size(); ++i)
            if (!(anchors[i - 1] < anchors[i]))
                throw ValidationError("ramp sum: anchors must increase strictly");
    }

    T eval(const T& x) const {
        Accum<T> acc;
        acc.add(bias);
        for (std::size_t j = 0; j < anchors.size(); ++j) {
            if (x > anchors[j]) acc.add_prod(weights[j], T(x - anchors[j]));
        }
        return acc.total();
    }
};

using RampSum = BasicRampSum<double>;

/// The unique ramp sum over the given anchors that matches `values` at every
/// anchor. Trailing weight is pinned to zero, which makes the coefficient
/// vector canonical. Requires anchors[0] == lo so the bias alone fixes the
/// value there.
template <class T>
BasicRampSum<T> build_ramp_interpolant(std::vector<T> anchors, const std::vector<T>& values,
                                       const T& lo, const T& hi) {
    if (anchors.size() != values.size())
        throw ValidationError("ramp interpolant: one value per anchor");
    if (anchors.size() < 2)
        throw ValidationError("ramp interpolant: need at least two anchors");
    if (anchors.front() != lo)
        throw ValidationError("ramp interpolant: first anchor must sit at lo");
    BasicRampSum<T> r;
    r.lo = lo;
    r.hi = hi;
    r.bias = values[0];
    r.weights.assign(anchors.size(), T(0));
    T prev_slope(0);
    for (std::size_t j = 0; j + 1 < anchors.size(); ++j) {
        T s = (values[j + 1] - values[j]) / (anchors[j + 1] - anchors[j]);
        r.weights[j] = s - prev_slope;
        prev_slope = s;
    }
    r.anchors = std::move(anchors);
    r.validate();
    return r;
}

/// One-hidden-layer network computing the ramp sum on [lo, hi]: neuron j is
/// relu(x - anchors[j]), the read-out applies the weights and bias. Width is
/// exactly the anchor count; zero-weight anchors keep their neuron.
template <class T>
BasicReluNetwork<T> render_network(const BasicRampSum<T>& r) {
    r.validate();
    BasicAffineLayer<T> hidden;
    hidden.weights.assign(r.anchors.size(), std::vector<T>{T(1)});
    hidden.biases.reserve(r.anchors.size());
    for (const T& a : r.anchors) hidden.biases.push_back(-a);
    BasicAffineLayer<T> out;
    out.weights.push_back(r.weights);
    out.biases.push_back(r.bias);
    return BasicReluNetwork<T>(1, {std::move(hidden), std::move(out)});
}

/// Exact CPwL form of a ramp sum: nodes are the anchors plus the domain
/// endpoints, values evaluated directly.
template <class T>
BasicCpwl<T> ramp_to_cpwl(const BasicRampSum<T>& r) {
    r.validate();
    std::vector<T> nodes;
    nodes.reserve(r.anchors.size() + 2);
    if (r.lo < r.anchors.front()) nodes.push_back(r.lo);
    nodes.insert(nodes.end(), r.anchors.begin(), r.anchors.end());
    if (r.anchors.back() < r.hi) nodes.push_back(r.hi);
    std::vector<T> values;
    values.reserve(nodes.size());
    for (const T& x : nodes) values.push_back(r.eval(x));
    return BasicCpwl<T>(BasicGrid<T>(std::move(nodes)), std::move(values));
}

/// Anchor skeleton of a grid split into `blocks` blocks of `block_size`
/// segments: for every block boundary node (index j*block_size) the boundary
/// itself and its two in-grid neighbours are anchors. That is 3*blocks + 1
/// nodes for block_size >= 3 (smaller blocks collide and dedup), and they
/// are the only nodes a two-layer compilation touches in its first layer.
template <class T>
struct BlockAnchors {
    std::size_t blocks = 0;
    std::size_t block_size = 0;
    std::vector<std::size_t> node_index;
    std::vector<T> position;
};

template <class T>
BlockAnchors<T> build_block_anchors(const BasicGrid<T>& grid, std::size_t blocks,
                                    std::size_t block_size) {
    if (blocks == 0 || block_size == 0)
        throw ValidationError("block anchors: blocks and block size must be positive");
    const std::size_t segs = grid.segment_count();
    if (segs != blocks * block_size)
        throw ValidationError("block anchors: grid segment count must equal blocks*block_size");
    BlockAnchors<T> a;
    a.blocks = blocks;
    a.block_size = block_size;
    for (std::size_t j = 0; j <= blocks; ++j) {
        const std::size_t c = j * block_size;
        if (c >= 1 && (a.node_index.empty() || a.node_index.back() < c - 1))
            a.node_index.push_back(c - 1);
        if (a.node_index.empty() || a.node_index.back() < c) a.node_index.push_back(c);
        if (c + 1 <= segs) a.node_index.push_back(c + 1);
    }
    // adjacent boundaries of single-segment blocks can collide
    a.node_index.erase(std::unique(a.node_index.begin(), a.node_index.end()),
                       a.node_index.end());
    a.position.reserve(a.node_index.size());
    for (std::size_t i : a.node_index) a.position.push_back(grid.node(i));
    return a;
}

} // namespace pwlnet
