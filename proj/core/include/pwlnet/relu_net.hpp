#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "pwlnet/errors.hpp"
#include "pwlnet/scalar.hpp"

namespace pwlnet {

/// One affine map y = W x + b. Weights are row-major: weights[o][i] feeds
/// output o from input i.
template <class T>
struct BasicAffineLayer {
    std::vector<std::vector<T>> weights;
    std::vector<T> biases;

    std::size_t out_dim() const { return biases.size(); }
    std::size_t in_dim() const { return weights.empty() ? 0 : weights[0].size(); }

    void validate() const {
        if (weights.size() != biases.size())
            throw ValidationError("affine layer: one weight row per bias");
        if (weights.empty())
            throw ValidationError("affine layer: zero outputs");
        for (const auto& row : weights)
            if (row.size() != weights[0].size())
                throw ValidationError("affine layer: ragged weight rows");
    }

    std::vector<T> apply(const std::vector<T>& x) const {
        std::vector<T> y(biases);
        for (std::size_t o = 0; o < weights.size(); ++o) {
            const auto& row = weights[o];
            Accum<T> acc;
            acc.add(y[o]);
            for (std::size_t i = 0; i < row.size(); ++i) acc.add_prod(row[i], x[i]);
            y[o] = acc.total();
        }
        return y;
    }
};

using AffineLayer = BasicAffineLayer<double>;

struct Architecture {
    std::size_t input_dim = 1;
    std::vector<std::size_t> hidden_widths;
    std::size_t output_dim = 1;

    std::size_t depth() const { return hidden_widths.size(); }
    std::size_t max_width() const {
        std::size_t w = 0;
        for (std::size_t h : hidden_widths) w = std::max(w, h);
        return w;
    }
    bool operator==(const Architecture&) const = default;
};

/// Feed-forward ReLU network: affine layers with ReLU after every layer
/// except the last. A network always ends in an affine read-out, so a net
/// with k+1 layers has k hidden (ReLU) layers.
template <class T>
class BasicReluNetwork {
public:
    BasicReluNetwork(std::size_t input_dim, std::vector<BasicAffineLayer<T>> layers)
        : input_dim_(input_dim), layers_(std::move(layers)) {
        if (layers_.empty())
            throw ValidationError("network needs at least one affine layer");
        std::size_t dim = input_dim_;
        for (const auto& l : layers_) {
            l.validate();
            if (l.in_dim() != dim)
                throw ValidationError("network: layer input dim mismatch");
            dim = l.out_dim();
        }
    }

    std::size_t input_dim() const { return input_dim_; }
    std::size_t output_dim() const { return layers_.back().out_dim(); }
    std::size_t depth() const { return layers_.size() - 1; }
    const std::vector<BasicAffineLayer<T>>& layers() const { return layers_; }

    Architecture architecture() const {
        Architecture a;
        a.input_dim = input_dim_;
        for (std::size_t i = 0; i + 1 < layers_.size(); ++i)
            a.hidden_widths.push_back(layers_[i].out_dim());
        a.output_dim = output_dim();
        return a;
    }

    std::size_t max_width() const { return architecture().max_width(); }

    std::vector<T> eval(const std::vector<T>& x) const {
        if (x.size() != input_dim_)
            throw ValidationError("network eval: wrong input dimension");
        std::vector<T> cur = layers_[0].apply(x);
        for (std::size_t k = 1; k < layers_.size(); ++k) {
            for (T& v : cur)
                if (v < T(0)) v = T(0);
            cur = layers_[k].apply(cur);
        }
        return cur;
    }

    T eval1(const T& x) const {
        if (input_dim_ != 1 || output_dim() != 1)
            throw ValidationError("eval1 needs a scalar-to-scalar network");
        return eval(std::vector<T>{x})[0];
    }

    /// Batched evaluation of `count` points packed input-major in `flat`
    /// (point p occupies flat[p*input_dim .. p*input_dim+input_dim)).
    /// Output packed the same way. Processes fixed-size chunks with
    /// neuron-major scratch buffers so the inner loops stay contiguous.
    std::vector<T> eval_batch(const std::vector<T>& flat, std::size_t count) const {
        if (flat.size() != count * input_dim_)
            throw ValidationError("eval_batch: flat size mismatch");
        const std::size_t out_d = output_dim();
        std::vector<T> result(count * out_d);
        constexpr std::size_t kChunk = 256;
        std::size_t maxw = input_dim_;
        for (const auto& l : layers_) maxw = std::max(maxw, l.out_dim());
        std::vector<T> bufa(maxw * kChunk), bufb(maxw * kChunk);
        for (std::size_t start = 0; start < count; start += kChunk) {
            const std::size_t n = std::min(kChunk, count - start);
            // transpose the chunk to neuron-major
            for (std::size_t i = 0; i < input_dim_; ++i)
                for (std::size_t s = 0; s < n; ++s)
                    bufa[i * kChunk + s] = flat[(start + s) * input_dim_ + i];
            T* in = bufa.data();
            T* out = bufb.data();
            for (std::size_t k = 0; k < layers_.size(); ++k) {
                const auto& l = layers_[k];
                if (k > 0) {
                    const std::size_t prev = l.in_dim();
                    for (std::size_t i = 0; i < prev * kChunk; ++i)
                        if (in[i] < T(0)) in[i] = T(0);
                }
                for (std::size_t o = 0; o < l.out_dim(); ++o) {
                    T* dst = out + o * kChunk;
                    for (std::size_t s = 0; s < n; ++s) dst[s] = l.biases[o];
                    const auto& row = l.weights[o];
                    for (std::size_t i = 0; i < row.size(); ++i) {
                        const T w = row[i];
                        if (w == T(0)) continue; // stacked nets are block-diagonal
                        const T* src = in + i * kChunk;
                        for (std::size_t s = 0; s < n; ++s) dst[s] += w * src[s];
                    }
                }
                std::swap(in, out);
            }
            for (std::size_t o = 0; o < out_d; ++o)
                for (std::size_t s = 0; s < n; ++s)
                    result[(start + s) * out_d + o] = in[o * kChunk + s];
        }
        return result;
    }

private:
    std::size_t input_dim_;
    std::vector<BasicAffineLayer<T>> layers_;
};

using ReluNetwork = BasicReluNetwork<double>;

template <class T>
std::size_t param_count(const BasicReluNetwork<T>& net) {
    std::size_t n = 0;
    for (const auto& l : net.layers()) n += (l.in_dim() + 1) * l.out_dim();
    return n;
}

/// Capacity term governing how many sign patterns the architecture can
/// realize: sum over hidden layers of (fan_in + 1) * width, plus the last
/// hidden width feeding the read-out.
template <class T>
std::size_t shatter_count(const BasicReluNetwork<T>& net) {
    const auto& ls = net.layers();
    std::size_t n = 0;
    for (std::size_t i = 0; i + 1 < ls.size(); ++i)
        n += (ls[i].in_dim() + 1) * ls[i].out_dim();
    n += ls[ls.size() - 1].in_dim();
    return n;
}

/// Feeds `inner`'s output into `outer`. The two affine maps meeting at the
/// junction fuse into one, so depths add exactly.
template <class T>
BasicReluNetwork<T> compose_serial(const BasicReluNetwork<T>& outer,
                                   const BasicReluNetwork<T>& inner) {
    if (inner.output_dim() != outer.input_dim())
        throw ValidationError("compose_serial: dimension mismatch at junction");
    const auto& il = inner.layers();
    const auto& ol = outer.layers();
    std::vector<BasicAffineLayer<T>> layers(il.begin(), il.end() - 1);
    const BasicAffineLayer<T>& a = il.back();
    const BasicAffineLayer<T>& b = ol.front();
    BasicAffineLayer<T> fused;
    fused.biases = b.biases;
    fused.weights.assign(b.out_dim(), std::vector<T>(a.in_dim(), T(0)));
    for (std::size_t o = 0; o < b.out_dim(); ++o) {
        for (std::size_t m = 0; m < a.out_dim(); ++m) {
            const T w = b.weights[o][m];
            if (w == T(0)) continue;
            fused.biases[o] += w * a.biases[m];
            for (std::size_t i = 0; i < a.in_dim(); ++i)
                fused.weights[o][i] += w * a.weights[m][i];
        }
    }
    layers.push_back(std::move(fused));
    layers.insert(layers.end(), ol.begin() + 1, ol.end());
    return BasicReluNetwork<T>(inner.input_dim(), std::move(layers));
}

/// Appends `extra` hidden layers that pass the current output through
/// unchanged. With outputs_nonneg the caller asserts the read-out is
/// nonnegative on all reachable inputs and a single ReLU per channel
/// suffices; otherwise each channel is carried as a sigma(+)/sigma(-) pair.
template <class T>
BasicReluNetwork<T> extend_depth(const BasicReluNetwork<T>& net, std::size_t extra,
                                 bool outputs_nonneg = false) {
    if (extra == 0) return net;
    const std::size_t m = net.output_dim();
    std::vector<BasicAffineLayer<T>> layers(net.layers().begin(), net.layers().end() - 1);
    BasicAffineLayer<T> tail = net.layers().back();
    if (outputs_nonneg) {
        for (std::size_t e = 0; e < extra; ++e) {
            layers.push_back(tail);
            BasicAffineLayer<T> id;
            id.biases.assign(m, T(0));
            id.weights.assign(m, std::vector<T>(m, T(0)));
            for (std::size_t i = 0; i < m; ++i) id.weights[i][i] = T(1);
            tail = std::move(id);
        }
    } else {
        for (std::size_t e = 0; e < extra; ++e) {
            BasicAffineLayer<T> split;
            split.biases.reserve(2 * m);
            split.weights.reserve(2 * m);
            for (std::size_t i = 0; i < m; ++i) {
                split.weights.push_back(tail.weights[i]);
                split.biases.push_back(tail.biases[i]);
            }
            for (std::size_t i = 0; i < m; ++i) {
                std::vector<T> neg = tail.weights[i];
                for (T& v : neg) v = -v;
                split.weights.push_back(std::move(neg));
                split.biases.push_back(-tail.biases[i]);
            }
            layers.push_back(std::move(split));
            BasicAffineLayer<T> diff;
            diff.biases.assign(m, T(0));
            diff.weights.assign(m, std::vector<T>(2 * m, T(0)));
            for (std::size_t i = 0; i < m; ++i) {
                diff.weights[i][i] = T(1);
                diff.weights[i][m + i] = T(-1);
            }
            tail = std::move(diff);
        }
    }
    layers.push_back(std::move(tail));
    return BasicReluNetwork<T>(net.input_dim(), std::move(layers));
}

/// Runs several networks side by side on one shared input vector and
/// concatenates their outputs. input_map[j][i] names the shared coordinate
/// feeding net j's local input i. Shallower nets are depth-padded first.
template <class T>
BasicReluNetwork<T> parallel_stack(const std::vector<BasicReluNetwork<T>>& nets,
                                   const std::vector<std::vector<std::size_t>>& input_map,
                                   std::size_t shared_input_dim) {
    if (nets.empty()) throw ValidationError("parallel_stack: no networks");
    if (input_map.size() != nets.size())
        throw ValidationError("parallel_stack: one input map per network");
    std::size_t depth = 0;
    for (const auto& n : nets) depth = std::max(depth, n.depth());
    std::vector<BasicReluNetwork<T>> padded;
    padded.reserve(nets.size());
    for (std::size_t j = 0; j < nets.size(); ++j) {
        if (input_map[j].size() != nets[j].input_dim())
            throw ValidationError("parallel_stack: input map size mismatch");
        for (std::size_t c : input_map[j])
            if (c >= shared_input_dim)
                throw ValidationError("parallel_stack: input map coordinate out of range");
        padded.push_back(extend_depth(nets[j], depth - nets[j].depth()));
    }
    const std::size_t n_layers = depth + 1;
    std::vector<BasicAffineLayer<T>> layers(n_layers);
    for (std::size_t k = 0; k < n_layers; ++k) {
        std::size_t in_total = 0, out_total = 0;
        for (const auto& net : padded) {
            in_total += net.layers()[k].in_dim();
            out_total += net.layers()[k].out_dim();
        }
        if (k == 0) in_total = shared_input_dim;
        auto& L = layers[k];
        L.biases.reserve(out_total);
        L.weights.reserve(out_total);
        std::size_t in_off = 0;
        for (std::size_t j = 0; j < padded.size(); ++j) {
            const auto& src = padded[j].layers()[k];
            for (std::size_t o = 0; o < src.out_dim(); ++o) {
                std::vector<T> row(in_total, T(0));
                if (k == 0) {
                    for (std::size_t i = 0; i < src.in_dim(); ++i)
                        row[input_map[j][i]] += src.weights[o][i];
                } else {
                    for (std::size_t i = 0; i < src.in_dim(); ++i)
                        row[in_off + i] = src.weights[o][i];
                }
                L.weights.push_back(std::move(row));
                L.biases.push_back(src.biases[o]);
            }
            if (k > 0) in_off += src.in_dim();
        }
    }
    return BasicReluNetwork<T>(shared_input_dim, std::move(layers));
}

/// coef_a * a(x) + coef_b * b(x) as one network over the shared input.
template <class T>
BasicReluNetwork<T> sum_parallel(const BasicReluNetwork<T>& a, const BasicReluNetwork<T>& b,
                                 const T& coef_a = T(1), const T& coef_b = T(1)) {
    if (a.input_dim() != b.input_dim())
        throw ValidationError("sum_parallel: input dims differ");
    if (a.output_dim() != b.output_dim())
        throw ValidationError("sum_parallel: output dims differ");
    std::vector<std::size_t> idx(a.input_dim());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    BasicReluNetwork<T> stacked =
        parallel_stack<T>({a, b}, {idx, idx}, a.input_dim());
    const std::size_t m = a.output_dim();
    BasicAffineLayer<T> mix;
    mix.biases.assign(m, T(0));
    mix.weights.assign(m, std::vector<T>(2 * m, T(0)));
    for (std::size_t i = 0; i < m; ++i) {
        mix.weights[i][i] = coef_a;
        mix.weights[i][m + i] = coef_b;
    }
    BasicReluNetwork<T> mixer(2 * m, {mix});
    return compose_serial(mixer, stacked);
}

/// Wraps a bare affine map as a depth-0 network.
template <class T>
BasicReluNetwork<T> affine_network(BasicAffineLayer<T> layer) {
    const std::size_t in = layer.in_dim();
    return BasicReluNetwork<T>(in, {std::move(layer)});
}

} // namespace pwlnet
