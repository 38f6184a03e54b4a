#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "pwlnet/errors.hpp"
#include "pwlnet/scalar.hpp"

namespace pwlnet {

/// Strictly increasing breakpoints x_0 < x_1 < ... < x_P defining a 1-D mesh
/// on [lo, hi]. Immutable after construction.
template <class T>
class BasicGrid {
public:
    explicit BasicGrid(std::vector<T> nodes) : nodes_(std::move(nodes)) {
        if (nodes_.size() < 2)
            throw ValidationError("grid needs at least two nodes");
        const T tol = ScalarTraits<T>::merge_tol(nodes_.back() - nodes_.front());
        for (std::size_t i = 1; i < nodes_.size(); ++i) {
            if (!(nodes_[i] - nodes_[i - 1] > tol))
                throw ValidationError("grid nodes must be strictly increasing beyond the merge tolerance");
        }
    }

    const std::vector<T>& nodes() const { return nodes_; }
    const T& node(std::size_t i) const { return nodes_.at(i); }
    const T& lo() const { return nodes_.front(); }
    const T& hi() const { return nodes_.back(); }
    std::size_t segment_count() const { return nodes_.size() - 1; }
    std::size_t node_count() const { return nodes_.size(); }
    T span() const { return nodes_.back() - nodes_.front(); }

    bool contains(const T& x) const { return !(x < lo()) && !(hi() < x); }

    /// Index of the segment [x_s, x_{s+1}] containing x; ties at an interior
    /// node resolve to the segment on its right.
    std::size_t segment_of(const T& x) const {
        if (!contains(x))
            throw ValidationError("point outside grid domain");
        auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
        std::size_t idx = static_cast<std::size_t>(it - nodes_.begin());
        if (idx == 0) return 0;
        if (idx >= nodes_.size()) return nodes_.size() - 2;
        return idx - 1;
    }

    T max_segment_length() const {
        T best = nodes_[1] - nodes_[0];
        for (std::size_t i = 2; i < nodes_.size(); ++i)
            best = std::max(best, T(nodes_[i] - nodes_[i - 1]));
        return best;
    }

    bool operator==(const BasicGrid& other) const { return nodes_ == other.nodes_; }

private:
    std::vector<T> nodes_;
};

/// Uniform mesh with `segments` equal pieces on [lo, hi].
template <class T>
BasicGrid<T> uniform_grid(const T& lo, const T& hi, std::size_t segments) {
    if (segments < 1)
        throw ValidationError("uniform_grid needs at least one segment");
    std::vector<T> nodes;
    nodes.reserve(segments + 1);
    for (std::size_t i = 0; i <= segments; ++i)
        nodes.push_back(lo + (hi - lo) * T(static_cast<double>(i)) / T(static_cast<double>(segments)));
    nodes.front() = lo;
    nodes.back() = hi;
    return BasicGrid<T>(std::move(nodes));
}

using Grid = BasicGrid<double>;

} // namespace pwlnet
