#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <iterator>
#include <utility>
#include <vector>

#include "pwlnet/grid.hpp"

namespace pwlnet {

/// Continuous piecewise-linear function on [lo, hi]: a grid plus one value
/// per node, linear on each segment. The canonical exact representation used
/// throughout; evaluation at a node returns the stored value untouched.
template <class T>
class BasicCpwl {
public:
    BasicCpwl(BasicGrid<T> grid, std::vector<T> values)
        : grid_(std::move(grid)), values_(std::move(values)) {
        if (values_.size() != grid_.node_count())
            throw ValidationError("cpwl needs exactly one value per grid node");
    }

    const BasicGrid<T>& grid() const { return grid_; }
    const std::vector<T>& values() const { return values_; }
    const T& value(std::size_t i) const { return values_.at(i); }
    std::size_t segment_count() const { return grid_.segment_count(); }
    const T& lo() const { return grid_.lo(); }
    const T& hi() const { return grid_.hi(); }

    T eval(const T& x) const {
        if (!grid_.contains(x))
            throw ValidationError("cpwl evaluated outside its domain");
        const auto& xs = grid_.nodes();
        std::size_t s = grid_.segment_of(x);
        if (x == xs[s]) return values_[s];
        if (x == xs[s + 1]) return values_[s + 1];
        T t = (x - xs[s]) / (xs[s + 1] - xs[s]);
        return values_[s] + t * (values_[s + 1] - values_[s]);
    }

    T slope(std::size_t segment) const {
        const auto& xs = grid_.nodes();
        return (values_[segment + 1] - values_[segment]) / (xs[segment + 1] - xs[segment]);
    }

    T min_value() const {
        T best = values_.front();
        for (const T& v : values_) best = std::min(best, v);
        return best;
    }

    T max_abs_value() const {
        T best = scalar_abs(values_.front());
        for (const T& v : values_) best = std::max(best, scalar_abs(v));
        return best;
    }

private:
    BasicGrid<T> grid_;
    std::vector<T> values_;
};

using CpwlFunction = BasicCpwl<double>;

/// Builds a CPwL function from possibly messy (node, value) pairs: sorts by
/// node and merges breakpoints closer than the merge tolerance, keeping the
/// left value.
template <class T>
BasicCpwl<T> make_cpwl_merged(std::vector<std::pair<T, T>> points) {
    if (points.size() < 2)
        throw ValidationError("cpwl needs at least two points");
    std::sort(points.begin(), points.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    const T tol = ScalarTraits<T>::merge_tol(points.back().first - points.front().first);
    std::vector<T> nodes, values;
    nodes.push_back(points[0].first);
    values.push_back(points[0].second);
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i].first - nodes.back() > tol) {
            nodes.push_back(points[i].first);
            values.push_back(points[i].second);
        }
    }
    if (nodes.size() < 2)
        throw ValidationError("all points merged into a single node");
    return BasicCpwl<T>(BasicGrid<T>(std::move(nodes)), std::move(values));
}

/// Nodal basis at node i: 1 at x_i, falling linearly to 0 at the adjacent
/// nodes, 0 elsewhere. Boundary nodes use the one-sided branch only.
template <class T>
T nodal_basis(const BasicGrid<T>& g, std::size_t i, const T& x) {
    if (i >= g.node_count())
        throw ValidationError("nodal_basis index out of range");
    if (!g.contains(x))
        throw ValidationError("nodal_basis point outside domain");
    const auto& xs = g.nodes();
    if (i > 0 && !(x < xs[i - 1]) && !(xs[i] < x))
        return (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    if (i + 1 < xs.size() && !(x < xs[i]) && !(xs[i + 1] < x))
        return (x - xs[i + 1]) / (xs[i] - xs[i + 1]);
    return T(0);
}

/// CPwL interpolant of `f` on `g`: matches the oracle at every node.
inline CpwlFunction interpolate(const std::function<double(double)>& f, const Grid& g) {
    std::vector<double> values;
    values.reserve(g.node_count());
    for (double x : g.nodes()) values.push_back(f(x));
    return CpwlFunction(g, std::move(values));
}

/// Interpolant of an existing CPwL function on another grid.
template <class T>
BasicCpwl<T> interpolate_cpwl(const BasicCpwl<T>& f, const BasicGrid<T>& g) {
    std::vector<T> values;
    values.reserve(g.node_count());
    for (const T& x : g.nodes()) values.push_back(f.eval(x));
    return BasicCpwl<T>(g, std::move(values));
}

/// Union of both node sets (dedup within merge tolerance, left node kept).
template <class T>
BasicGrid<T> merge_grids(const BasicGrid<T>& a, const BasicGrid<T>& b) {
    if (a.lo() != b.lo() || a.hi() != b.hi())
        throw ValidationError("merge_grids requires identical domains");
    std::vector<T> merged;
    merged.reserve(a.node_count() + b.node_count());
    std::merge(a.nodes().begin(), a.nodes().end(), b.nodes().begin(), b.nodes().end(),
               std::back_inserter(merged));
    const T tol = ScalarTraits<T>::merge_tol(a.hi() - a.lo());
    std::vector<T> nodes;
    nodes.push_back(merged.front());
    for (std::size_t i = 1; i < merged.size(); ++i)
        if (merged[i] - nodes.back() > tol) nodes.push_back(merged[i]);
    // the right endpoint must survive merging
    nodes.back() = a.hi();
    return BasicGrid<T>(std::move(nodes));
}

/// Exact L-inf distance between two CPwL functions on a common domain. The
/// difference is CPwL, so its extrema sit on the merged breakpoint set.
template <class T>
T sup_distance(const BasicCpwl<T>& f, const BasicCpwl<T>& g) {
    BasicGrid<T> m = merge_grids(f.grid(), g.grid());
    T best(0);
    for (const T& x : m.nodes())
        best = std::max(best, T(scalar_abs(T(f.eval(x) - g.eval(x)))));
    return best;
}

/// Canonical minimal form: drops interior nodes where the left and right
/// slopes agree within the scalar's pruning tolerance.
template <class T>
BasicCpwl<T> prune_collinear(const BasicCpwl<T>& f) {
    const auto& xs = f.grid().nodes();
    const auto& vs = f.values();
    if (xs.size() == 2) return f;
    const T rel = ScalarTraits<T>::prune_tol();
    std::vector<T> nodes{xs[0]}, values{vs[0]};
    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
        T left = (vs[i] - values.back()) / (xs[i] - nodes.back());
        T right = (vs[i + 1] - vs[i]) / (xs[i + 1] - xs[i]);
        T scale = std::max(T(1), std::max(scalar_abs(left), scalar_abs(right)));
        if (scalar_abs(T(left - right)) > rel * scale) {
            nodes.push_back(xs[i]);
            values.push_back(vs[i]);
        }
    }
    nodes.push_back(xs.back());
    values.push_back(vs.back());
    return BasicCpwl<T>(BasicGrid<T>(std::move(nodes)), std::move(values));
}

/// Exact lossless scalar conversion, e.g. double -> Rational.
template <class To, class From>
BasicCpwl<To> convert_cpwl(const BasicCpwl<From>& f) {
    std::vector<To> nodes, values;
    nodes.reserve(f.grid().node_count());
    values.reserve(f.grid().node_count());
    for (const From& x : f.grid().nodes())
        nodes.push_back(ScalarTraits<To>::from_double(ScalarTraits<From>::to_double(x)));
    for (const From& v : f.values())
        values.push_back(ScalarTraits<To>::from_double(ScalarTraits<From>::to_double(v)));
    return BasicCpwl<To>(BasicGrid<To>(std::move(nodes)), std::move(values));
}

} // namespace pwlnet
