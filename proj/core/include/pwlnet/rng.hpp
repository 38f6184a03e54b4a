#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pwlnet/cpwl.hpp"

namespace pwlnet {

/// Deterministic random source. Draws doubles from the raw mt19937_64
/// stream instead of std::uniform_real_distribution, whose output is
/// implementation-defined; every platform reproduces the same sequence.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Uniform index in [0, n), rejection-sampled to avoid modulo bias.
    std::size_t index(std::size_t n) {
        if (n == 0) throw ValidationError("Rng::index: empty range");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = eng_();
        while (v >= limit) v = eng_();
        return static_cast<std::size_t>(v % n);
    }

    int sign() { return (eng_() & 1u) ? 1 : -1; }

private:
    std::mt19937_64 eng_;
};

/// Random mesh of [lo, hi] with every segment at least `min_gap` long,
/// distributed as sorted uniforms conditioned on that separation. Built
/// directly (uniforms in the slack interval plus the mandatory gaps), so no
/// rejection loop is needed even when the separation nearly exhausts the
/// domain.
inline Grid random_grid(Rng& rng, std::size_t segments, double min_gap, double lo = 0.0,
                        double hi = 1.0) {
    if (segments < 1) throw ValidationError("random_grid: need at least one segment");
    if (min_gap <= 0) throw ValidationError("random_grid: min_gap must be positive");
    const double span = hi - lo;
    const double slack = span - static_cast<double>(segments) * min_gap;
    if (slack < 0)
        throw ValidationError("random_grid: min_gap too large for the segment count");
    std::vector<double> u(segments - 1);
    for (double& v : u) v = rng.uniform() * slack;
    std::sort(u.begin(), u.end());
    std::vector<double> nodes;
    nodes.reserve(segments + 1);
    nodes.push_back(lo);
    for (std::size_t i = 0; i < u.size(); ++i)
        nodes.push_back(lo + u[i] + static_cast<double>(i + 1) * min_gap);
    nodes.push_back(hi);
    return Grid(std::move(nodes));
}

/// Random CPwL target: random separated mesh, independent uniform values.
inline CpwlFunction random_cpwl(Rng& rng, std::size_t segments, double min_gap, double vmin,
                                double vmax) {
    Grid g = random_grid(rng, segments, min_gap);
    std::vector<double> values;
    values.reserve(g.node_count());
    for (std::size_t i = 0; i < g.node_count(); ++i) values.push_back(rng.uniform(vmin, vmax));
    return CpwlFunction(std::move(g), std::move(values));
}

/// n points in (0, 1), pairwise at least `delta` apart and at least `delta`
/// from both endpoints, distributed as sorted uniforms conditioned on the
/// separation. Same direct construction as random_grid.
inline std::vector<double> sample_separated_points(Rng& rng, std::size_t n, double delta) {
    if (n == 0) throw ValidationError("sample_separated_points: n must be positive");
    if (delta <= 0) throw ValidationError("sample_separated_points: delta must be positive");
    const double slack = 1.0 - static_cast<double>(n + 1) * delta;
    if (slack < 0)
        throw ValidationError("sample_separated_points: delta too large for n points");
    std::vector<double> u(n);
    for (double& v : u) v = rng.uniform() * slack;
    std::sort(u.begin(), u.end());
    std::vector<double> pts(n);
    for (std::size_t i = 0; i < n; ++i)
        pts[i] = u[i] + static_cast<double>(i + 1) * delta;
    return pts;
}

} // namespace pwlnet
