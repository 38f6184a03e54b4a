#pragma once

#include <cstdint>
#include <vector>

#include "pwlnet/relu_net.hpp"

namespace pwlnet {

/// Sign convention used throughout the classification experiments.
inline int sign_of(double v) { return v < 0.0 ? -1 : 1; }

/// Smallest mesh parameter N such that a depth-3 compiled network
/// (stages = 2) can interpolate any labeling of n separated points: the
/// realizing CPwL function has at most n+1 segments and the capacity is
/// 2*N^2.
std::size_t shatter_mesh_parameter(std::size_t n);

/// Deep network that classifies every point with its sign: the CPwL function
/// through (point_i, sign_i), constant up to the domain endpoints, compiled
/// with compile_deep(N, 2).
ReluNetwork realize_pattern(const std::vector<double>& points, const std::vector<int>& signs);

struct ShatterTrial {
    std::size_t trial = 0;
    std::size_t n_points = 0;
    bool success = false;
    std::size_t shatter_count = 0;
    double bound = 0.0;  // n/6, the capacity a shattering architecture must meet
};

struct ShatterReport {
    std::vector<double> points;
    std::vector<ShatterTrial> trials;
    std::size_t successes = 0;
};

/// Draws one delta-separated point set, then realizes `patterns` random sign
/// assignments on it and verifies each realization classifies every point
/// correctly.
ShatterReport run_shatter_experiment(std::size_t n, double delta, std::size_t patterns,
                                     std::uint64_t seed);

struct GrowthRow {
    std::size_t n_points = 0;
    std::size_t shatter_count = 0;
    bool success = false;
};

/// shatter_count of the realizing architecture as n grows; one realized
/// random pattern per n as a sanity check.
std::vector<GrowthRow> run_growth_experiment(const std::vector<std::size_t>& ns, double delta,
                                             std::uint64_t seed);

} // namespace pwlnet
