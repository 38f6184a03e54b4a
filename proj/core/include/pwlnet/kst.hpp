#pragma once

#include <cstdint>
#include <vector>

#include "pwlnet/cpwl.hpp"
#include "pwlnet/relu_net.hpp"

namespace pwlnet {

namespace detail {
inline CpwlFunction zero_cpwl() {
    return CpwlFunction(Grid(std::vector<double>{0.0, 1.0}), std::vector<double>{0.0, 0.0});
}
inline ReluNetwork zero_network() {
    AffineLayer a;
    a.weights = {{0.0}};
    a.biases = {0.0};
    return ReluNetwork(1, {std::move(a)});
}
} // namespace detail

/// Superposition target on [0,1]^d:
///   f(x) = sum_{k=0}^{2d} outer( sum_{i=1}^{d} lambdas[i] * inners[k](x_i) ).
/// The 2d+1 inner functions live on [0,1] with small nonnegative range; the
/// outer function lives on [0, d], which always covers the inner sums when
/// lambdas and inner ranges stay within [0, 1].
struct KstProblem {
    std::size_t d = 0;
    std::vector<double> lambdas;                 // size d
    std::vector<CpwlFunction> inners;            // size 2d+1, each on [0,1]
    CpwlFunction outer = detail::zero_cpwl();    // on [0, d]

    void validate() const;
};

double eval_kst(const KstProblem& p, const std::vector<double>& x);

/// Reproducible synthetic problem: monotone random CPwL inners with slopes
/// bounded by log10(2), irrational-ratio lambdas, and an absolute-value
/// outer with its kink inside the reachable range of every inner sum.
KstProblem make_demo_problem(std::size_t d, std::uint64_t seed);

/// The compiled network plus the pieces it was assembled from. The full net
/// takes the d coordinates and returns the superposition; its depth is
/// 2*(stages+1): stages+1 hidden layers realize all inner functions in
/// parallel, stages+1 more realize the outer function per branch.
struct KstNetworkBundle {
    ReluNetwork net = detail::zero_network();
    std::size_t blocks = 0;  // mesh parameter N
    std::size_t stages = 0;  // depth parameter L
    std::size_t width_inner = 0;
    std::size_t width_outer = 0;
    std::vector<ReluNetwork> inner_nets;              // one per inner function
    ReluNetwork outer_net = detail::zero_network();   // shared by all 2d+1 branches
};

/// Interpolates every inner on the uniform mesh with blocks^2*stages pieces
/// and the (rescaled) outer on the mesh with ((2d+1)*blocks)^2*stages
/// pieces, compiles each interpolant to depth stages+1, and wires the
/// branches together with exact affine junctions.
KstNetworkBundle build_kst_network(const KstProblem& p, std::size_t blocks,
                                   std::size_t stages);

/// A priori sup-error bound for the compiled network:
///   (6d+3) * omega_outer( d*log10(2) / (blocks^2 * stages) ).
double kst_error_bound(const KstProblem& p, std::size_t blocks, std::size_t stages);

struct KstRateRow {
    std::size_t d = 0;
    std::size_t blocks = 0;
    std::size_t stages = 0;
    std::size_t samples = 0;
    double measured_error = 0.0;
    double bound = 0.0;
    std::size_t width_inner = 0;
    std::size_t width_outer = 0;
};

/// Monte Carlo sup-distance between the compiled network and the exact
/// superposition over `samples` uniform points in [0,1]^d.
double measure_kst_error(const KstProblem& p, const KstNetworkBundle& b, std::size_t samples,
                         std::uint64_t seed);

/// One row per (blocks, stages) pair: build, measure, bound.
std::vector<KstRateRow> run_kst_experiment(const KstProblem& p,
                                           const std::vector<std::size_t>& blocks_list,
                                           const std::vector<std::size_t>& stages_list,
                                           std::size_t samples, std::uint64_t seed);

} // namespace pwlnet
