#include "pwlnet/kst.hpp"

#include <cmath>
#include <utility>

#include "pwlnet/compile.hpp"
#include "pwlnet/modulus.hpp"
#include "pwlnet/rng.hpp"

namespace pwlnet {

namespace {

constexpr double kInnerSlopeCap = 0.30102999566398120; // log10(2)

double inner_arg_cap(const KstProblem& p, std::size_t k) {
    double reach = 0.0;
    for (std::size_t i = 0; i < p.d; ++i)
        reach += p.lambdas[i] * *std::max_element(p.inners[k].values().begin(),
                                                  p.inners[k].values().end());
    return reach;
}

} // namespace

void KstProblem::validate() const {
    if (d == 0) throw ValidationError("kst problem: dimension must be positive");
    if (lambdas.size() != d)
        throw ValidationError("kst problem: need one lambda per coordinate");
    if (inners.size() != 2 * d + 1)
        throw ValidationError("kst problem: need 2d+1 inner functions");
    for (double l : lambdas)
        if (!(l > 0.0) || l > 1.0)
            throw ValidationError("kst problem: lambdas must lie in (0, 1]");
    for (const CpwlFunction& g : inners) {
        if (g.lo() != 0.0 || g.hi() != 1.0)
            throw ValidationError("kst problem: inner functions must live on [0,1]");
        if (g.min_value() < 0.0)
            throw ValidationError("kst problem: inner functions must be nonnegative");
    }
    if (outer.lo() != 0.0 || outer.hi() != static_cast<double>(d))
        throw ValidationError("kst problem: outer function must live on [0, d]");
    for (std::size_t k = 0; k < inners.size(); ++k)
        if (inner_arg_cap(*this, k) > outer.hi())
            throw ValidationError("kst problem: inner sums can leave the outer domain");
}

double eval_kst(const KstProblem& p, const std::vector<double>& x) {
    if (x.size() != p.d) throw ValidationError("eval_kst: wrong input dimension");
    double acc = 0.0;
    for (const CpwlFunction& psi : p.inners) {
        double t = 0.0;
        for (std::size_t i = 0; i < p.d; ++i) t += p.lambdas[i] * psi.eval(x[i]);
        acc += p.outer.eval(t);
    }
    return acc;
}

KstProblem make_demo_problem(std::size_t d, std::uint64_t seed) {
    if (d == 0) throw ValidationError("make_demo_problem: dimension must be positive");
    Rng rng(seed);
    KstProblem p;
    p.d = d;
    const double sqrt2 = std::sqrt(2.0);
    for (std::size_t i = 1; i <= d; ++i) {
        double f = static_cast<double>(i) * sqrt2;
        p.lambdas.push_back((1.0 + (f - std::floor(f))) / 2.0);
    }
    // Inner surrogates carry far more breakpoints than any tested mesh
    // resolves, so the interpolation error scales cleanly with the mesh size
    // instead of collapsing once the mesh catches up with the kinks.
    for (std::size_t k = 0; k < 2 * d + 1; ++k) {
        const std::size_t nb = 600 + rng.index(301);
        std::vector<double> nodes;
        nodes.reserve(nb + 2);
        nodes.push_back(0.0);
        for (std::size_t i = 0; i < nb; ++i)
            nodes.push_back((static_cast<double>(i) + 0.1 + 0.8 * rng.uniform()) /
                            static_cast<double>(nb + 1));
        nodes.push_back(1.0);
        std::vector<double> values;
        values.reserve(nodes.size());
        values.push_back(0.0);
        for (std::size_t s = 0; s + 1 < nodes.size(); ++s) {
            double slope = kInnerSlopeCap * (0.05 + 0.95 * rng.uniform());
            values.push_back(values.back() + slope * (nodes[s + 1] - nodes[s]));
        }
        p.inners.emplace_back(Grid(std::move(nodes)), std::move(values));
    }
    // absolute-value outer. The kink fraction (sqrt(2)-1)/4 is irrational,
    // so no uniform mesh node ever lands on it and the outer interpolation
    // error is genuinely nonzero at every mesh size; typical branch reach is
    // ~0.13*d, safely past the kink.
    const double kink = 0.25 * (std::sqrt(2.0) - 1.0) * static_cast<double>(d);
    std::vector<double> on{0.0, kink, static_cast<double>(d)};
    std::vector<double> ov{kink, 0.0, static_cast<double>(d) - kink};
    p.outer = CpwlFunction(Grid(std::move(on)), std::move(ov));
    p.validate();
    return p;
}

KstNetworkBundle build_kst_network(const KstProblem& p, std::size_t blocks,
                                   std::size_t stages) {
    p.validate();
    if (blocks == 0 || stages == 0)
        throw ValidationError("build_kst_network: blocks and stages must be positive");
    const std::size_t d = p.d;
    const std::size_t branches = 2 * d + 1;
    const double dd = static_cast<double>(d);

    Grid inner_mesh = uniform_grid(0.0, 1.0, blocks * blocks * stages);
    std::vector<ReluNetwork> inner_nets;
    inner_nets.reserve(branches);
    for (const CpwlFunction& psi : p.inners)
        inner_nets.push_back(compile_deep(interpolate_cpwl(psi, inner_mesh), blocks, stages));

    // the outer function compiled on [0,1] via u -> outer(d*u); branch sums
    // are fed in divided by d
    const std::size_t ob = branches * blocks;
    Grid outer_mesh = uniform_grid(0.0, 1.0, ob * ob * stages);
    std::vector<double> ovals;
    ovals.reserve(outer_mesh.node_count());
    for (double u : outer_mesh.nodes())
        ovals.push_back(p.outer.eval(std::min(dd * u, p.outer.hi())));
    ReluNetwork outer_net =
        compile_deep(CpwlFunction(outer_mesh, std::move(ovals)), ob, stages);

    std::vector<ReluNetwork> inner_copies;
    std::vector<std::vector<std::size_t>> inner_map;
    inner_copies.reserve(branches * d);
    inner_map.reserve(branches * d);
    for (std::size_t k = 0; k < branches; ++k)
        for (std::size_t i = 0; i < d; ++i) {
            inner_copies.push_back(inner_nets[k]);
            inner_map.push_back({i});
        }
    ReluNetwork inner_stack = parallel_stack(inner_copies, inner_map, d);

    AffineLayer lam;
    lam.weights.assign(branches, std::vector<double>(branches * d, 0.0));
    lam.biases.assign(branches, 0.0);
    for (std::size_t k = 0; k < branches; ++k)
        for (std::size_t i = 0; i < d; ++i)
            lam.weights[k][k * d + i] = p.lambdas[i] / dd;
    ReluNetwork mixed = compose_serial(affine_network(std::move(lam)), inner_stack);

    std::vector<ReluNetwork> outer_copies(branches, outer_net);
    std::vector<std::vector<std::size_t>> outer_map;
    outer_map.reserve(branches);
    for (std::size_t k = 0; k < branches; ++k) outer_map.push_back({k});
    ReluNetwork outer_stack = parallel_stack(outer_copies, outer_map, branches);

    AffineLayer ones;
    ones.weights.assign(1, std::vector<double>(branches, 1.0));
    ones.biases.assign(1, 0.0);

    KstNetworkBundle b{compose_serial(affine_network(std::move(ones)),
                                      compose_serial(outer_stack, mixed)),
                       blocks,
                       stages,
                       inner_stack.max_width(),
                       outer_stack.max_width(),
                       std::move(inner_nets),
                       std::move(outer_net)};
    return b;
}

double kst_error_bound(const KstProblem& p, std::size_t blocks, std::size_t stages) {
    const double r = static_cast<double>(p.d) * kInnerSlopeCap /
                     (static_cast<double>(blocks * blocks) * static_cast<double>(stages));
    return (6.0 * static_cast<double>(p.d) + 3.0) * modulus_estimate(p.outer, r);
}

double measure_kst_error(const KstProblem& p, const KstNetworkBundle& b, std::size_t samples,
                         std::uint64_t seed) {
    if (samples == 0) throw ValidationError("measure_kst_error: need samples");
    Rng rng(seed);
    std::vector<double> flat(samples * p.d);
    for (double& v : flat) v = rng.uniform();
    std::vector<double> outs = b.net.eval_batch(flat, samples);
    double worst = 0.0;
    std::vector<double> x(p.d);
    for (std::size_t s = 0; s < samples; ++s) {
        for (std::size_t i = 0; i < p.d; ++i) x[i] = flat[s * p.d + i];
        worst = std::max(worst, std::fabs(outs[s] - eval_kst(p, x)));
    }
    return worst;
}

std::vector<KstRateRow> run_kst_experiment(const KstProblem& p,
                                           const std::vector<std::size_t>& blocks_list,
                                           const std::vector<std::size_t>& stages_list,
                                           std::size_t samples, std::uint64_t seed) {
    std::vector<KstRateRow> rows;
    rows.reserve(blocks_list.size() * stages_list.size());
    for (std::size_t N : blocks_list)
        for (std::size_t L : stages_list) {
            KstNetworkBundle b = build_kst_network(p, N, L);
            KstRateRow r;
            r.d = p.d;
            r.blocks = N;
            r.stages = L;
            r.samples = samples;
            // the same seed for every row: common sample points keep the
            // rate curves comparable across configurations
            r.measured_error = measure_kst_error(p, b, samples, seed);
            r.bound = kst_error_bound(p, N, L);
            r.width_inner = b.width_inner;
            r.width_outer = b.width_outer;
            rows.push_back(r);
        }
    return rows;
}

} // namespace pwlnet
