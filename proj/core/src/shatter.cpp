#include "pwlnet/shatter.hpp"

#include "pwlnet/compile.hpp"
#include "pwlnet/rng.hpp"

namespace pwlnet {

std::size_t shatter_mesh_parameter(std::size_t n) {
    std::size_t N = 1;
    while (2 * N * N < n + 1) ++N;
    return N;
}

ReluNetwork realize_pattern(const std::vector<double>& points, const std::vector<int>& signs) {
    if (points.empty() || points.size() != signs.size())
        throw ValidationError("realize_pattern: one sign per point");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!(points[i] > 0.0) || !(points[i] < 1.0))
            throw ValidationError("realize_pattern: points must lie strictly inside (0,1)");
        if (i > 0 && !(points[i - 1] < points[i]))
            throw ValidationError("realize_pattern: points must increase strictly");
        if (signs[i] != 1 && signs[i] != -1)
            throw ValidationError("realize_pattern: signs must be +1 or -1");
    }
    std::vector<double> nodes;
    nodes.reserve(points.size() + 2);
    nodes.push_back(0.0);
    nodes.insert(nodes.end(), points.begin(), points.end());
    nodes.push_back(1.0);
    std::vector<double> values;
    values.reserve(nodes.size());
    values.push_back(static_cast<double>(signs.front()));
    for (int s : signs) values.push_back(static_cast<double>(s));
    values.push_back(static_cast<double>(signs.back()));
    CpwlFunction f(Grid(std::move(nodes)), std::move(values));
    return compile_deep(f, shatter_mesh_parameter(points.size()), 2);
}

ShatterReport run_shatter_experiment(std::size_t n, double delta, std::size_t patterns,
                                     std::uint64_t seed) {
    if (patterns == 0) throw ValidationError("run_shatter_experiment: need patterns");
    Rng rng(seed);
    ShatterReport rep;
    rep.points = sample_separated_points(rng, n, delta);
    for (std::size_t t = 0; t < patterns; ++t) {
        std::vector<int> signs(n);
        for (int& s : signs) s = rng.sign();
        ReluNetwork net = realize_pattern(rep.points, signs);
        bool ok = true;
        for (std::size_t i = 0; i < n; ++i)
            if (sign_of(net.eval1(rep.points[i])) != signs[i]) {
                ok = false;
                break;
            }
        ShatterTrial trial;
        trial.trial = t;
        trial.n_points = n;
        trial.success = ok;
        trial.shatter_count = shatter_count(net);
        trial.bound = static_cast<double>(n) / 6.0;
        if (ok) ++rep.successes;
        rep.trials.push_back(trial);
    }
    return rep;
}

std::vector<GrowthRow> run_growth_experiment(const std::vector<std::size_t>& ns, double delta,
                                             std::uint64_t seed) {
    std::vector<GrowthRow> rows;
    rows.reserve(ns.size());
    for (std::size_t n : ns) {
        ShatterReport rep = run_shatter_experiment(n, delta, 1, seed);
        GrowthRow r;
        r.n_points = n;
        r.shatter_count = rep.trials.front().shatter_count;
        r.success = rep.trials.front().success;
        rows.push_back(r);
    }
    return rows;
}

} // namespace pwlnet
