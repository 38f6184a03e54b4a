// End-to-end acceptance runs: one criterion per section, one PASS/FAIL line
// each, exit code = number of failures. Tolerances and seeds are pinned so
// reruns are bit-for-bit comparable.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "pwlnet/pwlnet.hpp"

using namespace pwlnet;

namespace {

constexpr double kTwoLayerRelTol = 1e-8;      // scaled by 1 + max|values|
constexpr double kDeepAbsTol = 1e-8;
constexpr double kInterpTol = 1e-10;
constexpr double kBoundSlack = 1e-9;
constexpr double kSlopeNLo = -2.3, kSlopeNHi = -1.7;
constexpr double kSlopeLLo = -1.3, kSlopeLHi = -0.7;
constexpr double kGrowthR2Min = 0.95;
constexpr double kTwoLayerBudgetSec = 60.0;
constexpr double kDeepBudgetSec = 60.0;
constexpr double kKstBudgetSec = 300.0;

constexpr std::uint64_t kSeedTwoLayer = 1001;
constexpr std::uint64_t kSeedDeep = 1002;
constexpr std::uint64_t kSeedDecomp = 1003;
constexpr std::uint64_t kSeedShatter = 1006;
constexpr std::uint64_t kSeedGrowth = 1007;
constexpr std::uint64_t kSeedRender = 1008;
constexpr std::uint64_t kKstDemoSeed = 13;
constexpr std::uint64_t kKstSampleSeed = 99;
constexpr std::size_t kKstSamples = 4000;

struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

int failures = 0;

void report(const char* name, bool pass, const std::string& details) {
    std::printf("%s %s (%s)\n", pass ? "PASS" : "FAIL", name, details.c_str());
    if (!pass) ++failures;
}

std::string fmt(const char* f, ...) {
    char buf[256];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// 1. two-layer compilation: exact representation at the promised widths
void criterion_exact_representation() {
    Stopwatch sw;
    Rng rng(kSeedTwoLayer);
    double worst_rel = 0.0;
    std::size_t bad_width = 0, cases = 0;
    std::vector<CpwlFunction> rational_pool;
    std::vector<std::pair<std::size_t, std::size_t>> rational_cfg;
    for (std::size_t N = 4; N <= 10; ++N) {
        for (std::size_t M = 4; M <= 10; ++M) {
            for (int rep = 0; rep < 100; ++rep) {
                CpwlFunction target = random_cpwl(rng, N * M, 1e-4, -10.0, 10.0);
                ReluNetwork net = compile_two_layer(target, N, M);
                auto widths = net.architecture().hidden_widths;
                if (widths != std::vector<std::size_t>{3 * N + 1, 3 * (M - 2)}) ++bad_width;
                double scale = kTwoLayerRelTol * (1.0 + target.max_abs_value());
                double dist = network_cpwl_distance(net, target);
                worst_rel = std::max(worst_rel, dist / scale);
                ++cases;
                if (rep == 0 && (N + M) % 3 == 0 && rational_pool.size() < 10) {
                    rational_pool.push_back(target);
                    rational_cfg.emplace_back(N, M);
                }
            }
        }
    }
    std::size_t rational_bad = 0;
    for (std::size_t i = 0; i < rational_pool.size(); ++i) {
        auto q = convert_cpwl<Rational>(rational_pool[i]);
        auto net = compile_two_layer(q, rational_cfg[i].first, rational_cfg[i].second);
        if (sup_distance(to_cpwl<Rational>(net, q.lo(), q.hi()), q) != Rational(0))
            ++rational_bad;
    }
    double el = sw.seconds();
    bool pass = worst_rel <= 1.0 && bad_width == 0 && rational_bad == 0 &&
                rational_pool.size() == 10 && el < kTwoLayerBudgetSec;
    report("exact-representation", pass,
           fmt("%zu cases, worst dist / tol = %.3e, width mismatches %zu, "
               "exact-mode failures %zu/%zu, %.1fs",
               cases, worst_rel, bad_width, rational_bad, rational_pool.size(), el));
}

// 2. width-to-depth conversion stays exact within the width cap
void criterion_depth_conversion() {
    Stopwatch sw;
    Rng rng(kSeedDeep);
    double worst = 0.0;
    std::size_t bad_shape = 0, cases = 0;
    const std::size_t Ns[] = {3, 5};
    const std::size_t Ls[] = {1, 2, 4};
    while (cases < 50) {
        std::size_t N = Ns[rng.index(2)];
        std::size_t L = Ls[rng.index(3)];
        std::size_t segs = 1 + rng.index(N * N * L);
        CpwlFunction target = random_cpwl(rng, segs, 1e-3, -10.0, 10.0);
        ReluNetwork net = compile_deep(target, N, L);
        if (net.depth() != L + 1 || net.max_width() > 6 * N + 4) ++bad_shape;
        worst = std::max(worst, network_cpwl_distance(net, target));
        ++cases;
    }
    double el = sw.seconds();
    bool pass = worst <= kDeepAbsTol && bad_shape == 0 && el < kDeepBudgetSec;
    report("depth-conversion", pass,
           fmt("%zu cases, worst dist %.3e vs %.0e, shape violations %zu, %.1fs", cases,
               worst, kDeepAbsTol, bad_shape, el));
}

// 3. the block decomposition identity holds with zero violations
void criterion_block_decomposition() {
    Rng rng(kSeedDecomp);
    std::size_t violations = 0;
    double worst_dev = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        std::size_t N = 3 + rng.index(6);
        std::size_t M = 3 + rng.index(6);
        CpwlFunction target = random_cpwl(rng, N * M, 1e-3, -10.0, 10.0);
        auto r = verify_block_decomposition(target, N, M);
        violations += r.violations;
        worst_dev = std::max({worst_dev, r.max_profile_dev, r.max_sum_dev});
    }
    report("block-decomposition", violations == 0,
           fmt("20 plans, %zu violations, worst deviation %.3e", violations, worst_dev));
}

// 4. interpolation error of x^2 equals h^2/4 exactly
void criterion_interpolation_error() {
    double worst = 0.0;
    for (std::size_t n : {5, 10, 50}) {
        double measured = check_interp_error([](double x) { return x * x; }, n);
        double expected = 0.25 / (static_cast<double>(n) * static_cast<double>(n));
        worst = std::max(worst, std::fabs(measured - expected));
    }
    report("interpolation-error", worst <= kInterpTol,
           fmt("max |measured - h^2/4| = %.3e vs %.0e", worst, kInterpTol));
}

// 5. superposition rate: error ~ N^-2 L^-1 and under the a priori bound
void criterion_superposition_rate() {
    Stopwatch sw;
    KstProblem p = make_demo_problem(2, kKstDemoSeed);
    auto rows_n = run_kst_experiment(p, {2, 4, 8, 16}, {1}, kKstSamples, kKstSampleSeed);
    auto rows_l = run_kst_experiment(p, {4}, {1, 2, 4, 8}, kKstSamples, kKstSampleSeed);
    std::size_t over_bound = 0;
    std::vector<double> lx, ly;
    for (const auto& r : rows_n) {
        if (r.measured_error > r.bound + kBoundSlack) ++over_bound;
        lx.push_back(std::log10(static_cast<double>(r.blocks)));
        ly.push_back(std::log10(r.measured_error));
    }
    LinearFit fit_n = fit_line(lx, ly);
    lx.clear();
    ly.clear();
    for (const auto& r : rows_l) {
        if (r.measured_error > r.bound + kBoundSlack) ++over_bound;
        lx.push_back(std::log10(static_cast<double>(r.stages)));
        ly.push_back(std::log10(r.measured_error));
    }
    LinearFit fit_l = fit_line(lx, ly);
    double el = sw.seconds();
    bool pass = fit_n.slope >= kSlopeNLo && fit_n.slope <= kSlopeNHi &&
                fit_l.slope >= kSlopeLLo && fit_l.slope <= kSlopeLHi && over_bound == 0 &&
                el < kKstBudgetSec;
    report("superposition-rate", pass,
           fmt("slope vs N %.4f in [%.1f,%.1f], slope vs L %.4f in [%.1f,%.1f], "
               "bound misses %zu, %.1fs",
               fit_n.slope, kSlopeNLo, kSlopeNHi, fit_l.slope, kSlopeLLo, kSlopeLHi,
               over_bound, el));
}

// 6. every random labeling is realized and capacity grows linearly
void criterion_shattering() {
    std::size_t missed = 0, under_capacity = 0;
    for (std::size_t n : {8, 32, 100}) {
        ShatterReport rep = run_shatter_experiment(n, 1e-3, 20, kSeedShatter);
        missed += 20 - rep.successes;
        for (const auto& t : rep.trials)
            if (static_cast<double>(t.shatter_count) < t.bound) ++under_capacity;
    }
    auto growth = run_growth_experiment({16, 32, 64, 128, 256}, 1e-3, kSeedGrowth);
    std::vector<double> xs, ys;
    for (const auto& r : growth) {
        if (!r.success) ++missed;
        xs.push_back(static_cast<double>(r.n_points));
        ys.push_back(static_cast<double>(r.shatter_count));
    }
    LinearFit fit = fit_line(xs, ys);
    bool pass = missed == 0 && under_capacity == 0 && fit.r2 >= kGrowthR2Min;
    report("shattering", pass,
           fmt("60 patterns, %zu misses, %zu capacity shortfalls, growth R^2 %.4f >= %.2f",
               missed, under_capacity, fit.r2, kGrowthR2Min));
}

// 7. the region engine recovers exact breakpoints and is a left inverse of
// rendering
void criterion_region_engine() {
    ReluNetwork hh(1, {AffineLayer{{{2.0}, {2.0}}, {0.0, -1.0}},
                       AffineLayer{{{2.0, -4.0}, {2.0, -4.0}}, {0.0, -1.0}},
                       AffineLayer{{{1.0, -2.0}}, {0.0}}});
    CpwlFunction folded = to_cpwl(hh);
    bool hat_ok = folded.grid().nodes() == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0} &&
                  folded.values() == std::vector<double>{0.0, 1.0, 0.0, 1.0, 0.0};

    Rng rng(kSeedRender);
    std::size_t mismatches = 0;
    for (int rep = 0; rep < 100; ++rep) {
        std::size_t interior = 1 + rng.index(20);
        RampSum r;
        r.lo = 0.0;
        r.hi = 1.0;
        r.anchors.push_back(0.0);
        for (double p : sample_separated_points(rng, interior, 5e-3))
            r.anchors.push_back(p);
        r.bias = rng.uniform(-5.0, 5.0);
        for (std::size_t j = 0; j < r.anchors.size(); ++j)
            r.weights.push_back(rng.uniform(0.1, 4.0) * static_cast<double>(rng.sign()));
        CpwlFunction direct = prune_collinear(ramp_to_cpwl(r));
        CpwlFunction via_net = to_cpwl(render_network(r));
        if (via_net.grid().nodes() != direct.grid().nodes() ||
            via_net.values() != direct.values())
            ++mismatches;
    }
    report("region-engine", hat_ok && mismatches == 0,
           fmt("folded hats %s, %zu render round-trip mismatches of 100",
               hat_ok ? "exact" : "wrong", mismatches));
}

}  // namespace

int main() {
    criterion_exact_representation();
    criterion_depth_conversion();
    criterion_block_decomposition();
    criterion_interpolation_error();
    criterion_superposition_rate();
    criterion_shattering();
    criterion_region_engine();
    if (failures == 0) std::printf("all acceptance criteria passed\n");
    return failures;
}
