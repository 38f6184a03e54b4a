// pwlc: compile CPwL targets to ReLU networks, convert networks back, and
// run the rate / shattering experiments from the command line.
//
// Exit codes: 0 ok, 1 validation or verification failure, 2 usage or IO.

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pwlnet/pwlnet.hpp"

namespace {

using namespace pwlnet;

struct CompileArgs {
    std::string target, out;
    std::size_t blocks = 0, block_size = 0;
    bool exact = false;
};

// Targets with fewer segments than the architecture expects are padded with
// collinear nodes first, so any target up to blocks * block_size pieces fits.
int run_compile(const CompileArgs& a) {
    if (a.exact) {
        auto f = pad_segments(read_cpwl_rational(a.target), a.blocks * a.block_size);
        auto net = compile_two_layer(f, a.blocks, a.block_size);
        write_network(a.out, net);
    } else {
        auto f = pad_segments(read_cpwl(a.target), a.blocks * a.block_size);
        auto net = compile_two_layer(f, a.blocks, a.block_size);
        write_network(a.out, net);
    }
    std::printf("wrote %s\n", a.out.c_str());
    return 0;
}

struct DeepenArgs {
    std::string target, out;
    std::size_t blocks = 0, stages = 0;
    bool exact = false;
};

int run_deepen(const DeepenArgs& a) {
    if (a.exact) {
        auto net = compile_deep(read_cpwl_rational(a.target), a.blocks, a.stages);
        write_network(a.out, net);
    } else {
        auto net = compile_deep(read_cpwl(a.target), a.blocks, a.stages);
        write_network(a.out, net);
    }
    std::printf("wrote %s\n", a.out.c_str());
    return 0;
}

struct VerifyArgs {
    std::string net, target;
    double tol = -1.0;  // unset sentinel; default depends on mode
    bool exact = false;
};

int run_verify(const VerifyArgs& a) {
    if (a.exact) {
        Rational tol = a.tol < 0 ? Rational(0) : Rational(a.tol);
        Rational dist = network_cpwl_distance(read_network_rational(a.net),
                                              read_cpwl_rational(a.target));
        std::ostringstream os;
        os << dist;
        std::printf("distance %s\n", os.str().c_str());
        return dist <= tol ? 0 : 1;
    }
    double tol = a.tol < 0 ? 1e-8 : a.tol;
    double dist = network_cpwl_distance(read_network(a.net), read_cpwl(a.target));
    std::printf("distance %.17g\n", dist);
    return dist <= tol ? 0 : 1;
}

struct ToCpwlArgs {
    std::string net, out;
    double lo = 0.0, hi = 1.0;
    bool exact = false;
};

int run_to_cpwl(const ToCpwlArgs& a) {
    if (a.exact) {
        auto f = to_cpwl(read_network_rational(a.net), Rational(a.lo), Rational(a.hi));
        write_cpwl(a.out, f);
        std::printf("wrote %s (%zu nodes)\n", a.out.c_str(), f.grid().node_count());
    } else {
        auto f = to_cpwl(read_network(a.net), a.lo, a.hi);
        write_cpwl(a.out, f);
        std::printf("wrote %s (%zu nodes)\n", a.out.c_str(), f.grid().node_count());
    }
    return 0;
}

int run_interp_error(const std::vector<std::size_t>& segments, std::size_t samples) {
    std::printf("%10s %16s %16s %12s\n", "segments", "measured", "h^2/4", "deviation");
    for (std::size_t n : segments) {
        double measured = check_interp_error([](double x) { return x * x; }, n, samples);
        double predicted = 0.25 / (static_cast<double>(n) * static_cast<double>(n));
        std::printf("%10zu %16.9e %16.9e %12.3e\n", n, measured, predicted,
                    std::fabs(measured - predicted));
    }
    return 0;
}

struct KstRateArgs {
    std::string problem, out;
    std::size_t d = 2;
    std::uint64_t seed = 13, sample_seed = 99;
    std::vector<std::size_t> blocks, stages;
    std::size_t samples = 2000;
    bool check_bound = false;
};

int run_kst_rate(const KstRateArgs& a) {
    KstProblem p = a.problem.empty() ? make_demo_problem(a.d, a.seed)
                                     : read_kst_problem(a.problem);
    auto rows = run_kst_experiment(p, a.blocks, a.stages, a.samples, a.sample_seed);
    std::size_t over = 0;
    for (const auto& r : rows) {
        std::printf("d=%zu N=%-3zu L=%-3zu error=%.6e bound=%.6e\n", r.d, r.blocks,
                    r.stages, r.measured_error, r.bound);
        if (r.measured_error > r.bound + 1e-9) ++over;
    }
    if (!a.out.empty()) {
        write_kst_csv(a.out, rows);
        std::printf("wrote %s\n", a.out.c_str());
    }
    if (a.check_bound && over > 0) {
        std::fprintf(stderr, "%zu of %zu rows exceed the a priori bound\n", over,
                     rows.size());
        return 1;
    }
    return 0;
}

struct ShatterArgs {
    std::string out;
    std::size_t points = 0, patterns = 20;
    double delta = 1e-3;
    std::uint64_t seed = 7;
};

int run_shatter(const ShatterArgs& a) {
    ShatterReport rep = run_shatter_experiment(a.points, a.delta, a.patterns, a.seed);
    std::printf("realized %zu of %zu patterns on %zu points\n", rep.successes,
                rep.trials.size(), a.points);
    if (!rep.trials.empty()) {
        const auto& t = rep.trials.front();
        std::printf("shatter count %zu, required %g\n", t.shatter_count, t.bound);
    }
    if (!a.out.empty()) {
        write_shatter_csv(a.out, rep);
        std::printf("wrote %s\n", a.out.c_str());
    }
    return rep.successes == rep.trials.size() ? 0 : 1;
}

struct GrowthArgs {
    std::string out;
    std::vector<std::size_t> points;
    double delta = 1e-3;
    std::uint64_t seed = 7;
};

int run_growth(const GrowthArgs& a) {
    auto rows = run_growth_experiment(a.points, a.delta, a.seed);
    bool all_ok = true;
    std::vector<double> xs, ys;
    for (const auto& r : rows) {
        std::printf("n=%-5zu shatter_count=%-8zu %s\n", r.n_points, r.shatter_count,
                    r.success ? "ok" : "FAILED");
        all_ok = all_ok && r.success;
        xs.push_back(static_cast<double>(r.n_points));
        ys.push_back(static_cast<double>(r.shatter_count));
    }
    if (rows.size() >= 2) {
        LinearFit fit = fit_line(xs, ys);
        std::printf("linear fit slope %.4f, r^2 %.4f\n", fit.slope, fit.r2);
    }
    if (!a.out.empty()) {
        write_growth_csv(a.out, rows);
        std::printf("wrote %s\n", a.out.c_str());
    }
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"CPwL <-> ReLU network compiler and experiment driver"};
    app.require_subcommand(1);

    CompileArgs ca;
    auto* compile = app.add_subcommand("compile", "two-layer network for a CPwL target");
    compile->add_option("--target", ca.target, "CPwL JSON file")->required();
    compile->add_option("--blocks", ca.blocks, "block count N")->required();
    compile->add_option("--block-size", ca.block_size, "segments per block M")->required();
    compile->add_option("--out", ca.out, "network JSON output")->required();
    compile->add_flag("--exact", ca.exact, "rational arithmetic end to end");

    DeepenArgs da;
    auto* deepen = app.add_subcommand("deepen", "deep network for a CPwL target");
    deepen->add_option("--target", da.target, "CPwL JSON file")->required();
    deepen->add_option("--blocks", da.blocks, "width parameter N")->required();
    deepen->add_option("--stages", da.stages, "depth parameter L")->required();
    deepen->add_option("--out", da.out, "network JSON output")->required();
    deepen->add_flag("--exact", da.exact, "rational arithmetic end to end");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "sup distance between network and target");
    verify->add_option("--net", va.net, "network JSON file")->required();
    verify->add_option("--target", va.target, "CPwL JSON file")->required();
    verify->add_option("--tol", va.tol, "pass threshold (default 1e-8, exact mode 0)");
    verify->add_flag("--exact", va.exact, "rational arithmetic end to end");

    ToCpwlArgs ta;
    auto* tocpwl = app.add_subcommand("to-cpwl", "CPwL form of a scalar network");
    tocpwl->add_option("--net", ta.net, "network JSON file")->required();
    tocpwl->add_option("--out", ta.out, "CPwL JSON output")->required();
    tocpwl->add_option("--lo", ta.lo, "domain left end (default 0)");
    tocpwl->add_option("--hi", ta.hi, "domain right end (default 1)");
    tocpwl->add_flag("--exact", ta.exact, "rational arithmetic end to end");

    std::vector<std::size_t> ie_segments{5, 10, 50};
    std::size_t ie_samples = 10001;
    auto* interp = app.add_subcommand("interp-error", "interpolation error of x^2 on uniform meshes");
    interp->add_option("--segments", ie_segments, "mesh sizes (repeatable)");
    interp->add_option("--samples", ie_samples, "sample count for the sup");

    KstRateArgs ka;
    auto* kst = app.add_subcommand("kst-rate", "superposition approximation rate sweep");
    kst->add_option("--problem", ka.problem, "problem JSON (omit for the built-in demo)");
    kst->add_option("--d", ka.d, "demo dimension (default 2)");
    kst->add_option("--seed", ka.seed, "demo construction seed (default 13)");
    kst->add_option("--blocks", ka.blocks, "width parameters N (repeatable)")->required();
    kst->add_option("--stages", ka.stages, "depth parameters L (repeatable)")->required();
    kst->add_option("--samples", ka.samples, "Monte Carlo samples per row");
    kst->add_option("--sample-seed", ka.sample_seed, "Monte Carlo seed");
    kst->add_option("--out", ka.out, "CSV output path");
    kst->add_flag("--check-bound", ka.check_bound, "exit 1 if any row exceeds the bound");

    ShatterArgs sa;
    auto* shatter = app.add_subcommand("shatter", "realize random sign patterns on a point set");
    shatter->add_option("--points", sa.points, "point count")->required();
    shatter->add_option("--delta", sa.delta, "minimum point separation");
    shatter->add_option("--patterns", sa.patterns, "random patterns to try");
    shatter->add_option("--seed", sa.seed, "RNG seed");
    shatter->add_option("--out", sa.out, "CSV output path");

    GrowthArgs ga;
    auto* growth = app.add_subcommand("growth", "shatter capacity growth over point counts");
    growth->add_option("--points", ga.points, "point counts (repeatable)")->required();
    growth->add_option("--delta", ga.delta, "minimum point separation");
    growth->add_option("--seed", ga.seed, "RNG seed");
    growth->add_option("--out", ga.out, "CSV output path");

    try {
        app.parse(argc, argv);
        if (*compile) return run_compile(ca);
        if (*deepen) return run_deepen(da);
        if (*verify) return run_verify(va);
        if (*tocpwl) return run_to_cpwl(ta);
        if (*interp) return run_interp_error(ie_segments, ie_samples);
        if (*kst) return run_kst_rate(ka);
        if (*shatter) return run_shatter(sa);
        if (*growth) return run_growth(ga);
        return 2;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const pwlnet::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 2;
    } catch (const pwlnet::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
