#pragma once

#include <algorithm>
#include <functional>

#include "pwlnet/cpwl.hpp"

namespace pwlnet {

/// Modulus of continuity of a CPwL function: sup |f(x)-f(y)| over pairs with
/// |x-y| <= r. Exact: on any window the extrema of f sit on nodes or window
/// endpoints, and it suffices to scan windows anchored at nodes and at
/// node - r.
inline double modulus_estimate(const CpwlFunction& f, double r) {
    if (r < 0) throw ValidationError("modulus_estimate: negative radius");
    const auto& xs = f.grid().nodes();
    const double lo = f.lo(), hi = f.hi();
    if (r >= hi - lo) r = hi - lo;
    std::vector<double> starts;
    starts.reserve(2 * xs.size());
    for (double x : xs) {
        if (x + r <= hi) starts.push_back(x);
        if (x - r >= lo) starts.push_back(x - r);
    }
    if (starts.empty()) starts.push_back(lo);
    double best = 0.0;
    for (double s : starts) {
        const double e = s + r;
        double wmin = std::min(f.eval(s), f.eval(e));
        double wmax = std::max(f.eval(s), f.eval(e));
        auto first = std::upper_bound(xs.begin(), xs.end(), s);
        for (auto it = first; it != xs.end() && *it < e; ++it) {
            double v = f.value(static_cast<std::size_t>(it - xs.begin()));
            wmin = std::min(wmin, v);
            wmax = std::max(wmax, v);
        }
        best = std::max(best, wmax - wmin);
    }
    return best;
}

/// Max |f - interpolant| over a dense uniform sample of [0,1], where the
/// interpolant lives on the uniform mesh with `segments` pieces. The default
/// sample count hits every midpoint of the meshes used in practice.
inline double check_interp_error(const std::function<double(double)>& f, std::size_t segments,
                                 std::size_t samples = 10001) {
    if (samples < 2) throw ValidationError("check_interp_error: need at least two samples");
    CpwlFunction interp = interpolate(f, uniform_grid(0.0, 1.0, segments));
    double worst = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        double x = static_cast<double>(i) / static_cast<double>(samples - 1);
        worst = std::max(worst, std::fabs(f(x) - interp.eval(x)));
    }
    return worst;
}

} // namespace pwlnet
