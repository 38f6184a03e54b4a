#pragma once

#include <cmath>
#include <cstdlib>

namespace pwlnet {

// Scalar policy for the representation/compilation machinery. Everything in
// grid.hpp / cpwl.hpp / relu_net.hpp / ramp.hpp / compile.hpp is templated on
// the scalar so the same construction runs in double precision or in exact
// rational arithmetic (see rational.hpp).
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
    static constexpr bool is_exact = false;

    // Breakpoints closer than this fraction of the domain span are merged.
    static double merge_tol(double span) { return 1e-12 * span; }

    // Relative tolerance for "left slope equals right slope" when pruning.
    static double prune_tol() { return 1e-12; }

    static double abs(double v) { return std::fabs(v); }
    static double fma(double a, double b, double c) { return std::fma(a, b, c); }
    static double from_double(double v) { return v; }
    static double to_double(double v) { return v; }
};

template <class T>
double to_double(const T& v) {
    return ScalarTraits<T>::to_double(v);
}

template <class T>
T scalar_abs(const T& v) {
    return ScalarTraits<T>::abs(v);
}

// Compensated accumulator: Neumaier two-sum with the rounding error of every
// product recovered through fma. Compiled ramp weights can be nine orders of
// magnitude larger than the function values they cancel down to, so anything
// whose error scales with the sum of term magnitudes (plain or Kahan
// summation) would eat the whole exactness budget; this keeps the error at a
// few ulps of the running result. For exact scalars every correction term is
// identically zero and it degenerates to a plain sum.
template <class T>
struct Accum {
    T sum{0};
    T carry{0};

    void add(const T& x) {
        T t = sum + x;
        if (scalar_abs(sum) < scalar_abs(x))
            carry += (x - t) + sum;
        else
            carry += (sum - t) + x;
        sum = t;
    }

    void add_prod(const T& a, const T& b) {
        T p = a * b;
        carry += ScalarTraits<T>::fma(a, b, -p);
        add(p);
    }

    T total() const { return sum + carry; }
};

} // namespace pwlnet
