#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "pwlnet/scalar.hpp"

namespace pwlnet {

// Exact arithmetic backend. Conversion from double is exact (every finite
// double is a dyadic rational), so a grid loaded from JSON can be promoted
// losslessly and the whole compile -> to_cpwl -> sup_distance chain run with
// zero rounding error.
using Rational = boost::multiprecision::cpp_rational;

template <>
struct ScalarTraits<Rational> {
    static constexpr bool is_exact = true;

    static Rational merge_tol(const Rational&) { return Rational(0); }
    static Rational prune_tol() { return Rational(0); }

    static Rational abs(const Rational& v) { return v < 0 ? Rational(-v) : v; }
    static Rational fma(const Rational& a, const Rational& b, const Rational& c) {
        return Rational(a * b + c);
    }
    static Rational from_double(double v) { return Rational(v); }
    static double to_double(const Rational& v) { return v.convert_to<double>(); }
};

} // namespace pwlnet
