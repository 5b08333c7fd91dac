/*
 * ints.hpp
 * --------
 * Exact arithmetic scalar types. Character coefficients, partition counts and
 * binomials use arbitrary-precision integers; conversions between weight and
 * root coordinates use exact rationals.
 */
#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace charop {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Largest integer <= q.
inline Int rat_floor(const Rat& q)
{
    Int n = boost::multiprecision::numerator(q);
    Int d = boost::multiprecision::denominator(q); // always > 0
    Int quo = n / d;
    if (n % d != 0 && n < 0)
        --quo;
    return quo;
}

inline std::string to_string(const Int& v) { return v.str(); }

} // namespace charop
