#pragma once

#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace permdet {

/// Arbitrary-precision signed integer. Every determinant and permanent is carried in this type.
using ExactInt = boost::multiprecision::cpp_int;

inline std::string to_string(const ExactInt& v) { return v.str(); }

/// 4^z as an exact integer.
inline ExactInt pow4(unsigned z) {
    ExactInt r = 1;
    r <<= 2 * z;
    return r;
}

inline ExactInt factorial(unsigned z) {
    ExactInt r = 1;
    for (unsigned k = 2; k <= z; ++k) r *= k;
    return r;
}

/// Exact square root if `v` is a perfect square, otherwise nullopt.
inline std::optional<ExactInt> exact_sqrt(const ExactInt& v) {
    if (v < 0) return std::nullopt;
    ExactInt r = boost::multiprecision::sqrt(v);
    if (r * r != v) return std::nullopt;
    return r;
}

}  // namespace permdet
