#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "gaussian.hpp"

namespace gls {

// Arbitrary-precision rational, always stored in lowest terms with a positive denominator.
using ExactRational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline ExactRational rational(Int num, Int den = 1) {
    if (den == 0) throw std::domain_error("zero denominator");
    return ExactRational(BigInt(num), BigInt(den));
}

inline BigInt floor(const ExactRational& z) {
    const BigInt n = boost::multiprecision::numerator(z);
    const BigInt d = boost::multiprecision::denominator(z);
    BigInt q = n / d;
    if (n < 0 && q * d != n) q -= 1;
    return q;
}

// {z} = z - floor(z).
inline ExactRational frac(const ExactRational& z) { return z - ExactRational(floor(z)); }

// f(z) = {z + 1/2} - 1/2, the signed offset to the nearest integer, in [-1/2, 1/2).
inline ExactRational frac_f(const ExactRational& z) {
    static const ExactRational half(1, 2);
    return frac(z + half) - half;
}

// ||z||, distance to the nearest integer.
inline ExactRational dist_to_int(const ExactRational& z) {
    const ExactRational f = frac_f(z);
    return f < 0 ? ExactRational(-f) : f;
}

inline double to_double(const ExactRational& z) { return z.convert_to<double>(); }

}  // namespace gls
