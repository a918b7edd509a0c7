#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <cmath>
#include <string>

namespace memslab {

// Exact rational scalar. Arbitrary-precision integers so products like
// a_{N,m}^3 * lambda_bar never overflow.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<BigInt>;

inline Rational rat(long long num, long long den = 1) {
    return Rational(BigInt(num), BigInt(den));
}

inline double to_double(const Rational& q) {
    return static_cast<double>(boost::multiprecision::cpp_rational(q.numerator(), q.denominator()));
}

inline std::string to_string(const Rational& q) {
    std::string s = q.numerator().str();
    if (q.denominator() != 1) s += "/" + q.denominator().str();
    return s;
}

}  // namespace memslab
