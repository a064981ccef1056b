#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <string>
#include <string_view>

namespace pfdeg {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

double to_double(const BigInt& v);
double to_double(const Rational& v);

/// Exact value of a finite double as a dyadic rational.
Rational exact_rational(double v);

BigInt floor_div(const BigInt& num, const BigInt& den);
BigInt ceil_div(const BigInt& num, const BigInt& den);
BigInt floor(const Rational& q);
BigInt ceil(const Rational& q);

/// Largest r with r*r <= n, n >= 0.
BigInt isqrt(const BigInt& n);

std::string to_string(const BigInt& v);
std::string to_string(const Rational& q);

/// "p/q" or "n"; throws MalformedInput.
Rational parse_rational(std::string_view text);

/// Complex number with exact rational parts, used for residual evaluation.
struct ExactComplex {
    Rational re;
    Rational im;
};

}  // namespace pfdeg
