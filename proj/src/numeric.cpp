#include "pfdeg/numeric.hpp"

#include "pfdeg/error.hpp"

#include <cmath>
#include <stdexcept>

namespace pfdeg {

double to_double(const BigInt& v) { return v.convert_to<double>(); }

double to_double(const Rational& v) { return v.convert_to<double>(); }

Rational exact_rational(double v) {
    if (!std::isfinite(v)) throw std::domain_error("exact_rational: non-finite value");
    if (v == 0.0) return Rational(0);
    int exp = 0;
    double mant = std::frexp(v, &exp);  // v = mant * 2^exp, 0.5 <= |mant| < 1
    auto scaled = static_cast<long long>(std::ldexp(mant, 53));
    exp -= 53;
    BigInt num(scaled);
    if (exp >= 0) return Rational(num << exp);
    BigInt den = BigInt(1) << (-exp);
    return Rational(num, den);
}

BigInt floor_div(const BigInt& num, const BigInt& den) {
    BigInt q = num / den;
    BigInt r = num % den;
    if (r != 0 && ((r < 0) != (den < 0))) --q;
    return q;
}

BigInt ceil_div(const BigInt& num, const BigInt& den) { return -floor_div(-num, den); }

BigInt floor(const Rational& q) {
    return floor_div(boost::multiprecision::numerator(q), boost::multiprecision::denominator(q));
}

BigInt ceil(const Rational& q) {
    return ceil_div(boost::multiprecision::numerator(q), boost::multiprecision::denominator(q));
}

BigInt isqrt(const BigInt& n) {
    if (n < 0) throw std::domain_error("isqrt of negative value");
    if (n < 2) return n;
    BigInt r = boost::multiprecision::sqrt(n);
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::string to_string(const BigInt& v) { return v.str(); }

std::string to_string(const Rational& q) {
    if (boost::multiprecision::denominator(q) == 1) return boost::multiprecision::numerator(q).str();
    return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

namespace {

bool digits_only(std::string_view s, bool allow_sign) {
    if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char ch : s) {
        if (ch < '0' || ch > '9') return false;
    }
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!digits_only(num, true) || !digits_only(den, false)) {
        throw Error(ErrorKind::MalformedInput, "not a rational number: '" + std::string(text) + "'");
    }
    if (num[0] == '+') num.remove_prefix(1);
    BigInt d(std::string{den});
    if (d == 0) throw Error(ErrorKind::MalformedInput, "zero denominator in '" + std::string(text) + "'");
    return Rational(BigInt(std::string{num}), d);
}

}  // namespace pfdeg
