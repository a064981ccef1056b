#pragma once

#include "pfdeg/numeric.hpp"

#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pfdeg {

/// Dense polynomial, ascending coefficients, no trailing zeros. The zero
/// polynomial is the empty vector.
template <class T>
using Poly = std::vector<T>;

using ZPoly = Poly<BigInt>;
using QPoly = Poly<Rational>;

/// Monic integer polynomial of degree >= 1, ascending storage
/// (c0, c1, ..., c_{d-1}, 1).
class IntPolynomial {
public:
    /// Throws NotMonic if the leading coefficient is not 1 and
    /// MalformedInput if the degree is below 1.
    explicit IntPolynomial(ZPoly ascending);

    static IntPolynomial from_ints(std::initializer_list<long long> ascending);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const BigInt& coeff(int i) const { return coeffs_.at(static_cast<std::size_t>(i)); }
    const ZPoly& coeffs() const { return coeffs_; }

    QPoly to_rational() const;

    /// Comma separated ascending list, the CLI text format.
    std::string to_text() const;
    /// Human readable, descending powers: "x^3 + 3*x^2 - 15*x - 46".
    std::string pretty() const;

    bool operator==(const IntPolynomial&) const = default;

private:
    ZPoly coeffs_;
};

/// Parses "c0,c1,...,1". Whitespace around tokens is ignored.
IntPolynomial parse_poly(std::string_view text);

namespace poly {

template <class T>
void trim(Poly<T>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

template <class T>
int degree(const Poly<T>& p) {
    return static_cast<int>(p.size()) - 1;
}

template <class T>
Poly<T> add(const Poly<T>& a, const Poly<T>& b) {
    Poly<T> r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

template <class T>
Poly<T> sub(const Poly<T>& a, const Poly<T>& b) {
    Poly<T> r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

template <class T>
Poly<T> mul(const Poly<T>& a, const Poly<T>& b) {
    if (a.empty() || b.empty()) return {};
    Poly<T> r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

template <class T>
Poly<T> scale(const Poly<T>& a, const T& s) {
    Poly<T> r(a);
    for (auto& c : r) c *= s;
    trim(r);
    return r;
}

template <class T>
Poly<T> derivative(const Poly<T>& a) {
    if (a.size() <= 1) return {};
    Poly<T> r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * T(static_cast<long long>(i));
    trim(r);
    return r;
}

template <class T, class X>
X eval(const Poly<T>& p, const X& x) {
    X acc = X(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + X(*it);
    return acc;
}

/// Division over Q. Throws std::domain_error on division by zero.
std::pair<QPoly, QPoly> divmod(const QPoly& num, const QPoly& den);

/// Monic gcd over Q; gcd(0, 0) = 0.
QPoly gcd(const QPoly& a, const QPoly& b);

QPoly make_monic(const QPoly& p);

/// p / gcd(p, p'), monic.
QPoly squarefree_part(const QPoly& p);

/// Quotient when `den` divides `num` exactly in Z[x]; nullopt otherwise.
std::optional<ZPoly> exact_quotient(const ZPoly& num, const ZPoly& monic_den);

QPoly to_rational(const ZPoly& p);

/// Integer polynomial when every coefficient of `p` is integral.
std::optional<ZPoly> to_integer(const QPoly& p);

/// Evaluates an integer polynomial at a complex dyadic point without
/// rounding. Used for certified residuals.
ExactComplex eval_exact(const ZPoly& p, const ExactComplex& z);

int sign(const Rational& q);

/// Number of distinct real roots of `p` in (lo, hi] by Sturm's theorem.
int count_real_roots(const QPoly& p, const Rational& lo, const Rational& hi);
/// Number of distinct real roots of `p` in (lo, +inf).
int count_real_roots_above(const QPoly& p, const Rational& lo);

std::string to_text(const ZPoly& p);

}  // namespace poly

/// Exact handle on one real root of a squarefree rational polynomial: a
/// rational interval (lo, hi) containing that root and no other.
class RealRootInterval {
public:
    /// Isolates the root of `p` nearest to `approx`, starting from the
    /// interval [approx - radius, approx + radius] and widening or
    /// shrinking it until Sturm counts confirm isolation. Throws
    /// Indeterminate when no isolating interval is found.
    RealRootInterval(QPoly p, double approx, double radius);

    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    const QPoly& poly() const { return poly_; }

    /// One bisection step.
    void bisect();
    void refine_to_width(const Rational& width);

    /// Sign of g at the root: -1, 0 or +1. Exact.
    int sign_at(const QPoly& g);

private:
    QPoly poly_;
    Rational lo_;
    Rational hi_;
};

}  // namespace pfdeg
