#include "doctest.h"
#include "oracles.hpp"
#include "test_util.hpp"

#include "pfdeg/families.hpp"

#include <cmath>
#include <numbers>

using namespace pfdeg;
using testutil::kind_of;

namespace {

struct Params {
    long long a0, c0, k, a, b, c;
};

// Claim-1 steps by linear search: sqrt(a0^2+1) compared in long double,
// then confirmed with integers so a rounding slip would show up as a
// failed REQUIRE instead of a wrong value.
Params oracle_params(long long p, long long q) {
    long long a0 = 1;
    while (!((q * a0 + p) * (q * a0 + p) > q * q * (a0 * a0 + 1))) ++a0;
    const long long c0 = a0 * a0;
    const long double root = std::sqrt(static_cast<long double>(a0 * a0 + 1));
    long long k = 1;
    while (k * (a0 + static_cast<long double>(p) / q) - k * root < c0 + 4) ++k;
    BigInt lhs = BigInt(k) * (q * a0 + p) - q * (c0 + 4);
    REQUIRE(lhs >= 0);
    REQUIRE(lhs * lhs >= BigInt(q * q) * k * k * (a0 * a0 + 1));
    while (!(k * p > q && k > 2)) ++k;
    const long long c = k * (q * a0 + p) / q;
    return {a0, c0, k, k * a0, k, c};
}

void check_params(const CubicFamily& fam, const Params& expect) {
    CHECK(fam.a0 == expect.a0);
    CHECK(fam.b0 == 1);
    CHECK(fam.c0 == expect.c0);
    CHECK(fam.k == expect.k);
    CHECK(fam.a == expect.a);
    CHECK(fam.b == expect.b);
    CHECK(fam.c == expect.c);
}

}  // namespace

TEST_CASE("generate_cubic examples") {
    auto half = generate_cubic(Rational(1, 2));
    check_params(half, {1, 1, 59, 59, 59, 88});
    check_params(half, oracle_params(1, 2));
    CHECK(half.f == parse_poly("-612657,17346,-206,1"));
    CHECK(half.omega1.value.real() == doctest::Approx(88.00023137364530988).epsilon(1e-13));
    CHECK(half.omega2.value.real() == doctest::Approx(58.99988431317734506).epsilon(1e-12));
    CHECK(half.omega2.value.imag() == doctest::Approx(59.00005686332738027).epsilon(1e-12));
    CHECK(half.eta == doctest::Approx(0.45684934904050378).epsilon(1e-10));

    auto quarter = generate_cubic(Rational(1, 4));
    check_params(quarter, {2, 4, 575, 1150, 575, 1293});
    check_params(quarter, oracle_params(1, 4));

    auto eighth = generate_cubic(Rational(1, 8));
    check_params(eighth, {4, 16, 10558, 42232, 10558, 43551});
    check_params(eighth, oracle_params(1, 8));

    check_params(generate_cubic(Rational(2, 5)), oracle_params(2, 5));
    check_params(generate_cubic(Rational(3, 7)), oracle_params(3, 7));

    CHECK(kind_of([] { generate_cubic(Rational(2)); }) == ErrorKind::EpsilonOutOfRange);
    CHECK(kind_of([] { generate_cubic(Rational(0)); }) == ErrorKind::EpsilonOutOfRange);
    CHECK(kind_of([] { generate_cubic(Rational(1)); }) == ErrorKind::EpsilonOutOfRange);
}

TEST_CASE("family cubic expands the product form") {
    // -(c - x)[(a - x)^2 + b^2] - 1 at integer points, compared with f.
    for (long long x = -3; x <= 3; ++x) {
        BigInt a = 59, b = 59, c = 88;
        BigInt product = -(c - x) * ((a - x) * (a - x) + b * b) - 1;
        CHECK(poly::eval(family_cubic(a, b, c).coeffs(), BigInt(x)) == product);
    }
}

TEST_CASE("verify_claims passes for generated families") {
    for (auto eps : {Rational(1, 2), Rational(1, 4), Rational(1, 8), Rational(1, 16), Rational(2, 5), Rational(1, 3)}) {
        auto fam = generate_cubic(eps);
        auto report = verify_claims(fam);
        CHECK(report.all_passed());
        CHECK(report.results.size() == 8);
        CHECK(std::tan(fam.eta) < 6 * to_double(eps));
    }
}

TEST_CASE("claims agree with a Durand-Kerner cross-check for epsilon 1/2") {
    auto fam = generate_cubic(Rational(1, 2));
    auto z = oracle::durand_kerner(fam.f.coeffs());
    long double w1 = 0;
    std::complex<long double> w2;
    for (auto v : z) {
        if (std::abs(v.imag()) < 1e-9L) w1 = v.real();
        if (v.imag() > 1e-9L) w2 = v;
    }
    const long double a = 59, b = 59, c = 88;
    CHECK(c < w1);
    CHECK(w1 < c + (c + 1) / (a * a + b * b - 1));
    CHECK(std::abs(w2) < w1);
    CHECK(std::norm(w2) >= a * a + b * b - 1);
    CHECK(std::abs(w2.real()) <= a);
    CHECK(w1 - w2.real() < c - a + 2);
    CHECK(w2.imag() * w2.imag() >= b * b - 1);
    long double ratio = (w1 - w2.real()) / w2.imag();
    CHECK(ratio * ratio <= (0.5L + 2 / b) * (0.5L + 2 / b) / (1 - 1 / (b * b)));
    CHECK(static_cast<double>(ratio) == doctest::Approx(0.49153083237948).epsilon(1e-10));
}

TEST_CASE("hand-built family with c too small violates claim 1") {
    // ceil(sqrt(59^2 + 59^2)) - 1 = 83
    BigInt a = 59, b = 59;
    BigInt c = isqrt(a * a + b * b);
    if (c * c < a * a + b * b) c += 1;
    c -= 1;
    CHECK(c == 83);
    auto fam = make_cubic_family(a, b, c, Rational(1, 2));
    try {
        verify_claims(fam);
        FAIL("expected ClaimViolated");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ClaimViolated);
        CHECK(std::string(e.what()).find("claim1") != std::string::npos);
    }
}

TEST_CASE("family lower bounds grow as epsilon shrinks") {
    auto bound_for = [](const Rational& eps) {
        auto fam = generate_cubic(eps);
        auto b = theorem1_bound(fam.conjugates);
        REQUIRE(b.has_value());
        CHECK(b->lower_bound >= 2 * std::numbers::pi / (3 * std::atan(6 * to_double(eps))));
        return b->lower_bound_int;
    };
    const long long b2 = bound_for(Rational(1, 2));
    const long long b4 = bound_for(Rational(1, 4));
    const long long b8 = bound_for(Rational(1, 8));
    const long long b16 = bound_for(Rational(1, 16));
    CHECK(b2 == 5);
    CHECK(b2 < b4);
    CHECK(b4 < b8);
    CHECK(b8 < b16);
}

TEST_CASE("reciprocal substitution") {
    CHECK(reciprocal_substitution(parse_poly("-3,1")) == parse_poly("1,-3,1"));
    CHECK(reciprocal_substitution(parse_poly("-126,65,-13,1")) == parse_poly("1,-13,68,-152,68,-13,1"));
    // Identity check at rational points: y^3 f(y + 1/y).
    auto f = parse_poly("-612657,17346,-206,1");
    auto sext = reciprocal_substitution(f);
    CHECK(sext.degree() == 6);
    for (int num = 1; num <= 8; ++num) {
        Rational y(num, 3);
        Rational lhs = poly::eval(sext.to_rational(), y);
        Rational rhs = y * y * y * poly::eval(f.to_rational(), Rational(y + 1 / y));
        CHECK(lhs == rhs);
    }
    const auto& co = sext.coeffs();
    for (std::size_t i = 0; i < co.size(); ++i) CHECK(co[i] == co[co.size() - 1 - i]);
}

TEST_CASE("check_observation examples") {
    CHECK(check_observation(generate_cubic(Rational(1, 2)).f));
    CHECK_FALSE(check_observation(parse_poly("-126,65,-13,1")));
    CHECK(check_observation(parse_poly("-3,1")));
    CHECK_FALSE(check_observation(parse_poly("-1,-1,1")));  // phi < 2
    CHECK(kind_of([] { check_observation(parse_poly("-2,0,0,1")); }) == ErrorKind::NotPerron);
}

TEST_CASE("to_biperron examples") {
    auto fam = generate_cubic(Rational(1, 2));
    auto res = to_biperron(fam);
    CHECK(res.alpha_poly.degree() == 6);
    CHECK_FALSE(res.substituted.has_value());
    CHECK(abs(res.alpha_poly.coeff(0)) == 1);
    REQUIRE(res.analysis.is_biperron.has_value());
    CHECK(res.analysis.is_biperron->value);
    REQUIRE(res.analysis.bound.has_value());
    CHECK(res.analysis.bound->lower_bound >= 2 * std::numbers::pi / (3 * std::atan(8.0)));

    auto gamma3 = to_biperron(parse_poly("-3,1"));
    CHECK(gamma3.alpha_poly == parse_poly("1,-3,1"));
    CHECK(gamma3.analysis.conjugates.roots[0].value.real() == doctest::Approx((3 + std::sqrt(5.0)) / 2));
    CHECK(gamma3.analysis.is_biperron->value);

    CHECK(kind_of([] { to_biperron(parse_poly("-126,65,-13,1")); }) == ErrorKind::HypothesisFailed);
    CHECK_FALSE(is_biperron(roots(reciprocal_substitution(parse_poly("-126,65,-13,1")))).value);
}

TEST_CASE("property: biPerron families keep the 16 epsilon bound") {
    for (auto eps : {Rational(1, 2), Rational(1, 4), Rational(1, 8), Rational(1, 3)}) {
        auto res = to_biperron(generate_cubic(eps));
        REQUIRE(res.analysis.bound.has_value());
        CHECK(res.analysis.bound->lower_bound >= 2 * std::numbers::pi / (3 * std::atan(16 * to_double(eps))));
        // Roots close under z -> 1/z.
        const auto& rts = res.analysis.conjugates.roots;
        for (const auto& r : rts) {
            Complex inv = 1.0 / r.value;
            double best = HUGE_VAL;
            for (const auto& s : rts) best = std::min(best, std::abs(s.value - inv) / std::max(1.0, std::abs(inv)));
            CHECK(best < 1e-8);
        }
    }
}

TEST_CASE("parse_rational") {
    CHECK(parse_rational("1/2") == Rational(1, 2));
    CHECK(parse_rational("-3/6") == Rational(-1, 2));
    CHECK(parse_rational("5") == Rational(5));
    CHECK(kind_of([] { parse_rational("1/0"); }) == ErrorKind::MalformedInput);
    CHECK(kind_of([] { parse_rational("a/2"); }) == ErrorKind::MalformedInput);
    CHECK(kind_of([] { parse_rational("0.5"); }) == ErrorKind::MalformedInput);
}
