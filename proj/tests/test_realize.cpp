#include "doctest.h"
#include "oracles.hpp"
#include "test_util.hpp"

#include "pfdeg/classify.hpp"
#include "pfdeg/realize.hpp"

#include <cmath>
#include <numbers>

using namespace pfdeg;
using testutil::kind_of;

namespace {

std::vector<std::vector<long long>> to_rows(const IntMatrix& m) {
    std::vector<std::vector<long long>> r;
    for (const auto& row : m.rows()) r.emplace_back(row.begin(), row.end());
    return r;
}

ZPoly oracle_charpoly(const IntMatrix& m) {
    std::vector<std::vector<BigInt>> big;
    for (const auto& row : m.rows()) big.emplace_back(row.begin(), row.end());
    return oracle::charpoly_by_expansion(big);
}

IntMatrix from_index(std::size_t n, long long index, long long base) {
    IntMatrix m(n);
    for (std::size_t k = 0; k < n * n; ++k) {
        m.set(k / n, k % n, index % base);
        index /= base;
    }
    return m;
}

// Row-major lexicographic order means the last entry varies fastest.
IntMatrix from_lex(std::size_t n, long long index, long long base) {
    IntMatrix m(n);
    for (std::size_t k = n * n; k-- > 0;) {
        m.set(k / n, k % n, index % base);
        index /= base;
    }
    return m;
}

// First matrix in lexicographic order that an independent check accepts:
// expansion charpoly divisible by f, boolean primitivity, and the largest
// Durand-Kerner modulus of the charpoly equal to lambda.
std::optional<IntMatrix> oracle_search(const IntPolynomial& f, std::size_t n, long long bound, double lambda) {
    long long total = 1;
    for (std::size_t k = 0; k < n * n; ++k) total *= bound + 1;
    for (long long idx = 0; idx < total; ++idx) {
        IntMatrix m = from_lex(n, idx, bound + 1);
        if (oracle::boolean_primitivity_exponent(to_rows(m), static_cast<int>((n - 1) * (n - 1) + 1)) == 0) continue;
        ZPoly cp = oracle_charpoly(m);
        auto q = poly::exact_quotient(cp, f.coeffs());
        if (!q) continue;
        long double top = 0;
        for (auto z : oracle::durand_kerner(cp)) top = std::max(top, std::abs(z));
        if (std::abs(static_cast<double>(top) - lambda) > 1e-6) continue;
        return m;
    }
    return std::nullopt;
}

double dominant(const IntPolynomial& f) {
    auto cs = roots(f);
    return cs.roots[*cs.dominant_index].value.real();
}

// (B z)_0 = -c_0 z_{d-1}, (B z)_r = z_{r-1} - c_r z_{d-1}: multiplication
// by the root in the power basis, written out directly.
std::vector<BigInt> times_root(const IntPolynomial& f, const std::vector<BigInt>& z) {
    const std::size_t d = z.size();
    std::vector<BigInt> out(d);
    for (std::size_t r = 0; r < d; ++r) out[r] = (r ? z[r - 1] : BigInt(0)) - f.coeff(static_cast<int>(r)) * z[d - 1];
    return out;
}

void check_lattice(const LatticePointSet& pts) {
    const auto& a = pts.coefficients;
    const auto& f = pts.field_poly;
    const double lambda = dominant(f);
    REQUIRE(pts.points.size() == a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto lhs = times_root(f, pts.points[i]);
        for (std::size_t r = 0; r < lhs.size(); ++r) {
            BigInt rhs = 0;
            for (std::size_t j = 0; j < a.size(); ++j) rhs += BigInt(a(i, j)) * pts.points[j][r];
            CHECK(lhs[r] == rhs);
        }
        long double proj = 0;
        for (auto it = pts.points[i].rbegin(); it != pts.points[i].rend(); ++it) proj = proj * lambda + to_double(*it);
        CHECK(proj > 0);
    }
}

}  // namespace

TEST_CASE("is_aperiodic examples") {
    auto fib = is_aperiodic(IntMatrix{{1, 1}, {1, 0}});
    CHECK(fib.aperiodic);
    CHECK(fib.exponent == 2);
    auto swap = is_aperiodic(IntMatrix{{0, 1}, {1, 0}});
    CHECK_FALSE(swap.aperiodic);
    CHECK(swap.period == 2);
    auto tri = is_aperiodic(IntMatrix{{1, 1}, {0, 1}});
    CHECK_FALSE(tri.aperiodic);
    CHECK(tri.reason == "not strongly connected");
    CHECK_FALSE(is_aperiodic(IntMatrix{{0}}).aperiodic);
    CHECK(is_aperiodic(IntMatrix{{2}}).exponent == 1);
}

TEST_CASE("is_aperiodic agrees with boolean powering") {
    // Entries {0,1,2} exhaustively up to n = 3; for n = 4 only the zero
    // pattern matters, so every 0/1 pattern is covered.
    for (std::size_t n = 1; n <= 3; ++n) {
        long long total = 1;
        for (std::size_t k = 0; k < n * n; ++k) total *= 3;
        for (long long idx = 0; idx < total; ++idx) {
            IntMatrix m = from_index(n, idx, 3);
            const int e = oracle::boolean_primitivity_exponent(to_rows(m), static_cast<int>((n - 1) * (n - 1) + 1));
            auto res = is_aperiodic(m);
            REQUIRE(res.aperiodic == (e > 0));
            if (e > 0) REQUIRE(res.exponent == e);
        }
    }
    for (long long idx = 0; idx < (1 << 16); ++idx) {
        IntMatrix m = from_index(4, idx, 2);
        const int e = oracle::boolean_primitivity_exponent(to_rows(m), 10);
        auto res = is_aperiodic(m);
        REQUIRE(res.aperiodic == (e > 0));
        if (e > 0) REQUIRE(res.exponent == e);
    }
}

TEST_CASE("quadratic_realize examples") {
    CHECK(quadratic_realize(parse_poly("-1,-1,1")).matrix == IntMatrix{{1, 1}, {1, 0}});
    CHECK(quadratic_realize(parse_poly("2,-4,1")).matrix == IntMatrix{{2, 2}, {1, 2}});
    CHECK(quadratic_realize(parse_poly("1,-3,1")).matrix == IntMatrix{{2, 1}, {1, 1}});
    CHECK(kind_of([] { quadratic_realize(parse_poly("-1,-1,0,1")); }) == ErrorKind::NotQuadratic);
    CHECK(kind_of([] { quadratic_realize(parse_poly("2,-3,1")); }) == ErrorKind::ReduciblePoly);
    CHECK(kind_of([] { quadratic_realize(parse_poly("1,1,1")); }) == ErrorKind::NotPerron);
    CHECK(kind_of([] { quadratic_realize(parse_poly("-1,1,1")); }) == ErrorKind::NotPerron);
}

TEST_CASE("quadratic sweep matches the expansion charpoly") {
    int count = 0;
    for (long long u = 1; u <= 20; ++u) {
        for (long long v = -20; v <= 20; ++v) {
            const long long disc = u * u - 4 * v;
            if (disc <= 0) continue;
            const long long r = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(disc))));
            if (r * r == disc) continue;
            auto f = IntPolynomial::from_ints({v, -u, 1});
            auto real = quadratic_realize(f);
            CHECK(oracle_charpoly(real.matrix) == f.coeffs());
            CHECK(oracle::boolean_primitivity_exponent(to_rows(real.matrix), 2) == real.aperiodicity_exponent);
            CHECK(real.divisibility_witness == ZPoly{1});
            ++count;
        }
    }
    CHECK(count > 500);
}

TEST_CASE("trace_obstruction") {
    auto neg = trace_obstruction(parse_poly("-46,-15,3,1"), 1);
    CHECK(neg.power_sums == std::vector<BigInt>{-3});
    CHECK(neg.violating == std::vector<int>{1});
    auto fib = trace_obstruction(parse_poly("-1,-1,1"), 6);
    CHECK(fib.power_sums == std::vector<BigInt>{1, 3, 4, 7, 11, 18});
    CHECK_FALSE(fib.fires());
    auto cubic = trace_obstruction(parse_poly("-2,1,-1,1"), 3);
    CHECK(cubic.power_sums[1] == -1);
    CHECK(cubic.violating == std::vector<int>{2});
    CHECK(kind_of([] { trace_obstruction(parse_poly("1,1,1"), 2); }) == ErrorKind::NotPerron);
}

TEST_CASE("property: Newton power sums match Durand-Kerner") {
    for (const char* txt : {"-46,-15,3,1", "-2,1,-1,1", "-612657,17346,-206,1", "-1,-1,0,1", "-1,0,0,-1,1"}) {
        auto f = parse_poly(txt);
        auto z = oracle::durand_kerner(f.coeffs());
        auto rep = trace_obstruction(f, 6);
        for (int k = 1; k <= 6; ++k) {
            std::complex<long double> s = 0;
            for (auto r : z) s += std::pow(r, k);
            const double expect = static_cast<double>(s.real());
            CHECK(to_double(rep.power_sums[static_cast<std::size_t>(k - 1)]) ==
                  doctest::Approx(expect).epsilon(1e-9).scale(1.0));
        }
    }
}

TEST_CASE("certify") {
    auto f = parse_poly("-1,-1,1");
    CHECK(certify(IntMatrix{{0, 1}, {1, 1}}, f).has_value());
    CHECK_FALSE(certify(IntMatrix{{1, 1}, {1, 1}}, f).has_value());
    // Spectral radius 5 from the extra block.
    CHECK_FALSE(certify(IntMatrix{{0, 1, 0}, {1, 1, 0}, {0, 0, 5}}, f).has_value());
    // Divisible, radius right, but reducible so not aperiodic.
    CHECK_FALSE(certify(IntMatrix{{0, 1, 0}, {1, 1, 0}, {0, 0, 1}}, f).has_value());
    auto ok = certify(IntMatrix{{0, 0, 1}, {1, 0, 0}, {2, 1, 0}}, f);
    REQUIRE(ok.has_value());
    CHECK(ok->divisibility_witness == ZPoly{1, 1});
}

TEST_CASE("search_realization examples") {
    auto fib = search_realization(parse_poly("-1,-1,1"), 2, 2);
    REQUIRE(fib.realization.has_value());
    CHECK(fib.realization->matrix == IntMatrix{{0, 1}, {1, 1}});
    auto three = search_realization(parse_poly("-3,1"), 1, 3);
    REQUIRE(three.realization.has_value());
    CHECK(three.realization->matrix == IntMatrix{{3}});
    CHECK_FALSE(search_realization(parse_poly("-3,1"), 1, 2).realization.has_value());
    CHECK_FALSE(search_realization(parse_poly("-2,1,-1,1"), 3, 4).realization.has_value());
    CHECK(kind_of([] { search_realization(parse_poly("-2,1,-1,1"), 2, 4); }) == ErrorKind::MalformedInput);
    CHECK(kind_of([] { search_realization(parse_poly("1,1,1"), 2, 4); }) == ErrorKind::NotPerron);
}

TEST_CASE("search_realization agrees with exhaustive enumeration") {
    struct Case {
        const char* poly;
        std::size_t n;
        long long bound;
    };
    for (auto c : {Case{"-1,-1,1", 2, 2}, Case{"1,-3,1", 2, 3}, Case{"-2,-2,1", 2, 3}, Case{"-1,-1,0,1", 3, 2},
                   Case{"-1,-1,1", 3, 1}, Case{"-3,1", 2, 2}, Case{"-2,1,-1,1", 3, 2}}) {
        CAPTURE(c.poly);
        auto f = parse_poly(c.poly);
        auto expect = oracle_search(f, c.n, c.bound, dominant(f));
        auto got = search_realization(f, static_cast<int>(c.n), c.bound).realization;
        REQUIRE(got.has_value() == expect.has_value());
        if (got) CHECK(got->matrix == *expect);
    }
}

TEST_CASE("search is deterministic across thread counts and honours the budget") {
    auto f = parse_poly("-2,1,-1,1");
    auto one = search_realization(f, 4, 2, {50'000'000, 1});
    auto many = search_realization(f, 4, 2, {50'000'000, 3});
    REQUIRE(one.realization.has_value());
    REQUIRE(many.realization.has_value());
    CHECK(one.realization->matrix == many.realization->matrix);
    CHECK(one.nodes == many.nodes);
    CHECK(kind_of([&] { search_realization(f, 4, 2, {100, 2}); }) == ErrorKind::BudgetExceeded);
}

TEST_CASE("obstruction soundness: a firing obstruction leaves the n = d search empty") {
    for (const char* txt : {"-46,-15,3,1", "-2,1,-1,1", "-2,2,-2,1"}) {
        auto f = parse_poly(txt);
        if (!trace_obstruction(f, 4).fires()) continue;
        for (long long bound = 0; bound <= 4; ++bound) {
            CHECK_FALSE(search_realization(f, f.degree(), bound).realization.has_value());
        }
    }
}

TEST_CASE("lind_points examples") {
    Realization fib{IntMatrix{{1, 1}, {1, 0}}, parse_poly("-1,-1,1"), 2, {1}};
    auto pts = lind_points(fib);
    CHECK(pts.points == std::vector<std::vector<BigInt>>{{0, 1}, {1, 0}});
    check_lattice(pts);

    auto three = lind_points(Realization{IntMatrix{{3}}, parse_poly("-3,1"), 1, {1}});
    CHECK(three.points == std::vector<std::vector<BigInt>>{{1}});

    check_lattice(lind_points(quadratic_realize(parse_poly("1,-3,1"))));
    CHECK(kind_of([] {
              lind_points(Realization{IntMatrix{{1, 1}, {1, 1}}, parse_poly("0,-2,1"), 1, {1}});
          }) == ErrorKind::ReduciblePoly);
}

TEST_CASE("round trip: searched realizations give valid lattice points") {
    for (long long u = 1; u <= 20; ++u) {
        for (long long v = -20; v <= 20; ++v) {
            const long long disc = u * u - 4 * v;
            if (disc <= 0) continue;
            const long long r = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(disc))));
            if (r * r == disc) continue;
            auto f = IntPolynomial::from_ints({v, -u, 1});
            check_lattice(lind_points(quadratic_realize(f)));
            auto found = search_realization(f, 2, 6);
            if (!found.realization) continue;
            auto pts = lind_points(*found.realization);
            CHECK(pts.coefficients == found.realization->matrix);
            check_lattice(pts);
        }
    }
}

TEST_CASE("project_polygon") {
    auto f = parse_poly("-2,1,-1,1");
    auto real = search_realization(f, 4, 2).realization;
    REQUIRE(real.has_value());
    auto pts = lind_points(*real);
    check_lattice(pts);
    auto proj = project_polygon(pts);
    CHECK(proj.eta == doctest::Approx(0.9045).epsilon(1e-3));
    CHECK(proj.consistent);
    CHECK(proj.invariant);
    CHECK(proj.sides >= 2 * std::numbers::pi / (3 * proj.eta));
    CHECK(proj.sides <= 4);
    auto bound = theorem1_bound(roots(f));
    REQUIRE(bound.has_value());
    CHECK(static_cast<long long>(real->matrix.size()) >= bound->lower_bound_int);

    auto fib = lind_points(quadratic_realize(parse_poly("-1,-1,1")));
    CHECK(kind_of([&] { project_polygon(fib); }) == ErrorKind::NoComplexConjugate);
    CHECK(kind_of([&] { project_polygon(pts, 0); }) == ErrorKind::NoComplexConjugate);

    auto broken = pts;
    broken.points[1] = {0, 0, 0};
    CHECK(kind_of([&] { project_polygon(broken); }) == ErrorKind::DegenerateProjection);
}

TEST_CASE("property: found realizations respect the lower bound") {
    for (const char* txt : {"-2,1,-1,1", "-2,2,-2,1", "-1,-1,0,1"}) {
        auto f = parse_poly(txt);
        auto bound = theorem1_bound(roots(f));
        for (int n = f.degree(); n <= 4; ++n) {
            auto real = search_realization(f, n, 2).realization;
            if (!real) continue;
            if (bound) CHECK(n >= bound->lower_bound_int);
            auto proj = project_polygon(lind_points(*real));
            CHECK(proj.consistent);
            break;
        }
    }
}
