#include "doctest.h"
#include "oracles.hpp"
#include "test_util.hpp"

#include "pfdeg/families.hpp"
#include "pfdeg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace pfdeg;
using testutil::kind_of;

namespace {

const double kPi = std::numbers::pi;

// eta from the argument of 1 - t: the angle between the edge direction
// t - 1 and the ray to the origin is pi/2 - eta.
double eta_by_argument(Complex t) { return kPi / 2 - std::abs(std::arg(1.0 - t)); }

Polygon square() {
    Polygon p;
    p.vertices = {{1, -1}, {1, 1}, {-1, 1}, {-1, -1}};
    p.contains_origin = true;
    return p;
}

}  // namespace

TEST_CASE("Multiplier normalization") {
    CHECK(Multiplier(Complex(0.5, -0.5)).value() == Complex(0.5, 0.5));
    CHECK(kind_of([] { Multiplier(Complex(0.5, 0)); }) == ErrorKind::InvalidMultiplier);
    CHECK(kind_of([] { Multiplier(Complex(-0.1, 0.5)); }) == ErrorKind::InvalidMultiplier);
    CHECK(kind_of([] { Multiplier(Complex(0, 0.5)); }) == ErrorKind::InvalidMultiplier);
    CHECK(kind_of([] { Multiplier(Complex(0.9, 0.9)); }) == ErrorKind::InvalidMultiplier);
    CHECK_NOTHROW(Multiplier(Complex(0.6, 0.8)));
}

TEST_CASE("eta examples") {
    CHECK(eta_of(Multiplier(std::polar(0.9, kPi / 4))) == doctest::Approx(0.519085677224093).epsilon(1e-12));
    CHECK(eta_of(Multiplier(std::polar(0.99, 0.1))) == doctest::Approx(0.15008323578075).epsilon(1e-12));
    CHECK(*min_sides_bound(Multiplier(std::polar(0.9, kPi / 4))) == doctest::Approx(4.0348).epsilon(1e-4));
    CHECK(std::ceil(*min_sides_bound(Multiplier(std::polar(0.99, 0.1)))) == 14);
    CHECK_FALSE(min_sides_bound(Multiplier(Complex(0.3, 0.3))).has_value());
    CHECK(eta_of(Multiplier(Complex(0.3, 0.3))) == doctest::Approx(std::atan(7.0 / 3.0)));
    CHECK(eta_of(Multiplier(Complex(0.5, 0.5))) == doctest::Approx(kPi / 4));
    CHECK_FALSE(min_sides_bound(0.0).has_value());
}

TEST_CASE("property: eta agrees with the argument formula") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> r(0.05, 1.0), th(0.001, kPi / 2 - 0.001);
    for (int i = 0; i < 500; ++i) {
        Complex t = std::polar(r(rng), th(rng));
        CHECK(eta_of(Multiplier(t)) == doctest::Approx(eta_by_argument(t)).epsilon(1e-12));
    }
}

TEST_CASE("convex hull against a brute-force oracle") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<Point> pts;
        const int n = 3 + trial % 25;
        for (int i = 0; i < n; ++i) pts.emplace_back(u(rng), u(rng));
        auto hull = convex_hull(pts);
        auto expect = oracle::brute_force_hull(pts);
        CHECK(hull.sides() == expect.size());
        for (auto v : expect) CHECK(std::find(hull.vertices.begin(), hull.vertices.end(), v) != hull.vertices.end());
        CHECK(hull.area() > 0);
        for (auto q : pts) CHECK(contains(hull, q));
    }
}

TEST_CASE("convex hull drops collinear and duplicate points") {
    auto p = convex_hull({{0, 0}, {1, 0}, {2, 0}, {2, 2}, {0, 2}, {1, 2}, {2, 0}, {1, 1}});
    CHECK(p.sides() == 4);
    CHECK(p.area() == doctest::Approx(4));
    CHECK(p.contains_origin);  // on the boundary
    CHECK(convex_hull({{0, 0}, {1, 1}, {2, 2}}).sides() < 3);
    CHECK_FALSE(contains(p, {2.1, 1}));
    CHECK(contains(p, {2, 1}));
}

TEST_CASE("square invariance examples") {
    CHECK(is_invariant(square(), Multiplier(std::polar(0.5, kPi / 4))));
    CHECK_FALSE(is_invariant(square(), Multiplier(std::polar(0.9, kPi / 4))));
    // Raw multiplier with negative real part: rotation by 3 pi / 4.
    CHECK(is_invariant(square(), std::polar(0.5, 3 * kPi / 4)));
    CHECK_FALSE(is_invariant(square(), std::polar(0.8, 3 * kPi / 4)));
}

TEST_CASE("orbit hull examples") {
    auto p = hull_orbit_polygon({1, 0}, Multiplier(std::polar(0.9, kPi / 4)));
    CHECK(p.sides() >= 5);
    CHECK(p.contains_origin);
    auto q = hull_orbit_polygon({1, 0}, Multiplier(std::polar(0.99, 0.1)));
    CHECK(q.sides() >= 14);
    CHECK(is_invariant(q, Multiplier(std::polar(0.99, 0.1))));

    CHECK(kind_of([] { hull_orbit_polygon({0, 0}, Multiplier(std::polar(0.9, 0.5))); }) == ErrorKind::TooFewPoints);
    CHECK(kind_of([] { hull_orbit_polygon({1, 0}, Multiplier(std::polar(1.0, 0.5))); }) ==
          ErrorKind::InvalidMultiplier);
}

TEST_CASE("property: invariance under t implies invariance under t^2 and t^3") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> r(0.3, 0.99), th(0.02, kPi / 2 - 0.01), arg(0, 2 * kPi);
    for (int i = 0; i < 100; ++i) {
        Multiplier t(std::polar(r(rng), th(rng)));
        auto p = hull_orbit_polygon(std::polar(1.0, arg(rng)), t);
        REQUIRE(is_invariant(p, t));
        CHECK(is_invariant(p, t.value() * t.value()));
        CHECK(is_invariant(p, t.value() * t.value() * t.value()));
        CHECK(p.sides() >= *min_sides_bound(t) - 1e-9);
    }
}

TEST_CASE("polygon angles of the square") {
    auto a = polygon_angles(square());
    for (int j = 0; j < 4; ++j) {
        CHECK(a.beta[j] == doctest::Approx(kPi / 4));
        CHECK(a.phi[j] == doctest::Approx(kPi / 2));
        CHECK(a.l[j] == doctest::Approx(std::sqrt(2.0)));
    }
}

TEST_CASE("polygon claims") {
    Multiplier t(std::polar(0.9, kPi / 4));
    auto p = hull_orbit_polygon({1, 0}, t);
    auto report = claim_check(p, t);
    CHECK(report.all_passed());
    Multiplier slow(std::polar(0.99, 0.1));
    CHECK(claim_check(hull_orbit_polygon({1, 0}, slow), slow).all_passed());
    CHECK(claim5_grid());

    // The square is too coarse for this multiplier: fewer sides than the
    // bound allows.
    auto bad = evaluate_polygon_claims(square(), t);
    CHECK_FALSE(bad.all_passed());
    CHECK(kind_of([&] { claim_check(square(), t); }) == ErrorKind::ClaimViolated);

    Polygon shifted;
    shifted.vertices = {{1, 0}, {2, 0}, {2, 1}};
    shifted.contains_origin = false;
    CHECK(kind_of([&] { evaluate_polygon_claims(shifted, t); }) == ErrorKind::HypothesisFailed);
    auto corner = convex_hull({{0, 0}, {1, 0}, {0, 1}});
    CHECK(kind_of([&] { evaluate_polygon_claims(corner, t); }) == ErrorKind::HypothesisFailed);
}

TEST_CASE("geometry suite") {
    auto res = geometry_suite(300, 2024, 2);
    CHECK(res.trials == 300);
    CHECK(res.passed());
    CHECK(res.min_slack >= -1e-9);
    auto again = geometry_suite(300, 2024, 1);
    CHECK(again.min_slack == res.min_slack);
}

TEST_CASE("eta of the conjugate ratio matches the classifier") {
    auto fam = generate_cubic(Rational(1, 2));
    Complex ratio = fam.omega2.value / fam.omega1.value;
    CHECK(eta_of(Multiplier(ratio)) == doctest::Approx(fam.eta).epsilon(1e-12));
}
