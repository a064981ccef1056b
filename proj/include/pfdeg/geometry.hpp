#pragma once

#include "pfdeg/claims.hpp"
#include "pfdeg/numeric.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace pfdeg {

/// Points of the plane are complex numbers.
using Point = Complex;

constexpr double kGeomTol = 1e-9;

/// Strictly convex, counter-clockwise.
struct Polygon {
    std::vector<Point> vertices;
    bool contains_origin = false;

    std::size_t sides() const { return vertices.size(); }
    double area() const;
};

/// Complex multiplier normalized to Im t > 0, Re t > 0, |t| <= 1.
class Multiplier {
public:
    /// Conjugates when Im t < 0; throws InvalidMultiplier when Im t = 0,
    /// Re t <= 0 or |t| > 1.
    explicit Multiplier(Complex t);
    Complex value() const { return t_; }

private:
    Complex t_;
};

/// |atan((1 - Re t) / Im t)|
double eta_of(const Multiplier& t);
double eta_of(Complex t);

/// Hull with collinear points dropped: a turn whose sine is below tol
/// counts as straight.
Polygon convex_hull(std::vector<Point> points, double tol = kGeomTol);

/// Inside or on the boundary, within tolerance.
bool contains(const Polygon& p, Point q, double tol = kGeomTol);

/// Every vertex of t P lies in P. The raw overload skips the
/// normalization, for multipliers with Re t <= 0.
bool is_invariant(const Polygon& p, const Multiplier& t, double tol = kGeomTol);
bool is_invariant(const Polygon& p, Complex t, double tol = kGeomTol);

/// Hull of {t^k z0} plus the origin, truncated once |t^k z0| drops below
/// the tolerance or after max_terms points. Throws InvalidMultiplier
/// unless |t| < 1, TooFewPoints for a degenerate hull and NotInvariant if
/// the certificate fails.
Polygon hull_orbit_polygon(Point z0, const Multiplier& t, int max_terms = 100000);

/// 2 pi / (3 eta) when eta <= 1.
std::optional<double> min_sides_bound(const Multiplier& t);
std::optional<double> min_sides_bound(double eta);

/// Angle and length data of the proof, vertex by vertex.
struct PolygonAngles {
    std::vector<double> beta;  // angle O P_j P_{j+1}
    std::vector<double> phi;   // angle P_j O P_{j+1}
    std::vector<double> l;     // |O P_j|
};

PolygonAngles polygon_angles(const Polygon& p);

/// Claims 1 to 4 for every vertex, the telescoping product and Claim 5 on
/// a grid. Throws HypothesisFailed unless the origin is strictly inside.
ClaimReport evaluate_polygon_claims(const Polygon& p, const Multiplier& t);

/// evaluate_polygon_claims, throwing ClaimViolated on a failure.
ClaimReport claim_check(const Polygon& p, const Multiplier& t);

/// Claim 5, (1 - x)^alpha >= 1 - 2 alpha x, on a grid of x in [0, 1/2] and
/// alpha in [1, 10].
bool claim5_grid(int x_steps = 100, int alpha_steps = 90);

struct GeometrySuiteResult {
    int trials = 0;
    int invariant_failures = 0;
    int bound_failures = 0;
    int claim_failures = 0;
    double min_slack = 0;  // min over trials of M - 2 pi / (3 eta)
    bool passed() const { return invariant_failures == 0 && bound_failures == 0 && claim_failures == 0; }
};

/// Random multipliers with r in (0.3, 0.995), theta in (0.02, pi/2),
/// rejecting eta > 1. Trial i uses its own generator seeded from
/// (seed, i), so results do not depend on the thread count.
GeometrySuiteResult geometry_suite(int trials, std::uint64_t seed, unsigned threads = 0);

}  // namespace pfdeg
