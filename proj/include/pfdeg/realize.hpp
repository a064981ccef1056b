#pragma once

#include "pfdeg/geometry.hpp"
#include "pfdeg/matrix.hpp"
#include "pfdeg/polynomial.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pfdeg {

struct AperiodicityResult {
    bool aperiodic = false;
    /// Least k with A^k > 0.
    std::optional<int> exponent;
    /// gcd of cycle lengths, when strongly connected.
    std::optional<int> period;
    std::string reason;
};

/// Graph test (strong connectivity and cycle gcd) cross-checked against
/// boolean powering up to (n-1)^2 + 1.
AperiodicityResult is_aperiodic(const IntMatrix& m);

/// A certified realization: char(matrix) = lambda_poly * witness, the
/// matrix is aperiodic and its spectral radius is the dominant root.
struct Realization {
    IntMatrix matrix;
    IntPolynomial lambda_poly;
    int aperiodicity_exponent = 0;
    ZPoly divisibility_witness;  // char(matrix) / lambda_poly, monic
};

/// Throws NotPerron when f is not Perron; nullopt when the matrix fails
/// any of the three certificates.
std::optional<Realization> certify(const IntMatrix& a, const IntPolynomial& f);

/// Closed-form 2x2 matrix for x^2 - u x + v. Throws NotQuadratic,
/// ReduciblePoly or NotPerron.
Realization quadratic_realize(const IntPolynomial& f);

struct ObstructionReport {
    /// p_1, ..., p_K.
    std::vector<BigInt> power_sums;
    /// k with p_k < 0. Any entry proves d_PF > degree.
    std::vector<int> violating;

    bool fires() const { return !violating.empty(); }
};

/// Newton power sums of the conjugates. Throws NotPerron.
ObstructionReport trace_obstruction(const IntPolynomial& f, int max_power = 12);

struct SearchOptions {
    std::uint64_t budget = 50'000'000;  // entry assignments
    unsigned threads = 0;               // 0: hardware concurrency
};

struct SearchResult {
    std::optional<Realization> realization;
    std::uint64_t nodes = 0;
};

/// First certified n x n realization in row-major lexicographic order with
/// entries in [0, bound], or none. "None" is relative to the bound. Throws
/// NotPerron, MalformedInput when n < degree, BudgetExceeded.
SearchResult search_realization(const IntPolynomial& f, int n, long long bound, const SearchOptions& options = {});

struct LatticePointSet {
    /// z_i in power-basis coordinates, one per matrix row.
    std::vector<std::vector<BigInt>> points;
    IntPolynomial field_poly;
    IntMatrix coefficients;
};

/// Integral points from the exact Perron eigenvector over Q(lambda).
/// Throws ReduciblePoly, SingularSystem.
LatticePointSet lind_points(const Realization& r);

struct ProjectedPolygon {
    std::vector<Point> points;  // one per z_i, dominant coordinate scaled to 1
    Polygon polygon;
    std::size_t conjugate_index = 0;  // into roots(field_poly)
    Complex t;                        // p' / p
    double eta = 0.0;
    std::optional<double> bound;  // 2 pi / (3 eta) when eta <= 1
    int sides = 0;
    bool invariant = false;
    bool consistent = false;  // bound <= M <= n
};

/// Projects onto the plane of the conjugate pair at `conjugate_index` (an
/// index into roots(field_poly)); by default the pair with the smallest
/// eta. Throws NoComplexConjugate, DegenerateProjection.
ProjectedPolygon project_polygon(const LatticePointSet& pts, std::optional<std::size_t> conjugate_index = std::nullopt);

}  // namespace pfdeg
