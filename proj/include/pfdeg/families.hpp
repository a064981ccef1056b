#pragma once

#include "pfdeg/claims.hpp"
#include "pfdeg/classify.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pfdeg {

/// The cubic (c - x)[(a - x)^2 + b^2] + 1, negated to be monic, with the
/// parameters that produced it.
struct CubicFamily {
    Rational epsilon;
    BigInt a0, b0, c0, k;
    BigInt a, b, c;
    IntPolynomial f;
    ConjugateSet conjugates;
    ApproxRoot omega1;  // the real root
    ApproxRoot omega2;  // Im > 0
    double eta = 0.0;
    std::optional<IntPolynomial> biperron_poly;
};

/// x^3 - (c+2a) x^2 + (2ac+a^2+b^2) x - c(a^2+b^2) - 1.
IntPolynomial family_cubic(const BigInt& a, const BigInt& b, const BigInt& c);

/// Deterministic parameter choice for 0 < epsilon < 1: b0 = 1, the least
/// admissible a0, c0 = a0^2, the least k with enough room between
/// k*sqrt(a0^2+1) and k(a0+epsilon), then c = floor(k(a0+epsilon)). All
/// comparisons are exact. Throws EpsilonOutOfRange.
CubicFamily generate_cubic(const Rational& epsilon);

/// Builds the family record for arbitrary parameters without checking
/// them; a0, b0, c0, k are left at zero.
CubicFamily make_cubic_family(const BigInt& a, const BigInt& b, const BigInt& c, const Rational& epsilon);

/// Every claim checked exactly: root locations through Sturm counts and
/// signs of polynomials in omega1 at its isolating interval.
ClaimReport evaluate_claims(const CubicFamily& fam);

/// evaluate_claims, throwing ClaimViolated naming the first failure.
ClaimReport verify_claims(const CubicFamily& fam);

/// y^d g(y + 1/y), monic of degree 2d.
IntPolynomial reciprocal_substitution(const IntPolynomial& g);

/// gamma > 2 and |gamma'| <= gamma - 2 for every other conjugate. Throws
/// NotPerron; Indeterminate when a modulus sits on the boundary without
/// an exact tie.
bool check_observation(const IntPolynomial& gamma_poly);

struct BiperronResult {
    /// Minimal polynomial of alpha, the largest real root of y^d g(y+1/y).
    IntPolynomial alpha_poly;
    /// The full substitution when it had to be factored.
    std::optional<IntPolynomial> substituted;
    PerronAnalysis analysis;
};

/// Throws HypothesisFailed when the Observation does not apply to gamma.
BiperronResult to_biperron(const IntPolynomial& gamma_poly);

/// Also checks the family preconditions (c >= sqrt(a^2+b^2)+3, b, c > 2,
/// b > 1/epsilon) and that tan of the resulting eta is at most 16 epsilon.
BiperronResult to_biperron(const CubicFamily& fam);

}  // namespace pfdeg
