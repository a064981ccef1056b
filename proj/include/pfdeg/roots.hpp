#pragma once

#include "pfdeg/polynomial.hpp"

#include <optional>
#include <vector>

namespace pfdeg {

/// A root approximation with a certified inclusion disk: exactly one root
/// of the polynomial lies within `radius` of `value`.
struct ApproxRoot {
    Complex value;
    double radius = 0.0;
    bool is_real = false;

    double modulus_lo() const;
    double modulus_hi() const;
};

/// All roots of a squarefree monic polynomial, ordered by descending
/// modulus, then descending real part, then descending imaginary part.
struct ConjugateSet {
    IntPolynomial poly;
    std::vector<ApproxRoot> roots;
    /// Set when roots[*dominant_index] is real, positive and its modulus
    /// interval lies strictly above every other one.
    std::optional<std::size_t> dominant_index;

    std::size_t size() const { return roots.size(); }
    /// Index of the root whose disk is the mirror image of roots[i].
    std::optional<std::size_t> conjugate_of(std::size_t i) const;
};

constexpr double kDefaultRootTol = 1e-10;

bool is_squarefree(const IntPolynomial& f);

/// Simultaneous (Aberth) iteration followed by a residual certificate.
/// `tol` is a relative stopping tolerance on the corrections. Throws
/// NotSquarefree or NoConvergence.
ConjugateSet roots(const IntPolynomial& f, double tol = kDefaultRootTol);

}  // namespace pfdeg
