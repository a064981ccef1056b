#pragma once

#include "pfdeg/polynomial.hpp"

#include <optional>
#include <vector>

namespace pfdeg {

constexpr int kMaxFactorDegree = 8;

/// A monic integer factor of degree 1 <= k < deg f, or nullopt when f is
/// irreducible over Z. Candidates come from conjugation-closed subsets of
/// the certified roots; every integer polynomial whose coefficients fit the
/// certified error bounds is tried by exact division. Throws DegreeTooLarge
/// above `max_degree` and Indeterminate if the bounds are too coarse.
std::optional<IntPolynomial> find_factor(const IntPolynomial& f, int max_degree = kMaxFactorDegree);

bool is_irreducible(const IntPolynomial& f, int max_degree = kMaxFactorDegree);

/// Irreducible monic factors with multiplicity, ascending by degree.
std::vector<IntPolynomial> factor_irreducible(const IntPolynomial& f, int max_degree = kMaxFactorDegree);

}  // namespace pfdeg
