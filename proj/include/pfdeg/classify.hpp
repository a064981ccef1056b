#pragma once

#include "pfdeg/roots.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pfdeg {

/// Which boundary exception let a conjugate on the circle |z| = 1/alpha
/// through the biPerron test.
enum class BiperronException { None, AlphaInverse, MinusAlphaInverse, Both };

std::string_view to_string(BiperronException e);

struct BiperronVerdict {
    bool value = false;
    BiperronException exception = BiperronException::None;
};

struct EtaEntry {
    std::size_t index;  // into ConjugateSet::roots, the member with Im > 0
    double eta;
};

struct Theorem1Bound {
    double best_eta;
    double lower_bound;
    long long lower_bound_int;
};

struct PerronAnalysis {
    IntPolynomial poly;
    ConjugateSet conjugates;
    /// Unknown above the factoring degree limit.
    std::optional<bool> is_irreducible;
    bool is_perron = false;
    bool is_totally_real = false;
    bool is_unit = false;
    /// Present only for units whose largest real root exceeds 1.
    std::optional<BiperronVerdict> is_biperron;
    std::vector<EtaEntry> eta_list;
    std::optional<Theorem1Bound> bound;
};

/// A real root >= 1 whose modulus strictly exceeds that of every other
/// root. Exact ties are detected algebraically; an unresolved overlap of
/// certified moduli throws Indeterminate.
bool is_perron(const ConjugateSet& conjugates);

/// atan((p - Re p') / |Im p'|). Throws RealConjugate if p' is real.
double eta(const ApproxRoot& p, const ApproxRoot& p_prime);

/// One entry per conjugate pair, measured from the dominant root. Empty
/// unless the dominant root is certified.
std::vector<EtaEntry> eta_list(const ConjugateSet& conjugates);

/// Lower bound 2 pi / (3 eta) from the smallest eta <= 1. The integer
/// bound is the ceiling of the bound evaluated at the largest eta inside
/// the certified disks. nullopt when no conjugate qualifies. Throws
/// NotPerron.
std::optional<Theorem1Bound> theorem1_bound(const ConjugateSet& conjugates);

/// Throws NotUnit and NoDominantRealRoot (no real root above 1).
BiperronVerdict is_biperron(const ConjugateSet& conjugates);

bool is_totally_real(const ConjugateSet& conjugates);

bool is_unit(const IntPolynomial& f);

PerronAnalysis analyze(const IntPolynomial& f, double tol = kDefaultRootTol);

namespace detail {
/// prod_{i<j} (y - z_i z_j) over the roots z_i of f, exactly.
ZPoly pair_product_poly(const ZPoly& monic);
}  // namespace detail

}  // namespace pfdeg
