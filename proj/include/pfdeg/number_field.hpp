#pragma once

#include "pfdeg/polynomial.hpp"
#include "pfdeg/roots.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace pfdeg {

/// Q[x]/(f) for a monic integer f.
class NumberField {
public:
    explicit NumberField(IntPolynomial f);

    const IntPolynomial& poly() const { return poly_; }
    int degree() const { return poly_.degree(); }
    /// Unknown (nullopt) when the degree is beyond the factoring limit.
    std::optional<bool> irreducible() const { return irreducible_; }

    /// Remainder modulo f.
    QPoly reduce(const QPoly& p) const;

private:
    IntPolynomial poly_;
    QPoly rational_;
    std::optional<bool> irreducible_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

FieldPtr make_field(const IntPolynomial& f);

/// a0 + a1*l + ... + a_{d-1}*l^{d-1} with exact rational coordinates.
class NumberFieldElement {
public:
    /// Coordinates are zero-padded to the field degree; more than d
    /// coordinates are reduced modulo f.
    NumberFieldElement(FieldPtr field, std::vector<Rational> coords);

    static NumberFieldElement from_int(FieldPtr field, long long v);
    /// The class of x, i.e. the root itself.
    static NumberFieldElement generator(FieldPtr field);

    const FieldPtr& field() const { return field_; }
    const std::vector<Rational>& coords() const { return coords_; }
    QPoly as_poly() const;
    bool is_zero() const;

    bool operator==(const NumberFieldElement& other) const;

private:
    FieldPtr field_;
    std::vector<Rational> coords_;
};

NumberFieldElement nf_add(const NumberFieldElement& x, const NumberFieldElement& y);
NumberFieldElement nf_sub(const NumberFieldElement& x, const NumberFieldElement& y);
NumberFieldElement nf_mul(const NumberFieldElement& x, const NumberFieldElement& y);
NumberFieldElement nf_neg(const NumberFieldElement& x);
/// Throws NotInvertible for zero and ReduciblePoly when f factors.
NumberFieldElement nf_inverse(const NumberFieldElement& x);
NumberFieldElement nf_div(const NumberFieldElement& x, const NumberFieldElement& y);

inline NumberFieldElement operator+(const NumberFieldElement& x, const NumberFieldElement& y) { return nf_add(x, y); }
inline NumberFieldElement operator-(const NumberFieldElement& x, const NumberFieldElement& y) { return nf_sub(x, y); }
inline NumberFieldElement operator*(const NumberFieldElement& x, const NumberFieldElement& y) { return nf_mul(x, y); }
inline NumberFieldElement operator-(const NumberFieldElement& x) { return nf_neg(x); }

struct Embedding {
    Complex value;
    double radius = 0.0;
};

/// Value of x at a certified root of its field polynomial; `radius`
/// bounds the distance to the true value.
Embedding embed(const NumberFieldElement& x, const ApproxRoot& root);

}  // namespace pfdeg
