#include "pfdeg/number_field.hpp"

#include "pfdeg/error.hpp"
#include "pfdeg/factor.hpp"

#include <cmath>

namespace pfdeg {

NumberField::NumberField(IntPolynomial f) : poly_(std::move(f)), rational_(poly_.to_rational()) {
    if (poly_.degree() <= kMaxFactorDegree) irreducible_ = is_irreducible(poly_);
}

QPoly NumberField::reduce(const QPoly& p) const { return poly::divmod(p, rational_).second; }

FieldPtr make_field(const IntPolynomial& f) { return std::make_shared<const NumberField>(f); }

NumberFieldElement::NumberFieldElement(FieldPtr field, std::vector<Rational> coords) : field_(std::move(field)) {
    if (!field_) throw Error(ErrorKind::MalformedInput, "number field element without a field");
    const auto d = static_cast<std::size_t>(field_->degree());
    if (coords.size() > d) {
        poly::trim(coords);
        coords = field_->reduce(coords);
    }
    coords.resize(d, Rational(0));
    coords_ = std::move(coords);
}

NumberFieldElement NumberFieldElement::from_int(FieldPtr field, long long v) {
    return NumberFieldElement(std::move(field), {Rational(v)});
}

NumberFieldElement NumberFieldElement::generator(FieldPtr field) {
    return NumberFieldElement(std::move(field), {Rational(0), Rational(1)});
}

QPoly NumberFieldElement::as_poly() const {
    QPoly p = coords_;
    poly::trim(p);
    return p;
}

bool NumberFieldElement::is_zero() const {
    for (const auto& c : coords_) {
        if (c != 0) return false;
    }
    return true;
}

bool NumberFieldElement::operator==(const NumberFieldElement& other) const {
    return field_->poly() == other.field_->poly() && coords_ == other.coords_;
}

namespace {

void require_same_field(const NumberFieldElement& x, const NumberFieldElement& y) {
    if (x.field() != y.field() && !(x.field()->poly() == y.field()->poly())) {
        throw Error(ErrorKind::FieldMismatch,
                    x.field()->poly().pretty() + " vs " + y.field()->poly().pretty());
    }
}

}  // namespace

NumberFieldElement nf_add(const NumberFieldElement& x, const NumberFieldElement& y) {
    require_same_field(x, y);
    std::vector<Rational> c(x.coords());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += y.coords()[i];
    return NumberFieldElement(x.field(), std::move(c));
}

NumberFieldElement nf_sub(const NumberFieldElement& x, const NumberFieldElement& y) {
    require_same_field(x, y);
    std::vector<Rational> c(x.coords());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= y.coords()[i];
    return NumberFieldElement(x.field(), std::move(c));
}

NumberFieldElement nf_mul(const NumberFieldElement& x, const NumberFieldElement& y) {
    require_same_field(x, y);
    QPoly prod = poly::mul(x.as_poly(), y.as_poly());
    return NumberFieldElement(x.field(), x.field()->reduce(prod));
}

NumberFieldElement nf_neg(const NumberFieldElement& x) {
    std::vector<Rational> c(x.coords());
    for (auto& v : c) v = -v;
    return NumberFieldElement(x.field(), std::move(c));
}

NumberFieldElement nf_inverse(const NumberFieldElement& x) {
    if (x.is_zero()) throw Error(ErrorKind::NotInvertible, "zero has no inverse");
    if (x.field()->irreducible() == false) {
        throw Error(ErrorKind::ReduciblePoly, x.field()->poly().pretty() + " is reducible");
    }
    // Extended Euclid: s*g + t*f = gcd.
    QPoly f = x.field()->poly().to_rational();
    QPoly r0 = f, r1 = x.as_poly();
    QPoly s0{}, s1{Rational(1)};
    while (!r1.empty()) {
        auto [q, r] = poly::divmod(r0, r1);
        QPoly s = poly::sub(s0, poly::mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r0.size() != 1) {
        throw Error(ErrorKind::ReduciblePoly, "element shares a factor with " + x.field()->poly().pretty());
    }
    QPoly inv = poly::scale(s0, Rational(1) / r0[0]);
    return NumberFieldElement(x.field(), x.field()->reduce(inv));
}

NumberFieldElement nf_div(const NumberFieldElement& x, const NumberFieldElement& y) { return nf_mul(x, nf_inverse(y)); }

Embedding embed(const NumberFieldElement& x, const ApproxRoot& root) {
    const auto& c = x.coords();
    const Complex z = root.value;
    const double az = std::abs(z);
    const double r = root.radius;
    Complex acc = 0.0;
    double deriv_bound = 0.0;  // sum k |a_k| (|z|+r)^{k-1}
    double magnitude = 0.0;    // sum |a_k| |z|^k, for rounding error
    for (std::size_t k = c.size(); k-- > 0;) {
        double a = to_double(c[k]);
        acc = acc * z + a;
        magnitude = magnitude * az + std::abs(a);
        if (k > 0) deriv_bound += static_cast<double>(k) * std::abs(a) * std::pow(az + r, static_cast<double>(k - 1));
    }
    double rounding = 4.0 * static_cast<double>(c.size() + 1) * 1.2e-16 * magnitude;
    return Embedding{acc, r * deriv_bound + rounding};
}

}  // namespace pfdeg
