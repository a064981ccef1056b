#include "pfdeg/classify.hpp"

#include "pfdeg/error.hpp"
#include "pfdeg/factor.hpp"

#include <cmath>
#include <numbers>

namespace pfdeg {

std::string_view to_string(BiperronException e) {
    switch (e) {
        case BiperronException::None: return "none";
        case BiperronException::AlphaInverse: return "alpha_inverse";
        case BiperronException::MinusAlphaInverse: return "minus_alpha_inverse";
        case BiperronException::Both: return "both";
    }
    return "none";
}

namespace detail {

ZPoly pair_product_poly(const ZPoly& f) {
    const int d = static_cast<int>(f.size()) - 1;
    const int D = d * (d - 1) / 2;
    if (D == 0) return {BigInt(1)};
    // a_i is the coefficient of x^{d-i}; power sums by Newton's identities.
    auto a = [&](int i) -> BigInt { return i <= d ? f[static_cast<std::size_t>(d - i)] : BigInt(0); };
    std::vector<BigInt> p(static_cast<std::size_t>(2 * D + 1));
    p[0] = d;
    for (int k = 1; k <= 2 * D; ++k) {
        BigInt s = k <= d ? BigInt(k) * a(k) : BigInt(0);
        for (int i = 1; i < k && i <= d; ++i) s += a(i) * p[static_cast<std::size_t>(k - i)];
        p[static_cast<std::size_t>(k)] = -s;
    }
    // Power sums of the pairwise products z_i z_j, i < j.
    std::vector<BigInt> P(static_cast<std::size_t>(D + 1));
    for (int k = 1; k <= D; ++k) {
        P[static_cast<std::size_t>(k)] =
            (p[static_cast<std::size_t>(k)] * p[static_cast<std::size_t>(k)] - p[static_cast<std::size_t>(2 * k)]) / 2;
    }
    std::vector<BigInt> b(static_cast<std::size_t>(D + 1));
    b[0] = 1;
    for (int k = 1; k <= D; ++k) {
        BigInt s = 0;
        for (int i = 1; i <= k; ++i) s += b[static_cast<std::size_t>(k - i)] * P[static_cast<std::size_t>(i)];
        if (s % k != 0) throw std::logic_error("pair product polynomial is not integral");
        b[static_cast<std::size_t>(k)] = -s / k;
    }
    return ZPoly(b.rbegin(), b.rend());
}

}  // namespace detail

namespace {

// q(x) -> q(x^2)
QPoly in_squares(const ZPoly& q) {
    QPoly out(q.size() * 2 - 1);
    for (std::size_t i = 0; i < q.size(); ++i) out[2 * i] = q[i];
    return out;
}

// x^deg q(1/x)
ZPoly reversed(const ZPoly& q) { return ZPoly(q.rbegin(), q.rend()); }

// q(-x)
ZPoly negated_argument(const ZPoly& q) {
    ZPoly out(q);
    for (std::size_t i = 1; i < out.size(); i += 2) out[i] = -out[i];
    return out;
}

std::optional<std::size_t> largest_positive_real(const ConjugateSet& set) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < set.size(); ++i) {
        const auto& r = set.roots[i];
        if (!r.is_real || r.value.real() <= 0) continue;
        if (!best || r.value.real() > set.roots[*best].value.real()) best = i;
    }
    return best;
}

RealRootInterval isolate(const ConjugateSet& set, std::size_t i) {
    const auto& r = set.roots[i];
    return RealRootInterval(set.poly.to_rational(), r.value.real(), r.radius);
}

// Is some root other than r itself of modulus exactly r? Covers -r and
// non-real z with z * conj(z) = r^2. A pair product equal to r^2 always
// forces a root of modulus >= r, so a hit is never a false alarm.
bool has_outer_tie(const ConjugateSet& set, RealRootInterval& iv) {
    const ZPoly& f = set.poly.coeffs();
    if (iv.sign_at(poly::to_rational(negated_argument(f))) == 0) return true;
    ZPoly pairs = detail::pair_product_poly(f);
    return pairs.size() > 1 && iv.sign_at(in_squares(pairs)) == 0;
}

// Non-real z with |z| = 1/alpha, via z * conj(z) = alpha^{-2}.
bool has_inner_tie(const ConjugateSet& set, RealRootInterval& iv) {
    ZPoly pairs = detail::pair_product_poly(set.poly.coeffs());
    return pairs.size() > 1 && iv.sign_at(in_squares(reversed(pairs))) == 0;
}

constexpr double kGuard = 1e-14;

}  // namespace

bool is_perron(const ConjugateSet& set) {
    auto top = largest_positive_real(set);
    if (!top) return false;
    const QPoly fq = set.poly.to_rational();
    if (poly::eval(fq, Rational(1)) != 0 && poly::count_real_roots_above(fq, Rational(1)) == 0) return false;
    const auto& r = set.roots[*top];
    const double lo = r.modulus_lo() * (1 - kGuard), hi = r.modulus_hi() * (1 + kGuard);
    bool overlap = false;
    for (std::size_t j = 0; j < set.size(); ++j) {
        if (j == *top) continue;
        const auto& z = set.roots[j];
        if (z.modulus_lo() > hi) return false;
        if (z.modulus_hi() >= lo) overlap = true;
    }
    if (!overlap) return true;
    RealRootInterval iv = isolate(set, *top);
    if (has_outer_tie(set, iv)) return false;
    throw Error(ErrorKind::Indeterminate, "root moduli of " + set.poly.pretty() + " are too close to order");
}

double eta(const ApproxRoot& p, const ApproxRoot& q) {
    if (q.is_real || std::abs(q.value.imag()) <= q.radius) {
        throw Error(ErrorKind::RealConjugate, "eta needs a non-real conjugate");
    }
    return std::atan((p.value.real() - q.value.real()) / std::abs(q.value.imag()));
}

std::vector<EtaEntry> eta_list(const ConjugateSet& set) {
    std::vector<EtaEntry> out;
    if (!set.dominant_index) return out;
    const auto& p = set.roots[*set.dominant_index];
    for (std::size_t i = 0; i < set.size(); ++i) {
        const auto& q = set.roots[i];
        if (q.is_real || q.value.imag() < 0) continue;
        out.push_back({i, eta(p, q)});
    }
    return out;
}

std::optional<Theorem1Bound> theorem1_bound(const ConjugateSet& set) {
    if (!is_perron(set)) throw Error(ErrorKind::NotPerron, set.poly.pretty() + " is not Perron");
    const auto list = eta_list(set);
    std::optional<EtaEntry> best;
    for (const auto& e : list) {
        if (e.eta <= 1.0 && (!best || e.eta < best->eta)) best = e;
    }
    if (!best) return std::nullopt;
    const auto& p = set.roots[*set.dominant_index];
    const auto& q = set.roots[best->index];
    // Largest eta compatible with the certified disks.
    const double num = p.value.real() + p.radius - q.value.real() + q.radius;
    const double den = std::abs(q.value.imag()) - q.radius;
    const double eta_hi = std::atan(num / den) * (1 + kGuard);
    const double bound = 2 * std::numbers::pi / (3 * best->eta);
    const auto bound_int = static_cast<long long>(std::ceil(2 * std::numbers::pi / (3 * eta_hi)));
    return Theorem1Bound{best->eta, bound, bound_int};
}

bool is_unit(const IntPolynomial& f) { return abs(f.coeff(0)) == 1; }

BiperronVerdict is_biperron(const ConjugateSet& set) {
    if (!is_unit(set.poly)) throw Error(ErrorKind::NotUnit, set.poly.pretty() + " has constant term other than +-1");
    const QPoly fq = set.poly.to_rational();
    auto top = largest_positive_real(set);
    if (!top || poly::count_real_roots_above(fq, Rational(1)) == 0) {
        throw Error(ErrorKind::NoDominantRealRoot, set.poly.pretty() + " has no real root above 1");
    }
    const auto& a = set.roots[*top];
    RealRootInterval iv = isolate(set, *top);
    const ZPoly& f = set.poly.coeffs();
    const bool has_inv = iv.sign_at(poly::to_rational(reversed(f))) == 0;
    const bool has_minus_inv = iv.sign_at(poly::to_rational(reversed(negated_argument(f)))) == 0;

    const double alpha = a.value.real();
    auto closest_real = [&](double target) {
        std::optional<std::size_t> best;
        for (std::size_t j = 0; j < set.size(); ++j) {
            if (j == *top || !set.roots[j].is_real) continue;
            if (!best || std::abs(set.roots[j].value.real() - target) <
                             std::abs(set.roots[*best].value.real() - target)) {
                best = j;
            }
        }
        return best;
    };
    std::optional<std::size_t> skip_inv, skip_minus;
    if (has_inv) skip_inv = closest_real(1 / alpha);
    if (has_minus_inv) skip_minus = closest_real(-1 / alpha);

    const double outer_lo = a.modulus_lo() * (1 - kGuard), outer_hi = a.modulus_hi() * (1 + kGuard);
    const double inner_lo = 1 / outer_hi, inner_hi = 1 / outer_lo;
    bool outer_overlap = false, inner_overlap = false;
    for (std::size_t j = 0; j < set.size(); ++j) {
        if (j == *top || j == skip_inv || j == skip_minus) continue;
        const auto& z = set.roots[j];
        if (z.modulus_lo() > outer_hi || z.modulus_hi() < inner_lo) return {};
        if (z.modulus_hi() >= outer_lo) outer_overlap = true;
        if (z.modulus_lo() <= inner_hi) inner_overlap = true;
    }
    bool undecided = false;
    if (outer_overlap) {
        if (has_outer_tie(set, iv)) return {};
        undecided = true;
    }
    if (inner_overlap) {
        if (has_inner_tie(set, iv)) return {};
        undecided = true;
    }
    if (undecided) {
        throw Error(ErrorKind::Indeterminate, "conjugates of " + set.poly.pretty() + " sit too close to the annulus");
    }
    BiperronVerdict v{true, BiperronException::None};
    if (skip_inv && skip_minus) {
        v.exception = BiperronException::Both;
    } else if (skip_inv) {
        v.exception = BiperronException::AlphaInverse;
    } else if (skip_minus) {
        v.exception = BiperronException::MinusAlphaInverse;
    }
    return v;
}

bool is_totally_real(const ConjugateSet& set) {
    for (const auto& r : set.roots) {
        if (!r.is_real) return false;
    }
    return true;
}

PerronAnalysis analyze(const IntPolynomial& f, double tol) {
    PerronAnalysis out{f, roots(f, tol), {}, false, false, false, {}, {}, {}};
    if (f.degree() <= kMaxFactorDegree) out.is_irreducible = is_irreducible(f);
    out.is_perron = is_perron(out.conjugates);
    out.is_totally_real = is_totally_real(out.conjugates);
    out.is_unit = is_unit(f);
    if (out.is_unit && poly::count_real_roots_above(f.to_rational(), Rational(1)) > 0) {
        out.is_biperron = is_biperron(out.conjugates);
    }
    if (out.is_perron) {
        out.eta_list = eta_list(out.conjugates);
        out.bound = theorem1_bound(out.conjugates);
    }
    return out;
}

}  // namespace pfdeg
