#include "pfdeg/families.hpp"

#include "pfdeg/error.hpp"
#include "pfdeg/factor.hpp"

#include <cmath>
#include <sstream>

namespace pfdeg {

namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

const QPoly kX{Rational(0), Rational(1)};

QPoly constant(const Rational& v) { return QPoly{v}; }

QPoly qsub(const QPoly& a, const QPoly& b) { return poly::sub(a, b); }

QPoly qmul(const QPoly& a, const QPoly& b) { return poly::mul(a, b); }

QPoly qscale(const QPoly& a, const Rational& s) { return poly::scale(a, s); }

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

}  // namespace

IntPolynomial family_cubic(const BigInt& a, const BigInt& b, const BigInt& c) {
    const BigInt s = a * a + b * b;
    return IntPolynomial(ZPoly{-(c * s) - 1, 2 * a * c + s, -(c + 2 * a), BigInt(1)});
}

CubicFamily make_cubic_family(const BigInt& a, const BigInt& b, const BigInt& c, const Rational& epsilon) {
    IntPolynomial f = family_cubic(a, b, c);
    ConjugateSet set = roots(f);
    std::optional<std::size_t> real_top, upper;
    for (std::size_t i = 0; i < set.size(); ++i) {
        const auto& r = set.roots[i];
        if (r.is_real && (!real_top || r.value.real() > set.roots[*real_top].value.real())) real_top = i;
        if (!r.is_real && r.value.imag() > 0) upper = i;
    }
    CubicFamily fam{epsilon, 0, 0, 0, 0, a, b, c, f, set, {}, {}, std::nan(""), std::nullopt};
    // A cubic always has a real root.
    fam.omega1 = set.roots[*real_top];
    if (upper) {
        fam.omega2 = set.roots[*upper];
        fam.eta = eta(fam.omega1, fam.omega2);
    } else {
        fam.omega2 = set.roots[*real_top == 0 ? 1 : 0];
    }
    return fam;
}

CubicFamily generate_cubic(const Rational& epsilon) {
    if (epsilon <= 0 || epsilon >= 1) {
        throw Error(ErrorKind::EpsilonOutOfRange, "epsilon must lie in (0, 1), got " + to_string(epsilon));
    }
    const BigInt p = numerator(epsilon), q = denominator(epsilon);
    const BigInt b0 = 1;
    // sqrt(a0^2 + 1) < a0 + epsilon, squared and scaled by q^2.
    BigInt a0 = 1;
    while (q * q * (a0 * a0 + 1) >= (q * a0 + p) * (q * a0 + p)) ++a0;
    const BigInt c0 = a0 * a0;
    const BigInt norm = a0 * a0 + 1;
    // k(a0 + eps) - k sqrt(a0^2 + 1) >= c0 + 4, monotone in k.
    auto room = [&](const BigInt& k) {
        BigInt lhs = k * (q * a0 + p) - q * (c0 + 4);
        return lhs >= 0 && lhs * lhs >= q * q * k * k * norm;
    };
    BigInt hi = 1;
    while (!room(hi)) hi *= 2;
    BigInt lo = hi / 2;  // room(lo) is false or lo == 0
    while (hi - lo > 1) {
        BigInt mid = (lo + hi) / 2;
        if (room(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    BigInt k = hi;
    auto c_of = [&](const BigInt& kk) { return floor_div(kk * (q * a0 + p), q); };
    while (!(k * p > q && k > 2 && c_of(k) > 2)) ++k;
    const BigInt c = c_of(k);
    if (!(c * c > k * k * norm)) throw std::logic_error("family parameter c fell below k sqrt(a0^2 + 1)");

    CubicFamily fam = make_cubic_family(k * a0, k * b0, c, epsilon);
    fam.a0 = a0;
    fam.b0 = b0;
    fam.c0 = c0;
    fam.k = k;
    return fam;
}

ClaimReport evaluate_claims(const CubicFamily& fam) {
    ClaimReport report;
    const BigInt &a = fam.a, &b = fam.b, &c = fam.c;
    const Rational eps = fam.epsilon;
    const BigInt p = numerator(eps), q = denominator(eps);
    const BigInt s = a * a + b * b;
    const BigInt n = c * s + 1;  // omega1 |omega2|^2
    const QPoly fq = fam.f.to_rational();
    auto add = [&](const char* claim, bool ok, std::string detail) {
        report.results.push_back({claim, ok, std::move(detail)});
    };

    add("claim1", c > 0 && c * c > s && q * c <= q * a + p * b && a * a <= c * b * b,
        "sqrt(a^2+b^2) < c <= a + eps b and (a/b)^2 <= c");

    RealRootInterval iv(fq, fam.omega1.value.real(), fam.omega1.radius);
    auto sign = [&](const QPoly& h) { return iv.sign_at(h); };
    const std::string w1 = "omega1 = " + fmt(fam.omega1.value.real());

    const Rational upper = Rational(c) + Rational(c + 1, s - 1);
    add("claim2",
        sign(qsub(kX, constant(Rational(c)))) > 0 && sign(qsub(constant(upper), kX)) > 0 &&
            sign(qsub(constant(Rational(c + 1)), kX)) >= 0,
        w1 + " in (c, c + (c+1)/(a^2+b^2-1)) and <= c+1");

    BigInt cauchy = 1;
    for (const auto& coef : fam.f.coeffs()) cauchy = std::max(cauchy, BigInt(abs(coef) + 1));
    const int real_roots = poly::count_real_roots_above(fq, Rational(-cauchy));
    add("claim3", real_roots == 1, std::to_string(real_roots) + " real root(s)");

    // The other two roots are conjugate, so |omega2|^2 = n / omega1 and
    // Re omega2 = (c + 2a - omega1) / 2.
    const QPoly cube = qmul(kX, qmul(kX, kX));
    add("claim4", real_roots == 1 && sign(qsub(cube, constant(Rational(n)))) > 0, "|omega2| < omega1");

    add("claim5", real_roots == 1 && sign(qsub(constant(Rational(n)), qscale(kX, Rational(s - 1)))) >= 0,
        "|omega2|^2 = " + fmt(std::norm(fam.omega2.value)) + " >= a^2+b^2-1");

    const QPoly trace_gap = qsub(constant(Rational(c + 2 * a)), kX);         // 2 Re omega2
    const QPoly lead_gap = qsub(qscale(kX, Rational(3)), constant(Rational(c + 2 * a)));  // 2(omega1 - Re omega2)
    // 4 omega1 Im(omega2)^2 and 4 omega1 (omega1 - Re omega2)^2
    const QPoly im4 = qsub(constant(Rational(4 * n)), qmul(kX, qmul(trace_gap, trace_gap)));
    const QPoly gap4 = qmul(kX, qmul(lead_gap, lead_gap));
    const bool re_ok = sign(qsub(kX, constant(Rational(c)))) >= 0 &&
                       sign(qsub(constant(Rational(c + 4 * a)), kX)) >= 0;
    const bool gap_ok =
        sign(lead_gap) > 0 && sign(qsub(constant(Rational(2 * (c - a + 2))), lead_gap)) > 0;
    const bool im_ok = sign(qsub(im4, qscale(kX, Rational(4 * (b * b - 1))))) >= 0;
    add("claim6", real_roots == 1 && re_ok && gap_ok && im_ok,
        "|Re omega2| <= a, 0 < omega1 - Re omega2 < c - a + 2, Im(omega2)^2 >= b^2 - 1");

    const Rational binv = Rational(1, b);
    const Rational bound7 = (eps + 2 * binv) * (eps + 2 * binv) / (1 - binv * binv);
    add("claim7", real_roots == 1 && sign(qsub(qscale(im4, bound7), gap4)) >= 0,
        "((omega1 - Re omega2)/Im omega2)^2 <= (eps + 2/b)^2 / (1 - 1/b^2)");

    add("tan_eta", real_roots == 1 && sign(qsub(qscale(im4, 36 * eps * eps), gap4)) > 0,
        "tan(eta) = " + fmt(std::tan(fam.eta)) + " < 6 eps = " + fmt(6 * to_double(eps)));
    return report;
}

ClaimReport verify_claims(const CubicFamily& fam) {
    ClaimReport report = evaluate_claims(fam);
    report.require_all();
    return report;
}

IntPolynomial reciprocal_substitution(const IntPolynomial& g) {
    const int d = g.degree();
    const ZPoly lift{BigInt(1), BigInt(0), BigInt(1)};  // y^2 + 1
    ZPoly total;
    ZPoly power{BigInt(1)};
    for (int k = 0; k <= d; ++k) {
        ZPoly term(static_cast<std::size_t>(d - k), BigInt(0));  // times y^{d-k}
        term.insert(term.end(), power.begin(), power.end());
        total = poly::add(total, poly::scale(term, g.coeff(k)));
        power = poly::mul(power, lift);
    }
    return IntPolynomial(total);
}

bool check_observation(const IntPolynomial& gamma_poly) {
    ConjugateSet set = roots(gamma_poly);
    if (!is_perron(set)) throw Error(ErrorKind::NotPerron, gamma_poly.pretty() + " is not Perron");
    if (poly::count_real_roots_above(gamma_poly.to_rational(), Rational(2)) == 0) return false;
    const auto& g = set.roots[*set.dominant_index];
    const double limit_lo = (g.value.real() - g.radius - 2) * (1 - 1e-14);
    const double limit_hi = (g.value.real() + g.radius - 2) * (1 + 1e-14);
    for (std::size_t j = 0; j < set.size(); ++j) {
        if (j == *set.dominant_index) continue;
        const auto& z = set.roots[j];
        if (z.modulus_hi() <= limit_lo) continue;
        if (z.modulus_lo() > limit_hi) return false;
        throw Error(ErrorKind::Indeterminate, "a conjugate of " + gamma_poly.pretty() + " has modulus near gamma - 2");
    }
    return true;
}

namespace {

double largest_real_root(const IntPolynomial& f) {
    double best = -HUGE_VAL;
    for (const auto& r : roots(f).roots) {
        if (r.is_real) best = std::max(best, r.value.real());
    }
    return best;
}

}  // namespace

BiperronResult to_biperron(const IntPolynomial& gamma_poly) {
    if (!check_observation(gamma_poly)) {
        throw Error(ErrorKind::HypothesisFailed,
                    "need gamma > 2 and |gamma'| <= gamma - 2 for " + gamma_poly.pretty());
    }
    IntPolynomial sub = reciprocal_substitution(gamma_poly);
    std::optional<IntPolynomial> alpha_poly;
    std::optional<IntPolynomial> substituted;
    if (is_irreducible(sub)) {
        alpha_poly = sub;
    } else {
        substituted = sub;
        double best = -HUGE_VAL;
        for (const auto& part : factor_irreducible(sub)) {
            double top = largest_real_root(part);
            if (!alpha_poly || top > best) {
                best = top;
                alpha_poly = part;
            }
        }
    }
    PerronAnalysis analysis = analyze(*alpha_poly);
    if (!analysis.is_biperron || !analysis.is_biperron->value) {
        throw Error(ErrorKind::ClaimViolated, "alpha from " + gamma_poly.pretty() + " is not biPerron");
    }
    return BiperronResult{*alpha_poly, substituted, std::move(analysis)};
}

BiperronResult to_biperron(const CubicFamily& fam) {
    const BigInt s = fam.a * fam.a + fam.b * fam.b;
    const BigInt p = numerator(fam.epsilon), q = denominator(fam.epsilon);
    const bool room = fam.c >= 3 && (fam.c - 3) * (fam.c - 3) >= s;
    if (!room || fam.b <= 2 || fam.c <= 2 || fam.b * p <= q) {
        throw Error(ErrorKind::HypothesisFailed, "family parameters too small for the biPerron construction");
    }
    BiperronResult out = to_biperron(fam.f);
    const auto& bound = out.analysis.bound;
    if (!bound || !(std::tan(bound->best_eta) <= 16 * to_double(fam.epsilon))) {
        throw Error(ErrorKind::ClaimViolated, "tan(eta) exceeds 16 epsilon for the biPerron family");
    }
    return out;
}

}  // namespace pfdeg
