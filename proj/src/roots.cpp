#include "pfdeg/roots.hpp"

#include "pfdeg/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pfdeg {

double ApproxRoot::modulus_lo() const { return std::max(0.0, std::abs(value) - radius); }

double ApproxRoot::modulus_hi() const { return std::abs(value) + radius; }

std::optional<std::size_t> ConjugateSet::conjugate_of(std::size_t i) const {
    const auto& r = roots.at(i);
    if (r.is_real) return i;
    for (std::size_t j = 0; j < roots.size(); ++j) {
        if (j == i || roots[j].is_real) continue;
        if (std::abs(std::conj(r.value) - roots[j].value) <= r.radius + roots[j].radius) return j;
    }
    return std::nullopt;
}

bool is_squarefree(const IntPolynomial& f) {
    QPoly q = f.to_rational();
    return poly::gcd(q, poly::derivative(q)).size() <= 1;
}

namespace {

struct Residual {
    Complex value;
    Complex slope;
};

Residual exact_residual(const ZPoly& f, const ZPoly& df, Complex z) {
    ExactComplex ez{exact_rational(z.real()), exact_rational(z.imag())};
    ExactComplex fv = poly::eval_exact(f, ez);
    ExactComplex dv = poly::eval_exact(df, ez);
    return {Complex(to_double(fv.re), to_double(fv.im)), Complex(to_double(dv.re), to_double(dv.im))};
}

// Horner for f and f' together in double precision.
void horner(const std::vector<double>& c, Complex z, Complex& fv, Complex& dv) {
    fv = 0.0;
    dv = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        dv = dv * z + fv;
        fv = fv * z + *it;
    }
}

double root_bound(const std::vector<double>& c) {
    // Fujiwara: every root satisfies |z| <= 2 max_k |c_{d-k}|^{1/k}.
    const int d = static_cast<int>(c.size()) - 1;
    double bound = 0.0;
    for (int k = 1; k <= d; ++k) {
        double a = std::abs(c[static_cast<std::size_t>(d - k)]);
        if (k == d) a /= 2.0;
        if (a > 0) bound = std::max(bound, std::pow(a, 1.0 / k));
    }
    return std::max(2.0 * bound, 1e-3);
}

std::optional<ConjugateSet> attempt(const IntPolynomial& f, double tol) {
    const int d = f.degree();
    const ZPoly& zc = f.coeffs();
    const ZPoly dz = poly::derivative(zc);
    std::vector<double> c;
    c.reserve(zc.size());
    for (const auto& v : zc) c.push_back(to_double(v));

    std::vector<Complex> z(static_cast<std::size_t>(d));
    const double radius0 = root_bound(c);
    for (int k = 0; k < d; ++k) {
        double ang = 2.0 * std::numbers::pi * k / d + 0.4;
        z[static_cast<std::size_t>(k)] = std::polar(radius0, ang);
    }

    // Aberth-Ehrlich, Gauss-Seidel updates.
    const int max_iter = 2000;
    for (int iter = 0; iter < max_iter; ++iter) {
        double worst = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i) {
            Complex fv, dv;
            horner(c, z[i], fv, dv);
            if (fv == 0.0) continue;
            Complex ratio = dv == 0.0 ? Complex(1e-3 * (1.0 + std::abs(z[i]))) : fv / dv;
            Complex sum = 0.0;
            for (std::size_t j = 0; j < z.size(); ++j) {
                if (j != i) sum += 1.0 / (z[i] - z[j]);
            }
            Complex w = ratio / (1.0 - ratio * sum);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) w = ratio;
            z[i] -= w;
            worst = std::max(worst, std::abs(w) / std::max(1.0, std::abs(z[i])));
        }
        if (worst <= tol) break;
    }

    // Newton polish with exactly evaluated residuals.
    for (auto& zi : z) {
        for (int step = 0; step < 3; ++step) {
            Residual r = exact_residual(zc, dz, zi);
            if (r.value == 0.0 || r.slope == 0.0) break;
            Complex next = zi - r.value / r.slope;
            Residual rn = exact_residual(zc, dz, next);
            if (std::abs(rn.value) >= std::abs(r.value)) break;
            zi = next;
        }
    }

    // Inclusion radii: some root lies within d|f(z)|/|f'(z)| of z.
    std::vector<ApproxRoot> out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        Residual r = exact_residual(zc, dz, z[i]);
        double rad;
        if (r.value == 0.0) {
            rad = 0.0;
        } else if (r.slope == 0.0) {
            return std::nullopt;
        } else {
            rad = d * std::abs(r.value) / std::abs(r.slope);
            rad = rad * (1.0 + 1e-10) + 1e-300;
        }
        if (!std::isfinite(rad)) return std::nullopt;
        out[i] = ApproxRoot{z[i], rad, false};
    }

    auto disjoint = [](const ApproxRoot& a, Complex center, double radius) {
        return std::abs(a.value - center) * (1.0 - 1e-12) > a.radius + radius;
    };
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (std::size_t j = i + 1; j < out.size(); ++j) {
            if (!disjoint(out[i], out[j].value, out[j].radius)) return std::nullopt;
        }
    }

    // Realness: the mirror image of a disk touching the axis overlaps no
    // other disk, so the unique root in it equals its own conjugate.
    for (std::size_t i = 0; i < out.size(); ++i) {
        auto& r = out[i];
        if (std::abs(r.value.imag()) > r.radius) continue;
        for (std::size_t j = 0; j < out.size(); ++j) {
            if (j != i && !disjoint(out[j], std::conj(r.value), r.radius)) return std::nullopt;
        }
        r.is_real = true;
        r.value = Complex(r.value.real(), 0.0);
    }

    // Pair the non-real roots: the mirror of each disk must meet exactly one
    // other disk. Each pair is then made exactly symmetric.
    std::vector<bool> paired(out.size(), false);
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i].is_real || paired[i]) continue;
        std::optional<std::size_t> partner;
        for (std::size_t j = 0; j < out.size(); ++j) {
            if (j == i) continue;
            if (!disjoint(out[j], std::conj(out[i].value), out[i].radius)) {
                if (partner || out[j].is_real || paired[j]) return std::nullopt;
                partner = j;
            }
        }
        if (!partner) return std::nullopt;
        auto& a = out[i];
        auto& b = out[*partner];
        Complex ua = a.value.imag() >= 0 ? a.value : std::conj(a.value);
        Complex ub = b.value.imag() >= 0 ? b.value : std::conj(b.value);
        Complex mid = 0.5 * (ua + ub);
        double rad = std::max(a.radius, b.radius) + 0.5 * std::abs(ua - ub);
        a.value = a.value.imag() >= 0 ? mid : std::conj(mid);
        b.value = std::conj(a.value);
        a.radius = b.radius = rad;
        paired[i] = paired[*partner] = true;
    }

    std::sort(out.begin(), out.end(), [](const ApproxRoot& x, const ApproxRoot& y) {
        double mx = std::abs(x.value), my = std::abs(y.value);
        if (mx != my) return mx > my;
        if (x.value.real() != y.value.real()) return x.value.real() > y.value.real();
        return x.value.imag() > y.value.imag();
    });

    // Vieta consistency of the first and last coefficients.
    Complex sum = 0.0, prod = 1.0;
    double scale = 1.0, slack = 0.0;
    for (const auto& r : out) {
        sum += r.value;
        prod *= r.value;
        scale = std::max(scale, std::abs(r.value));
        slack += r.radius;
    }
    const double expected_sum = -c[static_cast<std::size_t>(d - 1)];
    if (std::abs(sum - expected_sum) > d * tol * scale + 2.0 * slack + 1e-12 * scale) return std::nullopt;
    const double expected_prod = (d % 2 == 0 ? 1.0 : -1.0) * c[0];
    if (std::abs(prod - expected_prod) > (d * tol + 1e-9) * std::max(1.0, std::abs(expected_prod)) +
                                             2.0 * slack * std::pow(scale + slack, d - 1)) {
        return std::nullopt;
    }

    ConjugateSet set{f, std::move(out), std::nullopt};
    const auto& top = set.roots.front();
    if (top.is_real && top.value.real() > 0) {
        bool strict = true;
        for (std::size_t j = 1; j < set.roots.size(); ++j) {
            if (set.roots[j].modulus_hi() >= top.modulus_lo()) strict = false;
        }
        if (strict) set.dominant_index = 0;
    }
    return set;
}

}  // namespace

ConjugateSet roots(const IntPolynomial& f, double tol) {
    if (!(tol > 0)) throw Error(ErrorKind::MalformedInput, "root tolerance must be positive");
    if (!is_squarefree(f)) throw Error(ErrorKind::NotSquarefree, f.pretty() + " has a repeated root");
    if (auto set = attempt(f, tol)) return *set;
    if (auto set = attempt(f, tol / 100.0)) return *set;
    throw Error(ErrorKind::NoConvergence, "could not certify the roots of " + f.pretty());
}

}  // namespace pfdeg
