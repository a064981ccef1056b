#include "pfdeg/factor.hpp"

#include "pfdeg/error.hpp"
#include "pfdeg/roots.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace pfdeg {

namespace {

constexpr std::size_t kMaxCandidates = 200000;

// Coefficients of prod (x - z_i) in ascending order.
std::vector<Complex> expand(const std::vector<Complex>& zs) {
    std::vector<Complex> c{1.0};
    for (Complex z : zs) {
        std::vector<Complex> next(c.size() + 1, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= z * c[i];
        }
        c = std::move(next);
    }
    return c;
}

std::vector<double> expand_abs(const std::vector<double>& ms) {
    std::vector<double> c{1.0};
    for (double m : ms) {
        std::vector<double> next(c.size() + 1, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] += m * c[i];
        }
        c = std::move(next);
    }
    return c;
}

std::optional<IntPolynomial> try_subset(const IntPolynomial& f, const ConjugateSet& set,
                                        const std::vector<std::size_t>& subset) {
    std::vector<Complex> zs;
    std::vector<double> exact_mod, padded_mod;
    for (std::size_t i : subset) {
        const auto& r = set.roots[i];
        zs.push_back(r.value);
        exact_mod.push_back(std::abs(r.value));
        padded_mod.push_back(std::abs(r.value) + r.radius);
    }
    auto est = expand(zs);
    auto lo = expand_abs(exact_mod);
    auto hi = expand_abs(padded_mod);

    // Integer ranges compatible with each coefficient.
    std::vector<std::pair<BigInt, BigInt>> ranges;
    std::size_t combos = 1;
    for (std::size_t j = 0; j + 1 < est.size(); ++j) {
        double bound = (hi[j] - lo[j]) + 1e-12 * hi[j] + 1e-300;
        double centre = est[j].real();
        BigInt a = ceil(exact_rational(centre - bound));
        BigInt b = floor(exact_rational(centre + bound));
        if (a > b) return std::nullopt;
        BigInt width = b - a + 1;
        if (width > BigInt(kMaxCandidates)) {
            throw Error(ErrorKind::Indeterminate, "root approximations too coarse to recombine factors of " +
                                                      f.pretty());
        }
        combos *= static_cast<std::size_t>(width.convert_to<unsigned long long>());
        if (combos > kMaxCandidates) {
            throw Error(ErrorKind::Indeterminate, "too many factor candidates for " + f.pretty());
        }
        ranges.emplace_back(a, b);
    }

    ZPoly candidate(ranges.size() + 1);
    candidate.back() = 1;
    std::optional<IntPolynomial> found;
    std::function<void(std::size_t)> walk = [&](std::size_t j) {
        if (found) return;
        if (j == ranges.size()) {
            if (poly::exact_quotient(f.coeffs(), candidate)) found = IntPolynomial(candidate);
            return;
        }
        for (BigInt v = ranges[j].first; v <= ranges[j].second && !found; ++v) {
            candidate[j] = v;
            walk(j + 1);
        }
    };
    walk(0);
    return found;
}

}  // namespace

std::optional<IntPolynomial> find_factor(const IntPolynomial& f, int max_degree) {
    const int d = f.degree();
    if (d > max_degree) {
        throw Error(ErrorKind::DegreeTooLarge,
                    "degree " + std::to_string(d) + " exceeds the limit " + std::to_string(max_degree));
    }
    if (d == 1) return std::nullopt;
    if (f.coeff(0) == 0) return IntPolynomial::from_ints({0, 1});

    QPoly q = f.to_rational();
    QPoly g = poly::gcd(q, poly::derivative(q));
    if (g.size() > 1) {
        // Gauss: a monic rational factor of a monic integer polynomial is integral.
        auto z = poly::to_integer(g);
        if (!z) throw Error(ErrorKind::Indeterminate, "non-integral repeated factor");
        return IntPolynomial(*z);
    }

    ConjugateSet set = roots(f);
    const std::size_t n = set.size();

    // Rational root test: integers inside real root disks.
    for (const auto& r : set.roots) {
        if (!r.is_real) continue;
        BigInt a = ceil(exact_rational(r.value.real() - r.radius));
        BigInt b = floor(exact_rational(r.value.real() + r.radius));
        if (b - a > BigInt(kMaxCandidates)) {
            throw Error(ErrorKind::Indeterminate, "root disk too wide for the rational root test");
        }
        for (BigInt m = a; m <= b; ++m) {
            if (poly::eval(f.coeffs(), m) == 0) return IntPolynomial(ZPoly{BigInt(-m), BigInt(1)});
        }
    }

    std::vector<std::size_t> subset;
    std::optional<IntPolynomial> found;
    std::function<void(std::size_t, int)> choose = [&](std::size_t start, int remaining) {
        if (found) return;
        if (remaining == 0) {
            // Closed under conjugation, else the product is not real.
            for (std::size_t i : subset) {
                auto c = set.conjugate_of(i);
                if (!c || std::find(subset.begin(), subset.end(), *c) == subset.end()) return;
            }
            found = try_subset(f, set, subset);
            return;
        }
        for (std::size_t i = start; i < n && !found; ++i) {
            subset.push_back(i);
            choose(i + 1, remaining - 1);
            subset.pop_back();
        }
    };
    for (int k = 2; k <= d / 2 && !found; ++k) choose(0, k);
    return found;
}

bool is_irreducible(const IntPolynomial& f, int max_degree) { return !find_factor(f, max_degree).has_value(); }

std::vector<IntPolynomial> factor_irreducible(const IntPolynomial& f, int max_degree) {
    std::vector<IntPolynomial> out;
    std::vector<IntPolynomial> work{f};
    while (!work.empty()) {
        IntPolynomial g = work.back();
        work.pop_back();
        auto h = find_factor(g, max_degree);
        if (!h) {
            out.push_back(g);
            continue;
        }
        auto quot = poly::exact_quotient(g.coeffs(), h->coeffs());
        work.push_back(*h);
        work.emplace_back(*quot);
    }
    std::sort(out.begin(), out.end(), [](const IntPolynomial& a, const IntPolynomial& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.to_text() < b.to_text();
    });
    return out;
}

}  // namespace pfdeg
