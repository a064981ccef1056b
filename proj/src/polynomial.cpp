#include "pfdeg/polynomial.hpp"

#include "pfdeg/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pfdeg {

namespace {

std::string_view strip(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n')) s.remove_suffix(1);
    return s;
}

bool is_integer_token(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
}

}  // namespace

IntPolynomial::IntPolynomial(ZPoly ascending) : coeffs_(std::move(ascending)) {
    if (coeffs_.size() < 2) throw Error(ErrorKind::MalformedInput, "polynomial must have degree >= 1");
    if (coeffs_.back() != 1) {
        throw Error(ErrorKind::NotMonic, "leading coefficient is " + coeffs_.back().str() + ", expected 1");
    }
}

IntPolynomial IntPolynomial::from_ints(std::initializer_list<long long> ascending) {
    ZPoly c;
    c.reserve(ascending.size());
    for (long long v : ascending) c.emplace_back(v);
    return IntPolynomial(std::move(c));
}

QPoly IntPolynomial::to_rational() const { return poly::to_rational(coeffs_); }

std::string IntPolynomial::to_text() const { return poly::to_text(coeffs_); }

std::string IntPolynomial::pretty() const {
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const BigInt& c = coeffs_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        BigInt mag = c < 0 ? BigInt(-c) : c;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0 || mag != 1) os << mag;
        if (i > 0) {
            if (mag != 1) os << "*";
            os << "x";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

IntPolynomial parse_poly(std::string_view text) {
    ZPoly coeffs;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = text.find(',', start);
        std::string_view token = strip(text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                                          : comma - start));
        if (!is_integer_token(token)) {
            throw Error(ErrorKind::MalformedInput, "not an integer coefficient: '" + std::string(token) + "'");
        }
        if (token[0] == '+') token.remove_prefix(1);
        coeffs.emplace_back(std::string(token));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return IntPolynomial(std::move(coeffs));
}

namespace poly {

std::pair<QPoly, QPoly> divmod(const QPoly& num, const QPoly& den) {
    if (den.empty()) throw std::domain_error("polynomial division by zero");
    QPoly rem = num;
    trim(rem);
    if (rem.size() < den.size()) return {QPoly{}, rem};
    QPoly quot(rem.size() - den.size() + 1);
    const Rational& lead = den.back();
    for (std::size_t k = quot.size(); k-- > 0;) {
        Rational c = rem[k + den.size() - 1] / lead;
        quot[k] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j < den.size(); ++j) rem[k + j] -= c * den[j];
    }
    trim(rem);
    trim(quot);
    return {quot, rem};
}

QPoly make_monic(const QPoly& p) {
    if (p.empty()) return p;
    QPoly r(p);
    Rational lead = r.back();
    for (auto& c : r) c /= lead;
    return r;
}

QPoly gcd(const QPoly& a, const QPoly& b) {
    QPoly x = a, y = b;
    trim(x);
    trim(y);
    while (!y.empty()) {
        QPoly r = divmod(x, y).second;
        x = std::move(y);
        y = make_monic(r);
    }
    return make_monic(x);
}

QPoly squarefree_part(const QPoly& p) {
    QPoly g = gcd(p, derivative(p));
    if (g.size() <= 1) return make_monic(p);
    return make_monic(divmod(p, g).first);
}

std::optional<ZPoly> exact_quotient(const ZPoly& num, const ZPoly& monic_den) {
    if (monic_den.empty() || monic_den.back() != 1) throw std::domain_error("exact_quotient needs a monic divisor");
    ZPoly rem = num;
    trim(rem);
    if (rem.empty()) return ZPoly{};
    if (rem.size() < monic_den.size()) return std::nullopt;
    ZPoly quot(rem.size() - monic_den.size() + 1);
    for (std::size_t k = quot.size(); k-- > 0;) {
        BigInt c = rem[k + monic_den.size() - 1];
        quot[k] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j < monic_den.size(); ++j) rem[k + j] -= c * monic_den[j];
    }
    trim(rem);
    if (!rem.empty()) return std::nullopt;
    return quot;
}

QPoly to_rational(const ZPoly& p) {
    QPoly q;
    q.reserve(p.size());
    for (const auto& c : p) q.emplace_back(c);
    return q;
}

std::optional<ZPoly> to_integer(const QPoly& p) {
    ZPoly z;
    z.reserve(p.size());
    for (const auto& c : p) {
        if (boost::multiprecision::denominator(c) != 1) return std::nullopt;
        z.push_back(boost::multiprecision::numerator(c));
    }
    return z;
}

ExactComplex eval_exact(const ZPoly& p, const ExactComplex& z) {
    ExactComplex acc{Rational(0), Rational(0)};
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        Rational re = acc.re * z.re - acc.im * z.im + Rational(*it);
        Rational im = acc.re * z.im + acc.im * z.re;
        acc.re = std::move(re);
        acc.im = std::move(im);
    }
    return acc;
}

int sign(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

namespace {

std::vector<QPoly> sturm_sequence(const QPoly& p) {
    std::vector<QPoly> seq;
    QPoly a = squarefree_part(p);
    if (a.empty()) return seq;
    seq.push_back(a);
    QPoly b = derivative(a);
    while (!b.empty()) {
        seq.push_back(b);
        QPoly r = divmod(seq[seq.size() - 2], b).second;
        for (auto& c : r) c = -c;
        b = std::move(r);
    }
    return seq;
}

int variations(const std::vector<int>& signs) {
    int count = 0;
    int last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

int variations_at(const std::vector<QPoly>& seq, const Rational& x) {
    std::vector<int> signs;
    signs.reserve(seq.size());
    for (const auto& q : seq) signs.push_back(sign(eval(q, x)));
    return variations(signs);
}

int variations_at_infinity(const std::vector<QPoly>& seq) {
    std::vector<int> signs;
    signs.reserve(seq.size());
    for (const auto& q : seq) signs.push_back(sign(q.back()));
    return variations(signs);
}

}  // namespace

int count_real_roots(const QPoly& p, const Rational& lo, const Rational& hi) {
    if (!(lo < hi)) return 0;
    auto seq = sturm_sequence(p);
    if (seq.empty()) throw std::domain_error("root count of the zero polynomial");
    return variations_at(seq, lo) - variations_at(seq, hi);
}

int count_real_roots_above(const QPoly& p, const Rational& lo) {
    auto seq = sturm_sequence(p);
    if (seq.empty()) throw std::domain_error("root count of the zero polynomial");
    return variations_at(seq, lo) - variations_at_infinity(seq);
}

std::string to_text(const ZPoly& p) {
    if (p.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out += ',';
        out += p[i].str();
    }
    return out;
}

}  // namespace poly

RealRootInterval::RealRootInterval(QPoly p, double approx, double radius)
    : poly_(poly::squarefree_part(p)) {
    double w = std::max({2.0 * radius, 4.0 * std::abs(approx) * 2.3e-16, 1e-300});
    const Rational center = exact_rational(approx);
    for (int attempt = 0; attempt < 200; ++attempt) {
        Rational half = exact_rational(w);
        Rational lo = center - half;
        Rational hi = center + half;
        int n = poly::count_real_roots(poly_, lo, hi);
        if (n == 1 && poly::eval(poly_, lo) != 0 && poly::eval(poly_, hi) != 0) {
            lo_ = lo;
            hi_ = hi;
            return;
        }
        if (n == 0) {
            w *= 2.0;
        } else if (n > 1) {
            w /= 3.0;
        } else {
            w *= 1.0000001;
        }
    }
    throw Error(ErrorKind::Indeterminate, "could not isolate real root near " + std::to_string(approx));
}

void RealRootInterval::bisect() {
    Rational mid = (lo_ + hi_) / 2;
    int s_mid = poly::sign(poly::eval(poly_, mid));
    if (s_mid == 0) {
        Rational quarter = (hi_ - lo_) / 4;
        lo_ = mid - quarter;
        hi_ = mid + quarter;
        return;
    }
    int s_lo = poly::sign(poly::eval(poly_, lo_));
    if (s_lo != s_mid) {
        hi_ = mid;
    } else {
        lo_ = mid;
    }
}

void RealRootInterval::refine_to_width(const Rational& width) {
    while (hi_ - lo_ > width) bisect();
}

int RealRootInterval::sign_at(const QPoly& g) {
    QPoly gt = g;
    poly::trim(gt);
    if (gt.empty()) return 0;
    QPoly common = poly::gcd(poly_, gt);
    if (common.size() > 1 && poly::count_real_roots(common, lo_, hi_) > 0) return 0;
    QPoly sq = poly::squarefree_part(gt);
    for (int iter = 0; iter < 100000; ++iter) {
        if (sq.size() <= 1 || poly::count_real_roots(sq, lo_, hi_) == 0) {
            return poly::sign(poly::eval(gt, hi_));
        }
        bisect();
    }
    throw Error(ErrorKind::Indeterminate, "sign determination did not terminate");
}

}  // namespace pfdeg
