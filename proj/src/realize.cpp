#include "pfdeg/realize.hpp"

#include "pfdeg/classify.hpp"
#include "pfdeg/error.hpp"
#include "pfdeg/number_field.hpp"
#include "pfdeg/roots.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <thread>

namespace pfdeg {

namespace {

using Bool = std::vector<std::uint8_t>;

Bool bool_mul(const Bool& x, const Bool& y, std::size_t n) {
    Bool r(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            if (!x[i * n + k]) continue;
            for (std::size_t j = 0; j < n; ++j) r[i * n + j] |= y[k * n + j];
        }
    }
    return r;
}

// BFS levels from vertex 0 along edges (or reversed edges); -1 if unreached.
std::vector<int> bfs_levels(const IntMatrix& m, bool reversed) {
    const std::size_t n = m.size();
    std::vector<int> level(n, -1);
    std::queue<std::size_t> q;
    level[0] = 0;
    q.push(0);
    while (!q.empty()) {
        auto u = q.front();
        q.pop();
        for (std::size_t v = 0; v < n; ++v) {
            const bool edge = reversed ? m(v, u) > 0 : m(u, v) > 0;
            if (edge && level[v] < 0) {
                level[v] = level[u] + 1;
                q.push(v);
            }
        }
    }
    return level;
}

struct LambdaCert {
    IntPolynomial f;
    ConjugateSet conjugates;
    std::size_t dominant = 0;

    RealRootInterval interval() const {
        const auto& r = conjugates.roots[dominant];
        return RealRootInterval(f.to_rational(), r.value.real(), r.radius);
    }
    double lambda() const { return conjugates.roots[dominant].value.real(); }
};

LambdaCert perron_cert(const IntPolynomial& f) {
    auto cs = roots(f);
    if (!is_perron(cs)) throw Error(ErrorKind::NotPerron, f.pretty() + " is not a Perron polynomial");
    const std::size_t dom = *cs.dominant_index;
    return LambdaCert{f, std::move(cs), dom};
}

// The spectral radius test: q has no real root at or beyond lambda. A
// non-negative matrix has its spectral radius as an eigenvalue, so a
// larger radius would show up as such a root.
bool radius_is_lambda(const ZPoly& q, RealRootInterval iv) {
    const QPoly qq = poly::to_rational(q);
    if (qq.size() <= 1) return true;
    if (iv.sign_at(qq) == 0) return false;
    while (poly::count_real_roots(qq, iv.lo(), iv.hi()) > 0) iv.bisect();
    return poly::count_real_roots_above(qq, iv.hi()) == 0;
}

std::optional<Realization> certify_with(const IntMatrix& a, const LambdaCert& cert) {
    auto q = poly::exact_quotient(charpoly(a), cert.f.coeffs());
    if (!q) return std::nullopt;
    if (!radius_is_lambda(*q, cert.interval())) return std::nullopt;
    auto ap = is_aperiodic(a);
    if (!ap.aperiodic) return std::nullopt;
    return Realization{a, cert.f, *ap.exponent, std::move(*q)};
}

std::optional<long long> to_ll(const BigInt& v) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min()) return std::nullopt;
    return static_cast<long long>(v);
}

}  // namespace

AperiodicityResult is_aperiodic(const IntMatrix& m) {
    const std::size_t n = m.size();
    if (n == 0) throw Error(ErrorKind::MalformedInput, "empty matrix");
    AperiodicityResult out;

    bool graph_verdict = false;
    auto fwd = bfs_levels(m, false);
    auto bwd = bfs_levels(m, true);
    const bool strong = std::all_of(fwd.begin(), fwd.end(), [](int l) { return l >= 0; }) &&
                        std::all_of(bwd.begin(), bwd.end(), [](int l) { return l >= 0; });
    if (!strong) {
        out.reason = "not strongly connected";
    } else {
        // Every cycle length is a multiple of the gcd of level defects.
        long long g = 0;
        for (std::size_t u = 0; u < n; ++u) {
            for (std::size_t v = 0; v < n; ++v) {
                if (m(u, v) > 0) g = std::gcd(g, static_cast<long long>(fwd[u]) + 1 - fwd[v]);
            }
        }
        if (g == 0) {
            out.reason = "no cycles";
        } else {
            out.period = static_cast<int>(g);
            graph_verdict = g == 1;
            out.reason = graph_verdict ? "aperiodic" : "period " + std::to_string(g);
        }
    }

    Bool base(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) base[i * n + j] = m(i, j) > 0;
    }
    const int wielandt = static_cast<int>((n - 1) * (n - 1) + 1);
    Bool power = base;
    for (int k = 1; k <= wielandt; ++k) {
        if (std::all_of(power.begin(), power.end(), [](std::uint8_t b) { return b != 0; })) {
            out.exponent = k;
            break;
        }
        power = bool_mul(power, base, n);
    }
    if (graph_verdict != out.exponent.has_value()) {
        throw std::logic_error("aperiodicity: graph test and boolean powering disagree");
    }
    out.aperiodic = graph_verdict;
    return out;
}

std::optional<Realization> certify(const IntMatrix& a, const IntPolynomial& f) {
    return certify_with(a, perron_cert(f));
}

Realization quadratic_realize(const IntPolynomial& f) {
    if (f.degree() != 2) throw Error(ErrorKind::NotQuadratic, f.pretty() + " has degree " + std::to_string(f.degree()));
    const BigInt u = -f.coeff(1), v = f.coeff(0);
    const BigInt disc = u * u - 4 * v;
    if (disc < 0) throw Error(ErrorKind::NotPerron, f.pretty() + " has no real roots");
    const BigInt r = isqrt(disc);
    if (r * r == disc) throw Error(ErrorKind::ReduciblePoly, f.pretty() + " has a square discriminant");
    if (u <= 0) throw Error(ErrorKind::NotPerron, f.pretty() + " has conjugates of equal modulus or a negative root");

    IntMatrix a(2);
    auto set = [&](std::size_t i, std::size_t j, const BigInt& val) { a.set(i, j, static_cast<std::int64_t>(val)); };
    if (u % 2 == 0) {
        set(0, 0, u / 2);
        set(0, 1, disc / 4);
        set(1, 0, 1);
        set(1, 1, u / 2);
    } else {
        set(0, 0, (u + 1) / 2);
        set(0, 1, (disc - 1) / 4);
        set(1, 0, 1);
        set(1, 1, (u - 1) / 2);
    }
    auto cert = certify(a, f);
    if (!cert) throw std::logic_error("quadratic closed form failed its certificate");
    return *cert;
}

ObstructionReport trace_obstruction(const IntPolynomial& f, int max_power) {
    perron_cert(f);
    const int d = f.degree();
    ObstructionReport out;
    std::vector<BigInt> p(static_cast<std::size_t>(max_power) + 1);
    for (int k = 1; k <= max_power; ++k) {
        // Newton: p_k = -(c_{d-1} p_{k-1} + ... ) - k c_{d-k}.
        BigInt s = 0;
        for (int i = 1; i < k && i <= d; ++i) s += f.coeff(d - i) * p[static_cast<std::size_t>(k - i)];
        if (k <= d) s += BigInt(k) * f.coeff(d - k);
        p[static_cast<std::size_t>(k)] = -s;
        out.power_sums.push_back(-s);
        if (-s < 0) out.violating.push_back(k);
    }
    return out;
}

namespace {

struct SearchContext {
    int n = 0;
    int d = 0;
    long long bound = 0;
    LambdaCert cert;
    double lambda = 0;
    long long diag_max = 0;
    long long trace_min = 0, trace_max = 0;
    std::optional<long long> p2;  // required trace of A^2 when n = d
    bool small_charpoly = false;  // charpoly fits in __int128
    std::vector<__int128> f_small;  // f itself when n = d and it fits
    std::vector<std::pair<int, __int128>> f_values;  // nonzero f(x) at small x
};

class Searcher {
public:
    Searcher(const SearchContext& ctx, std::uint64_t cap, const std::atomic<long long>& found, long long task)
        : c_(ctx), cap_(cap), found_(found), task_(task), a_(static_cast<std::size_t>(ctx.n * ctx.n), 0) {}

    // Runs the subtree with a00 = first.
    void run(long long first) {
        ++nodes;
        a_[0] = first;
        if (!accept(0, 0)) return;
        dfs(1, first);
    }

    std::uint64_t nodes = 0;
    bool exceeded = false;
    std::optional<Realization> result;

private:
    long long& at(int i, int j) { return a_[static_cast<std::size_t>(i * c_.n + j)]; }

    // Local pruning after entry (i, j) is set.
    bool accept(int i, int j) {
        const int n = c_.n;
        if (i == j) {
            for (int k = 0; k < i; ++k) {
                const double x = static_cast<double>(at(k, k)), y = static_cast<double>(at(i, i));
                const double prod = static_cast<double>(at(k, i)) * static_cast<double>(at(i, k));
                const double rho = (x + y) / 2 + std::sqrt((x - y) * (x - y) / 4 + prod);
                if (rho > c_.lambda + 1e-9) return false;
            }
        }
        if (n >= 2 && j == n - 1) {
            bool any = false;
            for (int k = 0; k < n && !any; ++k) any = k != i && at(i, k) > 0;
            if (!any) return false;
        }
        if (n >= 2 && i == n - 1) {
            bool any = false;
            for (int k = 0; k < n && !any; ++k) any = k != j && at(k, j) > 0;
            if (!any) return false;
        }
        return true;
    }

    bool dfs(int pos, long long trace) {
        const int n = c_.n;
        if (pos == n * n) return leaf();
        const int i = pos / n, j = pos % n;
        long long lo = 0, hi = c_.bound;
        if (i == j) {
            const long long rest = static_cast<long long>(n - 1 - i) * c_.diag_max;
            hi = std::min({hi, c_.diag_max, c_.trace_max - trace});
            lo = std::max(lo, c_.trace_min - trace - rest);
        }
        for (long long v = lo; v <= hi; ++v) {
            if (++nodes > cap_) {
                exceeded = true;
                return true;
            }
            if ((nodes & 0xFFFF) == 0 && found_.load(std::memory_order_relaxed) < task_) return true;
            at(i, j) = v;
            if (!accept(i, j)) continue;
            if (dfs(pos + 1, trace + (i == j ? v : 0))) return true;
        }
        at(i, j) = 0;
        return false;
    }

    bool leaf() {
        const int n = c_.n;
        long long rmin = std::numeric_limits<long long>::max(), rmax = 0;
        for (int i = 0; i < n; ++i) {
            long long s = 0;
            for (int j = 0; j < n; ++j) s += at(i, j);
            rmin = std::min(rmin, s);
            rmax = std::max(rmax, s);
        }
        if (static_cast<double>(rmin) > c_.lambda + 1e-9 || static_cast<double>(rmax) < c_.lambda - 1e-9) return false;
        if (c_.p2) {
            long long t2 = 0;
            for (int i = 0; i < n; ++i) {
                for (int k = 0; k < n; ++k) t2 += at(i, k) * at(k, i);
            }
            if (t2 != *c_.p2) return false;
        }
        if (c_.small_charpoly) {
            SquareMatrix<__int128> m(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) m(i, j) = at(i, j);
            }
            auto cp = charpoly(m);
            if (!c_.f_small.empty()) {
                if (cp != c_.f_small) return false;
            } else {
                // f | char(A) forces f(x) | char(A)(x) at integers.
                for (const auto& [x, fx] : c_.f_values) {
                    __int128 val = 0;
                    for (auto it = cp.rbegin(); it != cp.rend(); ++it) val = val * x + *it;
                    if (val % fx != 0) return false;
                }
            }
        }
        IntMatrix m(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) m.set(i, j, at(i, j));
        }
        auto r = certify_with(m, c_.cert);
        if (!r) return false;
        result = std::move(r);
        return true;
    }

    const SearchContext& c_;
    std::uint64_t cap_;
    const std::atomic<long long>& found_;
    long long task_;
    std::vector<long long> a_;
};

}  // namespace

SearchResult search_realization(const IntPolynomial& f, int n, long long bound, const SearchOptions& options) {
    SearchContext ctx{n, f.degree(), bound, perron_cert(f), 0, 0, 0, 0, std::nullopt, false, {}, {}};
    if (n < ctx.d) throw Error(ErrorKind::MalformedInput, "matrix size below the degree");
    if (bound < 0) throw Error(ErrorKind::MalformedInput, "entry bound must be non-negative");
    ctx.lambda = ctx.cert.lambda();
    ctx.diag_max = std::min(bound, static_cast<long long>(std::floor(ctx.lambda + 1e-9)));

    auto obstruction = trace_obstruction(f, 2);
    const BigInt& p1 = obstruction.power_sums[0];
    SearchResult out;
    if (n == ctx.d) {
        auto t = to_ll(p1);
        auto t2 = to_ll(obstruction.power_sums[1]);
        if (!t || !t2 || *t < 0 || *t2 < 0) return out;
        ctx.trace_min = ctx.trace_max = *t;
        ctx.p2 = *t2;
    } else {
        const double slack = (n - ctx.d) * ctx.lambda;
        const double p1d = to_double(p1);
        ctx.trace_min = std::max(0LL, static_cast<long long>(std::ceil(p1d - slack - 1e-9)));
        ctx.trace_max = static_cast<long long>(std::floor(p1d + slack + 1e-9));
        if (ctx.trace_max < ctx.trace_min) return out;
    }
    ctx.small_charpoly = n * std::log2(static_cast<double>(n) * static_cast<double>(bound + 1) + 1) < 100;
    if (ctx.small_charpoly) {
        const BigInt limit = BigInt(1) << 60;
        auto fits = [&](const BigInt& v) { return abs(v) < limit; };
        if (n == ctx.d && std::all_of(f.coeffs().begin(), f.coeffs().end(), fits)) {
            for (const auto& c : f.coeffs()) ctx.f_small.push_back(static_cast<long long>(c));
        }
        for (int x : {2, -2, 3, -1, 1}) {
            const BigInt fx = poly::eval(f.coeffs(), BigInt(x));
            if (fx != 0 && fits(fx)) ctx.f_values.emplace_back(x, static_cast<long long>(fx));
        }
    }

    // One task per value of a00, merged in order so the answer and the
    // budget verdict do not depend on scheduling.
    long long lo = 0, hi = std::min({bound, ctx.diag_max, ctx.trace_max});
    if (n == 1) lo = hi = ctx.trace_min;
    if (lo > hi || (n == 1 && hi > bound)) return out;
    const long long tasks = hi - lo + 1;
    std::vector<std::optional<Searcher>> done(static_cast<std::size_t>(tasks));
    std::atomic<long long> found{std::numeric_limits<long long>::max()};
    std::atomic<long long> next{0};
    auto worker = [&] {
        for (long long k = next++; k < tasks; k = next++) {
            if (found.load() < k) continue;
            Searcher s(ctx, options.budget, found, k);
            s.run(lo + k);
            if (s.result) {
                long long cur = found.load();
                while (k < cur && !found.compare_exchange_weak(cur, k)) {
                }
            }
            done[static_cast<std::size_t>(k)].emplace(std::move(s));
        }
    };
    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<long long>(threads, tasks));
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    for (auto& s : done) {
        out.nodes += s->nodes;
        if (s->exceeded || out.nodes > options.budget) {
            throw Error(ErrorKind::BudgetExceeded,
                        "search stopped after " + std::to_string(options.budget) + " entry assignments");
        }
        if (s->result) {
            out.realization = std::move(s->result);
            return out;
        }
    }
    return out;
}

LatticePointSet lind_points(const Realization& real) {
    const IntPolynomial& f = real.lambda_poly;
    auto field = make_field(f);
    if (field->irreducible() == false) throw Error(ErrorKind::ReduciblePoly, f.pretty() + " is reducible");
    const LambdaCert cert = perron_cert(f);
    const IntMatrix& a = real.matrix;
    const std::size_t n = a.size();
    const std::size_t d = static_cast<std::size_t>(f.degree());

    // Row reduce A - lambda I over Q(lambda).
    using E = NumberFieldElement;
    std::vector<std::vector<E>> m;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<E> row;
        for (std::size_t j = 0; j < n; ++j) {
            E e = E::from_int(field, a(i, j));
            if (i == j) e = e - E::generator(field);
            row.push_back(std::move(e));
        }
        m.push_back(std::move(row));
    }
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < n; ++col) {
        std::size_t r = row;
        while (r < n && m[r][col].is_zero()) ++r;
        if (r == n) continue;
        std::swap(m[r], m[row]);
        const E inv = nf_inverse(m[row][col]);
        for (auto& e : m[row]) e = e * inv;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == row || m[k][col].is_zero()) continue;
            const E factor = m[k][col];
            for (std::size_t j = 0; j < n; ++j) m[k][j] = m[k][j] - factor * m[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    if (pivots.size() + 1 != n) {
        throw Error(ErrorKind::SingularSystem, "eigenspace has dimension " + std::to_string(n - pivots.size()));
    }
    std::size_t free_col = 0;
    while (std::find(pivots.begin(), pivots.end(), free_col) != pivots.end()) ++free_col;
    std::vector<E> v(n, E::from_int(field, 0));
    v[free_col] = E::from_int(field, 1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free_col];

    // Every coordinate must have the same exact sign at lambda.
    RealRootInterval iv = cert.interval();
    int common = 0;
    for (const auto& e : v) {
        const int s = iv.sign_at(e.as_poly());
        if (s == 0 || (common != 0 && s != common)) {
            throw Error(ErrorKind::SingularSystem, "eigenvector is not positive at the dominant root");
        }
        common = s;
    }

    BigInt den = 1;
    for (const auto& e : v) {
        for (const auto& q : e.coords()) den = boost::multiprecision::lcm(den, denominator(q));
    }
    LatticePointSet out{{}, f, a};
    BigInt g = 0;
    for (const auto& e : v) {
        std::vector<BigInt> z(d, 0);
        for (std::size_t k = 0; k < d; ++k) {
            const Rational scaled = e.coords()[k] * den * common;
            z[k] = numerator(scaled);
            g = boost::multiprecision::gcd(g, z[k]);
        }
        out.points.push_back(std::move(z));
    }
    for (auto& z : out.points) {
        for (auto& c : z) c /= g;
    }

    // B z_i = sum_j a_ij z_j, exactly.
    const auto b = companion(f).entries;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t r = 0; r < d; ++r) {
            BigInt lhs = 0, rhs = 0;
            for (std::size_t k = 0; k < d; ++k) lhs += b(r, k) * out.points[i][k];
            for (std::size_t j = 0; j < n; ++j) rhs += BigInt(a(i, j)) * out.points[j][r];
            if (lhs != rhs) throw Error(ErrorKind::SingularSystem, "lattice relation fails for z_" + std::to_string(i));
        }
        QPoly zi;
        for (const auto& c : out.points[i]) zi.emplace_back(c);
        poly::trim(zi);
        if (iv.sign_at(zi) <= 0) throw Error(ErrorKind::SingularSystem, "z_" + std::to_string(i) + " is not in E");
    }
    return out;
}

ProjectedPolygon project_polygon(const LatticePointSet& pts, std::optional<std::size_t> conjugate_index) {
    const LambdaCert cert = perron_cert(pts.field_poly);
    const auto& rts = cert.conjugates.roots;
    const double p = cert.lambda();

    std::optional<std::size_t> pick;
    if (conjugate_index) {
        if (*conjugate_index >= rts.size() || rts[*conjugate_index].is_real) {
            throw Error(ErrorKind::NoComplexConjugate, "conjugate " + std::to_string(*conjugate_index) + " is not a non-real root");
        }
        pick = conjugate_index;
    } else {
        double best = HUGE_VAL;
        for (std::size_t i = 0; i < rts.size(); ++i) {
            if (rts[i].is_real || rts[i].value.imag() < 0) continue;
            const double e = eta_of(rts[i].value / p);
            if (e < best) {
                best = e;
                pick = i;
            }
        }
        if (!pick) throw Error(ErrorKind::NoComplexConjugate, pts.field_poly.pretty() + " is totally real");
    }

    ProjectedPolygon out;
    out.conjugate_index = *pick;
    const std::complex<long double> q(rts[*pick].value.real(), rts[*pick].value.imag());
    for (std::size_t i = 0; i < pts.points.size(); ++i) {
        const auto& z = pts.points[i];
        if (std::all_of(z.begin(), z.end(), [](const BigInt& c) { return c == 0; })) {
            throw Error(ErrorKind::DegenerateProjection, "z_" + std::to_string(i) + " is zero");
        }
        long double w = 0;
        std::complex<long double> w2 = 0;
        for (auto it = z.rbegin(); it != z.rend(); ++it) {
            const long double c = static_cast<long double>(to_double(*it));
            w = w * p + c;
            w2 = w2 * q + c;
        }
        const auto zeta = w2 / w;
        out.points.emplace_back(static_cast<double>(zeta.real()), static_cast<double>(zeta.imag()));
    }
    out.polygon = convex_hull(out.points);
    out.sides = static_cast<int>(out.polygon.sides());
    if (out.sides < 3) throw Error(ErrorKind::DegenerateProjection, "projected points span no polygon");
    out.t = rts[*pick].value / p;
    out.eta = eta_of(out.t);
    out.bound = min_sides_bound(out.eta);
    out.invariant = is_invariant(out.polygon, out.t);
    const bool lower_ok = !out.bound || out.sides >= *out.bound - 1e-9;
    out.consistent = lower_ok && out.sides <= static_cast<int>(pts.points.size());
    return out;
}

}  // namespace pfdeg
