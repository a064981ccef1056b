#include "pfdeg/geometry.hpp"

#include "pfdeg/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

namespace pfdeg {

namespace {

double cross(Point a, Point b) { return a.real() * b.imag() - a.imag() * b.real(); }

double dot(Point a, Point b) { return a.real() * b.real() + a.imag() * b.imag(); }

double max_modulus(const std::vector<Point>& pts) {
    double m = 0;
    for (auto p : pts) m = std::max(m, std::abs(p));
    return m;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

}  // namespace

double Polygon::area() const {
    double s = 0;
    for (std::size_t i = 0; i < vertices.size(); ++i) s += cross(vertices[i], vertices[(i + 1) % vertices.size()]);
    return s / 2;
}

Multiplier::Multiplier(Complex t) : t_(t.imag() < 0 ? std::conj(t) : t) {
    if (!(t_.imag() != 0) || !(t_.real() > 0) || !(std::abs(t_) <= 1)) {
        std::ostringstream os;
        os << "multiplier " << t.real() << (t.imag() < 0 ? "" : "+") << t.imag()
           << "i needs Im != 0, Re > 0 and |t| <= 1";
        throw Error(ErrorKind::InvalidMultiplier, os.str());
    }
}

double eta_of(Complex t) { return std::abs(std::atan((1 - t.real()) / t.imag())); }

double eta_of(const Multiplier& t) { return eta_of(t.value()); }

Polygon convex_hull(std::vector<Point> pts, double tol) {
    std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    Polygon out;
    if (pts.size() < 3) {
        out.vertices = pts;
        return out;
    }
    // Monotone chain. A turn whose sine is within tol counts as straight.
    auto turns_left = [tol](Point a, Point b, Point c) {
        Point u = b - a, v = c - b;
        return cross(u, v) > tol * std::abs(u) * std::abs(v);
    };
    std::vector<Point> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && !turns_left(hull[k - 2], hull[k - 1], pts[i])) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && !turns_left(hull[k - 2], hull[k - 1], pts[i])) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    out.vertices = std::move(hull);
    if (out.vertices.size() >= 3) out.contains_origin = contains(out, Point(0, 0), tol);
    return out;
}

bool contains(const Polygon& p, Point q, double tol) {
    const auto& v = p.vertices;
    if (v.size() < 3) return false;
    const double scale = std::max(max_modulus(v), std::abs(q));
    for (std::size_t i = 0; i < v.size(); ++i) {
        Point a = v[i], b = v[(i + 1) % v.size()];
        // Signed distance of q from the edge line, positive inside.
        if (cross(b - a, q - a) < -tol * scale * std::abs(b - a)) return false;
    }
    return true;
}

bool is_invariant(const Polygon& p, Complex t, double tol) {
    for (auto v : p.vertices) {
        if (!contains(p, t * v, tol)) return false;
    }
    return p.vertices.size() >= 3;
}

bool is_invariant(const Polygon& p, const Multiplier& t, double tol) { return is_invariant(p, t.value(), tol); }

Polygon hull_orbit_polygon(Point z0, const Multiplier& t, int max_terms) {
    if (!(std::abs(t.value()) < 1)) throw Error(ErrorKind::InvalidMultiplier, "orbit hull needs |t| < 1");
    if (z0 == Point(0, 0)) throw Error(ErrorKind::TooFewPoints, "seed point is the origin");
    std::vector<Point> pts{Point(0, 0)};
    const double stop = kGeomTol * std::abs(z0);
    Point z = z0;
    for (int k = 0; k < max_terms; ++k) {
        pts.push_back(z);
        if (std::abs(z) < stop) break;
        z *= t.value();
    }
    Polygon p = convex_hull(std::move(pts));
    if (p.sides() < 3) throw Error(ErrorKind::TooFewPoints, "orbit hull is degenerate");
    if (!is_invariant(p, t)) throw Error(ErrorKind::NotInvariant, "orbit hull is not invariant under t");
    return p;
}

std::optional<double> min_sides_bound(double eta) {
    if (!(eta > 0) || eta > 1) return std::nullopt;
    return 2 * std::numbers::pi / (3 * eta);
}

std::optional<double> min_sides_bound(const Multiplier& t) { return min_sides_bound(eta_of(t)); }

PolygonAngles polygon_angles(const Polygon& p) {
    PolygonAngles out;
    const auto& v = p.vertices;
    const std::size_t m = v.size();
    for (std::size_t j = 0; j < m; ++j) {
        Point a = v[j], b = v[(j + 1) % m];
        Point to_o = -a, to_next = b - a;
        out.beta.push_back(std::atan2(std::abs(cross(to_o, to_next)), dot(to_o, to_next)));
        out.phi.push_back(std::atan2(cross(a, b), dot(a, b)));
        out.l.push_back(std::abs(a));
    }
    return out;
}

bool claim5_grid(int x_steps, int alpha_steps) {
    for (int i = 0; i <= x_steps; ++i) {
        const double x = 0.5 * i / x_steps;
        for (int j = 0; j <= alpha_steps; ++j) {
            const double alpha = 1 + 9.0 * j / alpha_steps;
            if (std::pow(1 - x, alpha) < 1 - 2 * alpha * x - 1e-12) return false;
        }
    }
    return true;
}

ClaimReport evaluate_polygon_claims(const Polygon& p, const Multiplier& t) {
    const std::size_t m = p.sides();
    if (m < 3 || !p.contains_origin) {
        throw Error(ErrorKind::HypothesisFailed, "claims need a polygon containing the origin");
    }
    for (auto v : p.vertices) {
        if (std::abs(v) <= kGeomTol * max_modulus(p.vertices)) {
            throw Error(ErrorKind::HypothesisFailed, "claims need the origin strictly inside the polygon");
        }
    }
    const double eta = eta_of(t);
    const auto ang = polygon_angles(p);
    const double tol = 1e-9;
    const double half_pi = std::numbers::pi / 2;
    bool c1 = true, c2 = true, c3 = true, c4 = true;
    std::size_t worst1 = 0;
    double product = 1;
    int in_a = 0;
    for (std::size_t j = 0; j < m; ++j) {
        const double ratio = ang.l[(j + 1) % m] / ang.l[j];
        product *= ratio;
        if (ang.beta[j] < half_pi - eta - tol) {
            c1 = false;
            worst1 = j;
        }
        if (!(ang.phi[j] - eta < half_pi + tol)) c2 = false;
        if (ang.phi[j] >= eta) {
            ++in_a;
            if (ratio < std::cos(eta) / std::cos(ang.phi[j] - eta) - tol) c3 = false;
        } else if (ratio < std::cos(eta) - tol) {
            c4 = false;
        }
    }
    ClaimReport report;
    report.results.push_back({"claim1", c1,
                              c1 ? "beta_j >= pi/2 - eta for every vertex"
                                 : "beta_" + std::to_string(worst1) + " = " + fmt(ang.beta[worst1]) +
                                       " < pi/2 - eta"});
    report.results.push_back({"claim2", c2, "phi_j - eta < pi/2"});
    report.results.push_back({"claim3", c3, std::to_string(in_a) + " vertices with phi_j >= eta"});
    report.results.push_back({"claim4", c4, std::to_string(static_cast<int>(m) - in_a) + " vertices with phi_j < eta"});
    const bool tele = std::abs(product - 1) <= 1e-9 * static_cast<double>(m);
    report.results.push_back({"telescoping", tele, "product l_{j+1}/l_j = " + fmt(product)});
    report.results.push_back({"claim5", claim5_grid(), "(1-x)^alpha >= 1 - 2 alpha x on the grid"});
    auto bound = min_sides_bound(eta);
    const bool sides_ok = !bound || static_cast<double>(m) >= *bound - 1e-9;
    report.results.push_back({"sides_bound", sides_ok,
                              "M = " + std::to_string(m) + (bound ? ", 2pi/(3 eta) = " + fmt(*bound) : ", eta > 1")});
    return report;
}

ClaimReport claim_check(const Polygon& p, const Multiplier& t) {
    ClaimReport report = evaluate_polygon_claims(p, t);
    report.require_all();
    return report;
}

GeometrySuiteResult geometry_suite(int trials, std::uint64_t seed, unsigned threads) {
    struct Trial {
        bool invariant = true, bound = true, claims = true;
        double slack = 0;
    };
    std::vector<Trial> out(static_cast<std::size_t>(std::max(trials, 0)));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next++; i < trials; i = next++) {
            std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                              static_cast<std::uint32_t>(i)};
            std::mt19937_64 rng(seq);
            std::uniform_real_distribution<double> radius(0.3, 0.995), angle(0.02, std::numbers::pi / 2);
            std::uniform_real_distribution<double> seed_mod(0.5, 2.0), seed_arg(0, 2 * std::numbers::pi);
            Complex t;
            do {
                t = std::polar(radius(rng), angle(rng));
            } while (eta_of(t) > 1);
            const Multiplier mult(t);
            const Point z0 = std::polar(seed_mod(rng), seed_arg(rng));
            Trial& r = out[static_cast<std::size_t>(i)];
            try {
                Polygon p = hull_orbit_polygon(z0, mult);
                const double bound = *min_sides_bound(mult);
                r.slack = static_cast<double>(p.sides()) - bound;
                r.bound = r.slack >= -1e-9;
                r.claims = evaluate_polygon_claims(p, mult).all_passed();
            } catch (const Error&) {
                r.invariant = false;
                r.slack = -HUGE_VAL;
            }
        }
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    GeometrySuiteResult res;
    res.trials = trials;
    res.min_slack = HUGE_VAL;
    for (const auto& r : out) {
        res.invariant_failures += r.invariant ? 0 : 1;
        res.bound_failures += r.bound ? 0 : 1;
        res.claim_failures += r.claims ? 0 : 1;
        res.min_slack = std::min(res.min_slack, r.slack);
    }
    return res;
}

}  // namespace pfdeg
