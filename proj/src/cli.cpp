#include "pfdeg/cli.hpp"

#include "pfdeg/classify.hpp"
#include "pfdeg/families.hpp"
#include "pfdeg/geometry.hpp"
#include "pfdeg/realize.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace pfdeg::cli {

Json number(double v) {
    if (!std::isfinite(v)) return nullptr;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

Json integer(const BigInt& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
        return static_cast<std::int64_t>(v);
    }
    return to_string(v);
}

Json to_json(const Report& r, bool with_timing) {
    Json j;
    j["command"] = r.command;
    j["inputs"] = r.inputs;
    j["result"] = r.result;
    j["version"] = r.version;
    if (with_timing) j["timing_ms"] = number(r.timing_ms);
    if (r.cache_hit) j["cache_hit"] = *r.cache_hit;
    return j;
}

std::string dump(const Json& j, bool pretty) { return pretty ? j.dump(2) : j.dump(); }

// ---------------------------------------------------------------- cache

ResultCache::ResultCache(std::filesystem::path dir, std::ostream& warn) : file_(dir / "cache.jsonl"), warn_(warn) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        warn_ << "warning: cache directory " << dir << " unusable (" << ec.message() << "), cache disabled\n";
        enabled_ = false;
    }
}

std::string ResultCache::key_for(const std::string& command, const Json& inputs) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : command + "\n" + inputs.dump()) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::optional<Json> ResultCache::get(const std::string& key) {
    if (!enabled_) return std::nullopt;
    std::ifstream in(file_);
    if (!in) return std::nullopt;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        Json entry = Json::parse(line, nullptr, false);
        if (entry.is_discarded() || !entry.is_object() || !entry.contains("key") || !entry["key"].is_string() ||
            !entry.contains("report") || !entry["report"].contains("result")) {
            warn_ << "warning: skipping corrupt cache line " << lineno << " in " << file_ << "\n";
            continue;
        }
        if (entry["key"] == key) return entry["report"]["result"];
    }
    return std::nullopt;
}

void ResultCache::put(const std::string& key, const Report& report) {
    if (!enabled_) return;
    std::ofstream out(file_, std::ios::app);
    Json entry;
    entry["key"] = key;
    entry["created_at"] = static_cast<std::int64_t>(std::time(nullptr));
    entry["report"] = to_json(report, false);
    out << entry.dump() << "\n";
    if (!out) {
        warn_ << "warning: cannot write " << file_ << ", cache disabled\n";
        enabled_ = false;
    }
}

std::optional<std::filesystem::path> default_cache_dir() {
    const char* env = std::getenv(kCacheEnv);
    if (env && *env) return std::filesystem::path(env);
    return std::nullopt;
}

namespace {

Report run(const std::string& command, const Json& inputs, const CommonOptions& opt, const std::function<Json()>& compute) {
    const auto start = std::chrono::steady_clock::now();
    Report r{command, inputs, nullptr, kVersion, 0.0, std::nullopt};
    std::optional<ResultCache> cache;
    if (opt.cache_dir) cache.emplace(*opt.cache_dir, opt.warn ? *opt.warn : std::cerr);
    const std::string key = ResultCache::key_for(command, inputs);
    if (cache && cache->enabled()) {
        if (auto hit = cache->get(key)) {
            r.result = std::move(*hit);
            r.cache_hit = true;
        }
    }
    if (!r.cache_hit) {
        r.result = compute();
        if (cache && cache->enabled()) {
            cache->put(key, r);
            r.cache_hit = cache->enabled() ? std::optional<bool>(false) : std::nullopt;
        }
    }
    r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

Json complex_json(Complex z) { return Json::array({number(z.real()), number(z.imag())}); }

Json bound_json(const std::optional<Theorem1Bound>& b) {
    if (!b) return nullptr;
    return {{"best_eta", number(b->best_eta)},
            {"lower_bound", number(b->lower_bound)},
            {"lower_bound_int", b->lower_bound_int}};
}

Json claims_json(const ClaimReport& rep) {
    Json arr = Json::array();
    for (const auto& c : rep.results) arr.push_back({{"claim", c.claim}, {"passed", c.passed}, {"detail", c.detail}});
    return arr;
}

Json obstruction_json(const ObstructionReport& o) {
    Json sums = Json::array();
    for (const auto& p : o.power_sums) sums.push_back(integer(p));
    return {{"power_sums", sums}, {"violating", o.violating}, {"fires", o.fires()}};
}

Json analysis_json(const PerronAnalysis& a) {
    Json conj = Json::array();
    for (const auto& r : a.conjugates.roots) {
        conj.push_back({{"value", complex_json(r.value)},
                        {"radius", number(r.radius)},
                        {"modulus", number(std::abs(r.value))},
                        {"real", r.is_real}});
    }
    Json etas = Json::array();
    for (const auto& e : a.eta_list) etas.push_back({{"index", e.index}, {"eta", number(e.eta)}});
    Json j;
    j["polynomial"] = a.poly.to_text();
    j["pretty"] = a.poly.pretty();
    j["degree"] = a.poly.degree();
    j["conjugates"] = conj;
    j["is_irreducible"] = a.is_irreducible ? Json(*a.is_irreducible) : Json(nullptr);
    j["is_perron"] = a.is_perron;
    j["is_totally_real"] = a.is_totally_real;
    j["is_unit"] = a.is_unit;
    j["biperron"] = a.is_biperron ? Json{{"value", a.is_biperron->value},
                                         {"exception", std::string(to_string(a.is_biperron->exception))}}
                                  : Json(nullptr);
    j["eta_list"] = etas;
    j["theorem1"] = bound_json(a.bound);
    return j;
}

Json matrix_json(const IntMatrix& m) { return m.rows(); }

Json zpoly_json(const ZPoly& p) {
    Json arr = Json::array();
    for (const auto& c : p) arr.push_back(integer(c));
    return arr;
}

}  // namespace

Report cmd_analyze(const std::string& poly_text, const CommonOptions& opt, int max_power) {
    const IntPolynomial f = parse_poly(poly_text);
    Json inputs{{"poly", f.to_text()}, {"tol", number(opt.tol)}, {"max_power", max_power}};
    return run("analyze", inputs, opt, [&] {
        const PerronAnalysis a = analyze(f, opt.tol);
        Json j = analysis_json(a);
        j["obstruction"] = nullptr;
        j["pf_degree_lower_bound"] = nullptr;
        if (a.is_perron) {
            const auto obs = trace_obstruction(f, max_power);
            j["obstruction"] = obstruction_json(obs);
            // Lind: d_PF >= degree; a negative power sum adds one; the
            // polygon bound may do better.
            long long lb = f.degree() + (obs.fires() ? 1 : 0);
            std::string source = obs.fires() ? "trace" : "degree";
            if (a.bound && a.bound->lower_bound_int > lb) {
                lb = a.bound->lower_bound_int;
                source = "theorem1";
            }
            j["pf_degree_lower_bound"] = {{"value", lb}, {"source", source}};
        }
        return j;
    });
}

Report cmd_family(const std::string& epsilon_text, bool emit_biperron, const CommonOptions& opt) {
    const Rational eps = parse_rational(epsilon_text);
    Json inputs{{"epsilon", to_string(eps)}, {"emit_biperron", emit_biperron}};
    return run("family", inputs, opt, [&] {
        const CubicFamily fam = generate_cubic(eps);
        const ClaimReport claims = evaluate_claims(fam);
        const auto bound = theorem1_bound(fam.conjugates);
        const double target = 2 * std::numbers::pi / (3 * std::atan(6 * to_double(eps)));
        Json j;
        j["epsilon"] = to_string(eps);
        j["params"] = {{"a0", integer(fam.a0)}, {"b0", integer(fam.b0)}, {"c0", integer(fam.c0)}, {"k", integer(fam.k)},
                       {"a", integer(fam.a)},   {"b", integer(fam.b)},   {"c", integer(fam.c)}};
        j["polynomial"] = fam.f.to_text();
        j["omega1"] = complex_json(fam.omega1.value);
        j["omega2"] = complex_json(fam.omega2.value);
        j["eta"] = number(fam.eta);
        j["claims"] = claims_json(claims);
        j["claims_passed"] = claims.all_passed();
        j["theorem1"] = bound_json(bound);
        j["target_bound"] = number(target);
        if (emit_biperron) {
            const BiperronResult bp = to_biperron(fam);
            const auto& an = bp.analysis;
            j["biperron"] = {{"alpha_poly", bp.alpha_poly.to_text()},
                             {"substituted", bp.substituted ? Json(bp.substituted->to_text()) : Json(nullptr)},
                             {"is_biperron", an.is_biperron ? an.is_biperron->value : false},
                             {"exception", an.is_biperron ? std::string(to_string(an.is_biperron->exception)) : "none"},
                             {"theorem1", bound_json(an.bound)},
                             {"target_bound", number(2 * std::numbers::pi / (3 * std::atan(16 * to_double(eps))))}};
        }
        return j;
    });
}

Report cmd_realize(const RealizeArgs& args, const CommonOptions& opt) {
    const IntPolynomial f = parse_poly(args.poly);
    const int n = args.n > 0 ? args.n : f.degree();
    if (args.bound < 0) throw Error(ErrorKind::MalformedInput, "entry bound must be non-negative");
    // Threads do not change the answer, so they stay out of the key.
    Json inputs{{"poly", f.to_text()}, {"n", n}, {"bound", args.bound}, {"budget", args.budget}};
    return run("realize", inputs, opt, [&] {
        const SearchResult sr = search_realization(f, n, args.bound, {args.budget, args.threads});
        Json j;
        j["polynomial"] = f.to_text();
        j["nodes"] = sr.nodes;
        j["found"] = sr.realization.has_value();
        j["matrix"] = nullptr;
        try {
            j["obstruction"] = obstruction_json(trace_obstruction(f, 12));
        } catch (const Error&) {
            j["obstruction"] = nullptr;
        }
        if (!sr.realization) {
            j["note"] = "no realization with entries <= bound; not a proof of nonexistence";
            return j;
        }
        const Realization& real = *sr.realization;
        j["matrix"] = matrix_json(real.matrix);
        j["certificate"] = {{"aperiodicity_exponent", real.aperiodicity_exponent},
                            {"divisibility_witness", zpoly_json(real.divisibility_witness)}};
        const LatticePointSet pts = lind_points(real);
        Json zs = Json::array();
        for (const auto& z : pts.points) zs.push_back(zpoly_json(z));
        j["lattice_points"] = zs;
        try {
            const ProjectedPolygon pp = project_polygon(pts);
            Json verts = Json::array();
            for (auto v : pp.polygon.vertices) verts.push_back(complex_json(v));
            j["projection"] = {{"conjugate_index", pp.conjugate_index},
                               {"t", complex_json(pp.t)},
                               {"eta", number(pp.eta)},
                               {"bound", pp.bound ? number(*pp.bound) : Json(nullptr)},
                               {"sides", pp.sides},
                               {"vertices", verts},
                               {"invariant", pp.invariant},
                               {"consistent", pp.consistent}};
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NoComplexConjugate) throw;
            j["projection"] = nullptr;
        }
        return j;
    });
}

Report cmd_polygon(const PolygonArgs& args, const CommonOptions& opt) {
    const Multiplier t(args.t);
    Json inputs{{"t", complex_json(args.t)}, {"z0", complex_json(args.z0)}, {"terms", args.terms}};
    return run("polygon", inputs, opt, [&] {
        const Polygon p = hull_orbit_polygon(args.z0, t, args.terms);
        const double eta = eta_of(t);
        const auto bound = min_sides_bound(eta);
        Json verts = Json::array();
        for (auto v : p.vertices) verts.push_back(complex_json(v));
        Json j;
        j["t"] = complex_json(t.value());
        j["eta"] = number(eta);
        j["bound"] = bound ? number(*bound) : Json(nullptr);
        j["bound_int"] = bound ? Json(static_cast<long long>(std::ceil(*bound - 1e-9))) : Json(nullptr);
        j["sides"] = p.sides();
        j["vertices"] = verts;
        j["invariant"] = is_invariant(p, t);
        const ClaimReport rep = evaluate_polygon_claims(p, t);
        j["claims"] = claims_json(rep);
        j["claims_passed"] = rep.all_passed();
        return j;
    });
}

Complex parse_complex(const std::string& text) {
    auto parse_double = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size() || !std::isfinite(v)) {
            throw Error(ErrorKind::MalformedInput, "bad number '" + s + "' in '" + text + "'");
        }
        return v;
    };
    if (auto at = text.find('@'); at != std::string::npos) {
        return std::polar(parse_double(text.substr(0, at)), parse_double(text.substr(at + 1)) * std::numbers::pi / 180);
    }
    auto comma = text.find(',');
    if (comma == std::string::npos) return {parse_double(text), 0.0};
    return {parse_double(text.substr(0, comma)), parse_double(text.substr(comma + 1))};
}

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::MalformedInput:
        case ErrorKind::NotMonic:
            return 2;
        case ErrorKind::Indeterminate:
            return 3;
        case ErrorKind::BudgetExceeded:
            return 4;
        default:
            return 1;
    }
}

Json error_json(const std::string& command, const Error& e) {
    return {{"command", command},
            {"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}},
            {"version", kVersion}};
}

}  // namespace pfdeg::cli
