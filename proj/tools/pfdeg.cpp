#include "pfdeg/acceptance.hpp"
#include "pfdeg/cli.hpp"

#include "CLI11.hpp"

#include <iostream>

using namespace pfdeg;

int main(int argc, char** argv) {
    CLI::App app{"Perron numbers, Perron-Frobenius degree bounds and invariant polygons"};
    app.require_subcommand(1);
    app.fallthrough();

    double tol = kDefaultRootTol;
    std::string cache_dir;
    bool no_cache = false, pretty = false, json = false, no_timing = false;
    app.add_option("--tol", tol, "relative root-finding tolerance")->capture_default_str();
    app.add_option("--cache-dir", cache_dir, std::string("result cache directory (default: $") + cli::kCacheEnv + ")");
    app.add_flag("--no-cache", no_cache, "ignore any cache directory");
    app.add_flag("--pretty", pretty, "indented JSON");
    app.add_flag("--json", json, "compact JSON (the default; verify prints lines otherwise)");
    app.add_flag("--no-timing", no_timing, "omit timing_ms, for byte-stable output");

    std::string poly;
    int max_power = 12;
    auto* analyze = app.add_subcommand("analyze", "classify a monic integer polynomial");
    analyze->add_option("poly", poly, "ascending coefficients, e.g. -46,-15,3,1")->required();
    analyze->add_option("--max-power", max_power, "power sums checked by the trace obstruction")->capture_default_str();

    std::string epsilon;
    bool emit_biperron = false;
    auto* family = app.add_subcommand("family", "cubic family with small eta for 0 < epsilon < 1");
    family->add_option("epsilon", epsilon, "rational, e.g. 1/8")->required();
    family->add_flag("--emit-biperron", emit_biperron, "also build the biPerron number from the cubic");

    cli::RealizeArgs rargs;
    auto* realize = app.add_subcommand("realize", "search for a realizing aperiodic matrix");
    realize->add_option("poly", rargs.poly, "ascending coefficients")->required();
    realize->add_option("-n,--size", rargs.n, "matrix size (default: the degree)");
    realize->add_option("--bound", rargs.bound, "largest entry")->capture_default_str();
    realize->add_option("--budget", rargs.budget, "entry assignments before giving up")->capture_default_str();
    realize->add_option("--threads", rargs.threads, "worker threads, 0 for all cores")->capture_default_str();

    std::string t_text, z0_text = "1,0";
    cli::PolygonArgs pargs;
    auto* polygon = app.add_subcommand("polygon", "hull of an orbit t^k z0 and the side-count bound");
    polygon->add_option("--t", t_text, "multiplier as re,im or r@degrees")->required();
    polygon->add_option("--z0", z0_text, "seed point as re,im")->capture_default_str();
    polygon->add_option("--terms", pargs.terms, "orbit length cap")->capture_default_str();

    unsigned verify_threads = 0;
    auto* verify = app.add_subcommand("verify", "run the acceptance suite");
    verify->add_option("--threads", verify_threads, "worker threads, 0 for all cores");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    cli::CommonOptions opt;
    opt.tol = tol;
    if (!no_cache) opt.cache_dir = cache_dir.empty() ? cli::default_cache_dir() : std::filesystem::path(cache_dir);

    std::string command = app.get_subcommands().front()->get_name();
    try {
        if (verify->parsed()) {
            const auto results = run_acceptance(verify_threads);
            bool all = true;
            cli::Json arr = cli::Json::array();
            for (const auto& r : results) {
                all = all && r.passed;
                arr.push_back({{"id", r.id},
                               {"name", r.name},
                               {"passed", r.passed},
                               {"detail", r.detail},
                               {"ms", cli::number(r.ms)},
                               {"limit_ms", cli::number(r.limit_ms)}});
                if (!json && !pretty) std::cout << format_line(r) << "\n";
            }
            if (json || pretty) {
                cli::Json j{{"command", "verify"}, {"result", {{"criteria", arr}, {"all_passed", all}}},
                            {"version", cli::kVersion}};
                std::cout << cli::dump(j, pretty) << "\n";
            }
            return all ? 0 : 1;
        }

        cli::Report report;
        if (analyze->parsed()) {
            report = cli::cmd_analyze(poly, opt, max_power);
        } else if (family->parsed()) {
            report = cli::cmd_family(epsilon, emit_biperron, opt);
        } else if (realize->parsed()) {
            report = cli::cmd_realize(rargs, opt);
        } else {
            pargs.t = cli::parse_complex(t_text);
            pargs.z0 = cli::parse_complex(z0_text);
            report = cli::cmd_polygon(pargs, opt);
        }
        std::cout << cli::dump(cli::to_json(report, !no_timing), pretty) << "\n";
        return 0;
    } catch (const Error& e) {
        std::cout << cli::dump(cli::error_json(command, e), pretty) << "\n";
        return cli::exit_code(e.kind());
    }
}
