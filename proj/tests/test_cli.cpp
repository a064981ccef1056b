#include "doctest.h"
#include "test_util.hpp"

#include "pfdeg/cli.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace pfdeg;
using namespace pfdeg::cli;
using testutil::kind_of;

namespace {

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("pfdeg_test_" + std::to_string(std::hash<std::string>{}(std::to_string(std::rand()) + __TIME__)));
        std::filesystem::remove_all(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("number formatting keeps 12 significant digits") {
    CHECK(number(std::numbers::pi).dump() == "3.14159265359");
    CHECK(number(0.1).dump() == "0.1");
    CHECK(number(1e-20).dump() == "1e-20");
    CHECK(number(NAN).is_null());
    CHECK(integer(BigInt(-42)).dump() == "-42");
    CHECK(integer(BigInt(1) << 80).dump() == "\"1208925819614629174706176\"");
}

TEST_CASE("analyze examples") {
    CommonOptions opt;
    auto neg = cmd_analyze("-46,-15,3,1", opt).result;
    CHECK(neg["is_perron"] == true);
    CHECK(neg["is_totally_real"] == true);
    CHECK(neg["theorem1"].is_null());
    CHECK(neg["obstruction"]["power_sums"][0] == -3);
    CHECK(neg["pf_degree_lower_bound"]["value"] == 4);

    auto fib = cmd_analyze("-1,-1,1", opt).result;
    CHECK(fib["is_perron"] == true);
    CHECK(fib["biperron"]["value"] == true);
    CHECK(fib["biperron"]["exception"] == "minus_alpha_inverse");
    CHECK(fib["theorem1"].is_null());

    auto lin = cmd_analyze("2,1", opt).result;
    CHECK(lin["is_perron"] == false);
    CHECK(lin["obstruction"].is_null());

    CHECK(kind_of([&] { cmd_analyze("1,x", opt); }) == ErrorKind::MalformedInput);
    CHECK(exit_code(ErrorKind::MalformedInput) == 2);
}

TEST_CASE("family, realize and polygon commands") {
    CommonOptions opt;
    auto fam = cmd_family("1/2", true, opt).result;
    CHECK(fam["params"]["a"] == 59);
    CHECK(fam["params"]["b"] == 59);
    CHECK(fam["params"]["c"] == 88);
    CHECK(fam["theorem1"]["lower_bound_int"] == 5);
    CHECK(fam["claims_passed"] == true);
    CHECK(fam["biperron"]["is_biperron"] == true);

    auto real = cmd_realize({"-1,-1,1", 2, 2, 1000000, 1}, opt).result;
    CHECK(real["found"] == true);
    CHECK(real["matrix"] == Json::parse("[[0,1],[1,1]]"));
    CHECK(real["projection"].is_null());

    auto cubic = cmd_realize({"-2,1,-1,1", 4, 2, 50000000, 1}, opt).result;
    CHECK(cubic["projection"]["consistent"] == true);

    auto none = cmd_realize({"-2,1,-1,1", 3, 4, 50000000, 1}, opt).result;
    CHECK(none["found"] == false);
    CHECK(kind_of([&] { cmd_realize({"-2,1,-1,1", 4, 2, 50, 1}, opt); }) == ErrorKind::BudgetExceeded);
    CHECK(exit_code(ErrorKind::BudgetExceeded) == 4);

    auto poly = cmd_polygon({parse_complex("0.9@45"), {1, 0}, 100000}, opt).result;
    CHECK(poly["sides"].get<int>() >= 5);
    CHECK(poly["eta"].get<double>() == doctest::Approx(0.519085677224));
    CHECK(poly["bound_int"] == 5);
    CHECK(poly["claims_passed"] == true);
}

TEST_CASE("parse_complex and exit codes") {
    CHECK(parse_complex("0.5,-0.25") == Complex(0.5, -0.25));
    CHECK(std::abs(parse_complex("1@90") - Complex(0, 1)) < 1e-15);
    CHECK(parse_complex("2") == Complex(2, 0));
    CHECK(kind_of([] { parse_complex("a,b"); }) == ErrorKind::MalformedInput);
    CHECK(kind_of([] { parse_complex("1,2x"); }) == ErrorKind::MalformedInput);
    CHECK(exit_code(ErrorKind::Indeterminate) == 3);
    CHECK(exit_code(ErrorKind::NotPerron) == 1);
}

TEST_CASE("result cache") {
    TempDir dir;
    std::ostringstream warn;
    CommonOptions opt;
    opt.cache_dir = dir.path;
    opt.warn = &warn;

    auto first = cmd_analyze("-46,-15,3,1", opt);
    CHECK(first.cache_hit == false);
    auto second = cmd_analyze("-46,-15,3,1", opt);
    CHECK(second.cache_hit == true);
    CHECK(second.result.dump() == first.result.dump());
    CHECK(to_json(second)["cache_hit"] == true);

    // A different tolerance is a different key.
    opt.tol = 1e-8;
    CHECK(cmd_analyze("-46,-15,3,1", opt).cache_hit == false);
    opt.tol = kDefaultRootTol;

    {
        std::ofstream out(dir.path / "cache.jsonl", std::ios::app);
        out << "{not json\n";
    }
    auto third = cmd_analyze("-46,-15,3,1", opt);
    CHECK(third.cache_hit == true);
    auto fresh = cmd_analyze("-1,-1,1", opt);
    CHECK(fresh.cache_hit == false);
    CHECK(warn.str().find("corrupt cache line") != std::string::npos);

    CommonOptions off;
    auto plain = cmd_analyze("-46,-15,3,1", off);
    CHECK_FALSE(plain.cache_hit.has_value());
    CHECK_FALSE(to_json(plain).contains("cache_hit"));
    CHECK(plain.result.dump() == first.result.dump());
}

TEST_CASE("unusable cache directory degrades to no cache") {
    TempDir dir;
    std::filesystem::create_directories(dir.path);
    { std::ofstream(dir.path / "file") << "x"; }
    std::ostringstream warn;
    CommonOptions opt;
    opt.cache_dir = dir.path / "file" / "sub";
    opt.warn = &warn;
    auto r = cmd_analyze("-1,-1,1", opt);
    CHECK_FALSE(r.cache_hit.has_value());
    CHECK(r.result["is_perron"] == true);
    CHECK(warn.str().find("cache disabled") != std::string::npos);
}

TEST_CASE("cache keys") {
    const Json a{{"poly", "-1,-1,1"}};
    CHECK(ResultCache::key_for("analyze", a) == ResultCache::key_for("analyze", a));
    CHECK(ResultCache::key_for("analyze", a) != ResultCache::key_for("realize", a));
    CHECK(ResultCache::key_for("analyze", a).size() == 16);
}

TEST_CASE("golden reports are byte-stable") {
    const std::filesystem::path golden = PFDEG_GOLDEN_DIR;
    CommonOptions opt;
    auto check = [&](const Report& r, const char* file) {
        CAPTURE(file);
        CHECK(dump(to_json(r, false), false) + "\n" == read_file(golden / file));
    };
    check(cmd_analyze("-46,-15,3,1", opt), "analyze_negative_trace.json");
    check(cmd_analyze("-126,65,-13,1", opt), "analyze_remark_cubic.json");
    check(cmd_realize({"1,-3,1", 2, 3, 50000000, 0}, opt), "realize_quadratic.json");

    // Spot checks on the stored files themselves.
    auto remark = Json::parse(read_file(golden / "analyze_remark_cubic.json"));
    CHECK(remark["result"]["theorem1"]["lower_bound_int"] == 6);
    CHECK(remark["result"]["is_totally_real"] == false);
    auto quad = Json::parse(read_file(golden / "realize_quadratic.json"));
    CHECK(quad["result"]["matrix"] == Json::parse("[[1,1],[1,2]]"));
}
