#pragma once

#include "pfdeg/error.hpp"
#include "pfdeg/numeric.hpp"
#include "pfdeg/roots.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

namespace pfdeg::cli {

/// std::map backed, so keys serialize sorted.
using Json = nlohmann::json;

inline constexpr const char* kVersion = "pfdeg 0.1.0";
inline constexpr const char* kCacheEnv = "PFDEG_CACHE_DIR";

/// A double rounded to 12 significant digits; null when not finite.
Json number(double v);
/// int64 when it fits, else a decimal string.
Json integer(const BigInt& v);

struct Report {
    std::string command;
    Json inputs;
    Json result;
    std::string version = kVersion;
    double timing_ms = 0.0;
    std::optional<bool> cache_hit;  // absent when the cache is off
};

Json to_json(const Report& r, bool with_timing = true);
std::string dump(const Json& j, bool pretty);

/// Append-only JSON-lines store. Any I/O failure turns the cache off with
/// a warning; corrupt lines are skipped with a warning.
class ResultCache {
public:
    ResultCache(std::filesystem::path dir, std::ostream& warn);

    bool enabled() const { return enabled_; }
    std::optional<Json> get(const std::string& key);
    void put(const std::string& key, const Report& report);

    /// FNV-1a over the command and the canonical inputs, as hex.
    static std::string key_for(const std::string& command, const Json& inputs);

private:
    std::filesystem::path file_;
    std::ostream& warn_;
    bool enabled_ = true;
};

struct CommonOptions {
    double tol = kDefaultRootTol;
    /// Cache directory; the environment variable supplies the default.
    std::optional<std::filesystem::path> cache_dir;
    std::ostream* warn = nullptr;  // std::cerr when null
};

/// Cache directory from the environment, if set.
std::optional<std::filesystem::path> default_cache_dir();

Report cmd_analyze(const std::string& poly_text, const CommonOptions& opt, int max_power = 12);
Report cmd_family(const std::string& epsilon_text, bool emit_biperron, const CommonOptions& opt);

struct RealizeArgs {
    std::string poly;
    int n = 0;  // 0: the degree
    long long bound = 2;
    std::uint64_t budget = 50'000'000;
    unsigned threads = 0;
};
Report cmd_realize(const RealizeArgs& args, const CommonOptions& opt);

struct PolygonArgs {
    Complex t;
    Complex z0{1.0, 0.0};
    int terms = 100000;
};
Report cmd_polygon(const PolygonArgs& args, const CommonOptions& opt);

/// "re,im" or "r@degrees".
Complex parse_complex(const std::string& text);

/// 0 ok, 2 malformed input, 3 Indeterminate, 4 BudgetExceeded, 1 other.
int exit_code(ErrorKind kind);

Json error_json(const std::string& command, const Error& e);

}  // namespace pfdeg::cli
