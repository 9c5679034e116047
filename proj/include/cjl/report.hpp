#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "cjl/numerics.hpp"

namespace cjl {

// Ordered JSON value with deterministic serialization: keys keep insertion
// order and every double is emitted with 17 significant digits, so identical
// runs produce byte-identical reports.
class Json {
  public:
    Json() : value_(nullptr) {}
    Json(bool b) : value_(b) {}
    Json(long long i) : value_(i) {}
    Json(int i) : value_(static_cast<long long>(i)) {}
    Json(std::uint64_t u) : value_(u) {}
    Json(double d) : value_(d) {}
    Json(const char* s) : value_(std::string(s)) {}
    Json(std::string s) : value_(std::move(s)) {}
    Json(cx z);

    static Json object();
    static Json array();

    Json& set(const std::string& key, Json v);  // object insert (insertion order kept)
    Json& push(Json v);                         // array append
    bool is_object() const;

    std::string dump(int indent = 0) const;

  private:
    struct Object {
        std::vector<std::pair<std::string, Json>> items;
    };
    struct Array {
        std::vector<Json> items;
    };
    using Value = std::variant<std::nullptr_t, bool, long long, std::uint64_t, double, std::string,
                               std::shared_ptr<Object>, std::shared_ptr<Array>>;
    Value value_;
    void write(std::string& out, int indent, int depth) const;
};

struct RunConfig {
    std::uint64_t seed = 0;
    double tol_residual = kResidualTol;
    double tol_rank = kRankRatioTol;
    double tol_cluster = kClusterTol;
    int m = 0, n = 0, m2 = 0, n2 = 0;
    std::string family;
    int count = 20;
    std::string out_path;
    bool no_timestamp = false;
    int threads = 0;  // 0 -> CJL_THREADS or hardware_concurrency

    void validate() const;  // throws std::invalid_argument on bad tolerances
    int effective_threads() const;
};

// Deterministic case-parallel map: results land by index regardless of the
// completion order; thread count capped by CJL_THREADS.
void parallel_cases(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace cjl
