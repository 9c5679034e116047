#include "cjl/report.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace cjl {

Json::Json(cx z) {
    auto arr = std::make_shared<Array>();
    arr->items.emplace_back(z.real());
    arr->items.emplace_back(z.imag());
    value_ = std::move(arr);
}

Json Json::object() {
    Json j;
    j.value_ = std::make_shared<Object>();
    return j;
}

Json Json::array() {
    Json j;
    j.value_ = std::make_shared<Array>();
    return j;
}

bool Json::is_object() const { return std::holds_alternative<std::shared_ptr<Object>>(value_); }

Json& Json::set(const std::string& key, Json v) {
    auto& obj = std::get<std::shared_ptr<Object>>(value_);
    obj->items.emplace_back(key, std::move(v));
    return *this;
}

Json& Json::push(Json v) {
    auto& arr = std::get<std::shared_ptr<Array>>(value_);
    arr->items.push_back(std::move(v));
    return *this;
}

namespace {

void escape_into(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

void indent_into(std::string& out, int indent, int depth) {
    if (indent <= 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * depth), ' ');
}

}  // namespace

void Json::write(std::string& out, int indent, int depth) const {
    if (std::holds_alternative<std::nullptr_t>(value_)) {
        out += "null";
    } else if (auto* b = std::get_if<bool>(&value_)) {
        out += *b ? "true" : "false";
    } else if (auto* i = std::get_if<long long>(&value_)) {
        out += std::to_string(*i);
    } else if (auto* u = std::get_if<std::uint64_t>(&value_)) {
        out += std::to_string(*u);
    } else if (auto* d = std::get_if<double>(&value_)) {
        if (!std::isfinite(*d)) throw std::runtime_error("Json: non-finite number");
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", *d);
        out += buf;
    } else if (auto* s = std::get_if<std::string>(&value_)) {
        escape_into(out, *s);
    } else if (auto* obj = std::get_if<std::shared_ptr<Object>>(&value_)) {
        out += '{';
        bool first = true;
        for (const auto& [k, v] : (*obj)->items) {
            if (!first) out += ',';
            first = false;
            indent_into(out, indent, depth + 1);
            escape_into(out, k);
            out += indent > 0 ? ": " : ":";
            v.write(out, indent, depth + 1);
        }
        if (!first) indent_into(out, indent, depth);
        out += '}';
    } else if (auto* arr = std::get_if<std::shared_ptr<Array>>(&value_)) {
        out += '[';
        bool first = true;
        for (const auto& v : (*arr)->items) {
            if (!first) out += ',';
            first = false;
            indent_into(out, indent, depth + 1);
            v.write(out, indent, depth + 1);
        }
        if (!first) indent_into(out, indent, depth);
        out += ']';
    }
}

std::string Json::dump(int indent) const {
    std::string out;
    write(out, indent, 0);
    return out;
}

void RunConfig::validate() const {
    if (tol_residual <= 0 || tol_rank <= 0 || tol_cluster <= 0)
        throw std::invalid_argument("config: tolerances must be positive");
    if (tol_rank > 1.0) throw std::invalid_argument("config: rank ratio tolerance must be <= 1");
}

int RunConfig::effective_threads() const {
    if (threads > 0) return threads;
    if (const char* env = std::getenv("CJL_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return std::min(v, 64);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::min(hw == 0 ? 1u : hw, 16u));
}

void parallel_cases(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                fn(i);
            }
        });
    for (auto& t : pool) t.join();
}

}  // namespace cjl
