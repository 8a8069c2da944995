#include "mcgap/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace mcgap {
namespace log {

namespace {

log_level parse_env() {
    const char* v = std::getenv("MCGAP_LOG");
    if (v == nullptr) return log_level::warn;
    if (std::strcmp(v, "error") == 0) return log_level::error;
    if (std::strcmp(v, "warn") == 0) return log_level::warn;
    if (std::strcmp(v, "info") == 0) return log_level::info;
    if (std::strcmp(v, "debug") == 0) return log_level::debug;
    std::fprintf(stderr, "mcgap: ignoring unrecognized MCGAP_LOG value '%s'\n", v);
    return log_level::warn;
}

log_level g_threshold = parse_env();

const char* tag(log_level lv) {
    switch (lv) {
        case log_level::error: return "error";
        case log_level::warn: return "warn";
        case log_level::info: return "info";
        case log_level::debug: return "debug";
    }
    return "?";
}

} // namespace

log_level threshold() { return g_threshold; }

void set_threshold(log_level lv) { g_threshold = lv; }

bool enabled(log_level lv) { return static_cast<int>(lv) <= static_cast<int>(g_threshold); }

void write(log_level lv, const char* fmt, ...) {
    if (!enabled(lv)) return;
    std::fprintf(stderr, "mcgap %s: ", tag(lv));
    va_list ap;
    va_start(ap, fmt);
    std::vfprintf(stderr, fmt, ap);
    va_end(ap);
    std::fputc('\n', stderr);
}

} // namespace log
} // namespace mcgap
