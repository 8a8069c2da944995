#pragma once

#include <cstdarg>

namespace mcgap {

enum class log_level { error = 0, warn = 1, info = 2, debug = 3 };

// Diagnostics go to stderr so stdout stays parseable. The threshold comes
// from the MCGAP_LOG environment variable (error|warn|info|debug, default
// warn) and can be overridden programmatically.
namespace log {

log_level threshold();
void set_threshold(log_level lv);

bool enabled(log_level lv);

void write(log_level lv, const char* fmt, ...)
#if defined(__GNUC__) || defined(__clang__)
    __attribute__((format(printf, 2, 3)))
#endif
    ;

} // namespace log

} // namespace mcgap
