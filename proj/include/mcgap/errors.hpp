#pragma once

#include <stdexcept>
#include <string>

namespace mcgap {

// Stable error codes. The CLI maps input/model problems to exit code 2 and
// numerical failures to exit code 3; everything a caller might want to branch
// on gets its own code rather than a string to parse.
enum class errc {
    empty_input,
    path_too_short,
    index_out_of_range,
    invalid_delta,
    invalid_rates,
    non_stochastic,
    not_reversible,
    not_symmetric,
    too_few_eigenvalues,
    zero_stationary_entry,
    disconnected_graph,
    singular_system,
    no_convergence,
    invalid_argument,
    io_error,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    errc code() const noexcept { return code_; }

    // True for failures of the numerics (singular solves, eigensolver
    // breakdown), false for bad inputs or bad models.
    bool numerical() const noexcept {
        return code_ == errc::singular_system || code_ == errc::no_convergence;
    }

private:
    errc code_;
};

[[noreturn]] void fail(errc code, const std::string& what);

} // namespace mcgap
