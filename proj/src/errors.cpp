#include "mcgap/errors.hpp"

namespace mcgap {

const char* errc_name(errc code) {
    switch (code) {
        case errc::empty_input: return "EmptyInput";
        case errc::path_too_short: return "PathTooShort";
        case errc::index_out_of_range: return "IndexOutOfRange";
        case errc::invalid_delta: return "InvalidDelta";
        case errc::invalid_rates: return "InvalidRates";
        case errc::non_stochastic: return "NonStochastic";
        case errc::not_reversible: return "NotReversible";
        case errc::not_symmetric: return "NotSymmetric";
        case errc::too_few_eigenvalues: return "TooFewEigenvalues";
        case errc::zero_stationary_entry: return "ZeroStationaryEntry";
        case errc::disconnected_graph: return "DisconnectedGraph";
        case errc::singular_system: return "SingularSystem";
        case errc::no_convergence: return "NoConvergence";
        case errc::invalid_argument: return "InvalidArgument";
        case errc::io_error: return "IoError";
    }
    return "UnknownError";
}

void fail(errc code, const std::string& what) {
    throw Error(code, std::string(errc_name(code)) + ": " + what);
}

} // namespace mcgap
