#include "sensguard/error.hpp"

namespace sensguard {

const char* to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::invalid_spec: return "invalid-spec";
    case ErrorCode::invalid_parameter: return "invalid-parameter";
    case ErrorCode::zero_signal: return "zero-signal";
    case ErrorCode::lag_out_of_range: return "lag-out-of-range";
    case ErrorCode::degenerate_waveform: return "degenerate-waveform";
    case ErrorCode::singular_fim: return "singular-fim";
    case ErrorCode::non_convergence: return "non-convergence";
    case ErrorCode::domain: return "domain";
    case ErrorCode::invalid_bounds: return "invalid-bounds";
    case ErrorCode::coincident_position: return "coincident-position";
    case ErrorCode::degenerate_geometry: return "degenerate-geometry";
    case ErrorCode::zero_probability: return "zero-probability";
    case ErrorCode::degenerate_pulse: return "degenerate-pulse";
    case ErrorCode::zero_noise: return "zero-noise";
    case ErrorCode::time_regression: return "time-regression";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::config: return "config";
    case ErrorCode::io: return "io";
    }
    return "unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
{
}

void fail(ErrorCode code, const std::string& what)
{
    throw Error(code, what);
}

}
