#pragma once

#include <stdexcept>
#include <string>

namespace sensguard {

enum class ErrorCode {
    invalid_spec,
    invalid_parameter,
    zero_signal,
    lag_out_of_range,
    degenerate_waveform,
    singular_fim,
    non_convergence,
    domain,
    invalid_bounds,
    coincident_position,
    degenerate_geometry,
    zero_probability,
    degenerate_pulse,
    zero_noise,
    time_regression,
    precondition,
    config,
    io,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

inline void require(bool cond, ErrorCode code, const std::string& what)
{
    if (!cond)
        fail(code, what);
}

}
