#include "sensguard/signal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/random/taus88.hpp>

#include "sensguard/error.hpp"
#include "sensguard/fft.hpp"
#include "sensguard/simd/kernels.hpp"

namespace sensguard {

void PulseSpec::validate() const
{
    require(bandwidth > 0.0, ErrorCode::invalid_spec, "bandwidth must be positive");
    require(carrier > 0.0, ErrorCode::invalid_spec, "carrier must be positive");
    require(pulse_duration > 0.0, ErrorCode::invalid_spec, "pulse duration must be positive");
    require(pulse_duration <= prt, ErrorCode::invalid_spec, "pulse duration exceeds PRT");
}

ComplexSignal gen_lfm(const PulseSpec& spec, double sample_rate)
{
    spec.validate();
    require(sample_rate >= 2.0 * spec.bandwidth, ErrorCode::invalid_spec,
            "sample rate below 2x bandwidth");
    require(spec.pulse_duration * sample_rate >= 16.0, ErrorCode::invalid_spec,
            "pulse shorter than 16 samples");

    const auto n = static_cast<std::size_t>(std::llround(spec.pulse_duration * sample_rate));
    const double chirp_rate = spec.bandwidth / spec.pulse_duration;
    const double half = spec.pulse_duration / 2.0;
    ComplexSignal out;
    out.sample_rate = sample_rate;
    out.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / sample_rate - half;
        const double phase = std::numbers::pi * chirp_rate * t * t;
        out.samples[i] = cfloat(static_cast<float>(std::cos(phase)), static_cast<float>(std::sin(phase)));
    }
    return out;
}

std::size_t pulse_offset(const PulseSpec& spec, double sample_rate, std::size_t k)
{
    return static_cast<std::size_t>(std::llround(static_cast<double>(k) * spec.prt * sample_rate));
}

ComplexSignal gen_pulse_train(const PulseSpec& spec, double sample_rate, double duration)
{
    spec.validate();
    require(duration >= spec.prt * (1.0 - 1e-12), ErrorCode::invalid_spec, "duration shorter than one PRT");
    const ComplexSignal pulse = gen_lfm(spec, sample_rate);
    const auto count = static_cast<std::size_t>(std::floor(duration / spec.prt + 1e-9));
    ComplexSignal out;
    out.sample_rate = sample_rate;
    out.samples.assign(static_cast<std::size_t>(std::llround(duration * sample_rate)), cfloat(0.0f, 0.0f));
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t start = pulse_offset(spec, sample_rate, k);
        const std::size_t len = std::min(pulse.size(), out.size() - std::min(out.size(), start));
        std::copy_n(pulse.samples.begin(), len, out.samples.begin() + static_cast<std::ptrdiff_t>(start));
    }
    return out;
}

ComplexSignal gen_ofdm_interference(int n_subcarriers, double symbol_rate, double sample_rate,
                                    double duration, Rng& rng, double cp_fraction)
{
    require(n_subcarriers >= 2, ErrorCode::invalid_parameter, "need at least 2 subcarriers");
    require(symbol_rate > 0.0 && sample_rate > 0.0 && duration > 0.0, ErrorCode::invalid_parameter,
            "rates and duration must be positive");
    require(cp_fraction >= 0.0 && cp_fraction < 1.0, ErrorCode::invalid_parameter, "cyclic prefix fraction out of range");

    const double oversample = sample_rate / (symbol_rate * n_subcarriers * (1.0 + cp_fraction));
    const auto factor = static_cast<std::size_t>(std::llround(oversample));
    require(factor >= 1, ErrorCode::invalid_parameter, "symbol rate too high for the sample rate");

    const std::size_t nfft = static_cast<std::size_t>(n_subcarriers) * factor;
    const auto ncp = static_cast<std::size_t>(std::llround(cp_fraction * static_cast<double>(nfft)));
    const std::size_t symbol_len = nfft + ncp;
    const auto total = static_cast<std::size_t>(std::llround(duration * sample_rate));
    require(total > 0, ErrorCode::invalid_parameter, "empty duration");

    ComplexSignal out;
    out.sample_rate = sample_rate;
    out.samples.resize(total);

    const float qpsk = static_cast<float>(std::numbers::sqrt2 / 2.0);
    const int half = n_subcarriers / 2;
    std::vector<cfloat> buf(nfft);
    for (std::size_t pos = 0; pos < total; pos += symbol_len) {
        std::fill(buf.begin(), buf.end(), cfloat(0.0f, 0.0f));
        for (int k = -half; k < n_subcarriers - half; ++k) {
            const std::uint64_t bits = rng();
            const float re = (bits & 1u) ? qpsk : -qpsk;
            const float im = (bits & 2u) ? qpsk : -qpsk;
            const std::size_t bin = k >= 0 ? static_cast<std::size_t>(k) : nfft - static_cast<std::size_t>(-k);
            buf[bin] = cfloat(re, im);
        }
        fft_inplace(buf, true);
        for (std::size_t i = 0; i < symbol_len && pos + i < total; ++i) {
            const std::size_t src = i < ncp ? nfft - ncp + i : i - ncp;
            out.samples[pos + i] = buf[src];
        }
    }
    return scale_to_power(out, 1.0);
}

ComplexSignal gen_awgn(std::size_t n, double power_linear, Rng& rng)
{
    require(power_linear >= 0.0, ErrorCode::invalid_parameter, "noise power must be non-negative");
    ComplexSignal out;
    out.samples.assign(n, cfloat(0.0f, 0.0f));
    if (power_linear == 0.0)
        return out;
    const std::uint64_t seed = rng();
    boost::random::taus88 engine(static_cast<std::uint32_t>(seed ^ (seed >> 32)));
    boost::random::normal_distribution<float> dist(0.0f, static_cast<float>(std::sqrt(power_linear / 2.0)));
    for (auto& s : out.samples) {
        const float re = dist(engine);
        const float im = dist(engine);
        s = cfloat(re, im);
    }
    return out;
}

double energy(const ComplexSignal& signal)
{
    return simd::kernels().energy(signal.samples.data(), signal.size());
}

double power(const ComplexSignal& signal)
{
    require(!signal.empty(), ErrorCode::precondition, "power of an empty signal");
    return energy(signal) / static_cast<double>(signal.size());
}

ComplexSignal scale_to_power(const ComplexSignal& signal, double target)
{
    require(target >= 0.0, ErrorCode::invalid_parameter, "target power must be non-negative");
    const double p = power(signal);
    if (p == 0.0) {
        require(target == 0.0, ErrorCode::zero_signal, "cannot scale an all-zero signal to positive power");
        return signal;
    }
    ComplexSignal out = signal;
    const double gain = std::sqrt(target / p);
    for (auto& s : out.samples)
        s = cfloat(static_cast<float>(s.real() * gain), static_cast<float>(s.imag() * gain));
    return out;
}

void add_into(ComplexSignal& dst, const ComplexSignal& src, double amplitude)
{
    const std::size_t n = std::min(dst.size(), src.size());
    simd::kernels().add_scaled(dst.samples.data(), src.samples.data(), n, static_cast<float>(amplitude));
}

ComplexSignal slice(const ComplexSignal& signal, std::size_t start, std::size_t length)
{
    require(start + length <= signal.size(), ErrorCode::precondition, "slice out of range");
    ComplexSignal out;
    out.sample_rate = signal.sample_rate;
    out.samples.assign(signal.samples.begin() + static_cast<std::ptrdiff_t>(start),
                       signal.samples.begin() + static_cast<std::ptrdiff_t>(start + length));
    return out;
}

double linear_to_db(double linear)
{
    if (linear <= 0.0)
        return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(linear);
}

}
