#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "sensguard/rng.hpp"

namespace sensguard {

using cfloat = std::complex<float>;

struct ComplexSignal {
    std::vector<cfloat> samples;
    double sample_rate = 0.0;

    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }
};

struct PulseSpec {
    double bandwidth = 100e6;
    double carrier = 5.8e9;
    double pulse_duration = 1e-4;
    double prt = 4e-4;

    void validate() const;
    double default_sample_rate() const { return 2.0 * bandwidth; }
};

struct OfdmParams {
    int n_subcarriers = 64;
    double symbol_rate = 250e3; // OFDM symbols per second, cyclic prefix included
    double cp_fraction = 0.25;
};

ComplexSignal gen_lfm(const PulseSpec& spec, double sample_rate);

// Pulse k starts at sample round(k * prt * sample_rate).
ComplexSignal gen_pulse_train(const PulseSpec& spec, double sample_rate, double duration);
std::size_t pulse_offset(const PulseSpec& spec, double sample_rate, std::size_t k);

ComplexSignal gen_ofdm_interference(int n_subcarriers, double symbol_rate, double sample_rate,
                                    double duration, Rng& rng, double cp_fraction = 0.25);

ComplexSignal gen_awgn(std::size_t n, double power, Rng& rng);

double power(const ComplexSignal& signal);
double energy(const ComplexSignal& signal);
ComplexSignal scale_to_power(const ComplexSignal& signal, double target);

// dst += amplitude * src over the common length.
void add_into(ComplexSignal& dst, const ComplexSignal& src, double amplitude = 1.0);

ComplexSignal slice(const ComplexSignal& signal, std::size_t start, std::size_t length);

void write_iq(const std::string& path, const ComplexSignal& signal);
ComplexSignal read_iq(const std::string& path);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear);

}
