#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "sensguard/estimator.hpp"
#include "sensguard/signal.hpp"

namespace sensguard {

struct CsceConfig {
    std::size_t n_short = 0;
    std::size_t n_long = 0;
    double corr_threshold = 0.707;
    double gap_fraction = 0.4;
    std::size_t ma_taps = 100;
    double pulse_threshold = 0.707;
    double min_peak_to_median = 8.0;
    std::size_t min_gap = 64;       // gaps below this are always within one peak
    double gap_tolerance = 0.002;   // relative slack when matching gaps to period multiples
    std::size_t max_subdivision = 8; // the period may be the smallest peak gap divided by up to this
    double max_snr_db = 40.0;
    double sigma_phi = default_sigma_phi;

    void validate() const;
    static CsceConfig for_sample_rate(double sample_rate, double short_s = 5e-3, double long_s = 10e-3);
};

struct CsceResult {
    bool detected = false;
    std::size_t period = 0;
    ComplexSignal pulse;
    double gamma_hat = 0.0;
    std::optional<CrlbEstimate> crb_t;

    std::size_t l_start = 0;
    std::size_t l_end = 0;
    std::size_t n_summed = 0;
    std::size_t n_peaks = 0;
    double peak_to_median = 0.0;
    std::string reason;
};

CsceResult csce(const ComplexSignal& received, const CsceConfig& cfg, double f_c);

// Per-pulse SNR from a coherently summed frame. Samples within `guard` of the
// window are excluded from the noise estimate. Throws zero-noise when no noise
// power is left outside the window.
double estimate_snr(const ComplexSignal& summed_frame, std::size_t l_start, std::size_t l_end,
                    std::size_t n_summed, std::size_t guard = 0);

// Compares the extracted waveform's sigma_d at unit SNR against the gate's, so
// the decision depends on waveform shape rather than on the received level.
bool communication_reject(const CsceResult& result, const CrlbEstimate& crb_gate);

// margin times the unit-SNR bounds of the 50 MHz variant of the reference pulse.
CrlbEstimate default_crb_gate(const PulseSpec& reference, double sigma_phi = default_sigma_phi, double margin = 2.0);

}
