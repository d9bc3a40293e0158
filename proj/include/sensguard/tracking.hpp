#pragma once

#include <cstddef>

#include "sensguard/estimator.hpp"
#include "sensguard/geometry.hpp"
#include "sensguard/rng.hpp"

namespace sensguard {

enum class QuantizationMode { position, literal };
enum class CombineMode { rss, sum };

struct Measurement {
    double t = 0.0;
    bool valid = false;
    double d = 0.0;
    double v_r = 0.0;
    double phi = 0.0;
};

struct PerformanceBound {
    double t = 0.0;
    double p_k = 0.0;
    double sigma_m = 0.0;
    double sigma_q = 0.0;
    double sigma_p = 0.0;
};

inline constexpr double default_p_floor = 1e-3;

double detection_prob(double v_r, double sigma_vr);
bool sample_indicator(double p, Rng& rng);
Measurement draw_measurement(const SensingGeometry& truth, const CrlbEstimate& crlb, double p_k, double t, Rng& rng);

// Signed law-of-cosines deviation between the true and measured positions.
double position_deviation(double d, double e_d, double e_phi);

double sigma_m(double d, double sigma_d, double sigma_phi, std::size_t n_mc, Rng& rng);
double sigma_m_small_angle(double d, double sigma_d, double sigma_phi);

// Alternative form sqrt(sigma_d^2 + D sigma_phi^2), kept for figure reproduction.
double sigma_m_simplified(double d, double sigma_d, double sigma_phi);

double quantization_sigma(double delta_t, double p_k, double speed, QuantizationMode mode);
double performance_bound(double sigma_m, double sigma_q, CombineMode mode = CombineMode::rss);

const char* to_string(QuantizationMode m);
const char* to_string(CombineMode m);

}
