#include "sensguard/tracking.hpp"

#include <cmath>
#include <numbers>


#include "sensguard/error.hpp"

namespace sensguard {

double detection_prob(double v_r, double sigma_vr)
{
    require(sigma_vr > 0.0, ErrorCode::invalid_parameter, "sigma_vr must be positive");
    return std::erf(std::abs(v_r) / (std::numbers::sqrt2 * sigma_vr));
}

bool sample_indicator(double p, Rng& rng)
{
    require(p >= 0.0 && p <= 1.0, ErrorCode::invalid_parameter, "probability outside [0, 1]");
    return boost::random::bernoulli_distribution<double>(p)(rng);
}

Measurement draw_measurement(const SensingGeometry& truth, const CrlbEstimate& crlb, double p_k, double t, Rng& rng)
{
    require(crlb.sigma_d >= 0.0 && crlb.sigma_vr >= 0.0 && crlb.sigma_phi >= 0.0, ErrorCode::invalid_parameter,
            "negative CRLB sigma");
    Measurement m;
    m.t = t;
    m.valid = sample_indicator(p_k, rng);
    if (!m.valid)
        return m;
    m.d = truth.d + normal(rng, 1.0) * crlb.sigma_d;
    m.v_r = truth.v_r + normal(rng, 1.0) * crlb.sigma_vr;
    m.phi = truth.phi + normal(rng, 1.0) * crlb.sigma_phi;
    return m;
}

double position_deviation(double d, double e_d, double e_phi)
{
    require(d > 0.0, ErrorCode::degenerate_geometry, "distance must be positive");
    const double r = d + e_d;
    require(r > 0.0, ErrorCode::degenerate_geometry, "measured distance must be positive");
    // (r - d)^2 + 2 r d (1 - cos e_phi), with 1 - cos written as 2 sin^2 to avoid cancellation
    const double s = std::sin(e_phi / 2.0);
    const double mag = std::sqrt(e_d * e_d + 4.0 * r * d * s * s);
    return e_d < 0.0 ? -mag : mag;
}

double sigma_m(double d, double sigma_d, double sigma_phi, std::size_t n_mc, Rng& rng)
{
    require(n_mc >= 1000, ErrorCode::invalid_parameter, "n_mc must be at least 1000");
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < n_mc; ++i) {
        const double e_d = normal(rng, 1.0) * sigma_d;
        const double e_phi = normal(rng, 1.0) * sigma_phi;
        if (d + e_d <= 0.0)
            continue;
        const double x = position_deviation(d, e_d, e_phi);
        ++used;
        const double delta = x - mean;
        mean += delta / static_cast<double>(used);
        m2 += delta * (x - mean);
    }
    require(used > 1, ErrorCode::degenerate_geometry, "no usable Monte Carlo draws");
    return std::sqrt(m2 / static_cast<double>(used - 1));
}

double sigma_m_small_angle(double d, double sigma_d, double sigma_phi)
{
    return std::sqrt(sigma_d * sigma_d + d * d * sigma_phi * sigma_phi);
}

double sigma_m_simplified(double d, double sigma_d, double sigma_phi)
{
    return std::sqrt(sigma_d * sigma_d + d * sigma_phi * sigma_phi);
}

double quantization_sigma(double delta_t, double p_k, double speed, QuantizationMode mode)
{
    require(delta_t > 0.0, ErrorCode::invalid_parameter, "delta_t must be positive");
    require(speed >= 0.0, ErrorCode::invalid_parameter, "speed must be non-negative");
    require(p_k <= 1.0, ErrorCode::invalid_parameter, "p_k above 1");
    require(p_k > 0.0, ErrorCode::zero_probability, "p_k = 0 gives an unbounded interval");
    const double interval = delta_t / p_k;
    if (mode == QuantizationMode::literal)
        return interval / std::sqrt(12.0);
    return speed * interval / std::sqrt(12.0);
}

double performance_bound(double sm, double sq, CombineMode mode)
{
    require(sm >= 0.0 && sq >= 0.0, ErrorCode::invalid_parameter, "negative error terms");
    if (mode == CombineMode::sum)
        return sm + sq;
    return std::hypot(sm, sq);
}

const char* to_string(QuantizationMode m)
{
    return m == QuantizationMode::position ? "position" : "literal";
}

const char* to_string(CombineMode m)
{
    return m == CombineMode::rss ? "rss" : "sum";
}

}
