#include "sensguard/channel.hpp"

#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <vector>

#include "sensguard/error.hpp"
#include "sensguard/simd/kernels.hpp"

namespace sensguard {

namespace {

void check_distance(double d)
{
    require(d >= 1.0, ErrorCode::domain, "path-loss distance below 1 m");
}

std::complex<double> cn01(Rng& rng)
{
    const double s = std::numbers::sqrt2 / 2.0;
    const double re = normal(rng, s);
    const double im = normal(rng, s);
    return {re, im};
}

// Unit-power sum-of-sinusoids process with random arrival angles and phases.
struct ScatterProcess {
    std::vector<double> freq;
    std::vector<double> phase;

    ScatterProcess(double doppler_hz, int m, Rng& rng)
    {
        freq.resize(static_cast<std::size_t>(m));
        phase.resize(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) {
            freq[static_cast<std::size_t>(i)] = doppler_hz * std::cos(uniform(rng, 0.0, 2.0 * std::numbers::pi));
            phase[static_cast<std::size_t>(i)] = uniform(rng, 0.0, 2.0 * std::numbers::pi);
        }
    }

    std::complex<double> at(double t) const
    {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t i = 0; i < freq.size(); ++i)
            acc += std::polar(1.0, 2.0 * std::numbers::pi * freq[i] * t + phase[i]);
        return acc / std::sqrt(static_cast<double>(freq.size()));
    }
};

using GainFn = std::function<std::complex<double>(double)>;

// y += g(t) * x[n - delay], g linearly interpolated between knots.
void add_tap(std::vector<cfloat>& y, const std::vector<cfloat>& x, std::size_t delay, const GainFn& g,
             double sample_rate, std::size_t knot)
{
    const std::size_t n = y.size();
    if (delay >= n)
        return;
    const auto& k = simd::kernels();
    for (std::size_t start = delay; start < n; start += knot) {
        const std::size_t len = std::min(knot, n - start);
        const std::complex<double> g0 = g(static_cast<double>(start) / sample_rate);
        const std::complex<double> g1 = g(static_cast<double>(start + len) / sample_rate);
        const std::complex<double> dg = (g1 - g0) / static_cast<double>(len);
        k.add_ramp_product(y.data() + start, x.data() + start - delay, len,
                           cfloat(static_cast<float>(g0.real()), static_cast<float>(g0.imag())),
                           cfloat(static_cast<float>(dg.real()), static_cast<float>(dg.imag())));
    }
}

}

double pathloss_los_mean(double d, double fc_ghz)
{
    check_distance(d);
    require(fc_ghz > 0.0, ErrorCode::domain, "carrier must be positive");
    return 32.4 + 21.0 * std::log10(d) + 20.0 * std::log10(fc_ghz);
}

double pathloss_nlos_mean(double d, double fc_ghz, double h)
{
    check_distance(d);
    require(fc_ghz > 0.0, ErrorCode::domain, "carrier must be positive");
    require(h >= 0.0, ErrorCode::domain, "height must be non-negative");
    return 35.3 * std::log10(d) + 22.4 + 21.3 * std::log10(fc_ghz) - 0.3 * (h - 1.5);
}

double pathloss_los(double d, double fc_ghz, Rng& rng)
{
    const double mean = pathloss_los_mean(d, fc_ghz);
    return mean + normal(rng, shadowing_sigma_los_db);
}

double pathloss_nlos(double d, double fc_ghz, double h, Rng& rng)
{
    const double mean = pathloss_nlos_mean(d, fc_ghz, h);
    return mean + normal(rng, shadowing_sigma_nlos_db);
}

double pathloss_mean(ChannelCondition c, double d, double fc_ghz, double h)
{
    return c == ChannelCondition::los ? pathloss_los_mean(d, fc_ghz) : pathloss_nlos_mean(d, fc_ghz, h);
}

double shadowing_sigma_db(ChannelCondition c)
{
    return c == ChannelCondition::los ? shadowing_sigma_los_db : shadowing_sigma_nlos_db;
}

double beta_r_recipe_db(double fc_ghz, double h)
{
    double acc = 0.0;
    for (double d : {25.0, 50.0})
        acc += pathloss_nlos_mean(d, fc_ghz, h) - pathloss_los_mean(d, fc_ghz);
    return acc / 2.0;
}

std::complex<double> draw_gain(const FadingKind& kind, Rng& rng)
{
    switch (kind.type) {
    case FadingType::awgn:
        return {1.0, 0.0};
    case FadingType::rayleigh:
        return cn01(rng);
    case FadingType::rician: {
        require(kind.k_factor > 0.0, ErrorCode::invalid_parameter, "Rician K must be positive");
        const double k = kind.k_factor;
        const double los_phase = uniform(rng, 0.0, 2.0 * std::numbers::pi);
        return std::sqrt(k / (k + 1.0)) * std::polar(1.0, los_phase) + std::sqrt(1.0 / (k + 1.0)) * cn01(rng);
    }
    }
    return {1.0, 0.0};
}

ComplexSignal apply_fading(const ComplexSignal& signal, const FadingKind& kind, Rng& rng,
                           const FadingProfile& profile)
{
    require(!signal.empty(), ErrorCode::precondition, "cannot fade an empty signal");
    if (kind.type == FadingType::awgn)
        return signal;
    require(signal.sample_rate > 0.0, ErrorCode::invalid_parameter, "sample rate must be positive");
    require(profile.knot_spacing >= 1 && profile.sinusoids >= 1, ErrorCode::invalid_parameter,
            "invalid fading profile");

    ComplexSignal out;
    out.sample_rate = signal.sample_rate;
    out.samples.assign(signal.size(), cfloat(0.0f, 0.0f));
    const bool varying = profile.doppler_hz > 0.0;

    auto scatter = [&](double weight) -> GainFn {
        if (!varying) {
            const std::complex<double> g = weight * cn01(rng);
            return [g](double) { return g; };
        }
        auto proc = std::make_shared<ScatterProcess>(profile.doppler_hz, profile.sinusoids, rng);
        return [proc, weight](double t) { return weight * proc->at(t); };
    };

    if (kind.type == FadingType::rayleigh) {
        require(profile.rayleigh_taps >= 1 && profile.tap_spacing >= 0, ErrorCode::invalid_parameter,
                "invalid tap profile");
        std::vector<double> w(static_cast<std::size_t>(profile.rayleigh_taps));
        double total = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            w[i] = std::pow(10.0, -profile.tap_decay_db * static_cast<double>(i) / 10.0);
            total += w[i];
        }
        for (std::size_t i = 0; i < w.size(); ++i) {
            const GainFn g = scatter(std::sqrt(w[i] / total));
            add_tap(out.samples, signal.samples, i * static_cast<std::size_t>(profile.tap_spacing), g,
                    signal.sample_rate, profile.knot_spacing);
        }
        return out;
    }

    require(kind.k_factor > 0.0, ErrorCode::invalid_parameter, "Rician K must be positive");
    const double k = kind.k_factor;
    const double los_amp = std::sqrt(k / (k + 1.0));
    const double los_phase = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    const double los_freq = profile.los_doppler_hz * std::cos(uniform(rng, 0.0, 2.0 * std::numbers::pi));
    const GainFn diffuse = scatter(std::sqrt(1.0 / (k + 1.0)));
    const GainFn g = [=](double t) {
        return los_amp * std::polar(1.0, 2.0 * std::numbers::pi * los_freq * t + los_phase) + diffuse(t);
    };
    add_tap(out.samples, signal.samples, 0, g, signal.sample_rate, profile.knot_spacing);
    return out;
}

double power_sum_dbm(double a_dbm, double b_dbm)
{
    if (std::isinf(a_dbm) && a_dbm < 0)
        return b_dbm;
    if (std::isinf(b_dbm) && b_dbm < 0)
        return a_dbm;
    const double hi = std::max(a_dbm, b_dbm);
    const double lo = std::min(a_dbm, b_dbm);
    return hi + 10.0 * std::log10(1.0 + std::pow(10.0, (lo - hi) / 10.0));
}

LinkState link_budget(double tx_power_dbm, double d, ChannelCondition condition, double fc_hz,
                      double noise_floor_dbm, double interference_dbm, double beta_r_db, Rng& rng,
                      const LinkOptions& options)
{
    const double fc_ghz = fc_hz / 1e9;
    LinkState s;
    s.d = d;
    s.condition = condition;
    const double direct = pathloss_mean(condition, d, fc_ghz, options.height);
    const double reflected = pathloss_mean(condition, 2.0 * d, fc_ghz, options.height);
    s.shadowing_db = options.shadowing ? normal(rng, shadowing_sigma_db(condition)) : 0.0;
    s.pathloss_db = direct + s.shadowing_db;
    s.reflected_pathloss_db = reflected + s.shadowing_db;

    s.rx_power_target_dbm = tx_power_dbm - s.pathloss_db;
    s.rx_power_initiator_dbm = tx_power_dbm - s.reflected_pathloss_db;
    if (options.initiator_fading) {
        s.fading_gain = draw_gain(condition == ChannelCondition::los ? options.los_fading : options.nlos_fading, rng);
        s.rx_power_initiator_dbm += linear_to_db(std::norm(s.fading_gain));
    }
    s.sinr_at_target = s.rx_power_target_dbm - power_sum_dbm(noise_floor_dbm, interference_dbm);
    s.sinr_at_initiator = s.rx_power_initiator_dbm - power_sum_dbm(noise_floor_dbm, interference_dbm);
    s.sinr_initiator_estimate = s.sinr_at_target + beta_r_db;
    return s;
}

const char* to_string(ChannelCondition c)
{
    return c == ChannelCondition::los ? "LOS" : "NLOS";
}

const char* to_string(FadingType t)
{
    switch (t) {
    case FadingType::awgn: return "awgn";
    case FadingType::rayleigh: return "rayleigh";
    case FadingType::rician: return "rician";
    }
    return "unknown";
}

}
