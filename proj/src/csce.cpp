#include "sensguard/csce.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "sensguard/error.hpp"
#include "sensguard/fft.hpp"
#include "sensguard/simd/kernels.hpp"

namespace sensguard {

void CsceConfig::validate() const
{
    require(n_short > 0 && n_short < n_long, ErrorCode::invalid_parameter, "need 0 < n_short < n_long");
    require(corr_threshold > 0.0 && corr_threshold < 1.0, ErrorCode::invalid_parameter, "corr_threshold outside (0, 1)");
    require(pulse_threshold > 0.0 && pulse_threshold < 1.0, ErrorCode::invalid_parameter,
            "pulse_threshold outside (0, 1)");
    require(gap_fraction > 0.0 && gap_fraction < 1.0, ErrorCode::invalid_parameter, "gap_fraction outside (0, 1)");
    require(ma_taps >= 1, ErrorCode::invalid_parameter, "ma_taps must be at least 1");
    require(min_peak_to_median >= 0.0 && gap_tolerance >= 0.0, ErrorCode::invalid_parameter, "negative tolerance");
}

CsceConfig CsceConfig::for_sample_rate(double sample_rate, double short_s, double long_s)
{
    CsceConfig cfg;
    cfg.n_short = static_cast<std::size_t>(std::llround(short_s * sample_rate));
    cfg.n_long = static_cast<std::size_t>(std::llround(long_s * sample_rate));
    return cfg;
}

namespace {

constexpr double noise_ceiling_factor = 1.5;
constexpr std::size_t noise_smoothing_min = 64;

struct Peak {
    long lag;
    float value;
};

CsceResult miss(CsceResult r, std::string reason)
{
    r.detected = false;
    r.period = 0;
    r.pulse = {};
    r.crb_t.reset();
    r.reason = std::move(reason);
    return r;
}

std::vector<float> circular_moving_average(const std::vector<float>& x, std::size_t taps)
{
    const std::size_t n = x.size();
    std::vector<float> out(n);
    taps = std::min(taps, n);
    const std::size_t back = taps / 2;
    double acc = 0.0;
    for (std::size_t j = 0; j < taps; ++j)
        acc += x[(j + n - back) % n];
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = static_cast<float>(acc / static_cast<double>(taps));
        acc -= x[(i + n - back) % n];
        acc += x[(i + n - back + taps) % n];
    }
    return out;
}

}

double estimate_snr(const ComplexSignal& frame, std::size_t l_start, std::size_t l_end, std::size_t n_summed,
                    std::size_t guard)
{
    require(n_summed >= 1, ErrorCode::invalid_parameter, "n_summed must be positive");
    require(l_start <= l_end && l_end < frame.size(), ErrorCode::precondition, "window outside frame");
    const std::size_t n = frame.size();
    std::vector<float> pw(n);
    for (std::size_t i = 0; i < n; ++i)
        pw[i] = std::norm(frame.samples[i]);

    double in = 0.0;
    for (std::size_t i = l_start; i <= l_end; ++i)
        in += pw[i];
    const std::size_t n_in = l_end - l_start + 1;

    // Noise samples: outside the guarded window and with smoothed power close to
    // the lower-quartile floor, so pulse energy missed by the window is excluded.
    const std::vector<float> smooth = circular_moving_average(pw, std::max(guard, noise_smoothing_min));
    std::vector<float> sorted = smooth;
    auto quart = sorted.begin() + static_cast<std::ptrdiff_t>(n / 4);
    std::nth_element(sorted.begin(), quart, sorted.end());
    const double ceiling = noise_ceiling_factor * static_cast<double>(*quart);
    const std::size_t lo = l_start >= guard ? l_start - guard : 0;
    const std::size_t hi = std::min(n - 1, l_end + guard);
    double out = 0.0;
    std::size_t n_out = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if ((i >= lo && i <= hi) || smooth[i] > ceiling)
            continue;
        out += pw[i];
        ++n_out;
    }
    if (n_out == 0 || out <= 0.0)
        fail(ErrorCode::zero_noise, "no noise power outside the pulse window");
    const double p_in = in / static_cast<double>(n_in);
    const double p_out = out / static_cast<double>(n_out);
    return std::max(0.0, (p_in - p_out) / p_out) / static_cast<double>(n_summed);
}

CsceResult csce(const ComplexSignal& received, const CsceConfig& cfg, double f_c)
{
    cfg.validate();
    require(received.size() >= cfg.n_short + cfg.n_long, ErrorCode::precondition,
            "received segment shorter than n_short + n_long");
    const auto& kern = simd::kernels();
    CsceResult result;

    // Correlate r[0, Ns) against the following Nl samples.
    const std::size_t ns = cfg.n_short;
    const std::size_t nl = cfg.n_long;
    const std::size_t m = fft_good_size(ns + nl - 1);
    std::vector<cfloat> a(m, cfloat(0.0f, 0.0f));
    std::vector<cfloat> b(m, cfloat(0.0f, 0.0f));
    std::copy_n(received.samples.begin(), ns, a.begin());
    std::copy_n(received.samples.begin() + static_cast<std::ptrdiff_t>(ns), nl, b.begin());
    fft_inplace(a, false);
    fft_inplace(b, false);
    kern.conj_multiply(a.data(), b.data(), a.data(), m);
    fft_inplace(a, true);
    std::vector<float> mag(m);
    kern.magnitude(a.data(), mag.data(), m);
    a = {};
    b = {};

    // valid lags are -(Ns-1) .. Nl-1; the rest of the circular buffer is padding
    const long lag0 = -static_cast<long>(ns - 1);
    std::vector<float> values(ns + nl - 1);
    std::copy(mag.end() - static_cast<std::ptrdiff_t>(ns - 1), mag.end(), values.begin());
    std::copy_n(mag.begin(), nl, values.begin() + static_cast<std::ptrdiff_t>(ns - 1));
    mag = {};

    const float cmax = *std::max_element(values.begin(), values.end());
    if (!(cmax > 0.0f))
        return miss(result, "zero correlation");
    {
        std::vector<float> tmp = values;
        auto mid = tmp.begin() + static_cast<std::ptrdiff_t>(tmp.size() / 2);
        std::nth_element(tmp.begin(), mid, tmp.end());
        result.peak_to_median = *mid > 0.0f ? cmax / *mid : INFINITY;
    }
    if (result.peak_to_median < cfg.min_peak_to_median)
        return miss(result, "correlation peak not significant");

    std::vector<Peak> above;
    const float thr = static_cast<float>(cfg.corr_threshold) * cmax;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] > thr)
            above.push_back({lag0 + static_cast<long>(i), values[i]});
    if (above.size() < 2)
        return miss(result, "fewer than two correlation peaks");

    std::vector<long> delta;
    std::vector<long> big;
    for (std::size_t i = 1; i < above.size(); ++i) {
        delta.push_back(above[i].lag - above[i - 1].lag);
        if (delta.back() >= static_cast<long>(cfg.min_gap))
            big.push_back(delta.back());
    }
    if (big.empty())
        return miss(result, "all correlation peaks within one lobe");
    std::nth_element(big.begin(), big.begin() + static_cast<std::ptrdiff_t>(big.size() / 2), big.end());
    const double merge_below = cfg.gap_fraction * static_cast<double>(big[big.size() / 2]);

    std::vector<Peak> peaks{above[0]};
    for (std::size_t i = 1; i < above.size(); ++i) {
        if (static_cast<double>(delta[i - 1]) < merge_below) {
            if (above[i].value > peaks.back().value)
                peaks.back() = above[i];
        } else {
            peaks.push_back(above[i]);
        }
    }
    result.n_peaks = peaks.size();
    if (peaks.size() < 2)
        return miss(result, "fewer than two peaks after gap filtering");

    long min_gap = peaks[1].lag - peaks[0].lag;
    for (std::size_t i = 2; i < peaks.size(); ++i)
        min_gap = std::min(min_gap, peaks[i].lag - peaks[i - 1].lag);

    // Largest base min_gap / q that every gap is a whole multiple of.
    long periods = 0;
    for (long q = 1; q <= static_cast<long>(cfg.max_subdivision) && periods == 0; ++q) {
        const double base = static_cast<double>(min_gap) / static_cast<double>(q);
        if (base < static_cast<double>(cfg.min_gap))
            break;
        long count = 0;
        for (std::size_t i = 1; i < peaks.size(); ++i) {
            const auto gap = static_cast<double>(peaks[i].lag - peaks[i - 1].lag);
            const long mult = std::lround(gap / base);
            const double tol = static_cast<double>(mult + 1) + cfg.gap_tolerance * gap;
            if (mult < 1 || std::abs(gap - static_cast<double>(mult) * base) > tol) {
                count = 0;
                break;
            }
            count += mult;
        }
        periods = count;
    }
    if (periods == 0)
        return miss(result, "peak spacing is not periodic");
    const long span = peaks.back().lag - peaks.front().lag;
    const auto period = static_cast<std::size_t>(span / periods);
    if (period < 2 || period > received.size() / 2)
        return miss(result, "period out of range");

    // Shifted summation over whole periods.
    const std::size_t n_all = received.size() / period;
    std::vector<cfloat> frame(period, cfloat(0.0f, 0.0f));
    for (std::size_t j = 0; j < n_all; ++j)
        kern.accumulate(frame.data(), received.samples.data() + j * period, period);

    std::vector<float> env(period);
    kern.magnitude(frame.data(), env.data(), period);
    const std::vector<float> ma = circular_moving_average(env, cfg.ma_taps);
    const auto top = static_cast<std::size_t>(std::max_element(ma.begin(), ma.end()) - ma.begin());
    const float pulse_thr = static_cast<float>(cfg.pulse_threshold) * ma[top];
    std::size_t left = 0;
    while (left + 1 < period && ma[(top + period - left - 1) % period] >= pulse_thr)
        ++left;
    std::size_t right = 0;
    while (left + right + 1 < period && ma[(top + right + 1) % period] >= pulse_thr)
        ++right;
    const std::size_t width = left + right + 1;
    if (width < 2)
        fail(ErrorCode::degenerate_pulse, "pulse window is empty");

    // Rotate the frame so the window sits in the middle and does not wrap.
    const std::size_t first = (top + period - left) % period;
    const std::size_t pad = (period - width) / 2;
    const std::size_t rot = (first + period - pad) % period;
    ComplexSignal summed;
    summed.sample_rate = received.sample_rate;
    summed.samples.resize(period);
    for (std::size_t i = 0; i < period; ++i)
        summed.samples[i] = frame[(rot + i) % period];

    result.period = period;
    result.n_summed = n_all;
    result.l_start = pad;
    result.l_end = pad + width - 1;
    result.pulse = slice(summed, result.l_start, width);

    const double max_snr = db_to_linear(cfg.max_snr_db);
    try {
        result.gamma_hat = std::min(max_snr, estimate_snr(summed, result.l_start, result.l_end, n_all, cfg.ma_taps));
    } catch (const Error& e) {
        if (e.code() != ErrorCode::zero_noise)
            throw;
        result.gamma_hat = max_snr;
    }
    result.detected = true;
    if (result.gamma_hat > 0.0) {
        try {
            result.crb_t = crlb(fim(result.pulse, f_c, result.gamma_hat), cfg.sigma_phi);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::degenerate_waveform && e.code() != ErrorCode::singular_fim)
                throw;
        }
    }
    return result;
}

bool communication_reject(const CsceResult& result, const CrlbEstimate& crb_gate)
{
    require(result.detected, ErrorCode::precondition, "communication_reject needs a detection");
    if (!result.crb_t || !(result.crb_t->gamma > 0.0))
        return true;
    const double unit_sigma_d = result.crb_t->sigma_d * std::sqrt(result.crb_t->gamma);
    const double gate_sigma_d = crb_gate.sigma_d * std::sqrt(crb_gate.gamma > 0.0 ? crb_gate.gamma : 1.0);
    return unit_sigma_d > gate_sigma_d;
}

CrlbEstimate default_crb_gate(const PulseSpec& reference, double sigma_phi, double margin)
{
    PulseSpec spec = reference;
    spec.bandwidth = 50e6;
    CrlbEstimate gate = crlb(fim(gen_lfm(spec, spec.default_sample_rate()), spec.carrier, 1.0), sigma_phi);
    gate.sigma_d *= margin;
    gate.sigma_vr *= margin;
    return gate;
}

}
