#include "sensguard/estimator.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "sensguard/error.hpp"
#include "sensguard/simd/kernels.hpp"

namespace sensguard {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void check_waveform(const ComplexSignal& signal, double gamma)
{
    require(gamma > 0.0, ErrorCode::invalid_parameter, "gamma must be positive");
    require(signal.size() >= 2, ErrorCode::degenerate_waveform, "waveform needs at least 2 samples");
    require(signal.sample_rate > 0.0, ErrorCode::invalid_parameter, "sample rate must be positive");
}

double unit_energy_scale(const ComplexSignal& signal)
{
    const double e = simd::kernels().energy(signal.samples.data(), signal.size());
    require(e > 0.0, ErrorCode::degenerate_waveform, "all-zero waveform");
    return 1.0 / e;
}

}

std::complex<double> ambiguity_complex(const ComplexSignal& signal, long k, double f_v)
{
    const long n = static_cast<long>(signal.size());
    require(std::labs(k) < n, ErrorCode::lag_out_of_range, "lag outside the pulse");
    require(signal.sample_rate > 0.0, ErrorCode::invalid_parameter, "sample rate must be positive");
    // exp(j 2 pi f_v m / (N T)) with T = 1 / f_s and 1-based m
    const double dphase = two_pi * f_v * signal.sample_rate / static_cast<double>(n);
    const long first = k >= 0 ? 0 : -k;
    const long count = n - std::labs(k);
    const cfloat* a = signal.samples.data() + first;
    const cfloat* b = signal.samples.data() + first + k;
    const double phase0 = dphase * static_cast<double>(first + 1);
    return simd::kernels().correlate_phased(a, b, static_cast<std::size_t>(count), phase0, dphase);
}

double ambiguity(const ComplexSignal& signal, long k, double f_v)
{
    return std::abs(ambiguity_complex(signal, k, f_v));
}

FimMatrix fim(const ComplexSignal& signal, double f_c, double gamma)
{
    check_waveform(signal, gamma);
    require(f_c > 0.0, ErrorCode::invalid_parameter, "carrier must be positive");
    const double norm = unit_energy_scale(signal);
    const simd::FimSums sums = simd::kernels().fim_sums(signal.samples.data(), signal.size());

    const double first = std::norm(std::complex<double>(signal.samples[0]));
    const double interior = (sums.diff - first) * norm;
    const double scale_tol = 1e-12;
    if (interior <= scale_tol || sums.n2 <= 0.0)
        fail(ErrorCode::degenerate_waveform, "waveform has no delay or Doppler information");

    const double fs = signal.sample_rate;
    const double n = static_cast<double>(signal.size());
    const double c = speed_of_light;
    const double t = 1.0 / fs;

    FimMatrix out;
    out.gamma = gamma;
    out.j_dd = 2.0 * gamma * (4.0 * fs * fs / (c * c)) * sums.diff * norm;
    out.j_vv = 2.0 * gamma * (16.0 * std::numbers::pi * std::numbers::pi * f_c * f_c / (c * c * n * n * t * t)) *
               sums.n2 * norm;
    out.j_dv = 2.0 * gamma * -(8.0 * std::numbers::pi * fs * f_c / (c * c * n * t)) * sums.cross.imag() * norm;
    if (!(out.j_dd > 0.0) || !(out.j_vv > 0.0))
        fail(ErrorCode::degenerate_waveform, "non-positive FIM diagonal");
    return out;
}

FimMatrix fim_numeric_oracle(const ComplexSignal& signal, double f_c, double gamma)
{
    check_waveform(signal, gamma);
    require(f_c > 0.0, ErrorCode::invalid_parameter, "carrier must be positive");
    const double norm = unit_energy_scale(signal);
    const double fs = signal.sample_rate;
    const double c = speed_of_light;
    const double dk_dd = 2.0 * fs / c;
    const double df_dv = 2.0 * f_c / c;

    auto re = [&](long k, double f) { return ambiguity_complex(signal, k, f).real() * norm; };

    const double r00 = re(0, 0.0);
    // lag is integer-valued, so the delay axis uses the unit-step difference
    const double d2k = re(1, 0.0) - 2.0 * r00 + re(-1, 0.0);

    auto d2f = [&](double h) { return (re(0, h) - 2.0 * r00 + re(0, -h)) / (h * h); };
    auto dkf = [&](double h) { return (re(1, h) - re(1, -h) - re(-1, h) + re(-1, -h)) / (4.0 * h); };

    double h = 0.1 / (two_pi * fs);
    double prev_ff = d2f(h);
    double prev_kf = dkf(h);
    bool converged = false;
    for (int iter = 0; iter < 40; ++iter) {
        h *= 0.5;
        const double ff = d2f(h);
        const double kf = dkf(h);
        const bool ff_ok = std::abs(ff - prev_ff) <= 5e-3 * std::abs(ff);
        const double kf_scale = std::max(std::abs(kf), 1e-9 * std::sqrt(std::abs(ff * d2k)));
        const bool kf_ok = std::abs(kf - prev_kf) <= 5e-3 * kf_scale;
        prev_ff = ff;
        prev_kf = kf;
        if (ff_ok && kf_ok) {
            converged = true;
            break;
        }
    }
    if (!converged)
        fail(ErrorCode::non_convergence, "finite-difference steps did not converge");

    FimMatrix out;
    out.gamma = gamma;
    out.j_dd = -2.0 * gamma * d2k * dk_dd * dk_dd;
    out.j_vv = -2.0 * gamma * prev_ff * df_dv * df_dv;
    out.j_dv = -2.0 * gamma * prev_kf * dk_dd * df_dv;
    return out;
}

CrlbEstimate crlb(const FimMatrix& fim, double sigma_phi_fixed)
{
    const double det = fim.determinant();
    if (!(fim.j_dd > 0.0) || !(fim.j_vv > 0.0) || !(det > 1e-14 * fim.j_dd * fim.j_vv))
        fail(ErrorCode::singular_fim, "FIM is not invertible");
    const double crb_d = 1.0 / (fim.j_dd - fim.j_dv * fim.j_dv / fim.j_vv);
    const double crb_v = 1.0 / (fim.j_vv - fim.j_dv * fim.j_dv / fim.j_dd);
    CrlbEstimate out;
    out.sigma_d = std::sqrt(crb_d);
    out.sigma_vr = std::sqrt(crb_v);
    out.sigma_phi = sigma_phi_fixed;
    out.gamma = fim.gamma;
    return out;
}

FimMatrix scale_fim(const FimMatrix& fim, double gamma)
{
    require(fim.gamma > 0.0 && gamma > 0.0, ErrorCode::invalid_parameter, "gamma must be positive");
    const double r = gamma / fim.gamma;
    return FimMatrix{fim.j_dd * r, fim.j_vv * r, fim.j_dv * r, gamma};
}

}
