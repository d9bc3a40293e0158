#include <cmath>

#include "sensguard/simd/kernels.hpp"

namespace sensguard::simd {

namespace {

double energy(const cfloat* x, std::size_t n)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double re = x[i].real();
        const double im = x[i].imag();
        acc += re * re + im * im;
    }
    return acc;
}

FimSums fim_sums(const cfloat* s, std::size_t n)
{
    FimSums out;
    double cross_re = 0.0;
    double cross_im = 0.0;
    double prev_re = 0.0;
    double prev_im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = static_cast<double>(i + 1);
        const double sr = s[i].real();
        const double si = s[i].imag();
        const double dr = sr - prev_re;
        const double di = si - prev_im;
        out.diff += dr * dr + di * di;
        out.n2 += w * w * (sr * sr + si * si);
        cross_re += w * (dr * sr + di * si);
        cross_im += w * (di * sr - dr * si);
        prev_re = sr;
        prev_im = si;
    }
    out.cross = cdouble(cross_re, cross_im);
    return out;
}

cdouble correlate_phased(const cfloat* a, const cfloat* b, std::size_t n, double phase0, double dphase)
{
    double acc_re = 0.0;
    double acc_im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real();
        const double ai = a[i].imag();
        const double br = b[i].real();
        const double bi = b[i].imag();
        const double pr = ar * br + ai * bi;
        const double pi = ai * br - ar * bi;
        const double theta = phase0 + static_cast<double>(i) * dphase;
        const double c = std::cos(theta);
        const double sn = std::sin(theta);
        acc_re += pr * c - pi * sn;
        acc_im += pr * sn + pi * c;
    }
    return {acc_re, acc_im};
}

void magnitude(const cfloat* x, float* out, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) {
        const float re = x[i].real();
        const float im = x[i].imag();
        out[i] = std::sqrt(re * re + im * im);
    }
}

void conj_multiply(const cfloat* a, const cfloat* b, cfloat* out, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) {
        const float ar = a[i].real();
        const float ai = a[i].imag();
        const float br = b[i].real();
        const float bi = b[i].imag();
        out[i] = cfloat(ar * br + ai * bi, ar * bi - ai * br);
    }
}

void accumulate(cfloat* acc, const cfloat* x, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i)
        acc[i] = cfloat(acc[i].real() + x[i].real(), acc[i].imag() + x[i].imag());
}

void add_scaled(cfloat* y, const cfloat* x, std::size_t n, float a)
{
    for (std::size_t i = 0; i < n; ++i)
        y[i] = cfloat(y[i].real() + a * x[i].real(), y[i].imag() + a * x[i].imag());
}

void add_ramp_product(cfloat* y, const cfloat* x, std::size_t n, cfloat g0, cfloat dg)
{
    for (std::size_t i = 0; i < n; ++i) {
        const float k = static_cast<float>(i);
        const float gr = g0.real() + k * dg.real();
        const float gi = g0.imag() + k * dg.imag();
        const float xr = x[i].real();
        const float xi = x[i].imag();
        y[i] = cfloat(y[i].real() + (gr * xr - gi * xi), y[i].imag() + (gr * xi + gi * xr));
    }
}

void scale(cfloat* x, std::size_t n, float a)
{
    for (std::size_t i = 0; i < n; ++i)
        x[i] = cfloat(a * x[i].real(), a * x[i].imag());
}

}

const KernelTable& scalar_kernels()
{
    static const KernelTable table{
        "scalar", energy, fim_sums, correlate_phased, magnitude, conj_multiply,
        accumulate, add_scaled, add_ramp_product, scale,
    };
    return table;
}

}
