#include <immintrin.h>

#include <cmath>

#include "sensguard/simd/kernels.hpp"

namespace sensguard::simd {

namespace {

inline double hsum(__m256d v)
{
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// (re0, im0, re1, im1) products; b is not conjugated.
inline __m256d cmul_pd(__m256d a, __m256d b)
{
    const __m256d t1 = _mm256_mul_pd(a, _mm256_movedup_pd(b));
    const __m256d t2 = _mm256_mul_pd(_mm256_permute_pd(a, 0x5), _mm256_permute_pd(b, 0xF));
    return _mm256_addsub_pd(t1, t2);
}

inline void load4(const cfloat* p, __m256d& lo, __m256d& hi)
{
    const __m256 v = _mm256_loadu_ps(reinterpret_cast<const float*>(p));
    lo = _mm256_cvtps_pd(_mm256_castps256_ps128(v));
    hi = _mm256_cvtps_pd(_mm256_extractf128_ps(v, 1));
}

double energy(const cfloat* x, std::size_t n)
{
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d lo, hi;
        load4(x + i, lo, hi);
        acc0 = _mm256_fmadd_pd(lo, lo, acc0);
        acc1 = _mm256_fmadd_pd(hi, hi, acc1);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) {
        const double re = x[i].real();
        const double im = x[i].imag();
        acc += re * re + im * im;
    }
    return acc;
}

FimSums fim_sums(const cfloat* s, std::size_t n)
{
    FimSums out;
    if (n == 0)
        return out;
    double diff = 0.0, n2 = 0.0, cre = 0.0, cim = 0.0;

    // Element 0 has s[-1] = 0.
    {
        const double sr = s[0].real(), si = s[0].imag();
        diff += sr * sr + si * si;
        n2 += sr * sr + si * si;
        cre += sr * sr + si * si;
    }

    __m256d vdiff = _mm256_setzero_pd();
    __m256d vn2 = _mm256_setzero_pd();
    __m256d vcre = _mm256_setzero_pd();
    __m256d vcim = _mm256_setzero_pd();
    std::size_t i = 1;
    __m256d wlo = _mm256_setr_pd(2.0, 2.0, 3.0, 3.0);
    __m256d whi = _mm256_setr_pd(4.0, 4.0, 5.0, 5.0);
    const __m256d four = _mm256_set1_pd(4.0);
    for (; i + 4 <= n; i += 4) {
        __m256d slo, shi, plo, phi;
        load4(s + i, slo, shi);
        load4(s + i - 1, plo, phi);
        const __m256d dlo = _mm256_sub_pd(slo, plo);
        const __m256d dhi = _mm256_sub_pd(shi, phi);
        vdiff = _mm256_fmadd_pd(dlo, dlo, vdiff);
        vdiff = _mm256_fmadd_pd(dhi, dhi, vdiff);
        vn2 = _mm256_fmadd_pd(_mm256_mul_pd(wlo, wlo), _mm256_mul_pd(slo, slo), vn2);
        vn2 = _mm256_fmadd_pd(_mm256_mul_pd(whi, whi), _mm256_mul_pd(shi, shi), vn2);
        vcre = _mm256_fmadd_pd(wlo, _mm256_mul_pd(dlo, slo), vcre);
        vcre = _mm256_fmadd_pd(whi, _mm256_mul_pd(dhi, shi), vcre);
        // lanes (dr*si, di*sr); imaginary part is odd minus even
        vcim = _mm256_fmadd_pd(wlo, _mm256_mul_pd(dlo, _mm256_permute_pd(slo, 0x5)), vcim);
        vcim = _mm256_fmadd_pd(whi, _mm256_mul_pd(dhi, _mm256_permute_pd(shi, 0x5)), vcim);
        wlo = _mm256_add_pd(wlo, four);
        whi = _mm256_add_pd(whi, four);
    }
    diff += hsum(vdiff);
    n2 += hsum(vn2);
    cre += hsum(vcre);
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, vcim);
    cim += (lanes[1] + lanes[3]) - (lanes[0] + lanes[2]);

    for (; i < n; ++i) {
        const double w = static_cast<double>(i + 1);
        const double sr = s[i].real(), si = s[i].imag();
        const double dr = sr - s[i - 1].real(), di = si - s[i - 1].imag();
        diff += dr * dr + di * di;
        n2 += w * w * (sr * sr + si * si);
        cre += w * (dr * sr + di * si);
        cim += w * (di * sr - dr * si);
    }
    out.diff = diff;
    out.n2 = n2;
    out.cross = cdouble(cre, cim);
    return out;
}

cdouble correlate_phased(const cfloat* a, const cfloat* b, std::size_t n, double phase0, double dphase)
{
    constexpr std::size_t block = 256;
    const __m256d conj_mask = _mm256_setr_pd(0.0, -0.0, 0.0, -0.0);
    const double step_c = std::cos(4.0 * dphase);
    const double step_s = std::sin(4.0 * dphase);
    const __m256d step = _mm256_setr_pd(step_c, step_s, step_c, step_s);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    while (i + 4 <= n) {
        const std::size_t end = std::min(n - (n - i) % 4, i + block);
        // exact phasors at the block start, then rotated in steps of four samples
        const double t0 = phase0 + static_cast<double>(i) * dphase;
        __m256d zlo = _mm256_setr_pd(std::cos(t0), std::sin(t0), std::cos(t0 + dphase), std::sin(t0 + dphase));
        __m256d zhi = _mm256_setr_pd(std::cos(t0 + 2 * dphase), std::sin(t0 + 2 * dphase),
                                     std::cos(t0 + 3 * dphase), std::sin(t0 + 3 * dphase));
        for (; i < end; i += 4) {
            __m256d alo, ahi, blo, bhi;
            load4(a + i, alo, ahi);
            load4(b + i, blo, bhi);
            const __m256d plo = cmul_pd(alo, _mm256_xor_pd(blo, conj_mask));
            const __m256d phi = cmul_pd(ahi, _mm256_xor_pd(bhi, conj_mask));
            acc = _mm256_add_pd(acc, cmul_pd(plo, zlo));
            acc = _mm256_add_pd(acc, cmul_pd(phi, zhi));
            zlo = cmul_pd(zlo, step);
            zhi = cmul_pd(zhi, step);
        }
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double re = lanes[0] + lanes[2];
    double im = lanes[1] + lanes[3];
    for (; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        const double pr = ar * br + ai * bi;
        const double pi = ai * br - ar * bi;
        const double theta = phase0 + static_cast<double>(i) * dphase;
        const double c = std::cos(theta), sn = std::sin(theta);
        re += pr * c - pi * sn;
        im += pr * sn + pi * c;
    }
    return {re, im};
}

void magnitude(const cfloat* x, float* out, std::size_t n)
{
    std::size_t i = 0;
    const float* f = reinterpret_cast<const float*>(x);
    for (; i + 8 <= n; i += 8) {
        const __m256 v0 = _mm256_loadu_ps(f + 2 * i);
        const __m256 v1 = _mm256_loadu_ps(f + 2 * i + 8);
        const __m256 h = _mm256_hadd_ps(_mm256_mul_ps(v0, v0), _mm256_mul_ps(v1, v1));
        const __m256 ordered = _mm256_castpd_ps(_mm256_permute4x64_pd(_mm256_castps_pd(h), 0xD8));
        _mm256_storeu_ps(out + i, _mm256_sqrt_ps(ordered));
    }
    for (; i < n; ++i) {
        const float re = x[i].real();
        const float im = x[i].imag();
        out[i] = std::sqrt(re * re + im * im);
    }
}

void conj_multiply(const cfloat* a, const cfloat* b, cfloat* out, std::size_t n)
{
    std::size_t i = 0;
    const float* fa = reinterpret_cast<const float*>(a);
    const float* fb = reinterpret_cast<const float*>(b);
    float* fo = reinterpret_cast<float*>(out);
    for (; i + 4 <= n; i += 4) {
        const __m256 va = _mm256_loadu_ps(fa + 2 * i);
        const __m256 vb = _mm256_loadu_ps(fb + 2 * i);
        const __m256 t2 = _mm256_mul_ps(_mm256_movehdup_ps(va), _mm256_permute_ps(vb, 0xB1));
        _mm256_storeu_ps(fo + 2 * i, _mm256_fmsubadd_ps(_mm256_moveldup_ps(va), vb, t2));
    }
    for (; i < n; ++i) {
        const float ar = a[i].real(), ai = a[i].imag();
        const float br = b[i].real(), bi = b[i].imag();
        out[i] = cfloat(ar * br + ai * bi, ar * bi - ai * br);
    }
}

void accumulate(cfloat* acc, const cfloat* x, std::size_t n)
{
    float* fa = reinterpret_cast<float*>(acc);
    const float* fx = reinterpret_cast<const float*>(x);
    const std::size_t m = 2 * n;
    std::size_t i = 0;
    for (; i + 8 <= m; i += 8)
        _mm256_storeu_ps(fa + i, _mm256_add_ps(_mm256_loadu_ps(fa + i), _mm256_loadu_ps(fx + i)));
    for (; i < m; ++i)
        fa[i] += fx[i];
}

void add_scaled(cfloat* y, const cfloat* x, std::size_t n, float a)
{
    float* fy = reinterpret_cast<float*>(y);
    const float* fx = reinterpret_cast<const float*>(x);
    const __m256 va = _mm256_set1_ps(a);
    const std::size_t m = 2 * n;
    std::size_t i = 0;
    for (; i + 8 <= m; i += 8)
        _mm256_storeu_ps(fy + i, _mm256_fmadd_ps(va, _mm256_loadu_ps(fx + i), _mm256_loadu_ps(fy + i)));
    for (; i < m; ++i)
        fy[i] += a * fx[i];
}

void add_ramp_product(cfloat* y, const cfloat* x, std::size_t n, cfloat g0, cfloat dg)
{
    float* fy = reinterpret_cast<float*>(y);
    const float* fx = reinterpret_cast<const float*>(x);
    const __m256 g0v = _mm256_setr_ps(g0.real(), g0.imag(), g0.real(), g0.imag(),
                                      g0.real(), g0.imag(), g0.real(), g0.imag());
    const __m256 dgv = _mm256_setr_ps(dg.real(), dg.imag(), dg.real(), dg.imag(),
                                      dg.real(), dg.imag(), dg.real(), dg.imag());
    __m256 k = _mm256_setr_ps(0.f, 0.f, 1.f, 1.f, 2.f, 2.f, 3.f, 3.f);
    const __m256 four = _mm256_set1_ps(4.f);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256 g = _mm256_fmadd_ps(k, dgv, g0v);
        const __m256 vx = _mm256_loadu_ps(fx + 2 * i);
        const __m256 t2 = _mm256_mul_ps(_mm256_movehdup_ps(g), _mm256_permute_ps(vx, 0xB1));
        const __m256 prod = _mm256_fmaddsub_ps(_mm256_moveldup_ps(g), vx, t2);
        _mm256_storeu_ps(fy + 2 * i, _mm256_add_ps(_mm256_loadu_ps(fy + 2 * i), prod));
        k = _mm256_add_ps(k, four);
    }
    for (; i < n; ++i) {
        const float kk = static_cast<float>(i);
        const float gr = g0.real() + kk * dg.real();
        const float gi = g0.imag() + kk * dg.imag();
        const float xr = x[i].real(), xi = x[i].imag();
        y[i] = cfloat(y[i].real() + (gr * xr - gi * xi), y[i].imag() + (gr * xi + gi * xr));
    }
}

void scale(cfloat* x, std::size_t n, float a)
{
    float* f = reinterpret_cast<float*>(x);
    const __m256 va = _mm256_set1_ps(a);
    const std::size_t m = 2 * n;
    std::size_t i = 0;
    for (; i + 8 <= m; i += 8)
        _mm256_storeu_ps(f + i, _mm256_mul_ps(va, _mm256_loadu_ps(f + i)));
    for (; i < m; ++i)
        f[i] *= a;
}

}

const KernelTable* avx2_kernels()
{
    static const KernelTable table{
        "avx2", energy, fim_sums, correlate_phased, magnitude, conj_multiply,
        accumulate, add_scaled, add_ramp_product, scale,
    };
    return &table;
}

}
