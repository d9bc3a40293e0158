#pragma once

#include <complex>
#include <cstddef>

namespace sensguard::simd {

using cfloat = std::complex<float>;
using cdouble = std::complex<double>;

// Sums feeding the closed-form FIM, with 1-based index weights and s[-1] = 0.
struct FimSums {
    double diff = 0.0;       // sum |s[n] - s[n-1]|^2
    double n2 = 0.0;         // sum n^2 |s[n]|^2
    cdouble cross{0.0, 0.0}; // sum n (s[n] - s[n-1]) conj(s[n])
};

struct KernelTable {
    const char* name;
    double (*energy)(const cfloat* x, std::size_t n);
    FimSums (*fim_sums)(const cfloat* s, std::size_t n);
    // sum a[n] conj(b[n]) exp(j (phase0 + n dphase))
    cdouble (*correlate_phased)(const cfloat* a, const cfloat* b, std::size_t n, double phase0, double dphase);
    void (*magnitude)(const cfloat* x, float* out, std::size_t n);
    // out[n] = conj(a[n]) b[n]
    void (*conj_multiply)(const cfloat* a, const cfloat* b, cfloat* out, std::size_t n);
    void (*accumulate)(cfloat* acc, const cfloat* x, std::size_t n);
    // y[n] += a x[n]
    void (*add_scaled)(cfloat* y, const cfloat* x, std::size_t n, float a);
    // y[n] += (g0 + n dg) x[n]
    void (*add_ramp_product)(cfloat* y, const cfloat* x, std::size_t n, cfloat g0, cfloat dg);
    void (*scale)(cfloat* x, std::size_t n, float a);
};

const KernelTable& scalar_kernels();
const KernelTable* avx2_kernels();

// Chosen once per process: AVX2 when the CPU has it, unless the environment
// variable SENSGUARD_FORCE_SCALAR is set to a non-empty value other than "0".
const KernelTable& kernels();

}
