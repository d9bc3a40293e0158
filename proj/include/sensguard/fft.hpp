#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace sensguard {

// Unnormalized in-place DFT. Plans are created once per (size, direction)
// with FFTW_ESTIMATE so results do not depend on timing measurements.
void fft_inplace(std::vector<std::complex<float>>& data, bool inverse);
void fft_inplace(std::complex<float>* data, std::size_t n, bool inverse);

// Smallest size >= n of the form 2^a 3^b 5^c 7^d with c <= 3 and d <= 1.
std::size_t fft_good_size(std::size_t n);

}
