#include "sensguard/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace sensguard {

namespace {

struct PlanCache {
    std::mutex mutex;
    std::map<std::pair<std::size_t, bool>, fftwf_plan> plans;

    ~PlanCache()
    {
        for (auto& [key, plan] : plans)
            fftwf_destroy_plan(plan);
    }

    fftwf_plan get(std::size_t n, bool inverse)
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto key = std::make_pair(n, inverse);
        auto it = plans.find(key);
        if (it != plans.end())
            return it->second;
        fftwf_complex* scratch = fftwf_alloc_complex(n);
        fftwf_plan plan = fftwf_plan_dft_1d(static_cast<int>(n), scratch, scratch,
                                            inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                                            FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftwf_free(scratch);
        plans.emplace(key, plan);
        return plan;
    }
};

PlanCache& cache()
{
    static PlanCache instance;
    return instance;
}

}

void fft_inplace(std::complex<float>* data, std::size_t n, bool inverse)
{
    if (n == 0)
        return;
    fftwf_plan plan = cache().get(n, inverse);
    auto* p = reinterpret_cast<fftwf_complex*>(data);
    fftwf_execute_dft(plan, p, p);
}

void fft_inplace(std::vector<std::complex<float>>& data, bool inverse)
{
    fft_inplace(data.data(), data.size(), inverse);
}

std::size_t fft_good_size(std::size_t n)
{
    if (n <= 1)
        return 1;
    // FFTW estimate-mode plans are slow for high powers of 5 and 7
    for (std::size_t m = n;; ++m) {
        std::size_t r = m;
        int fives = 0;
        int sevens = 0;
        while (r % 2 == 0)
            r /= 2;
        while (r % 3 == 0)
            r /= 3;
        for (; r % 5 == 0; ++fives)
            r /= 5;
        for (; r % 7 == 0; ++sevens)
            r /= 7;
        if (r == 1 && fives <= 3 && sevens <= 1)
            return m;
    }
}

}
