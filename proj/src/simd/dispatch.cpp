#include <cstdlib>
#include <cstring>

#include "sensguard/simd/kernels.hpp"

namespace sensguard::simd {

namespace {

bool force_scalar()
{
    const char* v = std::getenv("SENSGUARD_FORCE_SCALAR");
    return v != nullptr && v[0] != '\0' && std::strcmp(v, "0") != 0;
}

const KernelTable& select()
{
#if defined(__x86_64__) || defined(__i386__)
    if (!force_scalar() && __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return *avx2_kernels();
#endif
    return scalar_kernels();
}

}

const KernelTable& kernels()
{
    static const KernelTable& table = select();
    return table;
}

}
