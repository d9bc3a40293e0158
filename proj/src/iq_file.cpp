#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "sensguard/error.hpp"
#include "sensguard/signal.hpp"

namespace sensguard {

// Layout: "SGIQ" | u32 version | f64 sample_rate | u64 length | length x (f32 I, f32 Q),
// all little-endian.

namespace {

constexpr char magic[4] = {'S', 'G', 'I', 'Q'};
constexpr std::uint32_t version = 1;

template <typename T>
void put_le(std::ostream& os, T value)
{
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(bytes, bytes + sizeof(T));
    os.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get_le(std::istream& is)
{
    unsigned char bytes[sizeof(T)];
    is.read(reinterpret_cast<char*>(bytes), sizeof(T));
    if (!is)
        fail(ErrorCode::io, "truncated I/Q file");
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(bytes, bytes + sizeof(T));
    T value;
    std::memcpy(&value, bytes, sizeof(T));
    return value;
}

}

void write_iq(const std::string& path, const ComplexSignal& signal)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        fail(ErrorCode::io, "cannot open " + path + " for writing");
    os.write(magic, 4);
    put_le<std::uint32_t>(os, version);
    put_le<double>(os, signal.sample_rate);
    put_le<std::uint64_t>(os, signal.size());
    for (const auto& s : signal.samples) {
        put_le<float>(os, s.real());
        put_le<float>(os, s.imag());
    }
    if (!os)
        fail(ErrorCode::io, "write failed for " + path);
}

ComplexSignal read_iq(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        fail(ErrorCode::io, "cannot open " + path);
    char head[4];
    is.read(head, 4);
    if (!is || std::memcmp(head, magic, 4) != 0)
        fail(ErrorCode::io, path + " is not an I/Q file");
    if (get_le<std::uint32_t>(is) != version)
        fail(ErrorCode::io, "unsupported I/Q file version");
    ComplexSignal out;
    out.sample_rate = get_le<double>(is);
    const auto n = get_le<std::uint64_t>(is);
    if (!(out.sample_rate > 0.0))
        fail(ErrorCode::io, "invalid sample rate in " + path);
    out.samples.resize(n);
    for (auto& s : out.samples) {
        const float re = get_le<float>(is);
        const float im = get_le<float>(is);
        s = cfloat(re, im);
    }
    return out;
}

}
