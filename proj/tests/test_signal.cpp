#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>

#include "sensguard/error.hpp"
#include "sensguard/fft.hpp"
#include "sensguard/signal.hpp"

using namespace sensguard;

namespace {

PulseSpec table1()
{
    return PulseSpec{100e6, 5.8e9, 1e-4, 4e-4};
}

std::size_t count_pulse_starts(const ComplexSignal& x)
{
    std::size_t starts = 0;
    bool prev = false;
    for (const auto& s : x.samples) {
        const bool on = std::norm(s) > 0.5f;
        if (on && !prev)
            ++starts;
        prev = on;
    }
    return starts;
}

}

TEST_CASE("lfm pulse has the Table I length and unit modulus")
{
    const ComplexSignal s = gen_lfm(table1(), 200e6);
    CHECK(s.size() == 20000);
    CHECK(s.sample_rate == 200e6);
    for (const auto& v : s.samples)
        REQUIRE(std::abs(std::abs(v) - 1.0f) < 1e-5f);
}

TEST_CASE("lfm length is round(Tp * fs) across specs")
{
    for (double b : {10e6, 50e6, 150e6})
        for (double tp : {2e-5, 5.3e-5, 1e-4}) {
            const PulseSpec spec{b, 5.8e9, tp, 4e-4};
            const double fs = 2.5 * b;
            CHECK(gen_lfm(spec, fs).size() == static_cast<std::size_t>(std::llround(tp * fs)));
        }
}

TEST_CASE("lfm phase increments are affine with the chirp slope")
{
    const PulseSpec spec{10e6, 5.8e9, 2e-5, 4e-4};
    const double fs = 20e6;
    const ComplexSignal s = gen_lfm(spec, fs);
    const auto n = static_cast<double>(s.size());
    const double slope = 2.0 * std::numbers::pi * spec.bandwidth / (n * fs);
    std::vector<double> dphi;
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
        dphi.push_back(std::arg(std::complex<double>(s.samples[i + 1]) * std::conj(std::complex<double>(s.samples[i]))));
    for (std::size_t i = 0; i + 1 < dphi.size(); ++i)
        REQUIRE(std::abs((dphi[i + 1] - dphi[i]) - slope) < 1e-3 * slope + 5e-5);
    // sweep runs from -B/2 to +B/2
    CHECK(dphi.front() * fs / (2.0 * std::numbers::pi) == doctest::Approx(-spec.bandwidth / 2.0).epsilon(0.01));
    CHECK(dphi.back() * fs / (2.0 * std::numbers::pi) == doctest::Approx(spec.bandwidth / 2.0).epsilon(0.01));
}

TEST_CASE("lfm rejects invalid specs")
{
    CHECK_THROWS_AS(gen_lfm(table1(), 150e6), Error);
    CHECK_THROWS_AS(gen_lfm(PulseSpec{100e6, 5.8e9, 5e-8, 4e-4}, 200e6), Error);
    CHECK_THROWS_AS(gen_lfm(PulseSpec{100e6, 5.8e9, 5e-4, 4e-4}, 200e6), Error);
    CHECK_THROWS_AS(gen_lfm(PulseSpec{-1.0, 5.8e9, 1e-4, 4e-4}, 200e6), Error);
    try {
        gen_lfm(table1(), 100e6);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::invalid_spec);
    }
}

TEST_CASE("pulse train pulse count and placement")
{
    const PulseSpec spec{10e6, 5.8e9, 1e-4, 4e-4};
    const double fs = 20e6;
    const ComplexSignal train = gen_pulse_train(spec, fs, 0.05);
    CHECK(train.size() == 1000000);
    CHECK(count_pulse_starts(train) == 125);
    CHECK(count_pulse_starts(gen_pulse_train(spec, fs, spec.prt)) == 1);

    const ComplexSignal pulse = gen_lfm(spec, fs);
    for (std::size_t k : {0u, 1u, 17u, 124u}) {
        const std::size_t start = pulse_offset(spec, fs, k);
        for (std::size_t i = 0; i < pulse.size(); ++i)
            REQUIRE(train.samples[start + i] == pulse.samples[i]);
    }
    CHECK_THROWS_AS(gen_pulse_train(spec, fs, 1e-4), Error);
}

TEST_CASE("pulse train autocorrelation peaks at the PRT lag")
{
    const PulseSpec spec{2e6, 5.8e9, 2e-5, 1e-4};
    const double fs = 4e6;
    const ComplexSignal x = gen_pulse_train(spec, fs, 5e-4);
    const std::size_t period = 400;
    double best = -1.0;
    std::size_t best_lag = 0;
    for (std::size_t lag = 50; lag < 700; ++lag) {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t i = 0; i + lag < x.size(); ++i)
            acc += std::complex<double>(x.samples[i + lag]) * std::conj(std::complex<double>(x.samples[i]));
        if (std::abs(acc) > best) {
            best = std::abs(acc);
            best_lag = lag;
        }
    }
    CHECK(best_lag == period);
}

TEST_CASE("ofdm interference is unit power, deterministic, and weakly correlated with the pulse")
{
    Rng a = make_rng(11);
    Rng b = make_rng(11);
    const ComplexSignal x = gen_ofdm_interference(64, 250e3, 20e6, 0.01, a);
    const ComplexSignal y = gen_ofdm_interference(64, 250e3, 20e6, 0.01, b);
    CHECK(power(x) == doctest::Approx(1.0).epsilon(0.01));
    CHECK(x.samples == y.samples);
    CHECK_THROWS_AS(gen_ofdm_interference(1, 250e3, 20e6, 0.01, a), Error);

    // matched-filter peak of the pulse against itself versus against OFDM of equal power
    const PulseSpec spec{10e6, 5.8e9, 1e-4, 4e-4};
    const double fs = 20e6;
    const ComplexSignal pulse = gen_lfm(spec, fs);
    Rng c = make_rng(12);
    const ComplexSignal ofdm = gen_ofdm_interference(64, 250e3, fs, 0.05, c);
    const std::size_t m = fft_good_size(ofdm.size() + pulse.size());
    auto peak = [&](const ComplexSignal& rx) {
        std::vector<cfloat> p(m, cfloat(0.0f, 0.0f));
        std::vector<cfloat> r(m, cfloat(0.0f, 0.0f));
        std::copy(pulse.samples.begin(), pulse.samples.end(), p.begin());
        std::copy(rx.samples.begin(), rx.samples.end(), r.begin());
        fft_inplace(p, false);
        fft_inplace(r, false);
        for (std::size_t i = 0; i < m; ++i)
            r[i] *= std::conj(p[i]);
        fft_inplace(r, true);
        double best = 0.0;
        for (const auto& v : r)
            best = std::max(best, static_cast<double>(std::abs(v)));
        return best;
    };
    CHECK(peak(ofdm) < 0.3 * peak(pulse));
}

TEST_CASE("awgn power, circularity and zero power")
{
    Rng rng = make_rng(3);
    const ComplexSignal z = gen_awgn(1000, 0.0, rng);
    for (const auto& v : z.samples)
        REQUIRE(v == cfloat(0.0f, 0.0f));

    const ComplexSignal x = gen_awgn(1000000, 1.0, rng);
    double re2 = 0.0;
    double im2 = 0.0;
    double reim = 0.0;
    for (const auto& v : x.samples) {
        re2 += static_cast<double>(v.real()) * v.real();
        im2 += static_cast<double>(v.imag()) * v.imag();
        reim += static_cast<double>(v.real()) * v.imag();
    }
    const double n = static_cast<double>(x.size());
    CHECK((re2 + im2) / n >= 0.99);
    CHECK((re2 + im2) / n <= 1.01);
    CHECK(std::abs(reim / std::sqrt(re2 * im2)) < 0.01);
    CHECK_THROWS_AS(gen_awgn(10, -1.0, rng), Error);

    Rng r1 = make_rng(5);
    Rng r2 = make_rng(5);
    CHECK(gen_awgn(4096, 2.0, r1).samples == gen_awgn(4096, 2.0, r2).samples);
}

TEST_CASE("power and scale_to_power")
{
    const ComplexSignal s = gen_lfm(table1(), 200e6);
    CHECK(power(s) == doctest::Approx(1.0).epsilon(1e-6));
    const ComplexSignal four = scale_to_power(s, 4.0);
    CHECK(power(four) == doctest::Approx(4.0).epsilon(1e-6));

    ComplexSignal rotated = s;
    const cfloat w = std::polar(1.0f, 0.7f);
    for (auto& v : rotated.samples)
        v *= w;
    CHECK(power(rotated) == doctest::Approx(power(s)).epsilon(1e-6));

    ComplexSignal zero;
    zero.sample_rate = 1.0;
    zero.samples.assign(16, cfloat(0.0f, 0.0f));
    CHECK(power(zero) == 0.0);
    CHECK_THROWS_AS(scale_to_power(zero, 1.0), Error);
    CHECK(power(scale_to_power(zero, 0.0)) == 0.0);
    CHECK_THROWS_AS(power(ComplexSignal{}), Error);
}

TEST_CASE("add_into, slice and dB helpers")
{
    ComplexSignal a;
    a.sample_rate = 1.0;
    a.samples = {cfloat(1, 0), cfloat(0, 1), cfloat(2, 2)};
    ComplexSignal b = a;
    add_into(a, b, 2.0);
    CHECK(a.samples[2] == cfloat(6, 6));
    const ComplexSignal s = slice(a, 1, 2);
    CHECK(s.size() == 2);
    CHECK(s.samples[0] == cfloat(0, 3));
    CHECK_THROWS_AS(slice(a, 2, 2), Error);
    CHECK(linear_to_db(100.0) == doctest::Approx(20.0));
    CHECK(std::isinf(linear_to_db(0.0)));
    CHECK(db_to_linear(-10.0) == doctest::Approx(0.1));
}

TEST_CASE("iq file round trip")
{
    Rng rng = make_rng(9);
    ComplexSignal x = gen_awgn(1000, 1.0, rng);
    x.sample_rate = 12.5e6;
    const auto path = (std::filesystem::temp_directory_path() / "sensguard_roundtrip.iq").string();
    write_iq(path, x);
    const ComplexSignal y = read_iq(path);
    std::filesystem::remove(path);
    CHECK(y.sample_rate == x.sample_rate);
    CHECK(y.samples == x.samples);
    CHECK_THROWS_AS(read_iq(path), Error);
}

TEST_CASE("fft round trip and good sizes")
{
    for (std::size_t n : {1u, 7u, 120u, 1000u, 360000u}) {
        const std::size_t m = fft_good_size(n);
        CHECK(m >= n);
        std::size_t r = m;
        for (std::size_t p : {2u, 3u, 5u, 7u})
            while (r % p == 0)
                r /= p;
        CHECK(r == 1);
    }
    Rng rng = make_rng(2);
    const ComplexSignal x = gen_awgn(384, 1.0, rng);
    std::vector<cfloat> y = x.samples;
    fft_inplace(y, false);
    fft_inplace(y, true);
    for (std::size_t i = 0; i < y.size(); ++i)
        REQUIRE(std::abs(y[i] / 384.0f - x.samples[i]) < 1e-5f);
}
