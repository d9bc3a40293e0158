#include "doctest.h"

#include <cmath>
#include <numbers>

#include "sensguard/error.hpp"
#include "sensguard/estimator.hpp"
#include "sensguard/signal.hpp"

using namespace sensguard;

namespace {

ComplexSignal pulse(double bandwidth)
{
    const PulseSpec spec{bandwidth, 5.8e9, 1e-4, 4e-4};
    return gen_lfm(spec, spec.default_sample_rate());
}

void check_entry(double closed, double oracle)
{
    CHECK(std::abs(closed - oracle) <= 0.02 * std::abs(oracle));
}

}

TEST_CASE("closed-form FIM matches the finite-difference oracle")
{
    for (double b : {50e6, 100e6, 150e6}) {
        const ComplexSignal s = pulse(b);
        for (double g_db : {-10.0, 0.0, 10.0, 20.0}) {
            CAPTURE(b);
            CAPTURE(g_db);
            const double g = db_to_linear(g_db);
            const FimMatrix c = fim(s, 5.8e9, g);
            const FimMatrix o = fim_numeric_oracle(s, 5.8e9, g);
            check_entry(c.j_dd, o.j_dd);
            check_entry(c.j_vv, o.j_vv);
            REQUIRE(std::abs(o.j_dv) > 1e-3 * std::sqrt(o.j_dd * o.j_vv));
            check_entry(c.j_dv, o.j_dv);
        }
    }
}

TEST_CASE("delay information of the LFM matches the chirp phase-step average")
{
    // |s[n] - s[n-1]|^2 = 4 sin^2(dphi / 2) with dphi uniform on [-pi B / fs, pi B / fs];
    // at fs = 2B its mean is 2 - 4 / pi.
    const ComplexSignal s = pulse(100e6);
    const double fs = s.sample_rate;
    const double c = speed_of_light;
    const double expected = 2.0 * (4.0 * fs * fs / (c * c)) * (2.0 - 4.0 / std::numbers::pi);
    CHECK(fim(s, 5.8e9, 1.0).j_dd == doctest::Approx(expected).epsilon(0.01));
}

TEST_CASE("ambiguity magnitude peaks at the origin")
{
    const ComplexSignal s = gen_lfm(PulseSpec{10e6, 5.8e9, 2e-5, 4e-4}, 20e6);
    const double peak = ambiguity(s, 0, 0.0);
    CHECK(peak == doctest::Approx(static_cast<double>(s.size())).epsilon(1e-6));
    for (long k : {-50L, -3L, -1L, 1L, 7L, 200L})
        for (double f : {-1e3, 0.0, 250.0})
            CHECK(ambiguity(s, k, f) < peak);
    CHECK_THROWS_AS(ambiguity(s, static_cast<long>(s.size()), 0.0), Error);
}

TEST_CASE("CRB halves when the SNR doubles")
{
    for (double b : {50e6, 100e6, 150e6}) {
        const ComplexSignal s = pulse(b);
        for (double g : {0.1, 1.0, 37.0}) {
            const CrlbEstimate one = crlb(fim(s, 5.8e9, g));
            const CrlbEstimate two = crlb(fim(s, 5.8e9, 2.0 * g));
            CHECK(std::abs(two.crb_d() / one.crb_d() - 0.5) <= 0.5e-12);
            CHECK(std::abs(two.crb_vr() / one.crb_vr() - 0.5) <= 0.5e-12);
        }
    }
}

TEST_CASE("wider bandwidth gives a smaller range bound")
{
    for (double g : {0.1, 1.0, 100.0}) {
        const double d50 = crlb(fim(pulse(50e6), 5.8e9, g)).crb_d();
        const double d100 = crlb(fim(pulse(100e6), 5.8e9, g)).crb_d();
        const double d150 = crlb(fim(pulse(150e6), 5.8e9, g)).crb_d();
        CHECK(d150 < d100);
        CHECK(d100 < d50);
    }
}

TEST_CASE("CRB is strictly decreasing in SNR")
{
    const ComplexSignal s = pulse(100e6);
    double prev_d = INFINITY;
    double prev_v = INFINITY;
    for (double g_db = -20.0; g_db <= 30.0; g_db += 2.5) {
        const CrlbEstimate e = crlb(fim(s, 5.8e9, db_to_linear(g_db)));
        CHECK(e.crb_d() < prev_d);
        CHECK(e.crb_vr() < prev_v);
        prev_d = e.crb_d();
        prev_v = e.crb_vr();
    }
}

TEST_CASE("CRB is invariant to global phase and amplitude")
{
    const ComplexSignal s = pulse(50e6);
    ComplexSignal t = s;
    const cfloat w = std::polar(3.0f, 1.1f);
    for (auto& v : t.samples)
        v *= w;
    const CrlbEstimate a = crlb(fim(s, 5.8e9, 2.0));
    const CrlbEstimate b = crlb(fim(t, 5.8e9, 2.0));
    CHECK(b.sigma_d == doctest::Approx(a.sigma_d).epsilon(1e-5));
    CHECK(b.sigma_vr == doctest::Approx(a.sigma_vr).epsilon(1e-5));
}

TEST_CASE("diagonal FIM inverts entrywise")
{
    const FimMatrix f{4.0, 25.0, 0.0, 1.0};
    const CrlbEstimate e = crlb(f, 0.03);
    CHECK(e.crb_d() == doctest::Approx(0.25));
    CHECK(e.crb_vr() == doctest::Approx(0.04));
    CHECK(e.sigma_phi == 0.03);
}

TEST_CASE("singular and degenerate inputs are reported")
{
    CHECK_THROWS_AS(crlb(FimMatrix{1.0, 1.0, 1.0, 1.0}), Error);
    CHECK_THROWS_AS(crlb(FimMatrix{0.0, 1.0, 0.0, 1.0}), Error);

    ComplexSignal flat;
    flat.sample_rate = 1e6;
    flat.samples.assign(64, cfloat(1.0f, 0.0f));
    try {
        crlb(fim(flat, 5.8e9, 1.0));
        FAIL("constant signal should be degenerate");
    } catch (const Error& e) {
        CHECK((e.code() == ErrorCode::degenerate_waveform || e.code() == ErrorCode::singular_fim));
    }
    CHECK_THROWS_AS(fim(pulse(50e6), 5.8e9, 0.0), Error);
    CHECK_THROWS_AS(fim(pulse(50e6), -1.0, 1.0), Error);
}

TEST_CASE("a pure tone carries almost no delay curvature")
{
    const double fs = 100e6;
    ComplexSignal tone;
    tone.sample_rate = fs;
    for (int n = 0; n < 10000; ++n) {
        const double ph = 2.0 * std::numbers::pi * 1e5 * n / fs;
        tone.samples.emplace_back(static_cast<float>(std::cos(ph)), static_cast<float>(std::sin(ph)));
    }
    const double tone_dd = fim_numeric_oracle(tone, 5.8e9, 1.0).j_dd;
    const double lfm_dd = fim_numeric_oracle(gen_lfm(PulseSpec{50e6, 5.8e9, 1e-4, 4e-4}, fs), 5.8e9, 1.0).j_dd;
    CHECK(std::abs(tone_dd / lfm_dd) < 1e-2);
}

TEST_CASE("scale_fim rescales linearly")
{
    const FimMatrix f = fim(pulse(50e6), 5.8e9, 1.0);
    const FimMatrix g = scale_fim(f, 8.0);
    CHECK(g.j_dd == doctest::Approx(8.0 * f.j_dd));
    CHECK(g.j_vv == doctest::Approx(8.0 * f.j_vv));
    CHECK(g.j_dv == doctest::Approx(8.0 * f.j_dv));
    CHECK(g.gamma == 8.0);
    CHECK_THROWS_AS(scale_fim(f, 0.0), Error);
}
