#include "doctest.h"

#include <cmath>

#include "sensguard/channel.hpp"
#include "sensguard/error.hpp"

using namespace sensguard;

TEST_CASE("path loss examples")
{
    CHECK(pathloss_los_mean(25.0, 5.8) == doctest::Approx(77.03).epsilon(1e-4));
    CHECK(pathloss_los_mean(1.0, 1.0) == doctest::Approx(32.4));
    CHECK(pathloss_nlos_mean(25.0, 5.8, 1.5) == doctest::Approx(88.01).epsilon(1e-4));
    CHECK(pathloss_nlos_mean(25.0, 5.8, 1.5) ==
          doctest::Approx(35.3 * std::log10(25.0) + 22.4 + 21.3 * std::log10(5.8)));
    CHECK(pathloss_nlos_mean(25.0, 5.8, 2.5) == doctest::Approx(pathloss_nlos_mean(25.0, 5.8, 1.5) - 0.3));
    CHECK_THROWS_AS(pathloss_los_mean(0.5, 5.8), Error);
    CHECK_THROWS_AS(pathloss_nlos_mean(10.0, 0.0, 1.5), Error);
}

TEST_CASE("path loss increases with distance")
{
    double prev_los = -INFINITY;
    double prev_nlos = -INFINITY;
    for (double d = 1.0; d < 500.0; d *= 1.3) {
        CHECK(pathloss_los_mean(d, 5.8) > prev_los);
        CHECK(pathloss_nlos_mean(d, 5.8, 1.5) > prev_nlos);
        prev_los = pathloss_los_mean(d, 5.8);
        prev_nlos = pathloss_nlos_mean(d, 5.8, 1.5);
    }
}

TEST_CASE("shadowing has the tabulated spread")
{
    Rng rng = make_rng(4);
    double s1 = 0.0;
    double s2 = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double x = pathloss_nlos(25.0, 5.8, 1.5, rng) - pathloss_nlos_mean(25.0, 5.8, 1.5);
        s1 += x;
        s2 += x * x;
    }
    CHECK(std::abs(s1 / n) < 0.03);
    CHECK(std::sqrt(s2 / n) == doctest::Approx(std::sqrt(7.82)).epsilon(0.02));
}

TEST_CASE("beta_r recipe is reported against the tabulated value")
{
    const double recipe = beta_r_recipe_db(5.8, 1.5);
    const double direct = ((pathloss_nlos_mean(25, 5.8, 1.5) - pathloss_los_mean(25, 5.8)) +
                           (pathloss_nlos_mean(50, 5.8, 1.5) - pathloss_los_mean(50, 5.8))) /
                          2.0;
    CHECK(recipe == doctest::Approx(direct));
    MESSAGE("beta_r from the 25/50 m recipe: " << recipe << " dB (configured default -6 dB)");
}

TEST_CASE("fading gains preserve mean power")
{
    for (const FadingKind kind : {FadingKind::awgn(), FadingKind::rayleigh(), FadingKind::rician(2.0)}) {
        Rng rng = make_rng(21);
        double p = 0.0;
        const int n = 100000;
        for (int i = 0; i < n; ++i)
            p += std::norm(draw_gain(kind, rng));
        CHECK(p / n == doctest::Approx(1.0).epsilon(0.01));
    }
}

TEST_CASE("large Rician K concentrates the gain magnitude")
{
    Rng rng = make_rng(8);
    double s1 = 0.0;
    double s2 = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double a = std::abs(draw_gain(FadingKind::rician(100.0), rng));
        s1 += a;
        s2 += a * a;
    }
    const double mean = s1 / n;
    CHECK(std::sqrt(s2 / n - mean * mean) < 0.1);
}

TEST_CASE("apply_fading: AWGN is identity, faded signals keep unit mean power")
{
    Rng rng = make_rng(6);
    ComplexSignal x = gen_awgn(4096, 1.0, rng);
    x.sample_rate = 1e6;
    CHECK(apply_fading(x, FadingKind::awgn(), rng).samples == x.samples);

    ComplexSignal ones;
    ones.sample_rate = 1e6;
    ones.samples.assign(2048, cfloat(1.0f, 0.0f));
    for (const FadingKind kind : {FadingKind::rayleigh(), FadingKind::rician(2.0)})
        for (double doppler : {0.0, 400.0}) {
            FadingProfile profile;
            profile.doppler_hz = doppler;
            profile.knot_spacing = 32;
            double p = 0.0;
            const int trials = 3000;
            for (int i = 0; i < trials; ++i)
                p += power(apply_fading(ones, kind, rng, profile));
            CHECK(p / trials == doctest::Approx(1.0).epsilon(0.05));
        }
    CHECK_THROWS_AS(apply_fading(ComplexSignal{}, FadingKind::rayleigh(), rng), Error);
}

TEST_CASE("Rayleigh multipath spreads a single impulse over the tap profile")
{
    Rng rng = make_rng(13);
    ComplexSignal impulse;
    impulse.sample_rate = 1e6;
    impulse.samples.assign(64, cfloat(0.0f, 0.0f));
    impulse.samples[0] = cfloat(1.0f, 0.0f);
    FadingProfile profile;
    const ComplexSignal y = apply_fading(impulse, FadingKind::rayleigh(), rng, profile);
    for (std::size_t i = 0; i < y.size(); ++i) {
        const bool tap = i % static_cast<std::size_t>(profile.tap_spacing) == 0 &&
                         i / static_cast<std::size_t>(profile.tap_spacing) < static_cast<std::size_t>(profile.rayleigh_taps);
        if (!tap)
            CHECK(y.samples[i] == cfloat(0.0f, 0.0f));
    }
}

TEST_CASE("link budget examples")
{
    Rng rng = make_rng(1);
    LinkOptions opts;
    opts.shadowing = false;
    const LinkState s = link_budget(15.0, 25.0, ChannelCondition::los, 5.8e9, -92.0, no_interference_dbm, -6.0, rng, opts);
    CHECK(s.sinr_at_target == doctest::Approx(29.97).epsilon(1e-3));
    CHECK(s.sinr_at_target == doctest::Approx(15.0 - pathloss_los_mean(25.0, 5.8) + 92.0));
    CHECK(s.sinr_at_initiator == doctest::Approx(15.0 - pathloss_los_mean(50.0, 5.8) + 92.0));
    CHECK(s.sinr_initiator_estimate == doctest::Approx(s.sinr_at_target - 6.0));

    const LinkState n = link_budget(15.0, 25.0, ChannelCondition::nlos, 5.8e9, -92.0, no_interference_dbm, -6.0, rng, opts);
    CHECK(n.sinr_at_target == doctest::Approx(15.0 - pathloss_nlos_mean(25.0, 5.8, 1.5) + 92.0));

    const LinkState i = link_budget(15.0, 25.0, ChannelCondition::los, 5.8e9, -92.0, -92.0, -6.0, rng, opts);
    CHECK(i.sinr_at_target == doctest::Approx(s.sinr_at_target - 10.0 * std::log10(2.0)));
}

TEST_CASE("power_sum_dbm")
{
    CHECK(power_sum_dbm(-92.0, -92.0) == doctest::Approx(-92.0 + 10.0 * std::log10(2.0)));
    CHECK(power_sum_dbm(-92.0, no_interference_dbm) == -92.0);
    CHECK(power_sum_dbm(no_interference_dbm, -50.0) == -50.0);
}
