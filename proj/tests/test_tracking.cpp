#include "doctest.h"

#include <cmath>
#include <vector>

#include "sensguard/error.hpp"
#include "sensguard/tracking.hpp"

using namespace sensguard;

namespace {

struct Moments {
    double mean = 0.0;
    double sd = 0.0;
    double skew = 0.0;
    double excess_kurtosis = 0.0;
};

Moments moments(const std::vector<double>& x)
{
    const double n = static_cast<double>(x.size());
    double m = 0.0;
    for (double v : x)
        m += v;
    m /= n;
    double m2 = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;
    for (double v : x) {
        const double d = v - m;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    return {m, std::sqrt(m2), m3 / std::pow(m2, 1.5), m4 / (m2 * m2) - 3.0};
}

}

TEST_CASE("detection probability examples")
{
    CHECK(detection_prob(0.0, 0.3) == 0.0);
    // erf(1) by its Maclaurin series
    double series = 0.0;
    double term = 1.0;
    for (int k = 0; k < 30; ++k) {
        series += term / (2.0 * k + 1.0);
        term *= -1.0 / (k + 1.0);
    }
    series *= 2.0 / std::sqrt(M_PI);
    CHECK(detection_prob(std::sqrt(2.0) * 0.4, 0.4) == doctest::Approx(series).epsilon(1e-12));
    CHECK(series == doctest::Approx(0.8427).epsilon(1e-4));
    CHECK(detection_prob(-1.0, 0.5) == detection_prob(1.0, 0.5));
    CHECK_THROWS_AS(detection_prob(1.0, 0.0), Error);
}

TEST_CASE("detection probability agrees with a Monte Carlo over the velocity density")
{
    Rng rng = make_rng(314);
    const double sigma = 0.25;
    for (double ratio : {0.5, 1.0, 2.0, 3.0}) {
        const double v = ratio * sigma;
        const int n = 1000000;
        int hits = 0;
        for (int i = 0; i < n; ++i) {
            const double measured = v + normal(rng, sigma);
            if (std::abs(measured - v) < v)
                ++hits;
        }
        CHECK(std::abs(static_cast<double>(hits) / n - detection_prob(v, sigma)) < 0.005);
    }
}

TEST_CASE("detection probability is monotone")
{
    double prev = -1.0;
    for (double v = 0.0; v < 5.0; v += 0.1) {
        CHECK(detection_prob(v, 0.5) >= prev);
        prev = detection_prob(v, 0.5);
    }
    CHECK(detection_prob(1.0, 0.2) > detection_prob(1.0, 0.4));
    CHECK(detection_prob(50.0, 0.1) == doctest::Approx(1.0));
}

TEST_CASE("valid-sample indicator")
{
    Rng rng = make_rng(17);
    for (int i = 0; i < 1000; ++i) {
        REQUIRE(sample_indicator(1.0, rng));
        REQUIRE_FALSE(sample_indicator(0.0, rng));
    }
    int hits = 0;
    for (int i = 0; i < 100000; ++i)
        hits += sample_indicator(0.3, rng) ? 1 : 0;
    CHECK(hits / 100000.0 >= 0.29);
    CHECK(hits / 100000.0 <= 0.31);
    CHECK_THROWS_AS(sample_indicator(1.5, rng), Error);
}

TEST_CASE("measurement draws")
{
    Rng rng = make_rng(23);
    const SensingGeometry truth{20.0, 0.3, 0.1, 0.8};
    const Measurement exact = draw_measurement(truth, CrlbEstimate{0.0, 0.0, 0.0, 1.0}, 1.0, 2.5, rng);
    CHECK(exact.valid);
    CHECK(exact.d == truth.d);
    CHECK(exact.v_r == truth.v_r);
    CHECK(exact.phi == truth.phi);
    CHECK(exact.t == 2.5);
    CHECK_FALSE(draw_measurement(truth, CrlbEstimate{0.1, 0.1, 0.02, 1.0}, 0.0, 0.0, rng).valid);

    double s2 = 0.0;
    const int n = 50000;
    for (int i = 0; i < n; ++i) {
        const double e = draw_measurement(truth, CrlbEstimate{0.1, 0.1, 0.02, 1.0}, 1.0, 0.0, rng).d - truth.d;
        s2 += e * e;
    }
    CHECK(std::sqrt(s2 / n) == doctest::Approx(0.1).epsilon(0.02));
}

TEST_CASE("position deviation examples")
{
    CHECK(position_deviation(20.0, 0.0, 0.0) == 0.0);
    CHECK(position_deviation(20.0, 0.37, 0.0) == doctest::Approx(0.37));
    CHECK(position_deviation(20.0, -0.37, 0.0) == doctest::Approx(-0.37));
    const double law = std::sqrt(20.1 * 20.1 + 20.0 * 20.0 - 2.0 * 20.0 * 20.1 * std::cos(0.02));
    CHECK(std::abs(position_deviation(20.0, 0.1, 0.02)) == doctest::Approx(law).epsilon(1e-9));
    CHECK(law == doctest::Approx(0.4135).epsilon(1e-3));
    CHECK_THROWS_AS(position_deviation(0.0, 0.1, 0.0), Error);
}

TEST_CASE("sigma_M Monte Carlo")
{
    Rng rng = make_rng(29);
    CHECK(sigma_m(20.0, 0.05, 0.0, 200000, rng) == doctest::Approx(0.05).epsilon(0.02));
    const double small = sigma_m_small_angle(20.0, 0.05, 0.02);
    CHECK(small == doctest::Approx(0.403).epsilon(1e-3));
    CHECK(sigma_m(20.0, 0.05, 0.02, 200000, rng) == doctest::Approx(small).epsilon(0.03));
    CHECK(sigma_m_simplified(20.0, 0.05, 0.02) == doctest::Approx(std::sqrt(0.05 * 0.05 + 20.0 * 0.0004)));
    CHECK_THROWS_AS(sigma_m(20.0, 0.05, 0.02, 10, rng), Error);
}

TEST_CASE("deviation draws are Gaussian")
{
    Rng rng = make_rng(2024);
    std::vector<double> x;
    x.reserve(1000000);
    while (x.size() < 1000000) {
        const double e_d = normal(rng, 0.05);
        const double e_phi = normal(rng, 0.02);
        x.push_back(position_deviation(20.0, e_d, e_phi));
    }
    const Moments m = moments(x);
    CHECK(std::abs(m.skew) < 0.05);
    CHECK(std::abs(m.excess_kurtosis) < 0.1);
    CHECK(m.sd == doctest::Approx(sigma_m_small_angle(20.0, 0.05, 0.02)).epsilon(0.03));
}

TEST_CASE("quantization error")
{
    const double base = quantization_sigma(0.05, 1.0, 1.4, QuantizationMode::position);
    CHECK(base == doctest::Approx(1.4 * 0.05 / std::sqrt(12.0)));
    CHECK(base == doctest::Approx(0.0202).epsilon(1e-3));
    CHECK(quantization_sigma(0.05, 0.5, 1.4, QuantizationMode::position) == doctest::Approx(2.0 * base));
    CHECK(quantization_sigma(0.05, 1.0, 1.4, QuantizationMode::literal) == doctest::Approx(0.05 / std::sqrt(12.0)));
    try {
        quantization_sigma(0.05, 0.0, 1.4, QuantizationMode::position);
        FAIL("p_k = 0 must be rejected");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::zero_probability);
    }
    double prev = INFINITY;
    for (double p = 0.05; p <= 1.0; p += 0.05) {
        const double q = quantization_sigma(0.05, p, 1.4, QuantizationMode::position);
        CHECK(q <= prev);
        prev = q;
    }
}

TEST_CASE("performance bound combination")
{
    CHECK(performance_bound(0.3, 0.4) == doctest::Approx(0.5));
    CHECK(performance_bound(0.3, 0.4, CombineMode::sum) == doctest::Approx(0.7));
    CHECK(performance_bound(0.3, 0.0) == 0.3);
    CHECK_THROWS_AS(performance_bound(-0.1, 0.0), Error);
}

TEST_CASE("sigma_p is monotone in sigma_D, sigma_phi and 1/p_k")
{
    auto sp = [](double sd, double sphi, double p) {
        return performance_bound(sigma_m_small_angle(20.0, sd, sphi),
                                 quantization_sigma(0.05, p, 1.4, QuantizationMode::position));
    };
    for (double x = 0.01; x < 1.0; x += 0.05) {
        CHECK(sp(x + 0.01, 0.02, 0.5) >= sp(x, 0.02, 0.5));
        CHECK(sp(0.1, x * 0.1 + 0.001, 0.5) >= sp(0.1, x * 0.1, 0.5));
        CHECK(sp(0.1, 0.02, x) >= sp(0.1, 0.02, x + 0.01));
    }
}
