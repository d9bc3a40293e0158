#pragma once

#include <cmath>
#include <complex>
#include <limits>

#include "sensguard/rng.hpp"
#include "sensguard/signal.hpp"

namespace sensguard {

enum class ChannelCondition { los, nlos };

enum class FadingType { awgn, rayleigh, rician };

struct FadingKind {
    FadingType type = FadingType::awgn;
    double k_factor = 0.0; // linear, Rician only

    static FadingKind awgn() { return {FadingType::awgn, 0.0}; }
    static FadingKind rayleigh() { return {FadingType::rayleigh, 0.0}; }
    static FadingKind rician(double k) { return {FadingType::rician, k}; }
};

struct FadingProfile {
    int rayleigh_taps = 4;
    double tap_decay_db = 3.0;
    int tap_spacing = 2;      // samples
    double doppler_hz = 0.0;  // scattered-path Doppler spread; 0 holds the gains constant
    double los_doppler_hz = 0.0;
    int sinusoids = 16;
    std::size_t knot_spacing = 1024; // samples between exact gain evaluations
};

inline constexpr double shadowing_sigma_los_db = 2.0;   // sqrt(4)
inline const double shadowing_sigma_nlos_db = std::sqrt(7.82);
inline constexpr double no_interference_dbm = -std::numeric_limits<double>::infinity();

// d in meters, f_c in GHz.
double pathloss_los_mean(double d, double fc_ghz);
double pathloss_nlos_mean(double d, double fc_ghz, double h);
double pathloss_los(double d, double fc_ghz, Rng& rng);
double pathloss_nlos(double d, double fc_ghz, double h, Rng& rng);
double pathloss_mean(ChannelCondition c, double d, double fc_ghz, double h);
double shadowing_sigma_db(ChannelCondition c);

// Average NLOS minus LOS loss at 25 m and 50 m without shadowing.
double beta_r_recipe_db(double fc_ghz, double h);

std::complex<double> draw_gain(const FadingKind& kind, Rng& rng);

ComplexSignal apply_fading(const ComplexSignal& signal, const FadingKind& kind, Rng& rng,
                           const FadingProfile& profile = {});

// Linear power sum of two dBm levels.
double power_sum_dbm(double a_dbm, double b_dbm);

struct LinkState {
    double d = 0.0;
    double pathloss_db = 0.0;
    double reflected_pathloss_db = 0.0;
    double shadowing_db = 0.0;
    std::complex<double> fading_gain{1.0, 0.0};
    ChannelCondition condition = ChannelCondition::los;
    double rx_power_target_dbm = 0.0;
    double rx_power_initiator_dbm = 0.0;
    double sinr_at_target = 0.0;    // dB
    double sinr_at_initiator = 0.0; // dB
    double sinr_initiator_estimate = 0.0; // target-side estimate: sinr_at_target + beta_r
};

struct LinkOptions {
    double height = 1.5;
    bool shadowing = true;
    bool initiator_fading = false;
    FadingKind los_fading = FadingKind::rician(2.0);
    FadingKind nlos_fading = FadingKind::rayleigh();
};

// f_c in Hz. The reflected path uses L(2d) with the same shadowing draw.
LinkState link_budget(double tx_power_dbm, double d, ChannelCondition condition, double fc_hz,
                      double noise_floor_dbm, double interference_dbm, double beta_r_db, Rng& rng,
                      const LinkOptions& options = {});

const char* to_string(ChannelCondition c);
const char* to_string(FadingType t);

}
