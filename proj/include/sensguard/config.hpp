#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sensguard/channel.hpp"
#include "sensguard/defense.hpp"
#include "sensguard/geometry.hpp"
#include "sensguard/signal.hpp"
#include "sensguard/tracking.hpp"

namespace sensguard {

enum class SigmaMForm { law_of_cosines, simplified };
enum class SigmaMMethod { closed_form, monte_carlo };

struct MobilityConfig {
    double speed = 1.4;
    double heading_sigma = 0.17;
    Bounds bounds{0.0, 0.0, 100.0, 20.0};
    std::optional<Vec2> start;
    std::optional<double> initial_heading;
    Vec2 initiator{0.0, 10.0};
    double speed_jitter = 0.0;
};

struct ChannelConfig {
    double tx_power_dbm = 15.0;
    double noise_floor_dbm = -92.0;
    double interference_dbm = no_interference_dbm;
    double beta_r_db = -6.0;
    double height = 1.5;
    double los_dwell = 5.0;  // s
    double nlos_dwell = 5.0; // s
    std::string initial_condition = "random"; // random | stationary | los | nlos
    FadingKind los_fading = FadingKind::rician(2.0);
    FadingKind nlos_fading = FadingKind::rayleigh();
    FadingProfile profile;
    bool shadowing = true;
    bool initiator_fading = false;
};

struct EstimatorConfig {
    double sigma_phi = default_sigma_phi;
    SigmaMForm sigma_m_form = SigmaMForm::law_of_cosines;
    SigmaMMethod sigma_m_method = SigmaMMethod::closed_form;
    std::size_t n_mc = 2000;
    QuantizationMode q_mode = QuantizationMode::position;
    CombineMode combine = CombineMode::rss;
    double p_floor = default_p_floor;
};

struct CsceSettings {
    double segment = 0.05;    // s of received signal per assessment
    double short_len = 5e-3;  // s
    double long_len = 10e-3;  // s
    double corr_threshold = 0.707;
    double gap_fraction = 0.4;
    std::size_t ma_taps = 100;
    double pulse_threshold = 0.707;
    double min_peak_to_median = 8.0;
    double max_snr_db = 40.0;
    bool reject_communication = true;
    double gate_sigma_d = 0.0; // m; 0 derives the default gate
};

struct SweepConfig {
    std::vector<double> sinr_db{-25, -20, -15, -10, -5, 0, 5, 10};
    std::vector<FadingKind> channels{FadingKind::awgn(), FadingKind::rician(2.0), FadingKind::rayleigh()};
    std::size_t n_trials = 100;
    bool interference = true;
    OfdmParams ofdm;
};

struct ScenarioConfig {
    std::string name = "scenario";
    std::uint64_t seed = 1;
    std::size_t n_trials = 10;
    std::size_t threads = 0; // 0 = hardware concurrency
    double duration = 60.0;
    double assessment_interval = 0.05;
    PulseSpec pulse;
    double sample_rate = 0.0; // 0 = 2B
    MobilityConfig mobility;
    ChannelConfig channel;
    EstimatorConfig estimator;
    CsceSettings csce;
    bool defense_enabled = false;
    DefenseConfig defense;
    SweepConfig sweep;

    double effective_sample_rate() const { return sample_rate > 0.0 ? sample_rate : pulse.default_sample_rate(); }
    void validate() const;
};

struct ConfigKeyInfo {
    std::string key; // section.name
    std::string unit;
    std::string help;
};

ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);
std::string config_to_ini(const ScenarioConfig& cfg);
std::vector<std::pair<std::string, std::string>> config_values(const ScenarioConfig& cfg);

// Sets one key ("section.name") from its string form; throws config errors.
void set_config_value(ScenarioConfig& cfg, const std::string& key, const std::string& value);

const std::vector<ConfigKeyInfo>& config_keys();

// "a,b,c" or "start:step:stop" (inclusive).
std::vector<double> parse_number_list(const std::string& text);

std::string fading_to_string(const FadingKind& kind);
FadingKind parse_fading(const std::string& text);

const char* to_string(SigmaMForm f);
const char* to_string(SigmaMMethod m);

}
