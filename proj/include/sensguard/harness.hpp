#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sensguard/channel.hpp"
#include "sensguard/config.hpp"
#include "sensguard/csce.hpp"
#include "sensguard/geometry.hpp"

namespace sensguard {

struct StepRecord {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double d = 0.0;
    double phi = 0.0;
    double v_r = 0.0;
    ChannelCondition condition = ChannelCondition::los;
    double sinr_target_db = 0.0;
    double sinr_initiator_db = 0.0;    // after any jamming
    double sinr_estimate_db = 0.0;     // gamma_hat plus beta_r; NaN without a fresh estimate
    bool detected = false;             // fresh CSCE estimate at this step
    bool carried = false;              // estimate carried forward from an earlier step
    double crb_t_d = 0.0;              // m^2, NaN when no estimate exists yet
    double crb_t_vr = 0.0;             // (m/s)^2
    double crb_i_d = 0.0;
    double crb_i_vr = 0.0;
    double p_k = 0.0;
    double sigma_m = 0.0;
    double sigma_q = 0.0;
    double sigma_p_actual = 0.0;
    double sigma_p_unjammed = 0.0;     // actual bound had the jam been off
    double sigma_p_estimated = 0.0;    // NaN until the first detection
    double p_k_estimated = 0.0;
    double sigma_m_estimated = 0.0;
    bool jamming = false;
    bool triggered = false;
    double jam_duration = 0.0;
    double jam_power_ratio = 0.0;
    int j_count = 0;
};

struct DefenseEvent {
    double t = 0.0;
    double duration = 0.0;
    double power_ratio = 0.0;
    double a_j_db = 0.0;
};

struct TrialRecord {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    std::vector<StepRecord> steps;
    std::vector<DefenseEvent> events;
};

struct TrialSummary {
    std::size_t trial = 0;
    double mean_sigma_p_actual = 0.0;
    double mean_sigma_p_estimated = 0.0;
    double median_sigma_p_actual = 0.0;
    double median_sigma_p_estimated = 0.0;
    double coverage = 0.0;        // fraction of steps with a fresh estimate
    double jam_fraction = 0.0;    // fraction of steps under jamming
    std::size_t trigger_count = 0;
};

struct SummaryStats {
    std::vector<TrialSummary> trials;
    double mean_sigma_p_actual = 0.0;
    double mean_sigma_p_estimated = 0.0;
    double median_sigma_p_actual = 0.0;
    double median_sigma_p_estimated = 0.0;
    double coverage = 0.0;
    double jam_fraction = 0.0;
    double mean_trigger_count = 0.0;
};

struct SweepRow {
    std::string channel;
    double sinr_db = 0.0;
    std::size_t n_trials = 0;
    std::size_t detections = 0;
    double detection_rate = 0.0;
    double mean_crb_t_d = 0.0;  // over detections, NaN if none
    double mean_crb_t_vr = 0.0;
    double crb_i_d = 0.0;
    double crb_i_vr = 0.0;
};

// Received segment for one detection trial: a randomly delayed pulse train at
// the given in-pulse SINR, faded, plus noise and a share of OFDM interference
// together making up unit background power.
ComplexSignal synthesize_segment(const ScenarioConfig& cfg, const ComplexSignal& train_template,
                                 std::size_t length, double sinr_db, const FadingKind& fading, double interference_share,
                                 Rng& rng);

std::vector<SweepRow> run_detection_sweep(const ScenarioConfig& cfg);

std::uint64_t trial_seed(const ScenarioConfig& cfg, std::size_t trial);
std::vector<TrajectoryPoint> trial_trajectory(const ScenarioConfig& cfg, std::size_t trial);

TrialRecord run_trial(const ScenarioConfig& cfg, std::size_t trial, bool with_defense);

std::vector<TrialRecord> run_tracking_sim(const ScenarioConfig& cfg);
std::vector<TrialRecord> run_defense_sim(const ScenarioConfig& cfg);

SummaryStats summarize(const std::vector<TrialRecord>& records);

std::string trial_csv(const TrialRecord& record);
std::string events_csv(const TrialRecord& record);
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string summary_json(const ScenarioConfig& cfg, const SummaryStats& stats, const std::string& mode);

// Array of row objects keyed by the header; numeric cells become numbers, nan becomes null.
std::string csv_to_json(const std::string& csv);

void write_text_file(const std::string& path, const std::string& content);

// Writes trial_NNN.{csv,json}, events_NNN (defense runs) and summary.json into dir.
void write_outputs(const std::vector<TrialRecord>& records, const SummaryStats& stats, const ScenarioConfig& cfg,
                   const std::string& mode, const std::string& dir, const std::string& format = "csv");

}
