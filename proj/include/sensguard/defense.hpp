#pragma once

#include <cstddef>
#include <deque>
#include <optional>

#include "sensguard/rng.hpp"

namespace sensguard {

enum class Strategy { instant, moving_average };

// How the jamming power reaching the initiator is derived from a_j.
enum class JamModel {
    literal, // P_j = a_j P_r at the target, then one-way path loss
    echo,    // jam arrives a_j above the initiator's own echo
    direct,  // jam arrives at the level the target receives, scaled by a_j
};

struct DefenseConfig {
    double theta_p = 0.17;
    int theta_j = 3;
    double lj_min = 0.050;
    double lj_max = 0.350;
    double aj_min_db = -3.0;
    double aj_max_db = 3.0;
    int k_m = 3;
    Strategy strategy = Strategy::instant;
    bool reset_on_recovery = false;
    JamModel jam_model = JamModel::literal;
    double monitor_interval = 0.0; // s between sigma_p readings; 0 reads at every assessment

    void validate() const;
};

struct DefenseState {
    int j_count = 0;
    std::deque<double> sigma_history;
    std::optional<double> jamming_until;
    std::size_t trigger_count = 0;
    std::optional<double> last_t;

    bool jamming_at(double t) const { return jamming_until && t < *jamming_until; }
};

struct JamAction {
    double duration = 0.0;
    double power_ratio = 1.0;
    double a_j_db = 0.0;
};

std::optional<JamAction> step_monitor(DefenseState& state, double sigma_p, double t, const DefenseConfig& cfg,
                                      Rng& rng);

double jam_effect(double reflected_power_dbm, double jam_power_dbm_at_initiator, double noise_floor_dbm);

double jam_power_at_initiator_dbm(JamModel model, double target_rx_dbm, double initiator_echo_dbm, double a_j_db,
                                  double oneway_loss_db);

const char* to_string(Strategy s);
const char* to_string(JamModel m);

}
