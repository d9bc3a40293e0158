#include "sensguard/defense.hpp"

#include <cmath>
#include <numeric>

#include "sensguard/channel.hpp"
#include "sensguard/error.hpp"

namespace sensguard {

void DefenseConfig::validate() const
{
    require(theta_p > 0.0, ErrorCode::config, "theta_p must be positive");
    require(theta_j >= 1, ErrorCode::config, "theta_j must be at least 1");
    require(lj_min > 0.0 && lj_min < lj_max, ErrorCode::config, "jam duration range must satisfy 0 < low < high");
    require(aj_min_db <= aj_max_db, ErrorCode::config, "jam power range reversed");
    require(k_m >= 1, ErrorCode::config, "k_m must be at least 1");
    require(monitor_interval >= 0.0, ErrorCode::config, "monitor_interval must be non-negative");
}

std::optional<JamAction> step_monitor(DefenseState& state, double sigma_p, double t, const DefenseConfig& cfg,
                                      Rng& rng)
{
    if (state.last_t && t < *state.last_t)
        fail(ErrorCode::time_regression, "monitor time went backwards");
    state.last_t = t;

    state.sigma_history.push_back(sigma_p);
    while (state.sigma_history.size() > static_cast<std::size_t>(cfg.k_m))
        state.sigma_history.pop_front();

    if (state.jamming_at(t))
        return std::nullopt;

    double metric = sigma_p;
    if (cfg.strategy == Strategy::moving_average) {
        if (state.sigma_history.size() < static_cast<std::size_t>(cfg.k_m))
            return std::nullopt;
        metric = std::accumulate(state.sigma_history.begin(), state.sigma_history.end(), 0.0) /
                 static_cast<double>(state.sigma_history.size());
    }

    if (metric < cfg.theta_p)
        ++state.j_count;
    else if (cfg.reset_on_recovery)
        state.j_count = 0;

    if (state.j_count < cfg.theta_j)
        return std::nullopt;

    JamAction action;
    action.duration = uniform(rng, cfg.lj_min, cfg.lj_max);
    action.a_j_db = uniform(rng, cfg.aj_min_db, cfg.aj_max_db);
    action.power_ratio = std::pow(10.0, action.a_j_db / 10.0);
    state.j_count = 0;
    state.jamming_until = t + action.duration;
    ++state.trigger_count;
    return action;
}

double jam_effect(double reflected_power_dbm, double jam_power_dbm_at_initiator, double noise_floor_dbm)
{
    return reflected_power_dbm - power_sum_dbm(noise_floor_dbm, jam_power_dbm_at_initiator);
}

double jam_power_at_initiator_dbm(JamModel model, double target_rx_dbm, double initiator_echo_dbm, double a_j_db,
                                  double oneway_loss_db)
{
    switch (model) {
    case JamModel::literal:
        return target_rx_dbm + a_j_db - oneway_loss_db;
    case JamModel::echo:
        return initiator_echo_dbm + a_j_db;
    case JamModel::direct:
        return target_rx_dbm + a_j_db;
    }
    return target_rx_dbm + a_j_db - oneway_loss_db;
}

const char* to_string(Strategy s)
{
    return s == Strategy::instant ? "I" : "II";
}

const char* to_string(JamModel m)
{
    switch (m) {
    case JamModel::literal: return "literal";
    case JamModel::echo: return "echo";
    case JamModel::direct: return "direct";
    }
    return "unknown";
}

}
