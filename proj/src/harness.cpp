#include "sensguard/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <thread>

#include "sensguard/defense.hpp"
#include "sensguard/error.hpp"
#include "sensguard/estimator.hpp"
#include "sensguard/geometry.hpp"
#include "sensguard/tracking.hpp"

namespace sensguard {

namespace {

constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();
constexpr double min_distance = 1.0;

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body)
{
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < threads; ++i)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

CsceConfig csce_config(const ScenarioConfig& cfg)
{
    CsceConfig c = CsceConfig::for_sample_rate(cfg.effective_sample_rate(), cfg.csce.short_len, cfg.csce.long_len);
    c.corr_threshold = cfg.csce.corr_threshold;
    c.gap_fraction = cfg.csce.gap_fraction;
    c.ma_taps = cfg.csce.ma_taps;
    c.pulse_threshold = cfg.csce.pulse_threshold;
    c.min_peak_to_median = cfg.csce.min_peak_to_median;
    c.max_snr_db = cfg.csce.max_snr_db;
    c.sigma_phi = cfg.estimator.sigma_phi;
    return c;
}

CrlbEstimate crb_gate(const ScenarioConfig& cfg)
{
    if (cfg.csce.gate_sigma_d > 0.0) {
        CrlbEstimate g;
        g.sigma_d = cfg.csce.gate_sigma_d;
        g.gamma = 1.0;
        return g;
    }
    return default_crb_gate(cfg.pulse, cfg.estimator.sigma_phi);
}

std::size_t segment_samples(const ScenarioConfig& cfg)
{
    return static_cast<std::size_t>(std::llround(cfg.csce.segment * cfg.effective_sample_rate()));
}

ComplexSignal train_template(const ScenarioConfig& cfg)
{
    return gen_pulse_train(cfg.pulse, cfg.effective_sample_rate(), cfg.csce.segment + cfg.pulse.prt);
}

struct Bound {
    double p_k = 0.0;
    double sigma_m = 0.0;
    double sigma_q = 0.0;
    double sigma_p = 0.0;
};

double sigma_m_for(const EstimatorConfig& e, double d, double sigma_d, Rng& rng)
{
    if (e.sigma_m_form == SigmaMForm::simplified)
        return sigma_m_simplified(d, sigma_d, e.sigma_phi);
    if (e.sigma_m_method == SigmaMMethod::monte_carlo)
        return sigma_m(d, sigma_d, e.sigma_phi, e.n_mc, rng);
    return sigma_m_small_angle(d, sigma_d, e.sigma_phi);
}

Bound bound_for(const ScenarioConfig& cfg, const SensingGeometry& geo, double speed, const CrlbEstimate& crb,
                Rng rng)
{
    Bound b;
    b.p_k = std::max(cfg.estimator.p_floor, detection_prob(geo.v_r, crb.sigma_vr));
    b.sigma_m = sigma_m_for(cfg.estimator, geo.d, crb.sigma_d, rng);
    b.sigma_q = quantization_sigma(cfg.assessment_interval, b.p_k, speed, cfg.estimator.q_mode);
    b.sigma_p = performance_bound(b.sigma_m, b.sigma_q, cfg.estimator.combine);
    return b;
}

double mean_of(const std::vector<double>& v)
{
    if (v.empty())
        return nan_value;
    double acc = 0.0;
    for (double x : v)
        acc += x;
    return acc / static_cast<double>(v.size());
}

double median_of(std::vector<double> v)
{
    if (v.empty())
        return nan_value;
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double hi = v[mid];
    if (v.size() % 2 == 1)
        return hi;
    const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return (lo + hi) / 2.0;
}

}

ComplexSignal synthesize_segment(const ScenarioConfig& cfg, const ComplexSignal& train, std::size_t length,
                                 double sinr_db, const FadingKind& fading, double interference_share, Rng& rng)
{
    const double sr = cfg.effective_sample_rate();
    const std::size_t period = pulse_offset(cfg.pulse, sr, 1);
    require(train.size() >= length + period, ErrorCode::precondition, "pulse train template too short");
    require(interference_share >= 0.0 && interference_share <= 1.0, ErrorCode::invalid_parameter,
            "interference share outside [0, 1]");
    const std::size_t offset = static_cast<std::size_t>(rng() % period);
    ComplexSignal seg = slice(train, offset, length);
    seg.sample_rate = sr;
    const auto amp = static_cast<float>(std::sqrt(db_to_linear(sinr_db)));
    for (auto& s : seg.samples)
        s *= amp;
    seg = apply_fading(seg, fading, rng, cfg.channel.profile);
    add_into(seg, gen_awgn(length, 1.0 - interference_share, rng));
    if (interference_share > 0.0) {
        const auto& o = cfg.sweep.ofdm;
        const ComplexSignal ofdm = gen_ofdm_interference(o.n_subcarriers, o.symbol_rate, sr,
                                                         static_cast<double>(length) / sr, rng, o.cp_fraction);
        add_into(seg, ofdm, std::sqrt(interference_share));
    }
    return seg;
}

std::vector<SweepRow> run_detection_sweep(const ScenarioConfig& cfg)
{
    cfg.validate();
    const auto& sw = cfg.sweep;
    require(sw.n_trials >= 20, ErrorCode::config, "the detection sweep needs at least 20 trials per point");
    const double sr = cfg.effective_sample_rate();
    const std::size_t length = segment_samples(cfg);
    const std::size_t period = pulse_offset(cfg.pulse, sr, 1);
    const ComplexSignal train = train_template(cfg);
    const CsceConfig ccfg = csce_config(cfg);
    const FimMatrix unit = fim(gen_lfm(cfg.pulse, sr), cfg.pulse.carrier, 1.0);

    const std::size_t points = sw.channels.size() * sw.sinr_db.size();
    const std::size_t tasks = points * sw.n_trials;
    struct Outcome {
        bool detected = false;
        double crb_d = nan_value;
        double crb_vr = nan_value;
    };
    std::vector<Outcome> outcomes(tasks);
    parallel_for(tasks, cfg.threads, [&](std::size_t i) {
        const std::size_t point = i / sw.n_trials;
        const FadingKind& kind = sw.channels[point / sw.sinr_db.size()];
        const double sinr = sw.sinr_db[point % sw.sinr_db.size()];
        Rng rng = derive_stream(cfg.seed, i);
        const ComplexSignal seg =
            synthesize_segment(cfg, train, length, sinr, kind, sw.interference ? 0.5 : 0.0, rng);
        const CsceResult r = csce(seg, ccfg, cfg.pulse.carrier);
        const long err = static_cast<long>(r.period) - static_cast<long>(period);
        Outcome& o = outcomes[i];
        o.detected = r.detected && std::abs(err) <= 2;
        if (o.detected && r.crb_t) {
            o.crb_d = r.crb_t->crb_d();
            o.crb_vr = r.crb_t->crb_vr();
        }
    });

    std::vector<SweepRow> rows;
    for (std::size_t point = 0; point < points; ++point) {
        SweepRow row;
        row.channel = fading_to_string(sw.channels[point / sw.sinr_db.size()]);
        row.sinr_db = sw.sinr_db[point % sw.sinr_db.size()];
        row.n_trials = sw.n_trials;
        std::vector<double> d;
        std::vector<double> v;
        for (std::size_t t = 0; t < sw.n_trials; ++t) {
            const Outcome& o = outcomes[point * sw.n_trials + t];
            if (!o.detected)
                continue;
            ++row.detections;
            if (!std::isnan(o.crb_d)) {
                d.push_back(o.crb_d);
                v.push_back(o.crb_vr);
            }
        }
        row.detection_rate = static_cast<double>(row.detections) / static_cast<double>(row.n_trials);
        row.mean_crb_t_d = mean_of(d);
        row.mean_crb_t_vr = mean_of(v);
        const CrlbEstimate base = crlb(scale_fim(unit, db_to_linear(row.sinr_db)), cfg.estimator.sigma_phi);
        row.crb_i_d = base.crb_d();
        row.crb_i_vr = base.crb_vr();
        rows.push_back(row);
    }
    return rows;
}

std::uint64_t trial_seed(const ScenarioConfig& cfg, std::size_t trial)
{
    return derive_stream(cfg.seed, trial)();
}

std::vector<TrajectoryPoint> trial_trajectory(const ScenarioConfig& cfg, std::size_t trial)
{
    TrajectoryOptions topts;
    topts.start = cfg.mobility.start;
    topts.initial_heading = cfg.mobility.initial_heading;
    topts.speed_jitter = cfg.mobility.speed_jitter;
    return gen_trajectory(cfg.duration, cfg.assessment_interval, cfg.mobility.speed, cfg.mobility.heading_sigma,
                          cfg.mobility.bounds, derive_stream(trial_seed(cfg, trial), 0)(), topts);
}

TrialRecord run_trial(const ScenarioConfig& cfg, std::size_t trial, bool with_defense)
{
    const double sr = cfg.effective_sample_rate();
    const double fc = cfg.pulse.carrier;
    const auto& ch = cfg.channel;
    const auto& est = cfg.estimator;

    TrialRecord rec;
    rec.trial = trial;
    rec.seed = trial_seed(cfg, trial);
    Rng channel_rng = derive_stream(rec.seed, 1);
    Rng defense_rng = derive_stream(rec.seed, 2);
    const std::uint64_t csce_master = derive_stream(rec.seed, 3)();
    const std::uint64_t mc_master = derive_stream(rec.seed, 4)();
    const auto path = trial_trajectory(cfg, trial);

    const ComplexSignal clean = gen_lfm(cfg.pulse, sr);
    const FimMatrix unit = fim(clean, fc, 1.0);
    const ComplexSignal train = train_template(cfg);
    const std::size_t length = segment_samples(cfg);
    const CsceConfig ccfg = csce_config(cfg);
    const CrlbEstimate gate = crb_gate(cfg);
    const double beta = db_to_linear(ch.beta_r_db);
    const double background_dbm = power_sum_dbm(ch.noise_floor_dbm, ch.interference_dbm);
    const double interference_share =
        std::isinf(ch.interference_dbm) ? 0.0 : db_to_linear(ch.interference_dbm - background_dbm);

    LinkOptions lopts;
    lopts.height = ch.height;
    lopts.shadowing = ch.shadowing;
    lopts.initiator_fading = ch.initiator_fading;
    lopts.los_fading = ch.los_fading;
    lopts.nlos_fading = ch.nlos_fading;

    ChannelCondition cond = ChannelCondition::los;
    if (ch.initial_condition == "nlos")
        cond = ChannelCondition::nlos;
    else if (ch.initial_condition == "random")
        cond = uniform(channel_rng) < 0.5 ? ChannelCondition::los : ChannelCondition::nlos;
    else if (ch.initial_condition == "stationary")
        cond = uniform(channel_rng) < ch.los_dwell / (ch.los_dwell + ch.nlos_dwell) ? ChannelCondition::los
                                                                                      : ChannelCondition::nlos;

    DefenseState state;
    const auto monitor_every = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(cfg.defense.monitor_interval / cfg.assessment_interval)));
    double jam_a_db = 0.0;
    std::optional<CrlbEstimate> last_crb_t;
    double last_sigma_p = nan_value;
    double last_p_k = nan_value;
    double last_sigma_m = nan_value;

    rec.steps.reserve(path.size());
    for (std::size_t k = 0; k < path.size(); ++k) {
        const TrajectoryPoint& pt = path[k];
        SensingGeometry geo = geometry_at(cfg.mobility.initiator, pt);
        geo.d = std::max(geo.d, min_distance);

        const double flip = uniform(channel_rng);
        if (k > 0) {
            const double dwell = cond == ChannelCondition::los ? ch.los_dwell : ch.nlos_dwell;
            if (flip < cfg.assessment_interval / dwell)
                cond = cond == ChannelCondition::los ? ChannelCondition::nlos : ChannelCondition::los;
        }
        const LinkState link = link_budget(ch.tx_power_dbm, geo.d, cond, fc, ch.noise_floor_dbm, ch.interference_dbm,
                                           ch.beta_r_db, channel_rng, lopts);

        StepRecord row;
        row.t = pt.t;
        row.x = pt.position.x;
        row.y = pt.position.y;
        row.d = geo.d;
        row.phi = geo.phi;
        row.v_r = geo.v_r;
        row.condition = cond;
        row.sinr_target_db = link.sinr_at_target;
        row.jamming = with_defense && state.jamming_at(pt.t);

        row.sinr_initiator_db = link.sinr_at_initiator;
        if (row.jamming) {
            const double jam_dbm = jam_power_at_initiator_dbm(cfg.defense.jam_model, link.rx_power_target_dbm,
                                                              link.rx_power_initiator_dbm, jam_a_db, link.pathloss_db);
            row.sinr_initiator_db = jam_effect(link.rx_power_initiator_dbm, power_sum_dbm(jam_dbm, ch.interference_dbm),
                                               ch.noise_floor_dbm);
        }

        const Rng mc_rng = derive_stream(mc_master, k);
        const CrlbEstimate crb_i = crlb(scale_fim(unit, db_to_linear(row.sinr_initiator_db)), est.sigma_phi);
        const Bound actual = bound_for(cfg, geo, pt.speed, crb_i, mc_rng);
        row.crb_i_d = crb_i.crb_d();
        row.crb_i_vr = crb_i.crb_vr();
        row.p_k = actual.p_k;
        row.sigma_m = actual.sigma_m;
        row.sigma_q = actual.sigma_q;
        row.sigma_p_actual = actual.sigma_p;
        if (row.jamming) {
            const CrlbEstimate crb_free =
                crlb(scale_fim(unit, db_to_linear(link.sinr_at_initiator)), est.sigma_phi);
            row.sigma_p_unjammed = bound_for(cfg, geo, pt.speed, crb_free, mc_rng).sigma_p;
        } else {
            row.sigma_p_unjammed = row.sigma_p_actual;
        }

        row.sinr_estimate_db = nan_value;
        if (!row.jamming) {
            Rng csce_rng = derive_stream(csce_master, k);
            const FadingKind& kind = cond == ChannelCondition::los ? ch.los_fading : ch.nlos_fading;
            const ComplexSignal seg =
                synthesize_segment(cfg, train, length, link.sinr_at_target, kind, interference_share, csce_rng);
            const CsceResult r = csce(seg, ccfg, fc);
            bool accepted = r.detected && r.crb_t.has_value();
            if (accepted && cfg.csce.reject_communication && communication_reject(r, gate))
                accepted = false;
            if (accepted) {
                try {
                    const double gamma = r.gamma_hat * beta;
                    const CrlbEstimate crb_t = crlb(fim(r.pulse, fc, gamma), est.sigma_phi);
                    const Bound b = bound_for(cfg, geo, pt.speed, crb_t, mc_rng);
                    last_crb_t = crb_t;
                    last_sigma_p = b.sigma_p;
                    last_p_k = b.p_k;
                    last_sigma_m = b.sigma_m;
                    row.detected = true;
                    row.sinr_estimate_db = linear_to_db(gamma);
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::singular_fim && e.code() != ErrorCode::degenerate_waveform)
                        throw;
                }
            }
        }
        row.carried = !row.detected && last_crb_t.has_value();
        row.crb_t_d = last_crb_t ? last_crb_t->crb_d() : nan_value;
        row.crb_t_vr = last_crb_t ? last_crb_t->crb_vr() : nan_value;
        row.sigma_p_estimated = last_sigma_p;
        row.p_k_estimated = last_p_k;
        row.sigma_m_estimated = last_sigma_m;

        if (with_defense && !std::isnan(last_sigma_p) && k % monitor_every == 0) {
            const auto action = step_monitor(state, last_sigma_p, pt.t, cfg.defense, defense_rng);
            if (action) {
                jam_a_db = action->a_j_db;
                row.triggered = true;
                row.jam_duration = action->duration;
                row.jam_power_ratio = action->power_ratio;
                rec.events.push_back({pt.t, action->duration, action->power_ratio, action->a_j_db});
            }
            row.j_count = state.j_count;
        }
        rec.steps.push_back(row);
    }
    return rec;
}

std::vector<TrialRecord> run_tracking_sim(const ScenarioConfig& cfg)
{
    cfg.validate();
    std::vector<TrialRecord> out(cfg.n_trials);
    parallel_for(cfg.n_trials, cfg.threads, [&](std::size_t i) { out[i] = run_trial(cfg, i, false); });
    return out;
}

std::vector<TrialRecord> run_defense_sim(const ScenarioConfig& cfg)
{
    cfg.validate();
    require(cfg.defense_enabled, ErrorCode::config, "defense is not enabled in this config");
    cfg.defense.validate();
    std::vector<TrialRecord> out(cfg.n_trials);
    parallel_for(cfg.n_trials, cfg.threads, [&](std::size_t i) { out[i] = run_trial(cfg, i, true); });
    return out;
}

SummaryStats summarize(const std::vector<TrialRecord>& records)
{
    require(!records.empty(), ErrorCode::precondition, "no trial records to summarize");
    SummaryStats stats;
    std::vector<double> all_actual;
    std::vector<double> all_estimated;
    std::size_t steps = 0;
    std::size_t fresh = 0;
    std::size_t jammed = 0;
    double triggers = 0.0;
    for (const auto& rec : records) {
        require(!rec.steps.empty(), ErrorCode::precondition, "trial without steps");
        TrialSummary ts;
        ts.trial = rec.trial;
        std::vector<double> actual;
        std::vector<double> estimated;
        std::size_t f = 0;
        std::size_t j = 0;
        for (const auto& s : rec.steps) {
            actual.push_back(s.sigma_p_actual);
            if (s.detected) {
                estimated.push_back(s.sigma_p_estimated);
                ++f;
            }
            if (s.jamming)
                ++j;
            if (s.triggered)
                ++ts.trigger_count;
        }
        ts.mean_sigma_p_actual = mean_of(actual);
        ts.mean_sigma_p_estimated = mean_of(estimated);
        ts.median_sigma_p_actual = median_of(actual);
        ts.median_sigma_p_estimated = median_of(estimated);
        ts.coverage = static_cast<double>(f) / static_cast<double>(rec.steps.size());
        ts.jam_fraction = static_cast<double>(j) / static_cast<double>(rec.steps.size());
        all_actual.insert(all_actual.end(), actual.begin(), actual.end());
        all_estimated.insert(all_estimated.end(), estimated.begin(), estimated.end());
        steps += rec.steps.size();
        fresh += f;
        jammed += j;
        triggers += static_cast<double>(ts.trigger_count);
        stats.trials.push_back(ts);
    }
    stats.mean_sigma_p_actual = mean_of(all_actual);
    stats.mean_sigma_p_estimated = mean_of(all_estimated);
    stats.median_sigma_p_actual = median_of(all_actual);
    stats.median_sigma_p_estimated = median_of(all_estimated);
    stats.coverage = static_cast<double>(fresh) / static_cast<double>(steps);
    stats.jam_fraction = static_cast<double>(jammed) / static_cast<double>(steps);
    stats.mean_trigger_count = triggers / static_cast<double>(records.size());
    return stats;
}

}
