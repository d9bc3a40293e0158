#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "json.hpp"
#include "sensguard/csce.hpp"
#include "sensguard/error.hpp"
#include "sensguard/estimator.hpp"
#include "sensguard/harness.hpp"

namespace sensguard::cli {

namespace {

std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

nlohmann::ordered_json number_or_null(double v)
{
    if (std::isnan(v) || std::isinf(v))
        return nullptr;
    return v;
}

// Writes a table to --out/<stem>.<format>, or to stdout when no --out is given.
void emit_table(const CommonOptions& common, const std::string& stem, const std::string& csv,
                const std::string& human)
{
    const bool json = common.format == "json";
    const std::string body = json ? csv_to_json(csv) : csv;
    if (common.out.empty()) {
        std::cout << body;
        return;
    }
    std::filesystem::create_directories(common.out);
    const std::string path = (std::filesystem::path(common.out) / (stem + (json ? ".json" : ".csv"))).string();
    write_text_file(path, body);
    std::cout << human << "wrote " << path << "\n";
}

}

ScenarioConfig resolve_config(const CommonOptions& common)
{
    ScenarioConfig cfg = common.config.empty() ? ScenarioConfig{} : load_config(common.config);
    for (const auto& kv : common.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            fail(ErrorCode::config, "override '" + kv + "' is not key=value");
        set_config_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (common.seed)
        cfg.seed = *common.seed;
    if (common.trials)
        cfg.n_trials = *common.trials;
    if (common.threads)
        cfg.threads = *common.threads;
    cfg.validate();
    return cfg;
}

int run_crlb(const CommonOptions& common, const CrlbOptions& opts)
{
    const ScenarioConfig cfg = resolve_config(common);
    PulseSpec spec = cfg.pulse;
    if (opts.bandwidth)
        spec.bandwidth = *opts.bandwidth;
    if (opts.fc)
        spec.carrier = *opts.fc;
    if (opts.tp)
        spec.pulse_duration = *opts.tp;
    if (opts.prt)
        spec.prt = *opts.prt;
    spec.prt = std::max(spec.prt, spec.pulse_duration);
    const double fs = opts.fs ? *opts.fs : (opts.bandwidth ? spec.default_sample_rate() : cfg.effective_sample_rate());
    const double sigma_phi = opts.sigma_phi ? *opts.sigma_phi : cfg.estimator.sigma_phi;
    const std::vector<double> grid = parse_number_list(opts.snr);

    const FimMatrix unit = fim(gen_lfm(spec, fs), spec.carrier, 1.0);
    std::string csv = "gamma_db,sigma_d,sigma_vr,sigma_phi,crb_d,crb_vr,j_dd,j_vv,j_dv\n";
    for (double g_db : grid) {
        const FimMatrix f = scale_fim(unit, db_to_linear(g_db));
        const CrlbEstimate c = crlb(f, sigma_phi);
        csv += num(g_db) + "," + num(c.sigma_d) + "," + num(c.sigma_vr) + "," + num(c.sigma_phi) + "," +
               num(c.crb_d()) + "," + num(c.crb_vr()) + "," + num(f.j_dd) + "," + num(f.j_vv) + "," + num(f.j_dv) +
               "\n";
    }
    const CrlbEstimate at0 = crlb(unit, sigma_phi);
    emit_table(common, "crlb", csv,
               "B = " + num(spec.bandwidth) + " Hz, sigma_D at 0 dB = " + num(at0.sigma_d) + " m, " +
                   std::to_string(grid.size()) + " SNR points\n");
    return 0;
}

int run_detect(const CommonOptions& common, const DetectOptions& opts)
{
    const ScenarioConfig cfg = resolve_config(common);
    const ComplexSignal rx = read_iq(opts.iq);
    CsceConfig ccfg = CsceConfig::for_sample_rate(rx.sample_rate, opts.short_len.value_or(cfg.csce.short_len),
                                                  opts.long_len.value_or(cfg.csce.long_len));
    ccfg.corr_threshold = cfg.csce.corr_threshold;
    ccfg.gap_fraction = cfg.csce.gap_fraction;
    ccfg.ma_taps = cfg.csce.ma_taps;
    ccfg.pulse_threshold = cfg.csce.pulse_threshold;
    ccfg.min_peak_to_median = cfg.csce.min_peak_to_median;
    ccfg.max_snr_db = cfg.csce.max_snr_db;
    ccfg.sigma_phi = cfg.estimator.sigma_phi;
    const CsceResult r = csce(rx, ccfg, cfg.pulse.carrier);

    nlohmann::ordered_json j;
    j["file"] = std::filesystem::path(opts.iq).filename().string();
    j["sample_rate"] = rx.sample_rate;
    j["detected"] = r.detected;
    j["period"] = r.period;
    j["period_s"] = static_cast<double>(r.period) / rx.sample_rate;
    j["gamma_hat_db"] = r.detected ? number_or_null(linear_to_db(r.gamma_hat)) : nullptr;
    if (r.crb_t) {
        j["crb_t"] = {{"crb_d", r.crb_t->crb_d()},
                      {"crb_vr", r.crb_t->crb_vr()},
                      {"sigma_phi", r.crb_t->sigma_phi}};
    } else {
        j["crb_t"] = nullptr;
    }
    j["pulse_samples"] = r.pulse.size();
    j["n_summed"] = r.n_summed;
    j["n_peaks"] = r.n_peaks;
    j["peak_to_median"] = number_or_null(r.peak_to_median);
    if (r.detected) {
        CrlbEstimate gate;
        if (cfg.csce.gate_sigma_d > 0.0) {
            gate.sigma_d = cfg.csce.gate_sigma_d;
            gate.gamma = 1.0;
        } else {
            gate = default_crb_gate(cfg.pulse, cfg.estimator.sigma_phi);
        }
        j["communication_rejected"] = communication_reject(r, gate);
    } else {
        j["communication_rejected"] = nullptr;
    }
    j["reason"] = r.reason;
    const std::string body = j.dump(2) + "\n";
    if (common.out.empty()) {
        std::cout << body;
    } else {
        std::filesystem::create_directories(common.out);
        const std::string path = (std::filesystem::path(common.out) / "detect.json").string();
        write_text_file(path, body);
        std::cout << (r.detected ? "detected, period " + std::to_string(r.period) + " samples" : "no detection: " + r.reason)
                  << "\nwrote " << path << "\n";
    }
    return 0;
}

int run_detect_sweep(const CommonOptions& common)
{
    const ScenarioConfig cfg = resolve_config(common);
    const auto rows = run_detection_sweep(cfg);
    std::string human;
    for (const auto& r : rows)
        human += r.channel + " SINR " + num(r.sinr_db) + " dB: detection rate " + num(r.detection_rate) + "\n";
    emit_table(common, "detect_sweep", sweep_csv(rows), human);
    return 0;
}

int run_trajectory(const CommonOptions& common, const TrajectoryCmdOptions& opts)
{
    const ScenarioConfig cfg = resolve_config(common);
    const auto path = trial_trajectory(cfg, opts.trial);
    std::string csv = "t,x,y,d,phi,v_r\n";
    for (const auto& p : path) {
        const SensingGeometry g = geometry_at(cfg.mobility.initiator, p);
        csv += num(p.t) + "," + num(p.position.x) + "," + num(p.position.y) + "," + num(g.d) + "," + num(g.phi) + "," +
               num(g.v_r) + "\n";
    }
    emit_table(common, "trajectory", csv, std::to_string(path.size()) + " trajectory points\n");
    return 0;
}

namespace {

int run_pipeline(const CommonOptions& common, bool defend)
{
    ScenarioConfig cfg = resolve_config(common);
    if (defend)
        cfg.defense_enabled = true;
    const auto records = defend ? run_defense_sim(cfg) : run_tracking_sim(cfg);
    const SummaryStats stats = summarize(records);
    const std::string mode = defend ? "defend" : "simulate";
    if (common.out.empty()) {
        std::cout << summary_json(cfg, stats, mode);
        return 0;
    }
    write_outputs(records, stats, cfg, mode, common.out, common.format);
    std::cout << cfg.name << ": " << records.size() << " trials\n"
              << "  mean sigma_p actual    " << num(stats.mean_sigma_p_actual) << " m\n"
              << "  mean sigma_p estimated " << num(stats.mean_sigma_p_estimated) << " m\n"
              << "  estimate coverage      " << num(stats.coverage) << "\n";
    if (defend)
        std::cout << "  mean trigger count     " << num(stats.mean_trigger_count) << "\n"
                  << "  jammed fraction        " << num(stats.jam_fraction) << "\n";
    std::cout << "wrote " << common.out << "\n";
    return 0;
}

}

int run_simulate(const CommonOptions& common)
{
    return run_pipeline(common, false);
}

int run_defend(const CommonOptions& common)
{
    return run_pipeline(common, true);
}

std::string config_key_help()
{
    std::string out = "Config keys (INI sections, override with --set section.key=value):\n";
    for (const auto& k : config_keys()) {
        std::string line = "  " + k.key;
        if (!k.unit.empty())
            line += " [" + k.unit + "]";
        if (line.size() < 40)
            line.resize(40, ' ');
        else
            line += "  ";
        out += line + k.help + "\n";
    }
    return out;
}

}
