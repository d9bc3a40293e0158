#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <unistd.h>

#include "CLI11.hpp"
#include "sensguard/allocator.hpp"
#include "sensguard/config.hpp"
#include "sensguard/csce.hpp"
#include "sensguard/error.hpp"
#include "sensguard/estimator.hpp"
#include "sensguard/harness.hpp"
#include "sensguard/tracking.hpp"

using namespace sensguard;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string config_dir;

ScenarioConfig figure_config(const std::string& name)
{
    return load_config((std::filesystem::path(config_dir) / (name + ".cfg")).string());
}

bool within(double value, double target, double tolerance)
{
    return std::abs(value - target) <= tolerance * target;
}

Outcome fim_oracle()
{
    double worst = 0.0;
    for (double b : {50e6, 100e6, 150e6}) {
        const PulseSpec spec{b, 5.8e9, 1e-4, 4e-4};
        const ComplexSignal s = gen_lfm(spec, spec.default_sample_rate());
        for (double g_db : {-10.0, 0.0, 10.0, 20.0}) {
            const double g = db_to_linear(g_db);
            const FimMatrix c = fim(s, spec.carrier, g);
            const FimMatrix o = fim_numeric_oracle(s, spec.carrier, g);
            for (auto [x, y] : {std::pair{c.j_dd, o.j_dd}, std::pair{c.j_vv, o.j_vv}, std::pair{c.j_dv, o.j_dv}})
                worst = std::max(worst, std::abs(x - y) / std::abs(y));
        }
    }
    return {worst <= 0.02, fmt::format("largest entrywise relative error {:.3g}% over 3 bandwidths x 4 SNRs (limit 2%)",
                                       100.0 * worst)};
}

Outcome crb_scaling()
{
    double worst = 0.0;
    std::vector<double> crb_at_0db;
    for (double b : {50e6, 100e6, 150e6}) {
        const PulseSpec spec{b, 5.8e9, 1e-4, 4e-4};
        const FimMatrix unit = fim(gen_lfm(spec, spec.default_sample_rate()), spec.carrier, 1.0);
        for (double g_db : {-10.0, 0.0, 10.0, 20.0}) {
            const double g = db_to_linear(g_db);
            const CrlbEstimate one = crlb(scale_fim(unit, g));
            const CrlbEstimate two = crlb(scale_fim(unit, 2.0 * g));
            worst = std::max(worst, std::abs(two.crb_d() * 2.0 / one.crb_d() - 1.0));
            worst = std::max(worst, std::abs(two.crb_vr() * 2.0 / one.crb_vr() - 1.0));
        }
        crb_at_0db.push_back(crlb(unit).crb_d());
    }
    const bool ordered = crb_at_0db[2] < crb_at_0db[0];
    return {worst <= 1e-12 && ordered,
            fmt::format("halving error {:.2g} (limit 1e-12); CRB(D) at 0 dB: 150 MHz {:.4g} m^2 vs 50 MHz {:.4g} m^2",
                        worst, crb_at_0db[2], crb_at_0db[0])};
}

Outcome detection_prob_oracle()
{
    Rng rng = make_rng(20240601);
    const double sigma = 0.3;
    const int n = 1000000;
    double worst = 0.0;
    for (double ratio : {0.5, 1.0, 2.0, 3.0}) {
        const double v = ratio * sigma;
        int hits = 0;
        for (int i = 0; i < n; ++i)
            if (std::abs(normal(rng, sigma)) < v)
                ++hits;
        worst = std::max(worst, std::abs(static_cast<double>(hits) / n - detection_prob(v, sigma)));
    }
    return {worst < 0.005, fmt::format("largest |p_k - Monte Carlo| {:.2g} at 1e6 samples per ratio (limit 0.005)", worst)};
}

Outcome gaussianity()
{
    Rng rng = make_rng(20240602);
    const int n = 1000000;
    std::vector<double> x(n);
    double mean = 0.0;
    for (auto& v : x) {
        v = position_deviation(20.0, normal(rng, 0.05), normal(rng, 0.02));
        mean += v;
    }
    mean /= n;
    double m2 = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;
    for (double v : x) {
        const double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    const double skew = m3 / std::pow(m2, 1.5);
    const double kurt = m4 / (m2 * m2) - 3.0;
    const double sd = std::sqrt(m2);
    const double small = sigma_m_small_angle(20.0, 0.05, 0.02);
    const bool ok = std::abs(skew) < 0.05 && std::abs(kurt) < 0.1 && within(sd, small, 0.03);
    return {ok, fmt::format("skew {:.3g}, excess kurtosis {:.3g}, sd {:.4f} m vs small-angle {:.4f} m", skew, kurt, sd,
                            small)};
}

Outcome csce_cutoffs()
{
    ScenarioConfig cfg = figure_config("fig5");
    cfg.sweep.sinr_db = {-15.0};
    cfg.sweep.channels = {FadingKind::awgn(), FadingKind::rician(2.0), FadingKind::rayleigh()};
    cfg.sweep.n_trials = std::max<std::size_t>(cfg.sweep.n_trials, 100);
    const auto rows = run_detection_sweep(cfg);
    bool ok = rows.size() == 3;
    std::string detail;
    for (const auto& r : rows) {
        const bool fading_is_rayleigh = r.channel == "rayleigh";
        ok = ok && (fading_is_rayleigh ? r.detection_rate <= 0.5 : r.detection_rate >= 0.8);
        detail += fmt::format("{} {:.2f}, ", r.channel, r.detection_rate);
    }

    long worst_period = 0;
    for (double prt : {0.2e-3, 0.4e-3, 0.8e-3}) {
        const PulseSpec spec{100e6, 5.8e9, 1e-4 * std::min(1.0, prt / 0.4e-3), prt};
        const double fs = spec.default_sample_rate();
        const ComplexSignal x = gen_pulse_train(spec, fs, 0.05);
        const CsceResult r = csce(x, CsceConfig::for_sample_rate(fs), spec.carrier);
        const long truth = std::lround(prt * fs);
        worst_period = std::max(worst_period, r.detected ? std::abs(static_cast<long>(r.period) - truth) : 1L << 30);
    }
    ok = ok && worst_period <= 1;
    return {ok, fmt::format("detection rate at -15 dB over {} trials: {}noiseless period error {} samples",
                            cfg.sweep.n_trials, detail, worst_period)};
}

Outcome fig7_means()
{
    struct Target {
        const char* name;
        double actual;
        double estimated;
    };
    bool ok = true;
    std::string detail;
    for (const Target& t : {Target{"fig7_50mhz", 0.43, 0.24}, Target{"fig7_150mhz", 0.20, 0.17}}) {
        const SummaryStats s = summarize(run_tracking_sim(figure_config(t.name)));
        const bool good = within(s.mean_sigma_p_actual, t.actual, 0.3) &&
                          within(s.mean_sigma_p_estimated, t.estimated, 0.3) &&
                          s.mean_sigma_p_estimated <= s.mean_sigma_p_actual;
        ok = ok && good;
        detail += fmt::format("{}: actual {:.3f} m (target {:.2f}), estimated {:.3f} m (target {:.2f}); ", t.name,
                              s.mean_sigma_p_actual, t.actual, s.mean_sigma_p_estimated, t.estimated);
    }
    detail.resize(detail.size() - 2);
    return {ok, detail};
}

Outcome defense_effect()
{
    struct Target {
        const char* name;
        double sigma_p;
        double triggers;
    };
    const Target targets[] = {{"fig8_strategy1_50mhz", 0.78, 35},
                              {"fig9_strategy2_50mhz", 0.52, 20},
                              {"fig8_strategy1_150mhz", 0.33, 50},
                              {"fig9_strategy2_150mhz", 0.32, 45}};
    bool ok = true;
    std::string detail;
    std::vector<double> triggers;
    for (const Target& t : targets) {
        const SummaryStats s = summarize(run_defense_sim(figure_config(t.name)));
        const bool good = within(s.mean_sigma_p_actual, t.sigma_p, 0.3) && within(s.mean_trigger_count, t.triggers, 0.5);
        ok = ok && good;
        triggers.push_back(s.mean_trigger_count);
        detail += fmt::format("{}: sigma_p {:.3f} m (target {:.2f}), triggers {:.1f} (target {:.0f}){}; ", t.name,
                              s.mean_sigma_p_actual, t.sigma_p, s.mean_trigger_count, t.triggers, good ? "" : " OUT");
    }
    const bool fewer = triggers[1] <= triggers[0] && triggers[3] <= triggers[2];
    ok = ok && fewer;
    detail += fewer ? "Strategy II triggers <= Strategy I at both bandwidths" : "Strategy II triggers MORE than Strategy I";
    return {ok, detail};
}

std::string read_tree(const std::filesystem::path& dir)
{
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::recursive_directory_iterator(dir))
        if (e.is_regular_file())
            files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::string all;
    for (const auto& f : files) {
        std::ifstream is(f, std::ios::binary);
        std::stringstream ss;
        ss << is.rdbuf();
        all += f.filename().string() + "\n" + ss.str();
    }
    return all;
}

Outcome determinism()
{
    ScenarioConfig cfg = parse_config(R"([scenario]
name = determinism
seed = 2024
n_trials = 2
duration = 1
[pulse]
bandwidth = 50e6
[mobility]
width = 20
[csce]
segment = 1.2e-3
short_len = 0.4e-3
long_len = 0.8e-3
[defense]
enabled = true
monitor_interval = 0.1
[sweep]
sinr_db = -10,0
n_trials = 20
)");
    const auto base = std::filesystem::temp_directory_path() / fmt::format("sensguard_determinism_{}", ::getpid());
    auto produce = [&](const std::string& tag) {
        const auto dir = base / tag;
        const auto sim = run_tracking_sim(cfg);
        write_outputs(sim, summarize(sim), cfg, "simulate", (dir / "simulate").string());
        const auto def = run_defense_sim(cfg);
        write_outputs(def, summarize(def), cfg, "defend", (dir / "defend").string(), "json");
        ScenarioConfig sweep_cfg = cfg;
        sweep_cfg.csce.segment = 0.01;
        sweep_cfg.csce.short_len = 1e-3;
        sweep_cfg.csce.long_len = 5e-3;
        write_text_file((dir / "sweep.csv").string(), sweep_csv(run_detection_sweep(sweep_cfg)));
        return read_tree(dir);
    };
    const std::string a = produce("a");
    const std::string b = produce("b");
    std::filesystem::remove_all(base);
    return {a == b && !a.empty(),
            fmt::format("simulate, defend and detect-sweep outputs from two runs: {} bytes, {}", a.size(),
                        a == b ? "identical" : "DIFFERENT")};
}

struct Criterion {
    int id;
    const char* title;
    double limit_s;
    std::function<Outcome()> run;
};

}

int main(int argc, char** argv)
{
    configure_allocator();
    CLI::App app{"acceptance checks, one line per criterion"};
    std::vector<int> only;
    config_dir = SENSGUARD_CONFIG_DIR;
    app.add_option("--only", only, "run only these criteria (1-8)")->check(CLI::Range(1, 8));
    app.add_option("--config-dir", config_dir, "directory holding the figure configs")->check(CLI::ExistingDirectory);
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> criteria{
        {1, "FIM oracle", 60, fim_oracle},
        {2, "CRB scaling", 10, crb_scaling},
        {3, "detection probability", 60, detection_prob_oracle},
        {4, "deviation Gaussianity", 60, gaussianity},
        {5, "CSCE cutoffs", 600, csce_cutoffs},
        {6, "tracking means", 900, fig7_means},
        {7, "defense effect", 1200, defense_effect},
        {8, "determinism", 60, determinism},
    };
    const std::set<int> selected(only.begin(), only.end());
    int failures = 0;
    for (const auto& c : criteria) {
        if (!selected.empty() && !selected.count(c.id))
            continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs < c.limit_s;
        const bool pass = o.pass && in_time;
        if (!pass)
            ++failures;
        std::cout << fmt::format("[{}] criterion {} {}: {} ({:.1f} s, limit {:.0f} s{})", pass ? "PASS" : "FAIL", c.id,
                                 c.title, o.detail, secs, c.limit_s, in_time ? "" : ", OVER TIME")
                  << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
