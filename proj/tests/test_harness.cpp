#include "doctest.h"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <boost/algorithm/string.hpp>

#include "sensguard/error.hpp"
#include "sensguard/harness.hpp"

using namespace sensguard;

namespace {

ScenarioConfig small_scenario(bool defense)
{
    std::string text = R"([scenario]
name = small
seed = 11
n_trials = 2
threads = 1
duration = 2
[pulse]
bandwidth = 10e6
[mobility]
width = 20
[channel]
los_dwell = 1
nlos_dwell = 1
[csce]
segment = 1.2e-3
short_len = 0.4e-3
long_len = 0.8e-3
reject_communication = false
)";
    if (defense)
        text += "[defense]\nenabled = true\ntheta_p = 10\ntheta_j = 2\n";
    return parse_config(text);
}

std::vector<std::vector<std::string>> rows_of(const std::string& csv)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream is(csv);
    std::string line;
    while (std::getline(is, line)) {
        std::vector<std::string> cells;
        boost::algorithm::split(cells, line, boost::algorithm::is_any_of(","));
        rows.push_back(cells);
    }
    return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name)
{
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name)
            return i;
    FAIL("missing column " << name);
    return 0;
}

}

TEST_CASE("simulation emits one row per assessment and replays byte for byte")
{
    const ScenarioConfig cfg = small_scenario(false);
    const auto a = run_tracking_sim(cfg);
    const auto b = run_tracking_sim(cfg);
    REQUIRE(a.size() == 2);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].steps.size() == 41);
        CHECK(trial_csv(a[i]) == trial_csv(b[i]));
        CHECK(rows_of(trial_csv(a[i])).size() == 42);
    }
    CHECK(trial_csv(a[0]) != trial_csv(a[1]));
    CHECK(summary_json(cfg, summarize(a), "simulate") == summary_json(cfg, summarize(b), "simulate"));

    ScenarioConfig other = cfg;
    other.seed = 12;
    CHECK(trial_csv(run_trial(other, 0, false)) != trial_csv(a[0]));
}

TEST_CASE("single trials match the batch run")
{
    ScenarioConfig cfg = small_scenario(false);
    const auto batch = run_tracking_sim(cfg);
    CHECK(trial_csv(run_trial(cfg, 1, false)) == trial_csv(batch[1]));
    cfg.threads = 2;
    const auto threaded = run_tracking_sim(cfg);
    CHECK(trial_csv(threaded[0]) == trial_csv(batch[0]));
    CHECK(trial_csv(threaded[1]) == trial_csv(batch[1]));
}

TEST_CASE("summary means agree with the per-step tables")
{
    const auto records = run_tracking_sim(small_scenario(false));
    const SummaryStats stats = summarize(records);
    double total_actual = 0.0;
    double total_estimated = 0.0;
    std::size_t n_actual = 0;
    std::size_t n_estimated = 0;
    for (std::size_t t = 0; t < records.size(); ++t) {
        const auto rows = rows_of(trial_csv(records[t]));
        const std::size_t c_act = column(rows[0], "sigma_p_actual");
        const std::size_t c_est = column(rows[0], "sigma_p_estimated");
        const std::size_t c_det = column(rows[0], "detected");
        double act = 0.0;
        double est = 0.0;
        std::size_t fresh = 0;
        for (std::size_t r = 1; r < rows.size(); ++r) {
            act += std::stod(rows[r][c_act]);
            if (rows[r][c_det] == "1") {
                est += std::stod(rows[r][c_est]);
                ++fresh;
            }
        }
        const std::size_t steps = rows.size() - 1;
        CHECK(stats.trials[t].mean_sigma_p_actual == doctest::Approx(act / static_cast<double>(steps)).epsilon(1e-9));
        if (fresh > 0)
            CHECK(stats.trials[t].mean_sigma_p_estimated ==
                  doctest::Approx(est / static_cast<double>(fresh)).epsilon(1e-9));
        CHECK(stats.trials[t].coverage == doctest::Approx(static_cast<double>(fresh) / static_cast<double>(steps)));
        total_actual += act;
        total_estimated += est;
        n_actual += steps;
        n_estimated += fresh;
    }
    CHECK(stats.mean_sigma_p_actual == doctest::Approx(total_actual / static_cast<double>(n_actual)).epsilon(1e-9));
    if (n_estimated > 0)
        CHECK(stats.mean_sigma_p_estimated ==
              doctest::Approx(total_estimated / static_cast<double>(n_estimated)).epsilon(1e-9));
    CHECK_THROWS_AS(summarize({}), Error);
}

TEST_CASE("jamming only ever worsens the initiator's bound")
{
    const auto records = run_defense_sim(small_scenario(true));
    std::size_t jammed = 0;
    for (const auto& rec : records) {
        std::size_t triggers = 0;
        for (const auto& s : rec.steps) {
            if (s.triggered)
                ++triggers;
            if (s.jamming) {
                ++jammed;
                REQUIRE(s.sigma_p_actual > s.sigma_p_unjammed);
            } else {
                REQUIRE(s.sigma_p_actual == s.sigma_p_unjammed);
            }
        }
        CHECK(triggers == rec.events.size());
    }
    CHECK(jammed > 0);
    CHECK(summarize(records).mean_trigger_count > 0.0);
}

TEST_CASE("strong AWGN sweep point is always detected")
{
    ScenarioConfig cfg = small_scenario(false);
    cfg.sweep.sinr_db = {20.0};
    cfg.sweep.channels = {FadingKind::awgn()};
    cfg.sweep.n_trials = 20;
    cfg.csce.segment = 0.01;
    cfg.csce.short_len = 1e-3;
    cfg.csce.long_len = 5e-3;
    const auto rows = run_detection_sweep(cfg);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].channel == "awgn");
    CHECK(rows[0].detection_rate == 1.0);
    CHECK(rows[0].detections == 20);
    CHECK(rows[0].mean_crb_t_d > 0.0);
    CHECK(sweep_csv(rows) == sweep_csv(run_detection_sweep(cfg)));
}

TEST_CASE("csv to json")
{
    const std::string json = csv_to_json("a,b,c\n1,x,nan\n");
    CHECK(json.find("\"a\": 1") != std::string::npos);
    CHECK(json.find("\"b\": \"x\"") != std::string::npos);
    CHECK(json.find("\"c\": null") != std::string::npos);
}
