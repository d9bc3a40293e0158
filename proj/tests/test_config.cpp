#include "doctest.h"

#include <cmath>
#include <optional>
#include <string>

#include "sensguard/config.hpp"
#include "sensguard/error.hpp"

using namespace sensguard;

namespace {

std::optional<ErrorCode> code_of(const std::string& text)
{
    try {
        parse_config(text);
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

}

TEST_CASE("defaults follow the simulation setup tables")
{
    const ScenarioConfig cfg = parse_config("");
    CHECK(cfg.pulse.bandwidth == 100e6);
    CHECK(cfg.pulse.carrier == 5.8e9);
    CHECK(cfg.pulse.pulse_duration == 1e-4);
    CHECK(cfg.pulse.prt == 4e-4);
    CHECK(cfg.channel.tx_power_dbm == 15.0);
    CHECK(cfg.channel.noise_floor_dbm == -92.0);
    CHECK(cfg.channel.beta_r_db == -6.0);
    CHECK(cfg.defense.theta_p == 0.17);
    CHECK(cfg.defense.theta_j == 3);
    CHECK(cfg.defense.k_m == 3);
    CHECK(cfg.effective_sample_rate() == 200e6);
}

TEST_CASE("round trip through the ini form")
{
    ScenarioConfig cfg;
    cfg.name = "round";
    cfg.seed = 99;
    cfg.pulse.bandwidth = 150e6;
    cfg.channel.los_fading = FadingKind::rician(3.5);
    cfg.channel.interference_dbm = -95.0;
    cfg.defense_enabled = true;
    cfg.defense.strategy = Strategy::moving_average;
    cfg.defense.jam_model = JamModel::echo;
    cfg.sweep.sinr_db = {-30.0, -12.5, 0.0};
    cfg.mobility.start = Vec2{3.0, 4.0};
    const std::string ini = config_to_ini(cfg);
    const ScenarioConfig back = parse_config(ini);
    CHECK(config_to_ini(back) == ini);
    CHECK(back.name == "round");
    CHECK(back.seed == 99);
    CHECK(back.pulse.bandwidth == 150e6);
    CHECK(back.channel.los_fading.k_factor == 3.5);
    CHECK(back.defense.strategy == Strategy::moving_average);
    CHECK(back.defense.jam_model == JamModel::echo);
    CHECK(back.sweep.sinr_db == cfg.sweep.sinr_db);
    REQUIRE(back.mobility.start.has_value());
    CHECK(back.mobility.start->x == 3.0);

    const ScenarioConfig defaults;
    CHECK(config_to_ini(parse_config(config_to_ini(defaults))) == config_to_ini(defaults));
    CHECK(std::isinf(parse_config(config_to_ini(defaults)).channel.interference_dbm));
}

TEST_CASE("config errors")
{
    CHECK(code_of("[pulse]\nbandwith = 1e6\n") == ErrorCode::config);
    CHECK(code_of("[nosuch]\nkey = 1\n") == ErrorCode::config);
    CHECK(code_of("[pulse]\nbandwidth = fast\n") == ErrorCode::config);
    CHECK(code_of("[pulse]\nbandwidth = 1e6x\n") == ErrorCode::config);
    CHECK(code_of("[pulse]\nprt = 1e-5\n") == ErrorCode::config);
    CHECK(code_of("[scenario]\nn_trials = -1\n") == ErrorCode::config);
    CHECK(code_of("[scenario]\nn_trials = 0\n") == ErrorCode::config);
    CHECK(code_of("[scenario]\nsample_rate = 1e6\n") == ErrorCode::config);
    CHECK(code_of("[channel]\nlos_fading = nakagami\n") == ErrorCode::config);
    CHECK(code_of("[csce]\nshort_len = 0.02\n") == ErrorCode::config);
    CHECK(code_of("[defense]\nenabled = maybe\n") == ErrorCode::config);
    CHECK(code_of("[defense]\nenabled = true\ntheta_j = 0\n") == ErrorCode::config);
    CHECK(code_of("orphan = 1\n") == ErrorCode::config);
    CHECK_THROWS_AS(load_config("/nonexistent/sensguard.cfg"), Error);
}

TEST_CASE("every registered key reads back what it was given")
{
    const ScenarioConfig defaults;
    for (const auto& [key, value] : config_values(defaults)) {
        CAPTURE(key);
        ScenarioConfig cfg;
        set_config_value(cfg, key, value);
        CHECK(config_to_ini(cfg) == config_to_ini(defaults));
    }
    CHECK(config_keys().size() == config_values(defaults).size());
    for (const auto& info : config_keys())
        CHECK_FALSE(info.help.empty());
}

TEST_CASE("number lists")
{
    CHECK(parse_number_list("1,2.5,-3") == std::vector<double>{1.0, 2.5, -3.0});
    CHECK(parse_number_list("0:5:20") == std::vector<double>{0, 5, 10, 15, 20});
    CHECK(parse_number_list("-25:5:10").size() == 8);
    CHECK(parse_number_list("0:0.1:0.3").size() == 4);
    CHECK(parse_number_list("7") == std::vector<double>{7.0});
    CHECK_THROWS_AS(parse_number_list("0:0:5"), Error);
    CHECK_THROWS_AS(parse_number_list("5:1:0"), Error);
    CHECK_THROWS_AS(parse_number_list("1,,2"), Error);
}

TEST_CASE("fading names")
{
    CHECK(parse_fading("AWGN").type == FadingType::awgn);
    CHECK(parse_fading(" rayleigh ").type == FadingType::rayleigh);
    CHECK(parse_fading("rician").k_factor == 2.0);
    CHECK(parse_fading("rician:7").k_factor == 7.0);
    CHECK(fading_to_string(parse_fading("rician:7")) == "rician:7");
    CHECK(fading_to_string(FadingKind::awgn()) == "awgn");
    CHECK_THROWS_AS(parse_fading("rician:0"), Error);
    CHECK_THROWS_AS(parse_fading("rician:-2"), Error);
    CHECK_THROWS_AS(parse_fading("ricean"), Error);
}

TEST_CASE("shipped configurations parse")
{
    for (const char* name : {"fig5", "fig7_50mhz", "fig7_150mhz"}) {
        CAPTURE(name);
        CHECK_NOTHROW(load_config(std::string(SENSGUARD_CONFIG_DIR) + "/" + name + ".cfg"));
    }
}
