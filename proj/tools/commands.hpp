#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sensguard/config.hpp"

namespace sensguard::cli {

struct CommonOptions {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format = "csv";
    std::vector<std::string> overrides; // key=value
    std::optional<std::size_t> trials;
    std::optional<std::size_t> threads;
};

struct CrlbOptions {
    std::optional<double> bandwidth;
    std::optional<double> fc;
    std::optional<double> tp;
    std::optional<double> prt;
    std::optional<double> fs;
    std::optional<double> sigma_phi;
    std::string snr = "-10:5:20";
};

struct DetectOptions {
    std::string iq;
    std::optional<double> short_len;
    std::optional<double> long_len;
};

struct TrajectoryCmdOptions {
    std::size_t trial = 0;
};

ScenarioConfig resolve_config(const CommonOptions& common);

int run_crlb(const CommonOptions& common, const CrlbOptions& opts);
int run_detect(const CommonOptions& common, const DetectOptions& opts);
int run_detect_sweep(const CommonOptions& common);
int run_trajectory(const CommonOptions& common, const TrajectoryCmdOptions& opts);
int run_simulate(const CommonOptions& common);
int run_defend(const CommonOptions& common);

std::string config_key_help();

}
