#include "sensguard/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "sensguard/error.hpp"

namespace sensguard {

namespace {

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const std::string& expected)
{
    fail(ErrorCode::config, "key " + key + ": cannot parse '" + value + "' as " + expected);
}

double to_double(const std::string& key, const std::string& text)
{
    const std::string v = boost::algorithm::trim_copy(text);
    if (v == "-inf")
        return -std::numeric_limits<double>::infinity();
    if (v == "inf")
        return std::numeric_limits<double>::infinity();
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size())
            bad_value(key, text, "a number");
        return d;
    } catch (const std::logic_error&) {
        bad_value(key, text, "a number");
    }
}

std::optional<double> to_optional_double(const std::string& key, const std::string& text)
{
    const std::string v = boost::algorithm::trim_copy(text);
    if (v == "auto" || v.empty())
        return std::nullopt;
    return to_double(key, v);
}

std::uint64_t to_uint(const std::string& key, const std::string& text)
{
    const std::string v = boost::algorithm::trim_copy(text);
    if (v.empty() || v[0] == '-')
        bad_value(key, text, "a non-negative integer");
    try {
        std::size_t used = 0;
        const auto n = std::stoull(v, &used);
        if (used != v.size())
            bad_value(key, text, "a non-negative integer");
        return n;
    } catch (const std::logic_error&) {
        bad_value(key, text, "a non-negative integer");
    }
}

bool to_bool(const std::string& key, const std::string& text)
{
    const std::string v = boost::algorithm::to_lower_copy(boost::algorithm::trim_copy(text));
    if (v == "true" || v == "1" || v == "yes" || v == "on")
        return true;
    if (v == "false" || v == "0" || v == "no" || v == "off")
        return false;
    bad_value(key, text, "a boolean");
}

std::string fmt_double(double d)
{
    if (std::isinf(d))
        return d < 0 ? "-inf" : "inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", d);
    return buf;
}

std::string fmt_optional(const std::optional<double>& d)
{
    return d ? fmt_double(*d) : "auto";
}

std::vector<double> to_double_list(const std::string& key, const std::string& text)
{
    std::vector<double> out;
    const std::string v = boost::algorithm::trim_copy(text);
    std::vector<std::string> parts;
    boost::algorithm::split(parts, v, boost::algorithm::is_any_of(":"));
    if (parts.size() == 3) {
        const double start = to_double(key, parts[0]);
        const double step = to_double(key, parts[1]);
        const double stop = to_double(key, parts[2]);
        if (!(step > 0.0) || stop < start)
            bad_value(key, text, "start:step:stop with step > 0");
        for (std::size_t i = 0;; ++i) {
            const double x = start + static_cast<double>(i) * step;
            if (x > stop + 1e-9 * std::abs(step))
                break;
            out.push_back(x);
        }
        return out;
    }
    boost::algorithm::split(parts, v, boost::algorithm::is_any_of(","));
    for (const auto& p : parts)
        out.push_back(to_double(key, p));
    return out;
}

std::string fmt_double_list(const std::vector<double>& v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? "," : "") + fmt_double(v[i]);
    return out;
}

struct Entry {
    ConfigKeyInfo info;
    std::function<void(ScenarioConfig&, const std::string&)> set;
    std::function<std::string(const ScenarioConfig&)> get;
};

#define SG_DOUBLE(KEY, UNIT, HELP, FIELD) \
    Entry{{KEY, UNIT, HELP}, [](ScenarioConfig& c, const std::string& v) { c.FIELD = to_double(KEY, v); }, \
          [](const ScenarioConfig& c) { return fmt_double(c.FIELD); }}
#define SG_UINT(KEY, UNIT, HELP, FIELD, TYPE) \
    Entry{{KEY, UNIT, HELP}, [](ScenarioConfig& c, const std::string& v) { c.FIELD = static_cast<TYPE>(to_uint(KEY, v)); }, \
          [](const ScenarioConfig& c) { return std::to_string(c.FIELD); }}
#define SG_BOOL(KEY, HELP, FIELD) \
    Entry{{KEY, "bool", HELP}, [](ScenarioConfig& c, const std::string& v) { c.FIELD = to_bool(KEY, v); }, \
          [](const ScenarioConfig& c) { return std::string(c.FIELD ? "true" : "false"); }}

template <typename E>
E parse_enum(const std::string& key, const std::string& text, const std::map<std::string, E>& names)
{
    const std::string v = boost::algorithm::to_lower_copy(boost::algorithm::trim_copy(text));
    auto it = names.find(v);
    if (it == names.end()) {
        std::string allowed;
        for (const auto& [name, e] : names)
            allowed += (allowed.empty() ? "" : "|") + name;
        bad_value(key, text, allowed);
    }
    return it->second;
}

const std::vector<Entry>& registry()
{
    static const std::vector<Entry> entries = {
        Entry{{"scenario.name", "", "label echoed into outputs"},
              [](ScenarioConfig& c, const std::string& v) { c.name = boost::algorithm::trim_copy(v); },
              [](const ScenarioConfig& c) { return c.name; }},
        SG_UINT("scenario.seed", "", "master seed; --seed overrides", seed, std::uint64_t),
        SG_UINT("scenario.n_trials", "", "independent trials (trajectories)", n_trials, std::size_t),
        SG_UINT("scenario.threads", "", "worker threads, 0 = all cores", threads, std::size_t),
        SG_DOUBLE("scenario.duration", "s", "simulated time per trial", duration),
        SG_DOUBLE("scenario.assessment_interval", "s", "time between assessments", assessment_interval),

        SG_DOUBLE("pulse.bandwidth", "Hz", "LFM sweep bandwidth B", pulse.bandwidth),
        SG_DOUBLE("pulse.carrier", "Hz", "carrier frequency f_c", pulse.carrier),
        SG_DOUBLE("pulse.pulse_duration", "s", "pulse length T_p", pulse.pulse_duration),
        SG_DOUBLE("pulse.prt", "s", "pulse repetition time", pulse.prt),
        SG_DOUBLE("pulse.sample_rate", "Hz", "complex sample rate, 0 = 2B", sample_rate),

        SG_DOUBLE("mobility.speed", "m/s", "walking speed", mobility.speed),
        SG_DOUBLE("mobility.heading_sigma", "rad", "heading random-walk std per step", mobility.heading_sigma),
        SG_DOUBLE("mobility.x0", "m", "bounds lower-left x", mobility.bounds.x0),
        SG_DOUBLE("mobility.y0", "m", "bounds lower-left y", mobility.bounds.y0),
        SG_DOUBLE("mobility.width", "m", "bounds width", mobility.bounds.width),
        SG_DOUBLE("mobility.height", "m", "bounds height", mobility.bounds.height),
        Entry{{"mobility.start_x", "m", "start x, auto = bounds centre"},
              [](ScenarioConfig& c, const std::string& v) {
                  auto x = to_optional_double("mobility.start_x", v);
                  if (!x) { c.mobility.start.reset(); return; }
                  Vec2 p = c.mobility.start.value_or(Vec2{0.0, std::nan("")});
                  p.x = *x;
                  c.mobility.start = p;
              },
              [](const ScenarioConfig& c) {
                  return c.mobility.start ? fmt_double(c.mobility.start->x) : std::string("auto");
              }},
        Entry{{"mobility.start_y", "m", "start y, auto = bounds centre"},
              [](ScenarioConfig& c, const std::string& v) {
                  auto y = to_optional_double("mobility.start_y", v);
                  if (!y) { c.mobility.start.reset(); return; }
                  Vec2 p = c.mobility.start.value_or(Vec2{std::nan(""), 0.0});
                  p.y = *y;
                  c.mobility.start = p;
              },
              [](const ScenarioConfig& c) {
                  return c.mobility.start ? fmt_double(c.mobility.start->y) : std::string("auto");
              }},
        Entry{{"mobility.initial_heading", "rad", "initial heading, auto = uniform draw"},
              [](ScenarioConfig& c, const std::string& v) {
                  c.mobility.initial_heading = to_optional_double("mobility.initial_heading", v);
              },
              [](const ScenarioConfig& c) { return fmt_optional(c.mobility.initial_heading); }},
        SG_DOUBLE("mobility.initiator_x", "m", "sensing initiator x", mobility.initiator.x),
        SG_DOUBLE("mobility.initiator_y", "m", "sensing initiator y", mobility.initiator.y),
        SG_DOUBLE("mobility.speed_jitter", "m/s", "per-step speed std, 0 = constant", mobility.speed_jitter),

        SG_DOUBLE("channel.tx_power_dbm", "dBm", "initiator transmit power T_r", channel.tx_power_dbm),
        SG_DOUBLE("channel.noise_floor_dbm", "dBm", "receiver noise floor N_f", channel.noise_floor_dbm),
        SG_DOUBLE("channel.interference_dbm", "dBm", "external interference, -inf = none", channel.interference_dbm),
        SG_DOUBLE("channel.beta_r_db", "dB", "reflection compensation beta_r", channel.beta_r_db),
        SG_DOUBLE("channel.height", "m", "pedestrian height h", channel.height),
        SG_DOUBLE("channel.los_dwell", "s", "mean LOS dwell time", channel.los_dwell),
        SG_DOUBLE("channel.nlos_dwell", "s", "mean NLOS dwell time", channel.nlos_dwell),
        Entry{{"channel.initial_condition", "", "random (even odds)|stationary|los|nlos"},
              [](ScenarioConfig& c, const std::string& v) {
                  const std::string s = boost::algorithm::to_lower_copy(boost::algorithm::trim_copy(v));
                  if (s != "random" && s != "stationary" && s != "los" && s != "nlos")
                      bad_value("channel.initial_condition", v, "random|stationary|los|nlos");
                  c.channel.initial_condition = s;
              },
              [](const ScenarioConfig& c) { return c.channel.initial_condition; }},
        Entry{{"channel.los_fading", "", "fading under LOS: awgn|rayleigh|rician:K"},
              [](ScenarioConfig& c, const std::string& v) { c.channel.los_fading = parse_fading(v); },
              [](const ScenarioConfig& c) { return fading_to_string(c.channel.los_fading); }},
        Entry{{"channel.nlos_fading", "", "fading under NLOS: awgn|rayleigh|rician:K"},
              [](ScenarioConfig& c, const std::string& v) { c.channel.nlos_fading = parse_fading(v); },
              [](const ScenarioConfig& c) { return fading_to_string(c.channel.nlos_fading); }},
        SG_BOOL("channel.shadowing", "draw log-normal shadowing per step", channel.shadowing),
        SG_BOOL("channel.initiator_fading", "apply a block-fading gain to the echo power", channel.initiator_fading),

        Entry{{"fading.rayleigh_taps", "", "Rayleigh multipath taps"},
              [](ScenarioConfig& c, const std::string& v) {
                  c.channel.profile.rayleigh_taps = static_cast<int>(to_uint("fading.rayleigh_taps", v));
              },
              [](const ScenarioConfig& c) { return std::to_string(c.channel.profile.rayleigh_taps); }},
        SG_DOUBLE("fading.tap_decay_db", "dB", "power decay per tap", channel.profile.tap_decay_db),
        Entry{{"fading.tap_spacing", "samples", "delay between taps"},
              [](ScenarioConfig& c, const std::string& v) {
                  c.channel.profile.tap_spacing = static_cast<int>(to_uint("fading.tap_spacing", v));
              },
              [](const ScenarioConfig& c) { return std::to_string(c.channel.profile.tap_spacing); }},
        SG_DOUBLE("fading.doppler_hz", "Hz", "scattered-path Doppler spread, 0 = block fading", channel.profile.doppler_hz),
        SG_DOUBLE("fading.los_doppler_hz", "Hz", "maximum Doppler of the Rician LOS ray", channel.profile.los_doppler_hz),
        Entry{{"fading.sinusoids", "", "sinusoids per scattered process"},
              [](ScenarioConfig& c, const std::string& v) {
                  c.channel.profile.sinusoids = static_cast<int>(to_uint("fading.sinusoids", v));
              },
              [](const ScenarioConfig& c) { return std::to_string(c.channel.profile.sinusoids); }},
        SG_UINT("fading.knot_spacing", "samples", "exact gain evaluation spacing", channel.profile.knot_spacing, std::size_t),

        SG_DOUBLE("estimator.sigma_phi", "rad", "fixed angle CRLB", estimator.sigma_phi),
        Entry{{"estimator.sigma_m_form", "", "law_of_cosines|simplified"},
              [](ScenarioConfig& c, const std::string& v) {
                  c.estimator.sigma_m_form = parse_enum<SigmaMForm>("estimator.sigma_m_form", v,
                      {{"law_of_cosines", SigmaMForm::law_of_cosines}, {"simplified", SigmaMForm::simplified}});
              },
              [](const ScenarioConfig& c) { return std::string(to_string(c.estimator.sigma_m_form)); }},
        Entry{{"estimator.sigma_m_method", "", "closed_form|monte_carlo"},
              [](ScenarioConfig& c, const std::string& v) {
                  c.estimator.sigma_m_method = parse_enum<SigmaMMethod>("estimator.sigma_m_method", v,
                      {{"closed_form", SigmaMMethod::closed_form}, {"monte_carlo", SigmaMMethod::monte_carlo}});
              },
              [](const ScenarioConfig& c) { return std::string(to_string(c.estimator.sigma_m_method)); }},
        SG_UINT("estimator.n_mc", "", "Monte Carlo draws for sigma_M", estimator.n_mc, std::size_t),
        Entry{{"estimator.sigma_q_mode", "", "position|literal"},
              [](ScenarioConfig& c, const std::string& v) {
                  c.estimator.q_mode = parse_enum<QuantizationMode>("estimator.sigma_q_mode", v,
                      {{"position", QuantizationMode::position}, {"literal", QuantizationMode::literal}});
              },
              [](const ScenarioConfig& c) { return std::string(to_string(c.estimator.q_mode)); }},
        Entry{{"estimator.combine", "", "rss|sum"},
              [](ScenarioConfig& c, const std::string& v) {
                  c.estimator.combine = parse_enum<CombineMode>("estimator.combine", v,
                      {{"rss", CombineMode::rss}, {"sum", CombineMode::sum}});
              },
              [](const ScenarioConfig& c) { return std::string(to_string(c.estimator.combine)); }},
        SG_DOUBLE("estimator.p_floor", "", "lower clamp for p_k", estimator.p_floor),

        SG_DOUBLE("csce.segment", "s", "received segment per assessment", csce.segment),
        SG_DOUBLE("csce.short_len", "s", "short correlation window N_s", csce.short_len),
        SG_DOUBLE("csce.long_len", "s", "long correlation window N_l", csce.long_len),
        SG_DOUBLE("csce.corr_threshold", "", "normalized correlation threshold", csce.corr_threshold),
        SG_DOUBLE("csce.gap_fraction", "", "peak merge fraction of the typical gap", csce.gap_fraction),
        SG_UINT("csce.ma_taps", "samples", "moving-average length", csce.ma_taps, std::size_t),
        SG_DOUBLE("csce.pulse_threshold", "", "pulse localisation threshold", csce.pulse_threshold),
        SG_DOUBLE("csce.min_peak_to_median", "", "correlation significance gate", csce.min_peak_to_median),
        SG_DOUBLE("csce.max_snr_db", "dB", "clamp for the SNR estimate", csce.max_snr_db),
        SG_BOOL("csce.reject_communication", "discard detections failing the CRB gate", csce.reject_communication),
        SG_DOUBLE("csce.gate_sigma_d", "m", "unit-SNR sigma_D gate, 0 = twice the 50 MHz pulse", csce.gate_sigma_d),

        SG_BOOL("defense.enabled", "run the jamming monitor", defense_enabled),
        Entry{{"defense.strategy", "", "I|II"},
              [](ScenarioConfig& c, const std::string& v) {
                  c.defense.strategy = parse_enum<Strategy>("defense.strategy", v,
                      {{"i", Strategy::instant}, {"ii", Strategy::moving_average}});
              },
              [](const ScenarioConfig& c) { return std::string(to_string(c.defense.strategy)); }},
        SG_DOUBLE("defense.theta_p", "m", "performance threshold", defense.theta_p),
        Entry{{"defense.theta_j", "", "count threshold"},
              [](ScenarioConfig& c, const std::string& v) {
                  c.defense.theta_j = static_cast<int>(to_uint("defense.theta_j", v));
              },
              [](const ScenarioConfig& c) { return std::to_string(c.defense.theta_j); }},
        SG_DOUBLE("defense.lj_min", "s", "jam duration lower bound", defense.lj_min),
        SG_DOUBLE("defense.lj_max", "s", "jam duration upper bound", defense.lj_max),
        SG_DOUBLE("defense.aj_min_db", "dB", "jam power ratio lower bound", defense.aj_min_db),
        SG_DOUBLE("defense.aj_max_db", "dB", "jam power ratio upper bound", defense.aj_max_db),
        Entry{{"defense.k_m", "", "moving-average window"},
              [](ScenarioConfig& c, const std::string& v) { c.defense.k_m = static_cast<int>(to_uint("defense.k_m", v)); },
              [](const ScenarioConfig& c) { return std::to_string(c.defense.k_m); }},
        SG_DOUBLE("defense.monitor_interval", "s", "time between sigma_p readings, 0 = every assessment", defense.monitor_interval),
        SG_BOOL("defense.reset_on_recovery", "reset J_count when a reading is above theta_p", defense.reset_on_recovery),
        Entry{{"defense.jam_model", "", "literal|echo|direct"},
              [](ScenarioConfig& c, const std::string& v) {
                  c.defense.jam_model = parse_enum<JamModel>("defense.jam_model", v,
                      {{"literal", JamModel::literal}, {"echo", JamModel::echo}, {"direct", JamModel::direct}});
              },
              [](const ScenarioConfig& c) { return std::string(to_string(c.defense.jam_model)); }},

        Entry{{"sweep.sinr_db", "dB", "list a,b,c or start:step:stop"},
              [](ScenarioConfig& c, const std::string& v) { c.sweep.sinr_db = to_double_list("sweep.sinr_db", v); },
              [](const ScenarioConfig& c) { return fmt_double_list(c.sweep.sinr_db); }},
        Entry{{"sweep.channels", "", "comma list of awgn|rayleigh|rician:K"},
              [](ScenarioConfig& c, const std::string& v) {
                  std::vector<std::string> parts;
                  boost::algorithm::split(parts, v, boost::algorithm::is_any_of(","));
                  c.sweep.channels.clear();
                  for (const auto& p : parts)
                      c.sweep.channels.push_back(parse_fading(p));
              },
              [](const ScenarioConfig& c) {
                  std::string out;
                  for (std::size_t i = 0; i < c.sweep.channels.size(); ++i)
                      out += (i ? "," : "") + fading_to_string(c.sweep.channels[i]);
                  return out;
              }},
        SG_UINT("sweep.n_trials", "", "trials per grid point", sweep.n_trials, std::size_t),
        SG_BOOL("sweep.interference", "split the background equally between noise and OFDM", sweep.interference),
        Entry{{"sweep.ofdm_subcarriers", "", "OFDM subcarriers"},
              [](ScenarioConfig& c, const std::string& v) {
                  c.sweep.ofdm.n_subcarriers = static_cast<int>(to_uint("sweep.ofdm_subcarriers", v));
              },
              [](const ScenarioConfig& c) { return std::to_string(c.sweep.ofdm.n_subcarriers); }},
        SG_DOUBLE("sweep.ofdm_symbol_rate", "1/s", "OFDM symbols per second", sweep.ofdm.symbol_rate),
        SG_DOUBLE("sweep.ofdm_cp_fraction", "", "cyclic prefix fraction", sweep.ofdm.cp_fraction),
    };
    return entries;
}

#undef SG_DOUBLE
#undef SG_UINT
#undef SG_BOOL

}

std::string fading_to_string(const FadingKind& kind)
{
    if (kind.type == FadingType::rician)
        return "rician:" + fmt_double(kind.k_factor);
    return to_string(kind.type);
}

FadingKind parse_fading(const std::string& text)
{
    const std::string v = boost::algorithm::to_lower_copy(boost::algorithm::trim_copy(text));
    if (v == "awgn")
        return FadingKind::awgn();
    if (v == "rayleigh")
        return FadingKind::rayleigh();
    if (v == "rician")
        return FadingKind::rician(2.0);
    if (boost::algorithm::starts_with(v, "rician:")) {
        const double k = to_double("fading", v.substr(7));
        if (!(k > 0.0))
            fail(ErrorCode::config, "Rician K must be positive");
        return FadingKind::rician(k);
    }
    fail(ErrorCode::config, "unknown fading kind '" + text + "'");
}

std::vector<double> parse_number_list(const std::string& text)
{
    return to_double_list("list", text);
}

void set_config_value(ScenarioConfig& cfg, const std::string& key, const std::string& value)
{
    for (const auto& e : registry()) {
        if (e.info.key == key) {
            e.set(cfg, value);
            return;
        }
    }
    fail(ErrorCode::config, "unknown config key " + key);
}

const std::vector<ConfigKeyInfo>& config_keys()
{
    static const std::vector<ConfigKeyInfo> keys = [] {
        std::vector<ConfigKeyInfo> out;
        for (const auto& e : registry())
            out.push_back(e.info);
        return out;
    }();
    return keys;
}

ScenarioConfig parse_config(const std::string& text)
{
    boost::property_tree::ptree tree;
    std::istringstream is(text);
    try {
        boost::property_tree::ini_parser::read_ini(is, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        fail(ErrorCode::config, e.message() + " (line " + std::to_string(e.line()) + ")");
    }
    ScenarioConfig cfg;
    for (const auto& [section, body] : tree) {
        if (body.empty())
            fail(ErrorCode::config, "key " + section + " is outside any section");
        for (const auto& [name, value] : body)
            set_config_value(cfg, section + "." + name, value.data());
    }
    cfg.validate();
    return cfg;
}

ScenarioConfig load_config(const std::string& path)
{
    std::ifstream is(path);
    if (!is)
        fail(ErrorCode::config, "cannot read config " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str());
}

std::vector<std::pair<std::string, std::string>> config_values(const ScenarioConfig& cfg)
{
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& e : registry())
        out.emplace_back(e.info.key, e.get(cfg));
    return out;
}

std::string config_to_ini(const ScenarioConfig& cfg)
{
    std::string out;
    std::string current;
    for (const auto& [key, value] : config_values(cfg)) {
        const auto dot = key.find('.');
        const std::string section = key.substr(0, dot);
        if (section != current) {
            out += (current.empty() ? "" : "\n") + std::string("[") + section + "]\n";
            current = section;
        }
        out += key.substr(dot + 1) + " = " + value + "\n";
    }
    return out;
}

void ScenarioConfig::validate() const
{
    try {
        pulse.validate();
    } catch (const Error& e) {
        fail(ErrorCode::config, e.what());
    }
    require(n_trials >= 1, ErrorCode::config, "n_trials must be at least 1");
    require(assessment_interval > 0.0 && duration >= assessment_interval, ErrorCode::config,
            "need 0 < assessment_interval <= duration");
    require(sample_rate == 0.0 || sample_rate >= 2.0 * pulse.bandwidth, ErrorCode::config,
            "sample_rate must be 0 or at least 2B");
    require(mobility.bounds.width > 0.0 && mobility.bounds.height > 0.0, ErrorCode::config, "degenerate bounds");
    if (mobility.start)
        require(!std::isnan(mobility.start->x) && !std::isnan(mobility.start->y), ErrorCode::config,
                "set both start_x and start_y or neither");
    require(channel.los_dwell > 0.0 && channel.nlos_dwell > 0.0, ErrorCode::config, "dwell times must be positive");
    require(estimator.sigma_phi >= 0.0, ErrorCode::config, "sigma_phi must be non-negative");
    require(estimator.p_floor > 0.0 && estimator.p_floor <= 1.0, ErrorCode::config, "p_floor must be in (0, 1]");
    require(estimator.n_mc >= 1000, ErrorCode::config, "n_mc must be at least 1000");
    require(csce.short_len > 0.0 && csce.short_len < csce.long_len, ErrorCode::config, "need 0 < short_len < long_len");
    require(csce.segment * (1.0 + 1e-9) >= csce.short_len + csce.long_len, ErrorCode::config, "csce.segment shorter than the windows");
    require(csce.segment * (1.0 + 1e-9) >= 3.0 * pulse.prt, ErrorCode::config, "csce.segment must cover at least 3 PRTs");
    require(sweep.n_trials >= 1, ErrorCode::config, "sweep.n_trials must be at least 1");
    require(!sweep.sinr_db.empty() && !sweep.channels.empty(), ErrorCode::config, "empty sweep grid");
    if (defense_enabled)
        defense.validate();
}

const char* to_string(SigmaMForm f)
{
    return f == SigmaMForm::law_of_cosines ? "law_of_cosines" : "simplified";
}

const char* to_string(SigmaMMethod m)
{
    return m == SigmaMMethod::closed_form ? "closed_form" : "monte_carlo";
}

}
