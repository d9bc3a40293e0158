#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "json.hpp"

#include "sensguard/error.hpp"
#include "sensguard/harness.hpp"

namespace sensguard {

namespace {

std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os)
        fail(ErrorCode::io, "cannot open " + path.string() + " for writing");
    os << content;
    os.close();
    if (!os)
        fail(ErrorCode::io, "failed writing " + path.string());
}

std::string indexed(const char* stem, std::size_t i, const char* ext)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_%03zu.%s", stem, i, ext);
    return buf;
}

nlohmann::ordered_json number_or_null(double v)
{
    if (std::isnan(v) || std::isinf(v))
        return nullptr;
    return v;
}

nlohmann::ordered_json cell_value(const std::string& cell)
{
    if (cell == "nan" || cell == "-nan")
        return nullptr;
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (!cell.empty() && end == cell.c_str() + cell.size())
        return number_or_null(v);
    return cell;
}

std::vector<std::string> split_line(const std::string& line)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        if (comma == std::string::npos)
            return out;
        start = comma + 1;
    }
}

}

std::string csv_to_json(const std::string& csv)
{
    auto rows = nlohmann::ordered_json::array();
    std::size_t pos = csv.find('\n');
    require(pos != std::string::npos, ErrorCode::precondition, "CSV without header");
    const auto header = split_line(csv.substr(0, pos));
    while (pos + 1 < csv.size()) {
        const auto next = csv.find('\n', pos + 1);
        const auto cells = split_line(csv.substr(pos + 1, next - pos - 1));
        nlohmann::ordered_json row;
        for (std::size_t i = 0; i < header.size() && i < cells.size(); ++i)
            row[header[i]] = cell_value(cells[i]);
        rows.push_back(row);
        if (next == std::string::npos)
            break;
        pos = next;
    }
    return rows.dump(2) + "\n";
}

std::string trial_csv(const TrialRecord& rec)
{
    std::string out =
        "t,x,y,d,phi,v_r,condition,sinr_target_db,sinr_initiator_db,sinr_estimate_db,detected,carried,"
        "crb_t_d,crb_t_vr,crb_i_d,crb_i_vr,p_k,sigma_m,sigma_q,sigma_p_actual,sigma_p_unjammed,"
        "sigma_p_estimated,p_k_estimated,sigma_m_estimated,jamming,triggered,jam_duration,jam_power_ratio,j_count\n";
    for (const auto& s : rec.steps) {
        const double fields_a[] = {s.t, s.x, s.y, s.d, s.phi, s.v_r};
        for (double v : fields_a)
            out += num(v) + ",";
        out += std::string(to_string(s.condition)) + ",";
        const double fields_b[] = {s.sinr_target_db, s.sinr_initiator_db, s.sinr_estimate_db};
        for (double v : fields_b)
            out += num(v) + ",";
        out += std::string(s.detected ? "1," : "0,") + (s.carried ? "1," : "0,");
        const double fields_c[] = {s.crb_t_d, s.crb_t_vr, s.crb_i_d, s.crb_i_vr, s.p_k, s.sigma_m, s.sigma_q,
                                   s.sigma_p_actual, s.sigma_p_unjammed, s.sigma_p_estimated, s.p_k_estimated,
                                   s.sigma_m_estimated};
        for (double v : fields_c)
            out += num(v) + ",";
        out += std::string(s.jamming ? "1," : "0,") + (s.triggered ? "1," : "0,");
        out += num(s.jam_duration) + "," + num(s.jam_power_ratio) + "," + std::to_string(s.j_count) + "\n";
    }
    return out;
}

std::string events_csv(const TrialRecord& rec)
{
    std::string out = "t,action,duration,power_ratio,a_j_db\n";
    for (const auto& e : rec.events)
        out += num(e.t) + ",jam," + num(e.duration) + "," + num(e.power_ratio) + "," + num(e.a_j_db) + "\n";
    return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows)
{
    std::string out = "channel,sinr_db,n_trials,detections,detection_rate,mean_crb_t_d,mean_crb_t_vr,crb_i_d,crb_i_vr\n";
    for (const auto& r : rows) {
        out += r.channel + "," + num(r.sinr_db) + "," + std::to_string(r.n_trials) + "," +
               std::to_string(r.detections) + "," + num(r.detection_rate) + "," + num(r.mean_crb_t_d) + "," +
               num(r.mean_crb_t_vr) + "," + num(r.crb_i_d) + "," + num(r.crb_i_vr) + "\n";
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content)
{
    write_file(path, content);
}

std::string summary_json(const ScenarioConfig& cfg, const SummaryStats& stats, const std::string& mode)
{
    nlohmann::ordered_json j;
    j["mode"] = mode;
    j["name"] = cfg.name;
    j["seed"] = cfg.seed;
    j["n_trials"] = stats.trials.size();
    j["mean_sigma_p_actual"] = number_or_null(stats.mean_sigma_p_actual);
    j["mean_sigma_p_estimated"] = number_or_null(stats.mean_sigma_p_estimated);
    j["median_sigma_p_actual"] = number_or_null(stats.median_sigma_p_actual);
    j["median_sigma_p_estimated"] = number_or_null(stats.median_sigma_p_estimated);
    j["coverage"] = stats.coverage;
    j["jam_fraction"] = stats.jam_fraction;
    j["mean_trigger_count"] = stats.mean_trigger_count;
    auto& trials = j["trials"] = nlohmann::ordered_json::array();
    for (const auto& t : stats.trials) {
        nlohmann::ordered_json tj;
        tj["trial"] = t.trial;
        tj["mean_sigma_p_actual"] = number_or_null(t.mean_sigma_p_actual);
        tj["mean_sigma_p_estimated"] = number_or_null(t.mean_sigma_p_estimated);
        tj["median_sigma_p_actual"] = number_or_null(t.median_sigma_p_actual);
        tj["median_sigma_p_estimated"] = number_or_null(t.median_sigma_p_estimated);
        tj["coverage"] = t.coverage;
        tj["jam_fraction"] = t.jam_fraction;
        tj["trigger_count"] = t.trigger_count;
        trials.push_back(tj);
    }
    auto& echo = j["config"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : config_values(cfg))
        echo[key] = value;
    return j.dump(2) + "\n";
}

void write_outputs(const std::vector<TrialRecord>& records, const SummaryStats& stats, const ScenarioConfig& cfg,
                   const std::string& mode, const std::string& dir, const std::string& format)
{
    require(!records.empty(), ErrorCode::precondition, "no trial records to write");
    const std::filesystem::path root(dir);
    std::error_code ec;
    std::filesystem::create_directories(root, ec);
    if (ec)
        fail(ErrorCode::io, "cannot create output directory " + dir + ": " + ec.message());
    for (const auto& rec : records) {
        const bool json = format == "json";
        const char* ext = json ? "json" : "csv";
        const std::string series = trial_csv(rec);
        write_file(root / indexed("trial", rec.trial, ext), json ? csv_to_json(series) : series);
        if (mode == "defend") {
            const std::string log = events_csv(rec);
            write_file(root / indexed("events", rec.trial, ext), json ? csv_to_json(log) : log);
        }
    }
    write_file(root / "summary.json", summary_json(cfg, stats, mode));
}

}
