#include "loscov/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace loscov::cli {

using nlohmann::json;

json default_config()
{
    return json{
        {"heights", {{"h_ap", 3.0}, {"h_ue", 1.5}, {"h_max", 3.0}, {"h_ap_high", 30.0}}},
        {"blockage", {{"beta", 0.0709}}},
        {"pathloss", {{"alpha_los", 4.0}, {"alpha_nlos", 2.0}, {"c_los", 1.0}, {"c_nlos", 1.0}}},
        {"deployment",
         {{"avg_cell_radius", 100.0},
          {"lambda_convention", "disk"},
          {"cell_radius", 100.0},
          {"grid_step", 0.0},
          {"joint_mode", "regular"},
          {"carrier_ghz", 28.0}}},
        {"sweep",
         {{"h_ap", {{"start", 3.0}, {"stop", 40.0}, {"step", 0.5}}},
          {"h_max_values", {3.0, 10.0, 15.0, 30.0}},
          {"assoc_variable", "radius"},
          {"radius", {{"start", 25.0}, {"stop", 1000.0}, {"step", 25.0}}},
          {"h_max", {{"start", 1.5}, {"stop", 15.0}, {"step", 0.5}}},
          {"h_ap_values", {3.0, 30.0}},
          {"joint_h_max_values", {3.0, 5.0, 10.0, 15.0}},
          {"target", 0.95},
          {"irregular_cases", json::array({json{{"h_max", 3.0}, {"high_radius", 1000.0}},
                                           json{{"h_max", 10.0}, {"high_radius", 300.0}}})}}},
        {"mc",
         {{"seed", 20160523},
          {"n_pblk", 1000000},
          {"n_assoc", 100000},
          {"n_regular", 1000000},
          {"window_factor", 1.0},
          {"corrupt_beta", 1.0}}},
        {"output", {{"write_grid", true}}},
    };
}

namespace {

void collect_keys(const json& node, const std::string& prefix, std::vector<std::string>& out)
{
    for (auto it = node.begin(); it != node.end(); ++it) {
        const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
        // Sweep ranges are overridable as a whole as well as per field.
        if (it->is_object()) {
            if (prefix == "sweep")
                out.push_back(key);
            collect_keys(*it, key, out);
        } else {
            out.push_back(key);
        }
    }
}

std::string normalize(std::string key)
{
    std::replace(key.begin(), key.end(), '-', '_');
    return key;
}

double get_number(const json& cfg, const char* section, const char* key)
{
    const auto& v = cfg.at(section).at(key);
    if (!v.is_number())
        throw ConfigError(std::string(section) + "." + key + " must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d))
        throw ConfigError(std::string(section) + "." + key + " must be finite");
    return d;
}

}  // namespace

std::vector<std::string> config_keys()
{
    std::vector<std::string> keys;
    collect_keys(default_config(), "", keys);
    return keys;
}

void merge_config(json& base, const json& patch, const std::string& where)
{
    if (!patch.is_object())
        throw ConfigError("config" + (where.empty() ? std::string() : " section '" + where + "'") +
                          " must be a JSON object");
    for (auto it = patch.begin(); it != patch.end(); ++it) {
        const std::string key = normalize(it.key());
        const std::string path = where.empty() ? key : where + "." + key;
        if (!base.contains(key))
            throw ConfigError("unknown config key '" + path + "'");
        json& target = base[key];
        // Sections merge recursively; leaves (and sweep values, which may
        // switch between list and range form) are replaced.
        if (target.is_object() && it->is_object() && where.empty())
            merge_config(target, *it, path);
        else
            target = *it;
    }
}

json load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config file '" + path.string() + "' is not valid JSON: " + e.what());
    }
    if (doc.is_object() && doc.contains("tool") && doc.contains("config"))
        doc = doc.at("config");
    json cfg = default_config();
    merge_config(cfg, doc);
    return cfg;
}

void apply_override(json& cfg, const std::string& dotted_key, const std::string& text)
{
    const std::string key = normalize(dotted_key);
    const auto dot = key.find('.');
    if (dot == std::string::npos)
        throw ConfigError("override '" + dotted_key + "' must name section.key");
    const std::string section = key.substr(0, dot);
    std::string rest = key.substr(dot + 1);

    json value;
    try {
        value = json::parse(text);
    } catch (const json::parse_error&) {
        value = text;
    }

    if (!cfg.contains(section))
        throw ConfigError("unknown config section '" + section + "'");
    json* node = &cfg[section];
    for (auto pos = rest.find('.'); pos != std::string::npos; pos = rest.find('.')) {
        const std::string part = rest.substr(0, pos);
        if (!node->is_object() || !node->contains(part))
            throw ConfigError("unknown config key '" + key + "'");
        node = &(*node)[part];
        rest = rest.substr(pos + 1);
    }
    if (!node->is_object() || !node->contains(rest))
        throw ConfigError("unknown config key '" + key + "'");
    (*node)[rest] = value;
}

std::vector<double> expand_sweep(const json& v, const std::string& name)
{
    std::vector<double> out;
    if (v.is_number()) {
        out.push_back(v.get<double>());
    } else if (v.is_array()) {
        for (const auto& e : v) {
            if (!e.is_number())
                throw ConfigError("sweep '" + name + "' must contain numbers only");
            out.push_back(e.get<double>());
        }
    } else if (v.is_object()) {
        if (!v.contains("start") || !v.contains("stop") || !v.contains("step") || !v["start"].is_number() ||
            !v["stop"].is_number() || !v["step"].is_number())
            throw ConfigError("sweep '" + name + "' range needs numeric start, stop and step");
        const double start = v["start"].get<double>();
        const double stop = v["stop"].get<double>();
        const double step = v["step"].get<double>();
        if (!(step > 0.0))
            throw ConfigError("sweep '" + name + "' step must be positive");
        for (long i = 0;; ++i) {
            const double x = start + static_cast<double>(i) * step;
            if (x > stop + 1e-9 * step)
                break;
            out.push_back(x);
            if (i > 10'000'000)
                throw ConfigError("sweep '" + name + "' is too long");
        }
    } else {
        throw ConfigError("sweep '" + name + "' must be a number, a list or {start, stop, step}");
    }
    if (out.empty())
        throw ConfigError("sweep '" + name + "' is empty");
    for (double x : out)
        if (!std::isfinite(x))
            throw ConfigError("sweep '" + name + "' contains a non-finite value");
    return out;
}

HeightProfile low_profile(const json& cfg)
{
    return {get_number(cfg, "heights", "h_ap"), get_number(cfg, "heights", "h_ue"),
            get_number(cfg, "heights", "h_max")};
}

HeightProfile high_profile(const json& cfg)
{
    return {get_number(cfg, "heights", "h_ap_high"), get_number(cfg, "heights", "h_ue"),
            get_number(cfg, "heights", "h_max")};
}

BlockageParams blockage_params(const json& cfg) { return {get_number(cfg, "blockage", "beta")}; }

PathLossParams pathloss_params(const json& cfg)
{
    return {get_number(cfg, "pathloss", "alpha_los"), get_number(cfg, "pathloss", "alpha_nlos"),
            get_number(cfg, "pathloss", "c_los"), get_number(cfg, "pathloss", "c_nlos")};
}

LambdaConvention lambda_convention(const json& cfg)
{
    const auto& v = cfg.at("deployment").at("lambda_convention");
    if (!v.is_string())
        throw ConfigError("deployment.lambda_convention must be a string");
    try {
        return lambda_convention_from_string(v.get<std::string>());
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
}

}  // namespace loscov::cli
