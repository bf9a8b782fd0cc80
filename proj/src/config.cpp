#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "rkb/errors.hpp"
#include "rkb/io.hpp"

namespace rkb {

namespace pt = boost::property_tree;

namespace {

const std::pair<Command, const char*> kNames[] = {
    {Command::params_report, "params-report"}, {Command::shift_profile, "shift-profile"},
    {Command::section, "section"},             {Command::orbit, "orbit"},
    {Command::periodic, "periodic"},           {Command::twist, "twist"},
    {Command::caustics, "caustics"},           {Command::oracle_check, "oracle-check"},
};

std::string where(const std::string& sec, const std::string& key) { return "[" + sec + "] " + key; }

double to_double(const std::string& sec, const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError(where(sec, key) + ": expected a number, got '" + v + "'");
    }
}

int to_int(const std::string& sec, const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const int i = std::stoi(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return i;
    } catch (const std::exception&) {
        throw ConfigError(where(sec, key) + ": expected an integer, got '" + v + "'");
    }
}

std::vector<double> to_list(const std::string& sec, const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
        if (b == std::string::npos) throw ConfigError(where(sec, key) + ": empty list entry");
        out.push_back(to_double(sec, key, item.substr(b, e - b + 1)));
    }
    return out;
}

}  // namespace

const char* to_string(Command c) {
    for (const auto& [k, name] : kNames)
        if (k == c) return name;
    return "none";
}

Command command_from_string(const std::string& s) {
    for (const auto& [k, name] : kNames)
        if (s == name) return k;
    if (s.empty()) return Command::none;
    throw ConfigError("[command] command: unknown command '" + s + "'");
}

RunConfig parse_config(const std::string& text) {
    pt::ptree tree;
    std::istringstream in(text);
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError("line " + std::to_string(e.line()) + ": " + e.message());
    }

    const std::set<std::string> allowed[] = {
        {"energy_E", "offset_h", "mass_mu", "stiffness_om"},
        {"epsilon", "fourier_cos", "fourier_sin"},
        {"command", "seeds", "iterations", "tol", "actions", "m", "n"},
    };
    const char* sections[] = {"params", "profile", "command"};
    for (const auto& [sec, sub] : tree) {
        int idx = -1;
        for (int i = 0; i < 3; ++i)
            if (sec == sections[i]) idx = i;
        if (idx < 0) throw ConfigError("unknown section [" + sec + "]");
        for (const auto& [key, val] : sub)
            if (!allowed[idx].count(key)) throw ConfigError(where(sec, key) + ": unknown key");
    }

    RunConfig cfg;
    auto get = [&](const char* sec, const char* key) -> std::optional<std::string> {
        if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(std::string(sec) + "." + key, '.'))) return *v;
        return std::nullopt;
    };
    auto need = [&](const char* key) {
        const auto v = get("params", key);
        if (!v) throw ConfigError(where("params", key) + ": missing");
        return to_double("params", key, *v);
    };

    PhysParams raw;
    raw.energy_E = need("energy_E");
    raw.offset_h = need("offset_h");
    raw.mass_mu = need("mass_mu");
    raw.stiffness_om = need("stiffness_om");
    try {
        cfg.params = validate_params(raw);
    } catch (const DomainError& e) {
        throw ConfigError(std::string("[params]: ") + e.what());
    }

    PerturbationProfile prof;
    if (auto v = get("profile", "epsilon")) prof.epsilon = to_double("profile", "epsilon", *v);
    if (auto v = get("profile", "fourier_cos")) prof.fourier_cos = to_list("profile", "fourier_cos", *v);
    if (auto v = get("profile", "fourier_sin")) prof.fourier_sin = to_list("profile", "fourier_sin", *v);
    try {
        prof.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("[profile]: ") + e.what());
    }
    cfg.profile = prof;

    if (auto v = get("command", "command")) cfg.command = command_from_string(*v);
    if (auto v = get("command", "seeds")) cfg.seeds = to_int("command", "seeds", *v);
    if (auto v = get("command", "iterations")) cfg.iterations = to_int("command", "iterations", *v);
    if (auto v = get("command", "tol")) cfg.tol = to_double("command", "tol", *v);
    if (auto v = get("command", "actions")) cfg.actions = to_list("command", "actions", *v);
    if (auto v = get("command", "m")) cfg.m = to_int("command", "m", *v);
    if (auto v = get("command", "n")) cfg.n = to_int("command", "n", *v);
    if (cfg.seeds < 1) throw ConfigError("[command] seeds: must be at least 1");
    if (cfg.iterations < 1) throw ConfigError("[command] iterations: must be at least 1");
    if (!(cfg.tol > 0.0)) throw ConfigError("[command] tol: must be positive");
    if (cfg.n < 1) throw ConfigError("[command] n: must be at least 1");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

}  // namespace rkb
