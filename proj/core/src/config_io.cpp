#include "esec/config_io.hpp"

#include <fstream>
#include <stdexcept>

namespace esec {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw std::invalid_argument("expected boolean, got '" + v + "'");
}

} // namespace

std::map<std::string, std::string> read_flat_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty() || line.front() == '[') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw std::runtime_error("bad config line: " + line);
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        kv[key] = value;
    }
    return kv;
}

void apply_config(BuildOptions& opt, const std::map<std::string, std::string>& kv) {
    for (const auto& [key, value] : kv) {
        if (key == "eps_touch") opt.static_cfg.eps_touch = std::stod(value);
        else if (key == "null_radius") opt.static_cfg.null_radius = std::stod(value);
        else if (key == "around_radius") opt.static_cfg.around_radius = std::stod(value);
        else if (key == "use_point_sets") opt.static_cfg.use_point_sets = parse_bool(value);
        else if (key == "window") opt.dynamic_cfg.window = std::stoi(value);
        else if (key == "xi") opt.dynamic_cfg.xi = std::stod(value);
        else if (key == "stable_eps") opt.dynamic_cfg.stable_eps = std::stod(value);
        else if (key == "far_threshold") opt.dynamic_cfg.far_threshold = std::stod(value);
        else if (key == "move_eps") opt.dynamic_cfg.move_eps = std::stod(value);
        else if (key == "paper_literal_gc") opt.dynamic_cfg.paper_literal_gc = parse_bool(value);
        else if (key == "debounce") opt.debounce = std::stoi(value);
        else if (key == "literal_roles") opt.literal_roles = parse_bool(value);
        else throw std::invalid_argument("unknown config key: " + key);
    }
}

} // namespace esec
