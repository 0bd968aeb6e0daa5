#include "fluorsq/cli/config.hpp"

#include <fstream>
#include <set>

namespace fluorsq::cli {

using nlohmann::json;

std::string_view to_string(Command command) noexcept {
    switch (command) {
    case Command::spectrum: return "spectrum";
    case Command::decompose: return "decompose";
    case Command::dressed: return "dressed";
    case Command::gamma_scan: return "gamma-scan";
    case Command::figure: return "figure";
    }
    return "spectrum";
}

Command parse_command(std::string_view name) {
    for (Command c : {Command::spectrum, Command::decompose, Command::dressed, Command::gamma_scan, Command::figure}) {
        if (to_string(c) == name) return c;
    }
    throw ConfigError("unknown command '" + std::string(name) + "'");
}

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, std::string_view where) {
    if (!j.is_object()) throw ConfigError(std::string(where) + " must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (!allowed.contains(key)) throw ConfigError("unknown key '" + key + "' in " + std::string(where));
    }
}

double number(const json& j, std::string_view key, std::string_view where) {
    const auto& v = j.at(std::string(key));
    if (!v.is_number()) throw ConfigError(std::string(where) + "." + std::string(key) + " must be a number");
    return v.get<double>();
}

Channel parse_channel(const json& j) {
    const auto name = j.get<std::string>();
    if (name == "a") return Channel::a;
    if (name == "b") return Channel::b;
    throw ConfigError("channel must be 'a' or 'b'");
}

} // namespace

SystemParams params_from_json(const json& j) {
    static const std::set<std::string> kRequired = {"gamma1",  "gamma2", "w12",    "delta_a", "delta_b",
                                                    "omega1", "omega2", "omega3", "p"};
    static const std::set<std::string> kAllowed = [] {
        auto s = kRequired;
        s.insert({"gamma3", "theta"});
        return s;
    }();
    reject_unknown(j, kAllowed, "params");
    for (const auto& key : kRequired) {
        if (!j.contains(key)) throw ConfigError("params." + key + " is required");
    }
    SystemParams s;
    s.gamma1 = number(j, "gamma1", "params");
    s.gamma2 = number(j, "gamma2", "params");
    s.gamma3 = j.contains("gamma3") ? number(j, "gamma3", "params") : 1.0;
    s.w12 = number(j, "w12", "params");
    s.delta_a = number(j, "delta_a", "params");
    s.delta_b = number(j, "delta_b", "params");
    s.omega1 = number(j, "omega1", "params");
    s.omega2 = number(j, "omega2", "params");
    s.omega3 = number(j, "omega3", "params");
    s.p = number(j, "p", "params");
    s.theta = j.contains("theta") ? number(j, "theta", "params") : 0.0;
    return s;
}

json params_to_json(const SystemParams& s) {
    return json{{"gamma1", s.gamma1}, {"gamma2", s.gamma2}, {"gamma3", s.gamma3}, {"w12", s.w12},
                {"delta_a", s.delta_a}, {"delta_b", s.delta_b}, {"omega1", s.omega1}, {"omega2", s.omega2},
                {"omega3", s.omega3}, {"p", s.p}, {"theta", s.theta}};
}

void RunConfig::check() const {
    if (grid.points < 2) throw ConfigError("grid.points must be at least 2");
    if (!(grid.min < grid.max)) throw ConfigError("grid.min must be below grid.max");
    for (double p : p_values) {
        if (!(p >= -1.0 && p <= 1.0)) throw ConfigError("every p value must lie in [-1, 1]");
    }
}

std::vector<double> RunConfig::resolved_p_values() const {
    if (!p_values.empty()) return p_values;
    return {params.p};
}

RunConfig config_from_json(const json& j) {
    reject_unknown(j, {"command", "params", "grid", "channel", "p_values", "output", "formats", "full_range",
                       "preset", "meta"},
                   "config");
    RunConfig c;
    try {
        if (j.contains("command")) c.command = parse_command(j.at("command").get<std::string>());
        if (j.contains("preset")) {
            c = figure_preset(j.at("preset").get<std::string>());
        }
        if (j.contains("params")) c.params = params_from_json(j.at("params"));
        if (j.contains("grid")) {
            const auto& g = j.at("grid");
            reject_unknown(g, {"min", "max", "points"}, "grid");
            if (g.contains("min")) c.grid.min = number(g, "min", "grid");
            if (g.contains("max")) c.grid.max = number(g, "max", "grid");
            if (g.contains("points")) c.grid.points = g.at("points").get<int>();
        }
        if (j.contains("channel")) c.channel = parse_channel(j.at("channel"));
        if (j.contains("p_values")) c.p_values = j.at("p_values").get<std::vector<double>>();
        if (j.contains("output")) c.output = j.at("output").get<std::string>();
        if (j.contains("formats")) {
            c.formats = Formats{false, false, false};
            for (const auto& f : j.at("formats").get<std::vector<std::string>>()) {
                if (f == "csv") c.formats.csv = true;
                else if (f == "json") c.formats.json = true;
                else if (f == "svg") c.formats.svg = true;
                else throw ConfigError("unknown format '" + f + "'");
            }
        }
        if (j.contains("full_range")) c.full_range = j.at("full_range").get<bool>();
        // A preset given together with an explicit command keeps the command.
        if (j.contains("command")) c.command = parse_command(j.at("command").get<std::string>());
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    c.check();
    return c;
}

json config_to_json(const RunConfig& c) {
    json formats = json::array();
    if (c.formats.csv) formats.push_back("csv");
    if (c.formats.json) formats.push_back("json");
    if (c.formats.svg) formats.push_back("svg");
    json j{{"command", to_string(c.command)},
           {"params", params_to_json(c.params)},
           {"grid", {{"min", c.grid.min}, {"max", c.grid.max}, {"points", c.grid.points}}},
           {"channel", std::string(to_string(c.channel))},
           {"p_values", c.p_values},
           {"formats", formats},
           {"full_range", c.full_range}};
    if (!c.output.empty()) j["output"] = c.output;
    return j;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("cannot parse '" + path + "': " + e.what());
    }
    return config_from_json(j);
}

namespace {

SystemParams figure2_params(double gamma) {
    SystemParams s;
    s.gamma1 = s.gamma2 = gamma;
    s.gamma3 = 1.0;
    s.w12 = 10.0;
    s.delta_a = s.delta_b = 10.0;
    s.omega1 = s.omega2 = s.omega3 = 3.0;
    s.p = 1.0;
    s.theta = 0.0;
    return s;
}

SystemParams figure5_params() {
    SystemParams s;
    s.gamma1 = s.gamma2 = 3.0;
    s.gamma3 = 1.0;
    s.w12 = 10.0;
    s.delta_a = s.delta_b = 20.0;
    s.omega1 = s.omega2 = s.omega3 = 6.0;
    s.p = 1.0;
    s.theta = 0.0;
    return s;
}

} // namespace

std::vector<std::string> preset_ids() { return {"fig2a", "fig2b", "fig3", "fig4", "fig5", "fig6"}; }

RunConfig figure_preset(std::string_view id) {
    RunConfig c;
    c.preset = std::string(id);
    c.formats = Formats{true, true, true};
    c.grid = FrequencyGrid{-30.0, 30.0, 601};
    if (id == "fig2a" || id == "fig2b" || id == "fig3") {
        c.command = Command::spectrum;
        c.params = figure2_params(id == "fig2b" ? 1.0 : 0.1);
        if (id == "fig3") c.params.w12 = 5.0;
        c.channel = Channel::a;
        c.p_values = {0.0, 1.0};
    } else if (id == "fig4") {
        c.command = Command::decompose;
        c.params = figure2_params(0.1);
        c.channel = Channel::a;
        c.p_values = {1.0};
    } else if (id == "fig5") {
        c.command = Command::spectrum;
        c.params = figure5_params();
        c.channel = Channel::b;
        c.p_values = {0.0, 1.0};
    } else if (id == "fig6") {
        c.command = Command::gamma_scan;
        c.params = figure5_params();
        c.channel = Channel::b;
    } else {
        throw ConfigError("unknown figure preset '" + std::string(id) + "'");
    }
    return c;
}

} // namespace fluorsq::cli
