#pragma once

#include "fluorsq/model.hpp"
#include "fluorsq/spectrum.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fluorsq::cli {

// Malformed or inconsistent configuration; the CLI exits with status 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Command { spectrum, decompose, dressed, gamma_scan, figure };

std::string_view to_string(Command command) noexcept;
Command parse_command(std::string_view name);

struct FrequencyGrid {
    double min = -30.0;
    double max = 30.0;
    int points = 601;

    bool operator==(const FrequencyGrid&) const = default;
};

struct Formats {
    bool csv = true;
    bool json = true;
    bool svg = false;

    bool operator==(const Formats&) const = default;
};

struct RunConfig {
    Command command = Command::spectrum;
    SystemParams params;
    FrequencyGrid grid;
    Channel channel = Channel::a;
    // One spectrum column per value; empty means "use params.p".
    std::vector<double> p_values;
    std::string output;
    Formats formats;
    // gamma-scan without explicit p_values: scan [-1, 1] instead of [0, 1].
    bool full_range = false;
    std::optional<std::string> preset;

    // Throws ConfigError unless points >= 2, min < max and every p in [-1, 1].
    void check() const;
    // p_values, or {params.p} when none were given.
    std::vector<double> resolved_p_values() const;
};

inline constexpr int kGammaScanPoints = 101;

// Strict readers: unknown keys are rejected. A top-level "meta" block (as
// written next to every result) is accepted and ignored, so emitted metadata
// can be fed back as a configuration.
SystemParams params_from_json(const nlohmann::json& j);
nlohmann::json params_to_json(const SystemParams& params);
RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& config);
RunConfig load_config(const std::string& path);

// Baked parameter sets of the reproduced figures: fig2a, fig2b, fig3, fig4,
// fig5, fig6. The returned config already carries the resolved command.
RunConfig figure_preset(std::string_view id);
std::vector<std::string> preset_ids();

} // namespace fluorsq::cli
