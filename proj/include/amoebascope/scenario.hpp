#pragma once

// Registered end-to-end scenarios.  Each writes images, CSV clouds and a
// versioned metrics JSON into the output directory and returns the metrics
// as a JSON string.  Identical (config, seed) reproduce byte-identical
// outputs.

#include <cstdint>
#include <string>
#include <vector>

namespace amoebascope {

struct ScenarioConfig {
    std::string name;
    std::string out_dir = ".";
    std::uint64_t seed = 1;
    int res = 0;        // 0: scenario default
    int angles = 0;     // 0: scenario default
    int grid = 0;       // contour / cloud grid, 0: default
    std::vector<double> window;  // flattened lo1,hi1,...; empty: default
};

// Known names: fig1_real_line, fig2_complex_line, fig3_hyperbola,
// pinch_locate, basis_gap, boundary_demo.  Throws UnknownScenario otherwise.
std::string run_scenario(const ScenarioConfig& config);

std::vector<std::string> scenario_names();

// Parse a JSON config file ({"name": ..., "seed": ..., "res": ...,
// "angles": ..., "grid": ..., "window": [...]}); missing keys keep defaults.
ScenarioConfig config_from_json(const std::string& json_text);

} // namespace amoebascope
