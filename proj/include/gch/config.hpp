#pragma once

#include <cstdint>
#include <string>

#include "gch/core.hpp"
#include "gch/euler.hpp"

namespace gch {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Run configuration parsed from the flat key-value config format. Unknown
// sections or keys are rejected; the raw text is echoed into every report.
struct RunConfig {
    GridSpec grid;
    TimeControls time;
    double besov_p = 2.0;
    InitialDataSpec initial;
    std::string experiment = "crosscheck";
    std::uint64_t seed = 0;
    std::string out_dir = "out";
    int n_particles = 0;  // 0: use grid.n_points
    int n_max = 12;       // Friedrichs iterations

    std::string raw_text;  // verbatim config echo

    std::uint64_t hash() const;
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

}  // namespace gch
