#include "gch/config.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace gch {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

double to_double(const std::string& v, int line, const std::string& key) {
    try {
        size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return d;
    } catch (...) {
        fail(line, "field '" + key + "': expected a number, got '" + v + "'");
    }
}

long to_long(const std::string& v, int line, const std::string& key) {
    try {
        size_t pos = 0;
        long d = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return d;
    } catch (...) {
        fail(line, "field '" + key + "': expected an integer, got '" + v + "'");
    }
}

const std::map<std::string, std::set<std::string>> kSchema = {
    {"grid", {"L", "N"}},
    {"time", {"dt", "t_end", "cfl_cap", "safety", "theta", "output_every"}},
    {"besov", {"p"}},
    {"initial",
     {"kind", "amplitude", "width", "center", "smoothing", "seed", "max_block", "constant",
      "normalize"}},
    {"run", {"experiment", "seed", "out_dir", "n_particles", "n_max"}},
};

}  // namespace

std::uint64_t RunConfig::hash() const {
    // FNV-1a over the verbatim text.
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : raw_text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    cfg.raw_text = text;

    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        if (s.front() == '[') {
            if (s.back() != ']') fail(lineno, "malformed section header '" + s + "'");
            section = trim(s.substr(1, s.size() - 2));
            if (!kSchema.count(section)) fail(lineno, "unknown section '" + section + "'");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) fail(lineno, "expected 'key = value', got '" + s + "'");
        const std::string key = trim(s.substr(0, eq));
        const std::string val = trim(s.substr(eq + 1));
        if (section.empty()) fail(lineno, "key '" + key + "' outside any section");
        if (!kSchema.at(section).count(key))
            fail(lineno, "unknown key '" + key + "' in section [" + section + "]");

        if (section == "grid") {
            if (key == "L") cfg.grid.half_length = to_double(val, lineno, key);
            else cfg.grid.n_points = static_cast<int>(to_long(val, lineno, key));
        } else if (section == "time") {
            if (key == "dt") cfg.time.dt = to_double(val, lineno, key);
            else if (key == "t_end") cfg.time.t_end = to_double(val, lineno, key);
            else if (key == "cfl_cap") cfg.time.cfl_cap = to_double(val, lineno, key);
            else if (key == "safety") cfg.time.safety = to_double(val, lineno, key);
            else if (key == "theta") cfg.time.theta = to_double(val, lineno, key);
            else cfg.time.output_every = static_cast<int>(to_long(val, lineno, key));
        } else if (section == "besov") {
            cfg.besov_p = to_double(val, lineno, key);
            if (!(cfg.besov_p >= 1.0)) fail(lineno, "besov p must be >= 1");
        } else if (section == "initial") {
            if (key == "kind") {
                if (val == "gaussian") cfg.initial.kind = InitialDataSpec::Kind::gaussian;
                else if (val == "smoothed_peakon")
                    cfg.initial.kind = InitialDataSpec::Kind::smoothed_peakon;
                else if (val == "band_limited_random")
                    cfg.initial.kind = InitialDataSpec::Kind::band_limited_random;
                else if (val == "constant") cfg.initial.kind = InitialDataSpec::Kind::constant;
                else fail(lineno, "unknown initial kind '" + val + "'");
            } else if (key == "amplitude") cfg.initial.amplitude = to_double(val, lineno, key);
            else if (key == "width") cfg.initial.width = to_double(val, lineno, key);
            else if (key == "center") cfg.initial.center = to_double(val, lineno, key);
            else if (key == "smoothing") cfg.initial.smoothing = to_double(val, lineno, key);
            else if (key == "seed")
                cfg.initial.seed = static_cast<std::uint64_t>(to_long(val, lineno, key));
            else if (key == "max_block")
                cfg.initial.max_block = static_cast<int>(to_long(val, lineno, key));
            else if (key == "constant") cfg.initial.constant_value = to_double(val, lineno, key);
            else cfg.initial.normalize_besov = to_double(val, lineno, key);
        } else if (section == "run") {
            if (key == "experiment") cfg.experiment = val;
            else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_long(val, lineno, key));
            else if (key == "out_dir") cfg.out_dir = val;
            else if (key == "n_particles")
                cfg.n_particles = static_cast<int>(to_long(val, lineno, key));
            else cfg.n_max = static_cast<int>(to_long(val, lineno, key));
        }
    }

    cfg.grid.validate();
    cfg.time.validate();
    cfg.initial.besov_p = cfg.besov_p;
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

}  // namespace gch
