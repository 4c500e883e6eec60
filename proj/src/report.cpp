#include "gch/report.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace gch {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
}

}  // namespace

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
    std::ostringstream os;
    os << "t,besov_m,linf_u,linf_ux,mass_m\n";
    for (const auto& s : traj.snapshots)
        os << fmt(s.t) << ',' << fmt(s.besov_m) << ',' << fmt(s.linf_u) << ','
           << fmt(s.linf_ux) << ',' << fmt(s.mass_m) << "\n";
    write_text(path, os.str());
}

void write_fields_csv(const FieldPair& fp, const std::string& path) {
    std::ostringstream os;
    os << "x,u,u_x,u_xx,m\n";
    for (int i = 0; i < fp.u.size(); ++i)
        os << fmt(fp.u.grid.node(i)) << ',' << fmt(fp.u[i]) << ',' << fmt(fp.u_x[i]) << ','
           << fmt(fp.u_xx[i]) << ',' << fmt(fp.m[i]) << "\n";
    write_text(path, os.str());
}

void write_report(const ExperimentReport& report, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);

    nlohmann::ordered_json j;
    j["name"] = report.name;
    j["config"] = report.config.raw_text;
    j["config_hash"] = report.config.hash();
    j["inconclusive"] = report.inconclusive;
    if (!report.note.empty()) j["note"] = report.note;
    j["verdicts"] = nlohmann::ordered_json::array();
    for (const auto& v : report.verdicts) {
        j["verdicts"].push_back({{"name", v.name},
                                 {"passed", v.passed},
                                 {"measured", v.measured},
                                 {"tolerance", v.tolerance},
                                 {"detail", v.detail}});
    }
    j["fitted"] = report.fitted;
    std::vector<std::string> series_files = report.series_files;
    for (const auto& [name, values] : report.series) series_files.push_back("series_" + name + ".csv");
    j["series_files"] = series_files;
    write_text((fs::path(dir) / "report.json").string(), j.dump(2) + "\n");
    // Wall-clock lives in a sidecar so report.json stays byte-identical
    // across reruns with the same config and seed.
    write_text((fs::path(dir) / "timing.txt").string(), fmt(report.runtime_s) + "\n");

    // Series CSV: one file per named series, plus a combined gnuplot script.
    std::ostringstream plot;
    plot << "# gnuplot script generated per run\nset datafile separator ','\nset key outside\n";
    for (const auto& [name, values] : report.series) {
        std::ostringstream os;
        os << "index," << name << "\n";
        for (size_t k = 0; k < values.size(); ++k) os << k << ',' << fmt(values[k]) << "\n";
        const std::string fname = "series_" + name + ".csv";
        write_text((fs::path(dir) / fname).string(), os.str());
        plot << "plot '" << fname << "' skip 1 using 1:2 with linespoints title '" << name
             << "'\npause -1\n";
    }
    write_text((fs::path(dir) / "plot.gp").string(), plot.str());
}

}  // namespace gch
