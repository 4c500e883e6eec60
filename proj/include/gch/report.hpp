#pragma once

#include <map>
#include <string>
#include <vector>

#include "gch/config.hpp"
#include "gch/euler.hpp"

namespace gch {

struct Verdict {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct ExperimentReport {
    std::string name;
    RunConfig config;
    std::vector<Verdict> verdicts;
    std::map<std::string, double> fitted;
    std::map<std::string, std::vector<double>> series;
    std::vector<std::string> series_files;
    double runtime_s = 0.0;
    bool inconclusive = false;
    std::string note;

    bool all_passed() const {
        if (inconclusive) return false;
        for (const auto& v : verdicts)
            if (!v.passed) return false;
        return true;
    }
};

// Persistence: report JSON + CSV series + a gnuplot script, all under dir.
// File contents are deterministic functions of the report.
void write_report(const ExperimentReport& report, const std::string& dir);

void write_trajectory_csv(const Trajectory& traj, const std::string& path);
void write_fields_csv(const FieldPair& fp, const std::string& path);

}  // namespace gch
