#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "gch/experiments.hpp"

namespace fs = std::filesystem;

namespace {

struct CliOptions {
    std::string config_path;
    std::string out_dir;
    long long seed = -1;
    bool quiet = false;
};

gch::RunConfig load_and_override(const CliOptions& opt) {
    gch::RunConfig cfg = gch::load_config(opt.config_path);
    if (!opt.out_dir.empty()) cfg.out_dir = opt.out_dir;
    if (opt.seed >= 0) {
        cfg.seed = static_cast<std::uint64_t>(opt.seed);
        cfg.initial.seed = cfg.seed;
    }
    return cfg;
}

int run_simulate(const CliOptions& opt, gch::EulerForm form) {
    gch::RunConfig cfg = load_and_override(opt);
    gch::DyadicFilterBank bank(cfg.grid);
    const gch::BesovParams besov = gch::BesovParams::critical(cfg.besov_p);
    gch::FieldPair init = gch::make_initial_data(cfg.initial, cfg.grid, bank);
    gch::Trajectory traj = gch::simulate(init.m, cfg.time, bank, besov, form);

    fs::create_directories(cfg.out_dir);
    gch::write_trajectory_csv(traj, (fs::path(cfg.out_dir) / "trajectory.csv").string());
    gch::write_fields_csv(gch::fields_from_momentum(traj.snapshots.back().m),
                          (fs::path(cfg.out_dir) / "final_fields.csv").string());

    gch::ExperimentReport rep;
    rep.name = "simulate";
    rep.config = cfg;
    rep.inconclusive = traj.aborted;
    if (traj.aborted) rep.note = traj.abort_reason;
    rep.series_files.push_back("trajectory.csv");
    rep.series_files.push_back("final_fields.csv");
    rep.verdicts.push_back({"completed", !traj.aborted, traj.snapshots.back().t,
                            cfg.time.t_end, "run reached t_end without abort"});
    gch::write_report(rep, cfg.out_dir);
    if (!opt.quiet) {
        std::cout << (traj.aborted ? "ABORTED: " + traj.abort_reason
                                   : "completed to t = " + std::to_string(traj.snapshots.back().t))
                  << "\n";
    }
    return traj.aborted ? 2 : 0;
}

int run_norms(const CliOptions& opt) {
    gch::RunConfig cfg = load_and_override(opt);
    gch::DyadicFilterBank bank(cfg.grid);
    const gch::BesovParams besov = gch::BesovParams::critical(cfg.besov_p);
    gch::FieldPair init = gch::make_initial_data(cfg.initial, cfg.grid, bank);
    std::cout.precision(17);
    std::cout << "besov_m0 " << gch::besov_norm(init.m, besov, bank) << "\n"
              << "linf_u0 " << init.u.max_abs() << "\n"
              << "l2_m0 " << gch::lp_norm(init.m, 2.0) << "\n"
              << "mass_m0 " << gch::integrate(init.m) << "\n";
    return 0;
}

int run_lagrange_cmd(const CliOptions& opt) {
    gch::RunConfig cfg = load_and_override(opt);
    gch::DyadicFilterBank bank(cfg.grid);
    gch::FieldPair init = gch::make_initial_data(cfg.initial, cfg.grid, bank);
    const int np = cfg.n_particles > 0 ? cfg.n_particles : cfg.grid.n_points;
    gch::LagrangeHistory hist = gch::run_lagrange(init.m, np, cfg.time);
    gch::BreakingReport br = gch::breaking_monitor(hist);

    fs::create_directories(cfg.out_dir);
    {
        std::ofstream out(fs::path(cfg.out_dir) / "ensemble_final.csv");
        out.precision(17);
        out << "xi,y,yxi,M,U,Uxi\n";
        const auto& e = hist.snapshots.back();
        for (int i = 0; i < e.size(); ++i)
            out << e.xi[i] << ',' << e.y[i] << ',' << e.yxi[i] << ',' << e.m[i] << ','
                << e.u[i] << ',' << e.uxi[i] << "\n";
    }
    gch::ExperimentReport rep;
    rep.name = "lagrange";
    rep.config = cfg;
    rep.inconclusive = hist.aborted;
    if (hist.aborted) rep.note = hist.abort_reason;
    rep.fitted["min_yxi"] = br.min_yxi;
    rep.fitted["t_of_min"] = br.t_of_min;
    rep.series["min_yxi"] = hist.min_yxi_series;
    rep.series_files.push_back("ensemble_final.csv");
    rep.verdicts.push_back({"jacobian_window", !br.breached, br.min_yxi, 0.5,
                            "min y_xi stayed at or above 1/2"});
    gch::write_report(rep, cfg.out_dir);
    if (!opt.quiet)
        std::cout << "min y_xi = " << br.min_yxi << (br.breached ? " (breached)" : "") << "\n";
    return br.breached ? 2 : 0;
}

int run_iterate_cmd(const CliOptions& opt) {
    gch::RunConfig cfg = load_and_override(opt);
    gch::DyadicFilterBank bank(cfg.grid);
    const gch::BesovParams besov = gch::BesovParams::critical(cfg.besov_p);
    gch::FieldPair init = gch::make_initial_data(cfg.initial, cfg.grid, bank);
    gch::IterationTrace trace = gch::iterate(init.m, cfg.n_max, cfg.time, bank, besov);
    gch::AprioriBoundReport bound =
        gch::apriori_bound_check(trace, gch::besov_norm(init.m, besov, bank));

    fs::create_directories(cfg.out_dir);
    {
        std::ofstream out(fs::path(cfg.out_dir) / "iteration_trace.csv");
        out.precision(17);
        out << "n,sup_norm,diff,contraction_ratio\n";
        for (size_t n = 0; n < trace.sup_norms.size(); ++n) {
            out << n << ',' << trace.sup_norms[n] << ','
                << (n < trace.diffs.size() ? std::to_string(trace.diffs[n]) : "") << ','
                << (n >= 1 && n - 1 < trace.contraction_ratios.size()
                        ? std::to_string(trace.contraction_ratios[n - 1])
                        : "")
                << "\n";
        }
    }
    gch::ExperimentReport rep;
    rep.name = "iterate";
    rep.config = cfg;
    rep.inconclusive = trace.diverged;
    rep.fitted["fitted_C"] = bound.fitted_c;
    rep.fitted["premise_C_max"] = bound.premise_c_max;
    rep.series["sup_norms"] = trace.sup_norms;
    rep.series["diffs"] = trace.diffs;
    rep.series_files.push_back("iteration_trace.csv");
    rep.verdicts.push_back({"apriori_bound_fits", bound.fits, bound.fitted_c,
                            bound.premise_c_max, "smallest admissible C within the premise"});
    gch::write_report(rep, cfg.out_dir);
    if (!opt.quiet)
        std::cout << "fitted C = " << bound.fitted_c << " (premise max " << bound.premise_c_max
                  << ")\n";
    return bound.fits && !trace.diverged ? 0 : 2;
}

int run_experiment_cmd(const CliOptions& opt, const std::string& forced_name) {
    gch::RunConfig cfg = load_and_override(opt);
    if (!forced_name.empty()) cfg.experiment = forced_name;
    gch::ExperimentReport rep = gch::run_experiment(cfg);
    gch::write_report(rep, cfg.out_dir);
    if (!opt.quiet) {
        for (const auto& v : rep.verdicts)
            std::cout << (v.passed ? "[PASS] " : "[FAIL] ") << v.name << " measured=" << v.measured
                      << " tol=" << v.tolerance << "\n";
        if (rep.inconclusive) std::cout << "INCONCLUSIVE: " << rep.note << "\n";
    }
    return rep.all_passed() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gch-lab: numerical experiments for the generalized Camassa-Holm equation"};
    app.require_subcommand(1);

    CliOptions opt;
    auto add_common = [&opt](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "run-config file")->required();
        sub->add_option("--out", opt.out_dir, "output directory override");
        sub->add_option("--seed", opt.seed, "seed override");
        sub->add_flag("--quiet", opt.quiet, "suppress console output");
    };

    auto* sim = app.add_subcommand("simulate", "Eulerian momentum-form run");
    auto* it = app.add_subcommand("iterate", "Friedrichs iteration run");
    auto* lag = app.add_subcommand("lagrange", "Lagrangian characteristic run");
    auto* nrm = app.add_subcommand("norms", "print norms of the configured initial data");
    auto* exp = app.add_subcommand("experiment", "run the experiment named in the config");
    auto* cross = app.add_subcommand("crosscheck", "three-solver cross-check experiment");
    for (auto* sub : {sim, it, lag, nrm, exp, cross}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (sim->parsed()) return run_simulate(opt, gch::EulerForm::m_form);
        if (it->parsed()) return run_iterate_cmd(opt);
        if (lag->parsed()) return run_lagrange_cmd(opt);
        if (nrm->parsed()) return run_norms(opt);
        if (exp->parsed()) return run_experiment_cmd(opt, "");
        if (cross->parsed()) return run_experiment_cmd(opt, "crosscheck");
    } catch (const gch::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
