#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gch/experiments.hpp"

namespace py = pybind11;
using namespace gch;

namespace {

GridFunction from_array(const GridSpec& grid, py::array_t<double, py::array::c_style> arr) {
    if (arr.ndim() != 1 || arr.shape(0) != grid.n_points)
        throw std::invalid_argument("array length must equal grid.n_points");
    std::vector<double> v(arr.data(), arr.data() + arr.shape(0));
    return GridFunction(grid, std::move(v));
}

py::array_t<double> to_array(const std::vector<double>& v) {
    py::array_t<double> arr(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), arr.mutable_data());
    return arr;
}

py::array_t<double> to_array(const GridFunction& f) { return to_array(f.values); }

InitialDataSpec::Kind kind_from_string(const std::string& s) {
    if (s == "gaussian") return InitialDataSpec::Kind::gaussian;
    if (s == "smoothed_peakon") return InitialDataSpec::Kind::smoothed_peakon;
    if (s == "band_limited_random") return InitialDataSpec::Kind::band_limited_random;
    if (s == "constant") return InitialDataSpec::Kind::constant;
    throw std::invalid_argument("unknown initial-data kind: " + s);
}

}  // namespace

PYBIND11_MODULE(_gchlab, m) {
    m.doc() = "Generalized Camassa-Holm numerical laboratory (C++ core)";

    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init<double, int>(), py::arg("half_length"), py::arg("n_points"))
        .def_readonly("half_length", &GridSpec::half_length)
        .def_readonly("n_points", &GridSpec::n_points)
        .def_property_readonly("spacing", &GridSpec::spacing)
        .def("nodes", [](const GridSpec& g) {
            std::vector<double> x(g.n_points);
            for (int i = 0; i < g.n_points; ++i) x[i] = g.node(i);
            return to_array(x);
        });

    py::class_<BesovParams>(m, "BesovParams")
        .def(py::init([](double s, double p, double r) { return BesovParams{s, p, r}; }),
             py::arg("s"), py::arg("p"), py::arg("r"))
        .def_static("critical", &BesovParams::critical, py::arg("p"))
        .def_readonly("s", &BesovParams::s)
        .def_readonly("p", &BesovParams::p)
        .def_readonly("r", &BesovParams::r);

    py::class_<DyadicFilterBank>(m, "DyadicFilterBank")
        .def(py::init<const GridSpec&>(), py::arg("grid"))
        .def_property_readonly("j_max", &DyadicFilterBank::j_max)
        .def("multiplier",
             [](const DyadicFilterBank& b, int j) { return to_array(b.multiplier(j)); },
             py::arg("j"))
        .def("export_csv", &DyadicFilterBank::export_csv, py::arg("path"));

    m.def("dyadic_block",
          [](const GridSpec& g, py::array_t<double> u, int j, const DyadicFilterBank& bank) {
              return to_array(dyadic_block(from_array(g, u), j, bank));
          },
          py::arg("grid"), py::arg("u"), py::arg("j"), py::arg("bank"));
    m.def("low_cutoff",
          [](const GridSpec& g, py::array_t<double> u, int j, const DyadicFilterBank& bank) {
              return to_array(low_cutoff(from_array(g, u), j, bank));
          },
          py::arg("grid"), py::arg("u"), py::arg("j"), py::arg("bank"));
    m.def("lp_norm",
          [](const GridSpec& g, py::array_t<double> u, double p) {
              return lp_norm(from_array(g, u), p);
          },
          py::arg("grid"), py::arg("u"), py::arg("p"));
    m.def("besov_norm",
          [](const GridSpec& g, py::array_t<double> u, const BesovParams& params,
             const DyadicFilterBank& bank) {
              return besov_norm(from_array(g, u), params, bank);
          },
          py::arg("grid"), py::arg("u"), py::arg("params"), py::arg("bank"));
    m.def("derivative",
          [](const GridSpec& g, py::array_t<double> u, int order) {
              return to_array(derivative(from_array(g, u), order));
          },
          py::arg("grid"), py::arg("u"), py::arg("order"));
    m.def("helmholtz_inverse",
          [](const GridSpec& g, py::array_t<double> mfield) {
              return to_array(helmholtz_inverse(from_array(g, mfield)));
          },
          py::arg("grid"), py::arg("m"));
    m.def("momentum",
          [](const GridSpec& g, py::array_t<double> u) {
              return to_array(momentum(from_array(g, u)));
          },
          py::arg("grid"), py::arg("u"));

    m.def("make_initial_data",
          [](const GridSpec& g, const DyadicFilterBank& bank, const std::string& kind,
             double amplitude, double width, double center, double smoothing,
             std::uint64_t seed, int max_block, double constant, double normalize, double p) {
              InitialDataSpec spec;
              spec.kind = kind_from_string(kind);
              spec.amplitude = amplitude;
              spec.width = width;
              spec.center = center;
              spec.smoothing = smoothing;
              spec.seed = seed;
              spec.max_block = max_block;
              spec.constant_value = constant;
              spec.normalize_besov = normalize;
              spec.besov_p = p;
              FieldPair fp = make_initial_data(spec, g, bank);
              return py::make_tuple(to_array(fp.u), to_array(fp.m));
          },
          py::arg("grid"), py::arg("bank"), py::arg("kind"), py::arg("amplitude") = 0.2,
          py::arg("width") = 2.0, py::arg("center") = 0.0, py::arg("smoothing") = -1.0,
          py::arg("seed") = 0, py::arg("max_block") = 4, py::arg("constant") = 0.0,
          py::arg("normalize") = 0.0, py::arg("p") = 2.0);

    py::class_<TimeControls>(m, "TimeControls")
        .def(py::init([](double dt, double t_end, double cfl_cap, double safety,
                         int output_every) {
                 TimeControls c;
                 c.dt = dt;
                 c.t_end = t_end;
                 c.cfl_cap = cfl_cap;
                 c.safety = safety;
                 c.output_every = output_every;
                 return c;
             }),
             py::arg("dt") = 1e-3, py::arg("t_end") = 0.5, py::arg("cfl_cap") = 0.3,
             py::arg("safety") = 50.0, py::arg("output_every") = 10);

    m.def("simulate",
          [](const GridSpec& g, py::array_t<double> m0, const TimeControls& controls,
             const DyadicFilterBank& bank, double p, const std::string& form) {
              EulerForm f = form == "u" ? EulerForm::u_form : EulerForm::m_form;
              Trajectory traj =
                  simulate(from_array(g, m0), controls, bank, BesovParams::critical(p), f);
              py::dict out;
              std::vector<double> times, besov_m, mass;
              for (const auto& s : traj.snapshots) {
                  times.push_back(s.t);
                  besov_m.push_back(s.besov_m);
                  mass.push_back(s.mass_m);
              }
              out["t"] = to_array(times);
              out["besov_m"] = to_array(besov_m);
              out["mass_m"] = to_array(mass);
              out["u_final"] = to_array(traj.snapshots.back().u);
              out["m_final"] = to_array(traj.snapshots.back().m);
              out["aborted"] = traj.aborted;
              return out;
          },
          py::arg("grid"), py::arg("m0"), py::arg("controls"), py::arg("bank"),
          py::arg("p") = 2.0, py::arg("form") = "m");

    m.def("run_lagrange",
          [](const GridSpec& g, py::array_t<double> m0, int n_particles,
             const TimeControls& controls) {
              LagrangeHistory hist = run_lagrange(from_array(g, m0), n_particles, controls);
              BreakingReport br = breaking_monitor(hist);
              py::dict out;
              out["t"] = to_array(hist.times);
              out["min_yxi"] = to_array(hist.min_yxi_series);
              out["breached"] = br.breached;
              out["aborted"] = hist.aborted;
              FieldPair fp = hist.aborted ? FieldPair{} : to_eulerian(hist.snapshots.back(), g);
              if (!hist.aborted) {
                  out["u_final"] = to_array(fp.u);
                  out["m_final"] = to_array(fp.m);
              }
              return out;
          },
          py::arg("grid"), py::arg("m0"), py::arg("n_particles"), py::arg("controls"));

    m.def("iterate",
          [](const GridSpec& g, py::array_t<double> m0, int n_max, const TimeControls& controls,
             const DyadicFilterBank& bank, double p) {
              IterationTrace trace =
                  iterate(from_array(g, m0), n_max, controls, bank, BesovParams::critical(p));
              py::dict out;
              out["sup_norms"] = to_array(trace.sup_norms);
              out["diffs"] = to_array(trace.diffs);
              out["contraction_ratios"] = to_array(trace.contraction_ratios);
              out["diverged"] = trace.diverged;
              return out;
          },
          py::arg("grid"), py::arg("m0"), py::arg("n_max"), py::arg("controls"), py::arg("bank"),
          py::arg("p") = 2.0);

    m.def("run_experiment_text",
          [](const std::string& config_text, const std::string& out_dir) {
              RunConfig cfg = parse_config_text(config_text);
              if (!out_dir.empty()) cfg.out_dir = out_dir;
              ExperimentReport rep = run_experiment(cfg);
              write_report(rep, cfg.out_dir);
              py::dict out;
              out["name"] = rep.name;
              out["passed"] = rep.all_passed();
              out["inconclusive"] = rep.inconclusive;
              py::list verdicts;
              for (const auto& v : rep.verdicts) {
                  py::dict d;
                  d["name"] = v.name;
                  d["passed"] = v.passed;
                  d["measured"] = v.measured;
                  d["tolerance"] = v.tolerance;
                  verdicts.append(d);
              }
              out["verdicts"] = verdicts;
              return out;
          },
          py::arg("config_text"), py::arg("out_dir") = "");
}
