#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nhsense/experiments.hpp"
#include "nhsense/svg.hpp"

namespace py = pybind11;
using namespace nhsense;

namespace {

Cx2Matrix matrix_from_rows(const std::vector<std::vector<Cx>>& rows) {
    if (rows.size() != 2 || rows[0].size() != 2 || rows[1].size() != 2)
        throw std::invalid_argument("expected a 2x2 matrix as nested lists");
    return {rows[0][0], rows[0][1], rows[1][0], rows[1][1]};
}

std::vector<std::vector<Cx>> matrix_to_rows(const Cx2Matrix& m) {
    return {{m.m00, m.m01}, {m.m10, m.m11}};
}

py::dict table_to_dict(const ResultTable& table) {
    py::dict meta;
    for (const auto& [k, v] : table.metadata) meta[py::str(k)] = v;
    py::dict out;
    out["columns"] = table.columns;
    out["rows"] = table.rows;
    out["metadata"] = meta;
    return out;
}

}  // namespace

PYBIND11_MODULE(_nhsense, m) {
    m.doc() = "non-Hermitian qubit sensing simulator";
    m.attr("__version__") = version_string();

    py::class_<Cx2Matrix>(m, "Cx2Matrix")
        .def(py::init([](const std::vector<std::vector<Cx>>& rows) {
                 return matrix_from_rows(rows);
             }),
             py::arg("rows"))
        .def_readwrite("m00", &Cx2Matrix::m00)
        .def_readwrite("m01", &Cx2Matrix::m01)
        .def_readwrite("m10", &Cx2Matrix::m10)
        .def_readwrite("m11", &Cx2Matrix::m11)
        .def_static("identity", &Cx2Matrix::identity)
        .def_static("pauli_x", &Cx2Matrix::pauli_x)
        .def_static("pauli_y", &Cx2Matrix::pauli_y)
        .def_static("pauli_z", &Cx2Matrix::pauli_z)
        .def("trace", &Cx2Matrix::trace)
        .def("det", &Cx2Matrix::det)
        .def("adjoint", &Cx2Matrix::adjoint)
        .def("frobenius_norm", &Cx2Matrix::frobenius_norm)
        .def("is_hermitian", &Cx2Matrix::is_hermitian, py::arg("tol") = 1e-12)
        .def("pow", &Cx2Matrix::pow)
        .def("apply", &Cx2Matrix::apply)
        .def("tolist", &matrix_to_rows)
        .def("__matmul__", [](const Cx2Matrix& a, const Cx2Matrix& b) { return a * b; });

    py::class_<PureState>(m, "PureState")
        .def(py::init([](Cx c0, Cx c1) { return PureState{c0, c1}; }), py::arg("c0"),
             py::arg("c1"))
        .def_readwrite("c0", &PureState::c0)
        .def_readwrite("c1", &PureState::c1)
        .def("norm2", &PureState::norm2)
        .def("population0", &PureState::population0)
        .def("normalized", &PureState::normalized);

    m.def("expm2", &expm2, py::arg("matrix"), py::arg("scale"));
    m.def(
        "eig2",
        [](const Cx2Matrix& mat) {
            const EigenSystem sys = eig2(mat);
            return py::make_tuple(py::make_tuple(sys.value0, sys.value1),
                                  py::make_tuple(sys.vector0, sys.vector1));
        },
        py::arg("matrix"));
    m.def("fidelity", &fidelity);

    py::class_<SensorConfig>(m, "SensorConfig")
        .def(py::init<>())
        .def_readwrite("delta", &SensorConfig::delta)
        .def_readwrite("a", &SensorConfig::a)
        .def_readwrite("omega", &SensorConfig::omega)
        .def_readwrite("gamma", &SensorConfig::gamma)
        .def_readwrite("coupling_lambda", &SensorConfig::coupling_lambda)
        .def_readwrite("perturbation", &SensorConfig::perturbation)
        .def("energy", &SensorConfig::energy);

    py::class_<DynamicsPoint>(m, "DynamicsPoint")
        .def_readonly("time", &DynamicsPoint::time)
        .def_readonly("d_t", &DynamicsPoint::d_t)
        .def_readonly("state", &DynamicsPoint::state)
        .def_readonly("population_s", &DynamicsPoint::population_s);

    m.def("bare_hamiltonian", &bare_hamiltonian);
    m.def("full_hamiltonian", &full_hamiltonian);
    m.def("explicit_example_hamiltonian", &explicit_example_hamiltonian, py::arg("c"),
          py::arg("d"), py::arg("lam"));
    m.def("closed_form_evolution", &closed_form_evolution, py::arg("config"), py::arg("t"));
    m.def("hermitian_population", &hermitian_population, py::arg("lam"), py::arg("t"));
    m.def("hermitian_susceptibility", &hermitian_susceptibility, py::arg("lam"), py::arg("t"));
    m.def("susceptibility", &susceptibility, py::arg("population"), py::arg("lam"),
          py::arg("step"));

    py::class_<SegmentPlan>(m, "SegmentPlan")
        .def_static("from_total_time", &SegmentPlan::from_total_time, py::arg("config"),
                    py::arg("total_time"), py::arg("n_segments"))
        .def_readwrite("tau", &SegmentPlan::tau)
        .def_readwrite("n_segments", &SegmentPlan::n_segments)
        .def_readwrite("total_time", &SegmentPlan::total_time)
        .def_readwrite("config", &SegmentPlan::config);

    py::class_<CountRecord>(m, "CountRecord")
        .def(py::init([](std::int64_t h, std::int64_t v) { return CountRecord{h, v}; }),
             py::arg("n_h"), py::arg("n_v"))
        .def_readwrite("n_h", &CountRecord::n_h)
        .def_readwrite("n_v", &CountRecord::n_v);

    m.def("segment_operator", &segment_operator);
    m.def("stroboscopic_evolve", &stroboscopic_evolve, py::arg("plan"), py::arg("initial"));
    m.def("population_from_counts", &population_from_counts);
    m.def("discrete_susceptibility", &discrete_susceptibility, py::arg("lambdas"),
          py::arg("populations"));
    m.def(
        "sweep_lambda",
        [](const SegmentPlan& plan, const std::vector<double>& grid) {
            const SweepResult r = sweep_lambda(plan, grid);
            py::dict out;
            out["lambdas"] = r.lambdas;
            out["populations"] = r.populations;
            out["chis"] = r.chis;
            out["survivals"] = r.survivals;
            return out;
        },
        py::arg("plan"), py::arg("lambda_grid"));
    m.def("survival_probability", &survival_probability, py::arg("plan"), py::arg("initial"));
    m.def(
        "find_working_point",
        [](const std::function<double(double)>& pop, double lo, double hi, int coarse,
           double fd_step, double tol) {
            const WorkingPoint wp = find_working_point(pop, lo, hi, coarse, fd_step, tol);
            return py::make_tuple(wp.lambda_star, wp.chi_abs);
        },
        py::arg("population"), py::arg("lo"), py::arg("hi"), py::arg("coarse_points") = 201,
        py::arg("fd_step") = 1e-5, py::arg("tol") = 1e-9);

    py::class_<WavePlateAngles>(m, "WavePlateAngles")
        .def(py::init<>())
        .def(py::init([](double t1, double p1, double t2, double p2, double th, double tv,
                         double xi) {
                 return WavePlateAngles{t1, p1, t2, p2, th, tv, xi};
             }),
             py::arg("theta1"), py::arg("phi1"), py::arg("theta2"), py::arg("phi2"),
             py::arg("theta_h"), py::arg("theta_v"), py::arg("arm_phase") = 0.0)
        .def_readwrite("theta1", &WavePlateAngles::theta1)
        .def_readwrite("phi1", &WavePlateAngles::phi1)
        .def_readwrite("theta2", &WavePlateAngles::theta2)
        .def_readwrite("phi2", &WavePlateAngles::phi2)
        .def_readwrite("theta_h", &WavePlateAngles::theta_h)
        .def_readwrite("theta_v", &WavePlateAngles::theta_v)
        .def_readwrite("arm_phase", &WavePlateAngles::arm_phase)
        .def("canonical", &WavePlateAngles::canonical);

    py::class_<FitReport>(m, "FitReport")
        .def_readonly("angles", &FitReport::angles)
        .def_readonly("scale", &FitReport::scale)
        .def_readonly("residual", &FitReport::residual)
        .def_readonly("iterations", &FitReport::iterations)
        .def_readonly("converged", &FitReport::converged);

    m.def("hwp", &hwp, py::arg("theta"));
    m.def("qwp", &qwp, py::arg("phi"));
    m.def("loss_element", py::overload_cast<double, double>(&loss_element), py::arg("theta_h"),
          py::arg("theta_v"));
    m.def("compose_train", &compose_train);
    m.def("hermitian_train", &hermitian_train, py::arg("theta1"), py::arg("phi1"),
          py::arg("phi2"));
    m.def(
        "decompose_operator",
        [](const Cx2Matrix& target, int starts, std::uint64_t seed) {
            FitOptions opt;
            if (starts > 0) opt.starts = starts;
            opt.seed = seed;
            return decompose_operator(target, opt);
        },
        py::arg("target"), py::arg("starts") = 0, py::arg("seed") = 0x6a7e3c1db2f08954ULL);
    m.def(
        "sweep_theta1",
        [](const WavePlateAngles& fixed, const std::vector<double>& grid, int n_segments) {
            const ThetaSweepResult r = sweep_theta1(fixed, grid, n_segments);
            py::dict out;
            out["thetas"] = r.thetas;
            out["populations"] = r.populations;
            out["chis"] = r.chis;
            return out;
        },
        py::arg("fixed"), py::arg("grid"), py::arg("n_segments") = 5);

    py::class_<NoiseModel>(m, "NoiseModel")
        .def(py::init<>())
        .def_readwrite("eta_h", &NoiseModel::eta_h)
        .def_readwrite("eta_v", &NoiseModel::eta_v)
        .def_readwrite("photon_budget_n", &NoiseModel::photon_budget_n)
        .def_readwrite("success_probability_p", &NoiseModel::success_probability_p);

    py::class_<EstimateReport>(m, "EstimateReport")
        .def_readonly("mean_s_prime", &EstimateReport::mean_s_prime)
        .def_readonly("std_s_prime", &EstimateReport::std_s_prime)
        .def_readonly("delta_lambda", &EstimateReport::delta_lambda)
        .def_readonly("samples", &EstimateReport::samples);

    m.def(
        "sample_counts",
        [](double s_true, const NoiseModel& model, std::uint64_t seed, std::uint64_t index) {
            KeyedRng rng(seed, 0, index);
            return sample_counts(s_true, model, rng);
        },
        py::arg("s_true"), py::arg("model"), py::arg("seed"), py::arg("index") = 0);
    m.def("noisy_population_mean", &noisy_population_mean, py::arg("s"), py::arg("model"));
    m.def("std_s_prime", &std_s_prime, py::arg("s"), py::arg("model"));
    m.def("delta_lambda", &delta_lambda, py::arg("s"), py::arg("chi_max"), py::arg("model"));
    m.def("estimate_ensemble", &estimate_ensemble, py::arg("s_true"), py::arg("model"),
          py::arg("chi_max"), py::arg("repetitions"), py::arg("seed"), py::arg("stream") = 0);
    m.def(
        "fisher_information",
        [](double lam, const NoiseModel& model, const std::function<double(double)>& pop) {
            return fisher_information(lam, model, pop);
        },
        py::arg("lam"), py::arg("model"), py::arg("population"));

    m.def(
        "run_scenario",
        [](const std::string& config_json) {
            return table_to_dict(run(ExperimentConfig::from_json_text(config_json)));
        },
        py::arg("config_json"), "run an experiment described by a JSON config string");
    m.def(
        "default_config",
        [](const std::string& scenario) {
            return ExperimentConfig::defaults_for(scenario_from_name(scenario)).to_json_text();
        },
        py::arg("scenario"), "JSON text of the default config for a scenario");
    m.def(
        "run_to_csv",
        [](const std::string& config_json, const std::string& path) {
            run_to_csv(ExperimentConfig::from_json_text(config_json), path);
        },
        py::arg("config_json"), py::arg("csv_path"));
}
