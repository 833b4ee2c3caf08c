#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nhsense/noise.hpp"
#include "nhsense/optics.hpp"
#include "nhsense/table.hpp"

namespace nhsense {

enum class Scenario {
    SweepLambda,
    SweepTheta1,
    NoiseSweep,
    FisherSweep,
    Decompose,
    SupplementConfigs,
};

Scenario scenario_from_name(const std::string& name);
std::string scenario_name(Scenario s);

enum class SensorKind { NonHermitian, Hermitian, Explicit };

/// Grid in scenario-dependent units: multiples of epsilon for lambda sweeps,
/// multiples of pi for angle sweeps, absolute for eta / photon-number grids.
struct GridSpec {
    double start = -2.0;
    double stop = 2.0;
    int points = 11;
    std::string unit = "eps";

    std::vector<double> values(double scale) const;
};

/// Full description of one experiment run. Every field has the reproduction
/// default; a config file or CLI flag overrides.
struct ExperimentConfig {
    Scenario scenario = Scenario::SweepLambda;
    SensorKind sensor_kind = SensorKind::NonHermitian;

    // Eq.-1 family sensor
    SensorConfig sensor;
    double epsilon = 1e-3;  // lambda unit of the sweeps
    int n_segments = 5;
    double total_time = 0.0;  // <= 0 means the default pi / (2 E)

    // explicit two-parameter example sensor
    double explicit_c = 0.75;
    double explicit_d = -0.5;
    double explicit_t = 5.45;

    GridSpec grid;
    bool grid_explicit = false;  // set when a config/CLI provided the grid

    // interferometric train (sweep-theta1); the lossless reference train of
    // the same scenario keeps its own plate settings
    WavePlateAngles angles;
    double hermitian_phi1 = 0.5 * 3.14159265358979323846;
    double hermitian_phi2 = -0.5 * 3.14159265358979323846;

    // noise / fisher
    double eta_h = 0.05;
    double eta_v_ratio = 1.2;
    std::int64_t photon_budget = 100000;
    double success_probability = 0.0;  // <= 0 means auto from sensor survival
    std::int64_t repetitions = 10000;

    // decompose target, row-major
    Cx2Matrix target{Cx{0.951057, 0.0}, Cx{0.0, -1.02447}, Cx{0.0, -0.0931237},
                     Cx{0.951057, 0.0}};

    std::uint64_t seed = 20240901;

    double effective_total_time() const;
    std::vector<double> grid_values() const;

    static ExperimentConfig defaults_for(Scenario s);
    static ExperimentConfig from_json_text(const std::string& text);
    std::string to_json_text() const;
};

/// Dispatches a validated config to the matching scenario runner.
/// Deterministic for deterministic scenarios; seeded-deterministic otherwise.
ResultTable run(const ExperimentConfig& config);

/// run() + atomic CSV write (and the config echo in the metadata).
void run_to_csv(const ExperimentConfig& config, const std::string& csv_path);

const char* version_string();

}  // namespace nhsense
