#pragma once

#include <cstdint>
#include <functional>

#include "nhsense/rng.hpp"
#include "nhsense/stroboscopic.hpp"

namespace nhsense {

/// Detector-side background-noise model. Counts N'_{H,V} are uniform in
/// [0, eta * N] with N the detected photon number; their contribution to
/// the population variance does not average out with repetition.
struct NoiseModel {
    double eta_h = 0.0;
    double eta_v = 0.0;
    std::int64_t photon_budget_n = 100000;  // photons sent per run
    double success_probability_p = 1.0;     // survival through the lossy network

    void validate() const;
};

/// One run of photon counting: detected photons binomial(N, p), split
/// binomially by the true population, plus uniform-integer background
/// counts on each detector. Returned counts are the summed (signal +
/// background) numbers each detector registers.
CountRecord sample_counts(double s_true, const NoiseModel& model, KeyedRng& rng);

/// One run of the noisy population estimator
///   S' = S + (1-S) N'_H/N - S N'_V/N
/// with S the counted population of the same run. This is the expansion the
/// error-propagation formula below is derived from.
double sample_noisy_population(double s_true, const NoiseModel& model, KeyedRng& rng);

/// Mean of S': s + (1-s) eta_h/2 - s eta_v/2.
double noisy_population_mean(double s, const NoiseModel& model);

/// Error-propagated standard deviation of S':
///   dS'^2 = (1-(eta_h+eta_v)/2)^2 s(1-s)/(pN) + [(1-s)^2 eta_h^2 + s^2 eta_v^2]/12.
double std_s_prime(double s, const NoiseModel& model);

/// Measurement sensitivity at the working point: dS'/|chi|_max.
double delta_lambda(double s_at_working_point, double chi_max, const NoiseModel& model);

struct EstimateReport {
    double mean_s_prime = 0.0;
    double std_s_prime = 0.0;
    double delta_lambda = 0.0;
    std::int64_t samples = 0;
};

/// Seeded Monte Carlo ensemble of sample_noisy_population. Repetitions use
/// keyed per-sample streams, so reports are bit-identical for identical
/// seeds regardless of the execution schedule.
EstimateReport estimate_ensemble(double s_true, const NoiseModel& model, double chi_max,
                                 std::int64_t repetitions, std::uint64_t seed,
                                 std::uint64_t stream = 0);

struct FisherOptions {
    double lambda_step = 1e-7;     // central-difference step in the estimated parameter
    double grid_sigma_factor = 50.0;
    double grid_eta_factor = 200.0;
    double tail_sigmas = 10.0;
};

/// Classical Fisher information of the measured population S' at lambda.
/// The density of S' is normal with mean noisy_population_mean(S(lambda))
/// and variance std_s_prime(S(lambda))^2, evaluated on a uniform grid with
/// the score taken by central difference in lambda and the integral by
/// trapezoid. Below p*N*S(1-S) = 25 the count part is too coarse for the
/// normal approximation and an exact binomial mixture is used instead.
double fisher_information(double lambda, const NoiseModel& model,
                          const std::function<double(double)>& population,
                          const FisherOptions& options = {});

}  // namespace nhsense
