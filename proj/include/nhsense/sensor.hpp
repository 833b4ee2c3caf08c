#pragma once

#include <functional>
#include <optional>

#include "nhsense/linalg.hpp"

namespace nhsense {

/// Bare-sensor parameters. The complex energy splitting is 2E = omega + i*gamma;
/// the pseudo-Hermitian case of the main sweep is a = 1, gamma = 0.
struct SensorConfig {
    Cx delta{0.3015, 0.0};      // eigenstate skew; |delta| << 1 is the working assumption
    Cx a{1.0, 0.0};             // eigenstate asymmetry
    double omega = 2.0 * 0.3015 / 50.0;
    double gamma = 0.0;
    double coupling_lambda = 0.0;           // signal strength
    Cx2Matrix perturbation = Cx2Matrix::pauli_x();  // V

    /// Half the complex splitting: E = (omega + i*gamma) / 2.
    Cx energy() const { return {omega / 2.0, gamma / 2.0}; }

    /// Throws on the singular parameter choices of the bare Hamiltonian
    /// (a = -1, delta = 0) and emits diagnostics when the scheme's working
    /// assumptions (|delta| < 0.5, |a| <= 1) are stretched.
    void validate() const;
};

/// (2E/(1+a)) * [[1, a/delta],[delta, a]]; eigenvectors |0>+delta|1> and
/// |0>-(delta/a)|1>, eigenvalue gap 2E.
Cx2Matrix bare_hamiltonian(const SensorConfig& cfg);

/// Bare + coupling: H = curly-H + lambda * V.
Cx2Matrix full_hamiltonian(const SensorConfig& cfg);

/// Supplement example: H = (1+lambda) sigma_x + (c + i d) sigma_z.
Cx2Matrix explicit_example_hamiltonian(double c, double d, double lambda);

struct DynamicsPoint {
    double time = 0.0;
    std::optional<Cx> d_t;  // D_t parameter; absent at the E*t = k*pi pole where it diverges
    PureState state;
    double population_s = 1.0;
};

/// Closed-form state of the unperturbed sensor started in |0>:
/// (1 - e^{i2Et})/(1+a) * (D_t|0> + delta|1>), 2 D_t = (1-a) + i(1+a) cot(Et).
/// At the cot pole (Et = k*pi) the prefactor zero dominates and the limit
/// |0> is returned with d_t unset. coupling_lambda is ignored: the formula
/// is derived for the bare Hamiltonian only.
DynamicsPoint closed_form_evolution(const SensorConfig& cfg, double t);

/// Eq.-(population) of the reference Hermitian sensor H_s = lambda sigma_x:
/// S(lambda) = (1 + cos 2 lambda t)/2.
double hermitian_population(double lambda, double t);

/// Analytic dS/dlambda of the same: -t sin(2 lambda t).
double hermitian_susceptibility(double lambda, double t);

/// Central-difference susceptibility of an arbitrary population curve.
double susceptibility(const std::function<double(double)>& population, double lambda,
                      double step);

}  // namespace nhsense
