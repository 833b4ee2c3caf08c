#include "nhsense/sensor.hpp"

#include <cmath>
#include <sstream>

#include "nhsense/diag.hpp"

namespace nhsense {

void SensorConfig::validate() const {
    if (!finite(delta) || !finite(a) || !std::isfinite(omega) || !std::isfinite(gamma) ||
        !std::isfinite(coupling_lambda) || !perturbation.is_finite())
        throw std::invalid_argument("sensor config: non-finite parameter");
    if (std::abs(a + Cx{1.0, 0.0}) < 1e-300)
        throw std::invalid_argument("sensor config: a = -1 makes the Hamiltonian singular");
    if (std::abs(delta) < 1e-300)
        throw std::invalid_argument("sensor config: delta = 0 makes the Hamiltonian singular");
    if (std::abs(delta) >= 0.5) {
        std::ostringstream os;
        os << "sensor config: |delta| = " << std::abs(delta)
           << " is outside the |delta| << 1 working regime";
        warn(os.str());
    }
    if (std::abs(a) > 1.0 + 1e-12) {
        std::ostringstream os;
        os << "sensor config: |a| = " << std::abs(a) << " exceeds 1";
        warn(os.str());
    }
}

Cx2Matrix bare_hamiltonian(const SensorConfig& cfg) {
    cfg.validate();
    const Cx two_e{cfg.omega, cfg.gamma};
    const Cx k = two_e / (Cx{1.0, 0.0} + cfg.a);
    return {k, k * cfg.a / cfg.delta, k * cfg.delta, k * cfg.a};
}

Cx2Matrix full_hamiltonian(const SensorConfig& cfg) {
    return bare_hamiltonian(cfg) + Cx{cfg.coupling_lambda, 0.0} * cfg.perturbation;
}

Cx2Matrix explicit_example_hamiltonian(double c, double d, double lambda) {
    const Cx z{c, d};
    const Cx g{1.0 + lambda, 0.0};
    return {z, g, g, -z};
}

DynamicsPoint closed_form_evolution(const SensorConfig& cfg, double t) {
    cfg.validate();
    const Cx z = std::exp(Cx{0.0, 1.0} * (Cx{cfg.omega, cfg.gamma} * t));  // e^{i 2E t}
    const Cx one{1.0, 0.0};
    const Cx denom = one + cfg.a;

    DynamicsPoint point;
    point.time = t;
    // product form (1 - z) D_t = 1 + a z has no pole; D_t itself does.
    point.state = PureState{(one + cfg.a * z) / denom, cfg.delta * (one - z) / denom};
    if (std::abs(one - z) >= 2e-12) point.d_t = (one + cfg.a * z) / (one - z);
    if (point.state.norm2() < 1e-300) {
        // only reachable for strongly decaying gamma*t; treat as total loss
        throw std::domain_error("closed_form_evolution: state fully decayed");
    }
    point.population_s = point.state.population0();
    return point;
}

double hermitian_population(double lambda, double t) {
    return 0.5 * (1.0 + std::cos(2.0 * lambda * t));
}

double hermitian_susceptibility(double lambda, double t) {
    return -t * std::sin(2.0 * lambda * t);
}

double susceptibility(const std::function<double(double)>& population, double lambda,
                      double step) {
    if (!(step > 0.0)) throw std::invalid_argument("susceptibility: step must be positive");
    return (population(lambda + step) - population(lambda - step)) / (2.0 * step);
}

}  // namespace nhsense
