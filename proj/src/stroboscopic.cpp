#include "nhsense/stroboscopic.hpp"

#include <algorithm>
#include <cmath>

#include "nhsense/diag.hpp"

namespace nhsense {

SegmentPlan SegmentPlan::from_total_time(const SensorConfig& cfg, double total_time,
                                         int n_segments) {
    if (n_segments < 1) throw std::invalid_argument("segment plan: n_segments must be >= 1");
    SegmentPlan plan;
    plan.config = cfg;
    plan.n_segments = n_segments;
    plan.total_time = total_time;
    plan.tau = total_time / n_segments;
    return plan;
}

void SegmentPlan::validate() const {
    if (n_segments < 1) throw std::invalid_argument("segment plan: n_segments must be >= 1");
    if (!std::isfinite(tau) || !std::isfinite(total_time))
        throw std::invalid_argument("segment plan: non-finite time");
    if (std::abs(total_time - n_segments * tau) > 1e-12 * std::max(1.0, std::abs(total_time)))
        throw std::invalid_argument("segment plan: total_time != n_segments * tau");
    config.validate();
}

Cx2Matrix segment_operator(const SegmentPlan& plan) {
    plan.validate();
    if (std::abs(plan.config.a - Cx{1.0, 0.0}) > 1e-12)
        warn("segment operator: a != 1, printed closed form for u(tau) does not apply");
    const Cx2Matrix shifted = full_hamiltonian(plan.config) -
                              plan.config.energy() * Cx2Matrix::identity();
    return expm2(shifted, Cx{0.0, -plan.tau});
}

PureState stroboscopic_evolve(const SegmentPlan& plan, const PureState& initial) {
    if (!initial.is_finite() || initial.norm2() < 1e-300)
        throw std::invalid_argument("stroboscopic_evolve: invalid initial state");
    const PureState out = segment_operator(plan).pow(plan.n_segments).apply(initial);
    if (out.norm2() < 1e-150)
        throw std::domain_error("stroboscopic_evolve: total loss (state norm underflow)");
    return out;
}

double population_from_counts(const CountRecord& rec) {
    if (rec.n_h < 0 || rec.n_v < 0)
        throw std::invalid_argument("population_from_counts: negative count");
    const std::int64_t total = rec.n_h + rec.n_v;
    if (total < 1) throw std::invalid_argument("population_from_counts: empty record");
    return static_cast<double>(rec.n_h) / static_cast<double>(total);
}

std::vector<double> discrete_susceptibility(const std::vector<double>& lambdas,
                                            const std::vector<double>& populations) {
    if (lambdas.size() != populations.size())
        throw std::invalid_argument("discrete_susceptibility: length mismatch");
    if (lambdas.size() < 2)
        throw std::invalid_argument("discrete_susceptibility: need at least two points");
    std::vector<double> chi(lambdas.size() - 1);
    for (std::size_t i = 0; i + 1 < lambdas.size(); ++i) {
        const double dl = lambdas[i + 1] - lambdas[i];
        if (!(dl > 0.0))
            throw std::invalid_argument("discrete_susceptibility: grid not strictly increasing");
        chi[i] = (populations[i + 1] - populations[i]) / dl;
    }
    return chi;
}

SweepResult sweep_lambda(const SegmentPlan& plan, const std::vector<double>& lambda_grid) {
    if (lambda_grid.empty()) throw std::invalid_argument("sweep_lambda: empty grid");
    for (std::size_t i = 0; i + 1 < lambda_grid.size(); ++i)
        if (!(lambda_grid[i + 1] > lambda_grid[i]))
            throw std::invalid_argument("sweep_lambda: grid not strictly increasing");

    SweepResult result;
    result.lambdas = lambda_grid;
    result.populations.resize(lambda_grid.size());
    result.survivals.resize(lambda_grid.size());
    const PureState h_state{1.0, 0.0};
    for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
        SegmentPlan point = plan;
        point.config.coupling_lambda = lambda_grid[i];
        const PureState out = stroboscopic_evolve(point, h_state);
        result.populations[i] = out.population0();
        result.survivals[i] = std::clamp(out.norm2() / h_state.norm2(), 1e-300, 1.0);
    }
    if (lambda_grid.size() >= 2)
        result.chis = discrete_susceptibility(result.lambdas, result.populations);
    return result;
}

double survival_probability(const SegmentPlan& plan, const PureState& initial) {
    const PureState out = stroboscopic_evolve(plan, initial);
    return std::clamp(out.norm2() / initial.norm2(), 1e-300, 1.0);
}

WorkingPoint find_working_point(const std::function<double(double)>& population, double lo,
                                double hi, int coarse_points, double fd_step, double tol) {
    if (!(hi > lo)) throw std::invalid_argument("find_working_point: empty interval");
    if (coarse_points < 3) throw std::invalid_argument("find_working_point: need >= 3 points");

    auto chi_abs = [&](double lam) {
        return std::abs(susceptibility(population, lam, fd_step));
    };

    // coarse scan
    double best_lam = lo, best_val = -1.0;
    for (int i = 0; i < coarse_points; ++i) {
        const double lam = lo + (hi - lo) * i / (coarse_points - 1);
        const double v = chi_abs(lam);
        if (v > best_val) {
            best_val = v;
            best_lam = lam;
        }
    }

    const double step = (hi - lo) / (coarse_points - 1);
    double a = std::max(lo, best_lam - step);
    double b = std::min(hi, best_lam + step);

    // golden-section maximization of |chi| on [a, b]
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = chi_abs(x1), f2 = chi_abs(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = chi_abs(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = chi_abs(x1);
        }
    }
    const double lam_star = 0.5 * (a + b);
    return {lam_star, chi_abs(lam_star)};
}

}  // namespace nhsense
