#pragma once

#include <cstdint>
#include <vector>

#include "nhsense/sensor.hpp"

namespace nhsense {

/// One experiment cycle plan: the total evolution time t is partitioned
/// into n_segments segments of duration tau.
struct SegmentPlan {
    double tau = 0.0;
    int n_segments = 1;
    double total_time = 0.0;
    SensorConfig config;

    static SegmentPlan from_total_time(const SensorConfig& cfg, double total_time,
                                       int n_segments);
    void validate() const;
};

struct CountRecord {
    std::int64_t n_h = 0;
    std::int64_t n_v = 0;
};

/// Per-segment non-unitary operator u(tau) = exp(-i (H - E I) tau), built by
/// direct exponentiation of the full Hamiltonian. The printed closed form
/// (cos-diagonal, -i(beta/alpha)sin lower entry) holds for the a = 1
/// pseudo-Hermitian sensor; other a values get a diagnostic.
Cx2Matrix segment_operator(const SegmentPlan& plan);

/// u(tau)^n applied to the initial state.
PureState stroboscopic_evolve(const SegmentPlan& plan, const PureState& initial);

/// Normalized |H> population from photon counts: n_h / (n_h + n_v).
double population_from_counts(const CountRecord& rec);

/// Forward-difference susceptibility estimator on a measured grid,
/// chi_i = (S_{i+1} - S_i) / (lambda_{i+1} - lambda_i); result has size k-1.
std::vector<double> discrete_susceptibility(const std::vector<double>& lambdas,
                                            const std::vector<double>& populations);

struct SweepResult {
    std::vector<double> lambdas;
    std::vector<double> populations;
    std::vector<double> chis;       // size max(0, k-1)
    std::vector<double> survivals;  // final norm^2 clamped to (0, 1]
};

/// Population + discrete susceptibility over a lambda grid; the plan's
/// coupling_lambda is overridden point by point. Initial state |H>.
SweepResult sweep_lambda(const SegmentPlan& plan, const std::vector<double>& lambda_grid);

/// Survival probability of one full stroboscopic run (squared norm of the
/// final state over the initial), clamped to (0, 1].
double survival_probability(const SegmentPlan& plan, const PureState& initial);

struct WorkingPoint {
    double lambda_star = 0.0;
    double chi_abs = 0.0;  // |chi| at lambda_star
};

/// Locates argmax |dS/dlambda| by a coarse grid scan followed by
/// golden-section refinement (tolerance in lambda units).
WorkingPoint find_working_point(const std::function<double(double)>& population, double lo,
                                double hi, int coarse_points, double fd_step, double tol);

}  // namespace nhsense
