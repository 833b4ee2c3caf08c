#include "nhsense/optics.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "nhsense/rng.hpp"
#include "nhsense/stroboscopic.hpp"

namespace nhsense {

namespace {
constexpr double kPi = 3.14159265358979323846;

double fold_half_pi(double a) {
    // fold into (-pi/2, pi/2]
    double r = std::fmod(a + kPi / 2.0, kPi);
    if (r <= 0.0) r += kPi;
    return r - kPi / 2.0;
}
}  // namespace

WavePlateAngles WavePlateAngles::canonical() const {
    WavePlateAngles c = *this;
    c.theta1 = fold_half_pi(theta1);
    c.phi1 = fold_half_pi(phi1);
    c.theta2 = fold_half_pi(theta2);
    c.phi2 = fold_half_pi(phi2);
    c.theta_h = fold_half_pi(theta_h);
    c.theta_v = fold_half_pi(theta_v);
    double xi = std::fmod(arm_phase + kPi, 2.0 * kPi);
    if (xi <= 0.0) xi += 2.0 * kPi;
    c.arm_phase = xi - kPi;
    return c;
}

Cx2Matrix hwp(double theta) {
    const double c = std::cos(2.0 * theta), s = std::sin(2.0 * theta);
    return {c, s, s, -c};
}

Cx2Matrix qwp(double phi) {
    const double c = std::cos(phi), s = std::sin(phi);
    return {Cx{c * c, s * s}, Cx{s * c, -s * c}, Cx{s * c, -s * c}, Cx{s * s, c * c}};
}

Cx2Matrix loss_element(double theta_h, double theta_v) {
    return Cx2Matrix::diagonal(std::sin(2.0 * theta_h), std::sin(2.0 * theta_v));
}

Cx2Matrix loss_element(double theta_h, double theta_v, double arm_phase) {
    return Cx2Matrix::diagonal(std::sin(2.0 * theta_h),
                               std::exp(Cx{0.0, arm_phase}) * std::sin(2.0 * theta_v));
}

Cx2Matrix compose_train(const WavePlateAngles& a) {
    const Cx2Matrix r1 = qwp(a.phi1) * hwp(a.theta1);
    const Cx2Matrix r2 = qwp(a.phi2) * hwp(a.theta2);
    return r2 * loss_element(a.theta_h, a.theta_v, a.arm_phase) * r1;
}

Cx2Matrix hermitian_train(double theta1, double phi1, double phi2) {
    return qwp(phi2) * hwp(theta1) * qwp(phi1);
}

namespace {

// Frobenius inner product <A, B> = sum conj(a_ij) b_ij
Cx frobenius_inner(const Cx2Matrix& a, const Cx2Matrix& b) {
    return std::conj(a.m00) * b.m00 + std::conj(a.m01) * b.m01 + std::conj(a.m10) * b.m10 +
           std::conj(a.m11) * b.m11;
}

struct ScaledResidual {
    Cx scale;
    double residual;
};

ScaledResidual best_scale_residual(const Cx2Matrix& train, const Cx2Matrix& target) {
    const double t2 = train.frobenius_norm();
    if (t2 * t2 < 1e-300) return {Cx{0.0, 0.0}, target.frobenius_norm()};
    const Cx c = frobenius_inner(train, target) / (t2 * t2);
    return {c, (c * train - target).frobenius_norm()};
}

using Params = std::array<double, 7>;

WavePlateAngles params_to_angles(const Params& p) {
    return WavePlateAngles{p[0], p[1], p[2], p[3], p[4], p[5], p[6]};
}

// Nelder-Mead simplex descent, standard coefficients.
template <typename F>
std::pair<Params, int> nelder_mead(F&& f, const Params& start, double scale, int max_iter,
                                   double ftol) {
    constexpr int n = 7;
    std::array<Params, n + 1> simplex;
    std::array<double, n + 1> value;
    simplex[0] = start;
    value[0] = f(start);
    for (int i = 0; i < n; ++i) {
        simplex[i + 1] = start;
        simplex[i + 1][i] += scale;
        value[i + 1] = f(simplex[i + 1]);
    }

    int evals = n + 1;
    for (int iter = 0; iter < max_iter; ++iter) {
        std::array<int, n + 1> order;
        for (int i = 0; i <= n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return value[a] < value[b]; });
        const int best = order[0], worst = order[n], second_worst = order[n - 1];
        if (value[worst] - value[best] < ftol) break;

        Params centroid{};
        for (int i = 0; i <= n; ++i)
            if (i != worst)
                for (int k = 0; k < n; ++k) centroid[k] += simplex[i][k] / n;

        auto blend = [&](double t) {
            Params p;
            for (int k = 0; k < n; ++k)
                p[k] = centroid[k] + t * (simplex[worst][k] - centroid[k]);
            return p;
        };

        const Params reflected = blend(-1.0);
        const double fr = f(reflected);
        ++evals;
        if (fr < value[best]) {
            const Params expanded = blend(-2.0);
            const double fe = f(expanded);
            ++evals;
            if (fe < fr) {
                simplex[worst] = expanded;
                value[worst] = fe;
            } else {
                simplex[worst] = reflected;
                value[worst] = fr;
            }
        } else if (fr < value[second_worst]) {
            simplex[worst] = reflected;
            value[worst] = fr;
        } else {
            const Params contracted = blend(fr < value[worst] ? -0.5 : 0.5);
            const double fc = f(contracted);
            ++evals;
            if (fc < std::min(fr, value[worst])) {
                simplex[worst] = contracted;
                value[worst] = fc;
            } else {
                for (int i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (int k = 0; k < n; ++k)
                        simplex[i][k] = 0.5 * (simplex[i][k] + simplex[best][k]);
                    value[i] = f(simplex[i]);
                    ++evals;
                }
            }
        }
    }

    int best = 0;
    for (int i = 1; i <= n; ++i)
        if (value[i] < value[best]) best = i;
    return {simplex[best], evals};
}

}  // namespace

FitReport decompose_operator(const Cx2Matrix& target, const FitOptions& options) {
    if (!target.is_finite()) throw std::invalid_argument("decompose_operator: non-finite target");
    if (target.frobenius_norm() < 1e-300)
        throw std::invalid_argument("decompose_operator: zero target");

    auto objective = [&target](const Params& p) {
        return best_scale_residual(compose_train(params_to_angles(p)), target).residual;
    };

    FitReport best;
    best.residual = std::numeric_limits<double>::infinity();
    int total_evals = 0;

    KeyedRng rng(options.seed, 0, 0);
    for (int s = 0; s < options.starts; ++s) {
        Params start;
        for (int k = 0; k < 6; ++k) start[k] = (rng.uniform() - 0.5) * kPi;
        start[6] = (rng.uniform() - 0.5) * 2.0 * kPi;
        auto [p, evals] =
            nelder_mead(objective, start, 0.35, options.max_iterations_per_start, 1e-15);
        total_evals += evals;
        const auto sr = best_scale_residual(compose_train(params_to_angles(p)), target);
        if (sr.residual < best.residual) {
            best.angles = params_to_angles(p).canonical();
            best.scale = sr.scale;
            best.residual = sr.residual;
        }
        if (best.residual <= options.target_residual) break;
    }

    best.iterations = total_evals;
    best.converged = best.residual <= 1e-6;
    return best;
}

namespace {

ThetaSweepResult sweep_impl(const std::function<Cx2Matrix(double)>& train_at,
                            const std::vector<double>& grid, int n_segments) {
    if (grid.empty()) throw std::invalid_argument("sweep_theta1: empty grid");
    if (n_segments < 1) throw std::invalid_argument("sweep_theta1: n_segments must be >= 1");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i + 1] > grid[i]))
            throw std::invalid_argument("sweep_theta1: grid not strictly increasing");

    ThetaSweepResult result;
    result.thetas = grid;
    result.populations.resize(grid.size());
    const PureState h_state{1.0, 0.0};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const PureState out = train_at(grid[i]).pow(n_segments).apply(h_state);
        if (out.norm2() < 1e-150)
            throw std::domain_error("sweep_theta1: total loss at grid point");
        result.populations[i] = out.population0();
    }
    if (grid.size() >= 2)
        result.chis = discrete_susceptibility(result.thetas, result.populations);
    return result;
}

}  // namespace

ThetaSweepResult sweep_theta1(const WavePlateAngles& fixed, const std::vector<double>& grid,
                              int n_segments) {
    return sweep_impl(
        [&fixed](double theta1) {
            WavePlateAngles a = fixed;
            a.theta1 = theta1;
            return compose_train(a);
        },
        grid, n_segments);
}

ThetaSweepResult sweep_theta1_hermitian(double phi1, double phi2,
                                        const std::vector<double>& grid, int n_segments) {
    return sweep_impl(
        [phi1, phi2](double theta1) { return hermitian_train(theta1, phi1, phi2); }, grid,
        n_segments);
}

}  // namespace nhsense
