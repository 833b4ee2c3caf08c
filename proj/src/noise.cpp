#include "nhsense/noise.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "nhsense/parallel.hpp"

namespace nhsense {

void NoiseModel::validate() const {
    if (!std::isfinite(eta_h) || !std::isfinite(eta_v) || eta_h < 0.0 || eta_v < 0.0)
        throw std::invalid_argument("noise model: eta must be finite and >= 0");
    if (eta_h >= 1.0 || eta_v >= 1.0)
        throw std::invalid_argument("noise model: eta must be < 1");
    if (photon_budget_n < 1)
        throw std::invalid_argument("noise model: photon budget must be >= 1");
    if (!(success_probability_p > 0.0) || success_probability_p > 1.0)
        throw std::invalid_argument("noise model: p must be in (0, 1]");
}

namespace {

struct RawDraw {
    std::int64_t detected;
    std::int64_t n_h;
    std::int64_t noise_h;
    std::int64_t noise_v;
};

RawDraw draw_counts(double s_true, const NoiseModel& model, KeyedRng& rng) {
    if (!(s_true >= 0.0 && s_true <= 1.0))
        throw std::invalid_argument("sample_counts: population outside [0, 1]");
    model.validate();
    RawDraw d;
    d.detected = rng.binomial(model.photon_budget_n, model.success_probability_p);
    d.n_h = rng.binomial(d.detected, s_true);
    const double nd = static_cast<double>(d.detected);
    d.noise_h = static_cast<std::int64_t>(std::floor(rng.uniform() * model.eta_h * nd));
    d.noise_v = static_cast<std::int64_t>(std::floor(rng.uniform() * model.eta_v * nd));
    return d;
}

}  // namespace

CountRecord sample_counts(double s_true, const NoiseModel& model, KeyedRng& rng) {
    const RawDraw d = draw_counts(s_true, model, rng);
    return {d.n_h + d.noise_h, (d.detected - d.n_h) + d.noise_v};
}

double sample_noisy_population(double s_true, const NoiseModel& model, KeyedRng& rng) {
    const RawDraw d = draw_counts(s_true, model, rng);
    if (d.detected == 0) return noisy_population_mean(s_true, model);  // no photons, no estimate
    const double nd = static_cast<double>(d.detected);
    const double s_bar = static_cast<double>(d.n_h) / nd;
    return s_bar + (1.0 - s_bar) * static_cast<double>(d.noise_h) / nd -
           s_bar * static_cast<double>(d.noise_v) / nd;
}

double noisy_population_mean(double s, const NoiseModel& model) {
    model.validate();
    return s + 0.5 * (1.0 - s) * model.eta_h - 0.5 * s * model.eta_v;
}

double std_s_prime(double s, const NoiseModel& model) {
    model.validate();
    const double shot = s * (1.0 - s) /
                        (model.success_probability_p * static_cast<double>(model.photon_budget_n));
    const double damp = 1.0 - 0.5 * (model.eta_h + model.eta_v);
    const double floor_term = ((1.0 - s) * (1.0 - s) * model.eta_h * model.eta_h +
                               s * s * model.eta_v * model.eta_v) /
                              12.0;
    return std::sqrt(damp * damp * shot + floor_term);
}

double delta_lambda(double s_at_working_point, double chi_max, const NoiseModel& model) {
    if (!(chi_max > 0.0)) throw std::invalid_argument("delta_lambda: chi_max must be positive");
    return std_s_prime(s_at_working_point, model) / chi_max;
}

EstimateReport estimate_ensemble(double s_true, const NoiseModel& model, double chi_max,
                                 std::int64_t repetitions, std::uint64_t seed,
                                 std::uint64_t stream) {
    if (repetitions < 2) throw std::invalid_argument("estimate_ensemble: need >= 2 repetitions");
    std::vector<double> samples(static_cast<std::size_t>(repetitions));
    parallel_for(samples.size(), [&](std::size_t i) {
        KeyedRng rng(seed, stream, static_cast<std::uint64_t>(i));
        samples[i] = sample_noisy_population(s_true, model, rng);
    });

    double mean = 0.0;
    for (double x : samples) mean += x;
    mean /= static_cast<double>(samples.size());
    double ss = 0.0;
    for (double x : samples) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / static_cast<double>(samples.size() - 1));

    EstimateReport report;
    report.mean_s_prime = mean;
    report.std_s_prime = sd;
    report.delta_lambda = (chi_max > 0.0) ? sd / chi_max : 0.0;
    report.samples = repetitions;
    return report;
}

namespace {

// density of (1-sbar)*U[0,eta_h] - sbar*U[0,eta_v], a trapezoid on [-b, a]
double box_difference_density(double u, double a, double b) {
    if (a < 1e-14 && b < 1e-14) return 0.0;  // point mass, handled by caller
    if (a < 1e-14) return (u >= -b && u <= 0.0) ? 1.0 / b : 0.0;
    if (b < 1e-14) return (u >= 0.0 && u <= a) ? 1.0 / a : 0.0;
    const double overlap = std::min(a, u + b) - std::max(0.0, u);
    return overlap > 0.0 ? overlap / (a * b) : 0.0;
}

double binomial_mixture_fisher(double lambda, const NoiseModel& model,
                               const std::function<double(double)>& population,
                               const FisherOptions& options) {
    const std::int64_t m =
        std::max<std::int64_t>(1, std::llround(model.success_probability_p *
                                               static_cast<double>(model.photon_budget_n)));
    const double h = options.lambda_step;

    if (model.eta_h < 1e-14 && model.eta_v < 1e-14) {
        // purely discrete binomial: classical FI of the count distribution
        const double s = population(lambda);
        const double ds = (population(lambda + h) - population(lambda - h)) / (2.0 * h);
        if (s <= 0.0 || s >= 1.0) return 0.0;
        return static_cast<double>(m) * ds * ds / (s * (1.0 - s));
    }

    auto log_pmf = [m](std::int64_t k, double s) {
        return std::lgamma(static_cast<double>(m) + 1.0) -
               std::lgamma(static_cast<double>(k) + 1.0) -
               std::lgamma(static_cast<double>(m - k) + 1.0) +
               static_cast<double>(k) * std::log(s) +
               static_cast<double>(m - k) * std::log1p(-s);
    };

    auto density = [&](double sp, double s) {
        double f = 0.0;
        for (std::int64_t k = 0; k <= m; ++k) {
            const double sbar = static_cast<double>(k) / static_cast<double>(m);
            const double w = std::exp(log_pmf(k, std::clamp(s, 1e-12, 1.0 - 1e-12)));
            f += w * box_difference_density(sp - sbar, (1.0 - sbar) * model.eta_h,
                                            sbar * model.eta_v);
        }
        return f;
    };

    const double eta_scale = std::max(model.eta_h, model.eta_v);
    const double step = eta_scale / options.grid_eta_factor;
    const double lo = -model.eta_v - 2.0 * step;
    const double hi = 1.0 + model.eta_h + 2.0 * step;
    const double s0 = population(lambda);
    const double sp = population(lambda + h);
    const double sm = population(lambda - h);

    double fi = 0.0;
    double prev = 0.0;
    bool first = true;
    for (double x = lo; x <= hi; x += step) {
        const double f0 = density(x, s0);
        double integrand = 0.0;
        if (f0 > 1e-300) {
            const double dfl = (density(x, sp) - density(x, sm)) / (2.0 * h);
            integrand = dfl * dfl / f0;
        }
        if (!first) fi += 0.5 * (prev + integrand) * step;
        prev = integrand;
        first = false;
    }
    return fi;
}

}  // namespace

double fisher_information(double lambda, const NoiseModel& model,
                          const std::function<double(double)>& population,
                          const FisherOptions& options) {
    model.validate();
    const double s0 = population(lambda);
    if (!(s0 >= 0.0 && s0 <= 1.0))
        throw std::invalid_argument("fisher_information: population outside [0, 1]");

    const double pn = model.success_probability_p * static_cast<double>(model.photon_budget_n);
    if (pn * s0 * (1.0 - s0) < 25.0)
        return binomial_mixture_fisher(lambda, model, population, options);

    auto moments = [&](double lam) {
        const double s = population(lam);
        const double mu = noisy_population_mean(s, model);
        const double sd = std_s_prime(s, model);
        return std::pair<double, double>{mu, sd * sd};
    };

    const auto [mu0, v0] = moments(lambda);
    const double sigma = std::sqrt(v0);

    // keep the mean shift across the central difference well inside sigma
    double h = options.lambda_step;
    {
        const auto [mup, vp] = moments(lambda + h);
        const auto [mum, vm] = moments(lambda - h);
        const double shift = std::abs(mup - mum);
        if (shift > 0.2 * sigma) h *= 0.2 * sigma / shift;
    }
    const auto [mup, vp] = moments(lambda + h);
    const auto [mum, vm] = moments(lambda - h);

    if (std::abs(mup - mum) < 1e-300 && std::abs(vp - vm) < 1e-300) return 0.0;

    double step = sigma / options.grid_sigma_factor;
    const double eta_min = [&] {
        if (model.eta_h > 0.0 && model.eta_v > 0.0) return std::min(model.eta_h, model.eta_v);
        return std::max(model.eta_h, model.eta_v);
    }();
    if (eta_min > 0.0) step = std::min(step, eta_min / options.grid_eta_factor);

    const double lo = mu0 - options.tail_sigmas * sigma;
    const double hi = mu0 + options.tail_sigmas * sigma;
    const std::size_t n = std::min<std::size_t>(
        static_cast<std::size_t>((hi - lo) / step) + 2, 4'000'000);
    const double dx = (hi - lo) / static_cast<double>(n - 1);

    auto pdf = [](double x, double mu, double v) {
        return std::exp(-0.5 * (x - mu) * (x - mu) / v) / std::sqrt(2.0 * M_PI * v);
    };

    double fi = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = lo + dx * static_cast<double>(i);
        const double f0 = pdf(x, mu0, v0);
        double integrand = 0.0;
        if (f0 > 1e-300) {
            const double dfl = (pdf(x, mup, vp) - pdf(x, mum, vm)) / (2.0 * h);
            integrand = dfl * dfl / f0;
        }
        if (i > 0) fi += 0.5 * (prev + integrand) * dx;
        prev = integrand;
    }
    return fi;
}

}  // namespace nhsense
