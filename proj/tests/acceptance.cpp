// Acceptance suite: runs every shipping criterion at its stated tolerance
// and prints one [PASS]/[FAIL] line per criterion. Exit code is the number
// of failed criteria.

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "nhsense/diag.hpp"
#include "nhsense/experiments.hpp"
#include "nhsense/parallel.hpp"

using namespace nhsense;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEps = 1e-3;

struct Check {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) pass = false;
        detail += (detail.empty() ? "" : "; ") + what + (ok ? " [ok]" : " [FAILED]");
    }
};

SegmentPlan fig3_plan(double lambda = 0.0) {
    SensorConfig cfg;
    cfg.delta = 0.3015;
    cfg.a = 1.0;
    cfg.omega = 2.0 * 0.3015 / 50.0;
    cfg.gamma = 0.0;
    cfg.coupling_lambda = lambda;
    const double t = kPi / (2.0 * std::abs(cfg.energy()));
    return SegmentPlan::from_total_time(cfg, t, 5);
}

double fig3_population(double lambda) {
    SegmentPlan plan = fig3_plan(lambda);
    return stroboscopic_evolve(plan, PureState{1.0, 0.0}).population0();
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), format, a, b, c);
    return buf;
}

// --- criterion 1 --------------------------------------------------------

Check hermitian_baseline() {
    Check check;
    const double e = 0.3015 / 50.0;
    const double t = kPi / (2.0 * e);
    const double lam_star = kPi / (4.0 * t);  // sin(2 lambda t) = 1
    const double analytic = std::abs(hermitian_susceptibility(lam_star, t));
    check.require(std::abs(analytic - t) <= 1e-9 * t,
                  fmt("analytic max |chi| = t = %.4f (err %.1e)", analytic,
                      std::abs(analytic - t)));
    check.require(analytic >= 262.0 - 9.0 && analytic <= 262.0 + 9.0,
                  fmt("inside measured band 262+-9: %.2f", analytic));
    return check;
}

// --- criterion 2 --------------------------------------------------------

Check nonhermitian_enhancement() {
    Check check;
    // the measured estimator: Eq.-(discrete chi) on the default sweep grid
    const ResultTable table = run(ExperimentConfig::defaults_for(Scenario::SweepLambda));
    const int chi_col = table.column_index("chi");
    double max_chi = 0.0;
    for (const auto& row : table.rows) {
        const double c = row[static_cast<std::size_t>(chi_col)];
        if (!std::isnan(c)) max_chi = std::max(max_chi, std::abs(c));
    }
    check.require(max_chi >= 1018.0 - 97.0 && max_chi <= 1018.0 + 97.0,
                  fmt("discrete max |chi| = %.1f in 1018+-97", max_chi));

    // steep-response window containing lambda/eps in [-1.402, 1.832]:
    // the steepest point lies inside, the population falls from ~1 to ~0
    // across it, and the mean slope there beats the Hermitian ceiling t
    const double lo = -1.402 * kEps, hi = 1.832 * kEps;
    const WorkingPoint wp = find_working_point(fig3_population, -2.0 * kEps, 2.0 * kEps, 201,
                                               kEps / 100.0, 1e-6 * kEps);
    check.require(wp.lambda_star > lo && wp.lambda_star < hi,
                  fmt("argmax|chi| at lambda/eps = %.3f inside window", wp.lambda_star / kEps));
    double s_min = 1.0;
    for (int i = 0; i <= 400; ++i)
        s_min = std::min(s_min, fig3_population(lo + (hi - lo) * i / 400.0));
    check.require(fig3_population(lo) >= 0.9 && s_min <= 0.1,
                  fmt("S spans %.3f -> %.3f across the window", fig3_population(lo), s_min));
    double variation = 0.0;
    double prev = fig3_population(lo);
    for (int i = 1; i <= 400; ++i) {
        const double s = fig3_population(lo + (hi - lo) * i / 400.0);
        variation += std::abs(s - prev);
        prev = s;
    }
    const double t = kPi / (2.0 * 0.3015 / 50.0);
    check.require(variation / (hi - lo) > t,
                  fmt("mean |dS/dlambda| = %.0f over window > Hermitian ceiling %.0f",
                      variation / (hi - lo), t));
    return check;
}

// --- criterion 3 --------------------------------------------------------

Check explicit_example() {
    Check check;
    ExperimentConfig non_h = ExperimentConfig::defaults_for(Scenario::SweepLambda);
    non_h.sensor_kind = SensorKind::Explicit;
    non_h.grid = {-2.0, 2.0, 401, "eps"};
    non_h.epsilon = 1.0;  // this example sweeps lambda in natural units
    const ResultTable tn = run(non_h);

    ExperimentConfig herm = non_h;
    herm.sensor_kind = SensorKind::Hermitian;
    herm.total_time = 5.45;
    const ResultTable th = run(herm);

    auto max_abs_chi = [](const ResultTable& t) {
        const int col = t.column_index("chi");
        double m = 0.0;
        for (const auto& row : t.rows) {
            const double c = row[static_cast<std::size_t>(col)];
            if (!std::isnan(c)) m = std::max(m, std::abs(c));
        }
        return m;
    };
    const double chi_n = max_abs_chi(tn);
    const double chi_h = max_abs_chi(th);
    const double ratio = chi_n / chi_h;

    // The two absolute bands are not reachable by this model: the Hermitian
    // reference is capped at t = 5.45 < 6.1 for every grid, and the
    // non-Hermitian discrete estimator tops out near 65 on spike-aligned
    // grids (continuous slope 84.3). The enhancement ratio is the
    // discretization-robust observable and is asserted at its tolerance.
    check.require(chi_n >= 69.0 && chi_n <= 73.0,
                  fmt("non-H max |chi| = %.2f in 71+-2", chi_n));
    check.require(chi_h >= 6.1 && chi_h <= 6.5, fmt("Hermitian max |chi| = %.3f in 6.3+-0.2", chi_h));
    check.require(ratio >= 11.3 * 0.95 && ratio <= 11.3 * 1.05,
                  fmt("enhancement ratio = %.2f within 11.3 +- 5%%", ratio));
    return check;
}

// --- criterion 4 --------------------------------------------------------

Check stroboscopic_consistency() {
    Check check;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double lambda = (-2.0 + 4.0 * i / 99.0) * kEps;
        const SegmentPlan plan = fig3_plan(lambda);
        const PureState segmented = stroboscopic_evolve(plan, PureState{1.0, 0.0});
        const Cx2Matrix shifted =
            full_hamiltonian(plan.config) - plan.config.energy() * Cx2Matrix::identity();
        const PureState single =
            expm2(shifted, Cx{0.0, -plan.total_time}).apply(PureState{1.0, 0.0});
        worst = std::max({worst, std::abs(segmented.c0 - single.c0),
                          std::abs(segmented.c1 - single.c1)});
    }
    check.require(worst < 1e-10, fmt("u(tau)^5 vs single shot, worst entry diff %.2e", worst));
    return check;
}

// --- criterion 5 --------------------------------------------------------

Check closed_form_oracle() {
    Check check;
    KeyedRng rng(515151, 0, 0);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        SensorConfig cfg;
        cfg.delta = 0.01 + 0.4 * rng.uniform();
        cfg.a = 1.0;
        cfg.omega = 0.002 + 0.05 * rng.uniform();
        cfg.gamma = 0.0;
        const double e = std::abs(cfg.energy());
        const double t = (0.05 + 0.9 * rng.uniform()) * kPi / e;
        const PureState closed = closed_form_evolution(cfg, t).state.normalized();
        const PureState direct = expm2(bare_hamiltonian(cfg), Cx{0.0, -t})
                                     .apply(PureState{1.0, 0.0})
                                     .normalized();
        // align the free global phase on the dominant component
        const Cx ref = std::abs(closed.c0) > std::abs(closed.c1) ? direct.c0 / closed.c0
                                                                 : direct.c1 / closed.c1;
        const Cx phase = ref / std::abs(ref);
        worst = std::max({worst, std::abs(phase * closed.c0 - direct.c0),
                          std::abs(phase * closed.c1 - direct.c1)});
    }
    check.require(worst < 1e-10,
                  fmt("closed form vs expm2 over 200 configs, worst diff %.2e", worst));
    return check;
}

// --- criterion 6 --------------------------------------------------------

Check theta1_application() {
    Check check;
    const ResultTable table = run(ExperimentConfig::defaults_for(Scenario::SweepTheta1));
    const int cn_col = table.column_index("chi_nonh");
    const int ch_col = table.column_index("chi_h");
    double max_n = 0.0, max_h = 0.0, argmax = 0.0;
    for (const auto& row : table.rows) {
        const double cn = row[static_cast<std::size_t>(cn_col)];
        const double ch = row[static_cast<std::size_t>(ch_col)];
        if (!std::isnan(cn) && std::abs(cn) > max_n) {
            max_n = std::abs(cn);
            argmax = row[0];  // theta1 in units of pi
        }
        if (!std::isnan(ch)) max_h = std::max(max_h, std::abs(ch));
    }
    check.require(std::abs(argmax + 0.06) <= 0.02,
                  fmt("most sensitive at theta1 = %.4f pi (target -0.06 +- 0.02)", argmax));
    check.require(max_n / max_h >= 5.0,
                  fmt("enhancement ratio %.1f (= %.1f / %.1f) >= 5", max_n / max_h, max_n,
                      max_h));
    return check;
}

// --- criterion 7 --------------------------------------------------------

Check noise_floor_formula() {
    Check check;
    struct Tuple {
        double s, eh, ev, p;
        std::int64_t n;
    };
    std::vector<Tuple> tuples = {{0.34, 0.05, 0.06, 1.0, 100000}};  // the reported point
    KeyedRng gen(70707, 0, 0);
    while (tuples.size() < 20) {
        tuples.push_back({0.2 + 0.6 * gen.uniform(), 0.01 + 0.07 * gen.uniform(),
                          0.01 + 0.07 * gen.uniform(), 0.25 + 0.75 * gen.uniform(),
                          static_cast<std::int64_t>(std::pow(10.0, 4.0 + 2.0 * gen.uniform()))});
    }
    double worst = 0.0;
    for (std::size_t k = 0; k < tuples.size(); ++k) {
        const auto& t = tuples[k];
        NoiseModel m;
        m.eta_h = t.eh;
        m.eta_v = t.ev;
        m.photon_budget_n = t.n;
        m.success_probability_p = t.p;
        const EstimateReport rep = estimate_ensemble(t.s, m, 1.0, 10000, 123321, k);
        worst = std::max(worst, std::abs(rep.std_s_prime / std_s_prime(t.s, m) - 1.0));
    }
    check.require(worst < 0.05,
                  fmt("20 tuples x 1e4 reps, worst |MC/formula - 1| = %.3f < 0.05", worst));
    return check;
}

// --- criterion 8 --------------------------------------------------------

Check noise_ordering() {
    Check check;
    const ResultTable table = run(ExperimentConfig::defaults_for(Scenario::NoiseSweep));
    const int dn = table.column_index("delta_lambda_nonH");
    const int dh = table.column_index("delta_lambda_H");
    bool ordered = true, increasing_n = true, increasing_h = true;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        ordered = ordered && table.rows[i][static_cast<std::size_t>(dn)] <
                                 table.rows[i][static_cast<std::size_t>(dh)];
        if (i > 0) {
            increasing_n = increasing_n && table.rows[i][static_cast<std::size_t>(dn)] >
                                               table.rows[i - 1][static_cast<std::size_t>(dn)];
            increasing_h = increasing_h && table.rows[i][static_cast<std::size_t>(dh)] >
                                               table.rows[i - 1][static_cast<std::size_t>(dh)];
        }
    }
    check.require(ordered, "delta_lambda(non-H) < delta_lambda(H) at every eta_h");
    check.require(increasing_n && increasing_h, "both curves increase with eta_h");
    return check;
}

// --- criterion 9 --------------------------------------------------------

Check fisher_information_checks() {
    Check check;
    const double t = kPi / (2.0 * 0.3015 / 50.0);
    const double lam_h = kPi / (4.0 * t);
    auto pop_h = [t](double l) { return hermitian_population(l, t); };

    // (a) eta = 0: proportional to N within 3% per decade, binomial oracle within 2%
    double prev = 0.0;
    bool linear = true, oracle_ok = true;
    for (std::int64_t n : {1000LL, 10000LL, 100000LL, 1000000LL}) {
        NoiseModel m;
        m.photon_budget_n = n;
        const double fi = fisher_information(lam_h, m, pop_h);
        const double s = pop_h(lam_h);
        const double ds = hermitian_susceptibility(lam_h, t);
        const double binom = static_cast<double>(n) * ds * ds / (s * (1.0 - s));
        oracle_ok = oracle_ok && std::abs(fi / binom - 1.0) < 0.02;
        if (prev > 0.0) linear = linear && std::abs(fi / prev / 10.0 - 1.0) < 0.03;
        prev = fi;
    }
    check.require(oracle_ok, "eta=0 matches binomial Fisher information within 2%");
    check.require(linear, "eta=0 scales linearly in N within 3% per decade");

    // (b) eta_h = eta_v = 0.1: plateau over the top decade, non-H above H
    const WorkingPoint wp = find_working_point(fig3_population, -2.0 * kEps, 2.0 * kEps, 201,
                                               kEps / 100.0, 1e-6 * kEps);
    SegmentPlan plan = fig3_plan(wp.lambda_star);
    const double p_star = survival_probability(plan, PureState{1.0, 0.0});
    auto pop_n = [](double l) { return fig3_population(l); };

    auto fisher_at = [&](double lam, double p, std::int64_t n, auto&& pop) {
        NoiseModel m;
        m.eta_h = 0.1;
        m.eta_v = 0.1;
        m.photon_budget_n = n;
        m.success_probability_p = p;
        return fisher_information(lam, m, pop);
    };
    const double fn6 = fisher_at(wp.lambda_star, p_star, 1000000, pop_n);
    const double fn7 = fisher_at(wp.lambda_star, p_star, 10000000, pop_n);
    const double fh6 = fisher_at(lam_h, 1.0, 1000000, pop_h);
    const double fh7 = fisher_at(lam_h, 1.0, 10000000, pop_h);
    check.require(fn7 / fn6 < 1.1, fmt("non-H plateau ratio 1e7/1e6 = %.4f < 1.1", fn7 / fn6));
    check.require(fh7 / fh6 < 1.1, fmt("Hermitian plateau ratio = %.4f < 1.1", fh7 / fh6));
    check.require(fn7 > fh7, fmt("non-H plateau %.3e above Hermitian %.3e", fn7, fh7));
    return check;
}

// --- criterion 10 -------------------------------------------------------

Check decomposition_roundtrip() {
    Check check;
    KeyedRng rng(101010, 0, 0);
    int converged = 0;
    double worst_rt = 0.0;
    const int total = 50;
    std::vector<Cx2Matrix> targets;
    for (int i = 0; i < total / 2; ++i) {  // general complex operators
        auto c = [&rng] { return Cx{2.0 * (rng.uniform() - 0.5), 2.0 * (rng.uniform() - 0.5)}; };
        targets.push_back({c(), c(), c(), c()});
    }
    for (int i = 0; i < total / 2; ++i) {  // Hurwitz-parameterized unitaries
        const double th = std::asin(std::sqrt(rng.uniform()));
        const double al = 2.0 * kPi * rng.uniform(), be = 2.0 * kPi * rng.uniform();
        const Cx ea = std::exp(Cx{0.0, al}), eb = std::exp(Cx{0.0, be});
        targets.push_back({ea * std::cos(th), eb * std::sin(th),
                           -std::conj(eb) * std::sin(th), std::conj(ea) * std::cos(th)});
    }
    std::vector<FitReport> fits(targets.size());
    parallel_for(targets.size(), [&](std::size_t i) {
        fits[i] = decompose_operator(targets[i]);
    });
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const FitReport& fit = fits[i];
        if (fit.converged) ++converged;
        const Cx2Matrix recomposed = fit.scale * compose_train(fit.angles);
        worst_rt = std::max(worst_rt, (recomposed - targets[i]).frobenius_norm() /
                                          targets[i].frobenius_norm());
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%d/%d targets converged to residual <= 1e-6", converged,
                  total);
    check.require(converged == total, buf);
    check.require(worst_rt < 1e-6,
                  fmt("worst relative recomposition error %.2e", worst_rt));
    return check;
}

}  // namespace

int main() {
    set_warn_handler([](const std::string&) {});  // keep criterion output clean

    struct Criterion {
        const char* name;
        std::function<Check()> fn;
    };
    const std::vector<Criterion> criteria = {
        {"Hermitian baseline susceptibility", hermitian_baseline},
        {"non-Hermitian enhancement (main sweep)", nonhermitian_enhancement},
        {"explicit non-pseudo-Hermitian example", explicit_example},
        {"stroboscopic consistency", stroboscopic_consistency},
        {"closed-form evolution oracle", closed_form_oracle},
        {"theta1-encoded signal application", theta1_application},
        {"noise-floor formula vs Monte Carlo", noise_floor_formula},
        {"measurement-uncertainty ordering", noise_ordering},
        {"Fisher information scaling and plateau", fisher_information_checks},
        {"wave-plate decomposition round-trip", decomposition_roundtrip},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check result;
        try {
            result = criteria[i].fn();
        } catch (const std::exception& e) {
            result.pass = false;
            result.detail = std::string{"exception: "} + e.what();
        }
        if (!result.pass) ++failures;
        std::printf("[%s] criterion %zu: %s — %s\n", result.pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].name, result.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures;
}
