// Quantitative acceptance suite. Runs every verification criterion at its
// stated tolerance and prints one pass/fail line per criterion (with the
// contributing checks indented below it). Exits with the number of criteria
// that did not fully pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "laglens/dde.hpp"
#include "laglens/diffusion.hpp"
#include "laglens/mapper.hpp"
#include "laglens/spectrum.hpp"

using namespace laglens;

namespace {

struct Clause {
    bool pass;
    std::string text;
};

struct Criterion {
    int id;
    std::string title;
    std::vector<Clause> clauses;
    std::vector<std::string> notes;
    double seconds = 0.0;

    bool pass() const {
        return std::all_of(clauses.begin(), clauses.end(),
                           [](const Clause& c) { return c.pass; });
    }
};

std::vector<Criterion> g_results;

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof(buf), f, args);
    va_end(args);
    return buf;
}

dde::HistoryFn gaussian(double amp, double center, double width) {
    return [=](double t) {
        const double x = (t - center) / width;
        return amp * std::exp(-x * x);
    };
}

dde::Trajectory run(double r, double T, dde::HistoryFn psi, double t_end, int m,
                    dde::Model model = dde::Model::LinearDecayFeedback) {
    dde::DdeProblem p;
    p.model = model;
    p.feedback_gain = r;
    p.delay = T;
    p.history = std::move(psi);
    p.horizon = t_end;
    dde::SolverConfig c;
    c.steps_per_delay = m;
    return dde::integrate(p, c);
}

// ---------------------------------------------------------------------------

void criterion_1_spectrum_certification() {
    Timer timer;
    Criterion crit{1, "spectrum certification (r=1, T=100, branches -10..10)", {}};

    const auto roots = spectrum::compute({1.0, 100.0, 10});
    double max_residual = 0.0, max_asym = 0.0;
    for (const auto& root : roots) {
        max_residual = std::max(max_residual, root.residual);
        max_asym = std::max(max_asym, std::abs(root.lambda_exact - root.lambda_asym));
    }
    double mean_spacing = 0.0;
    for (std::size_t i = 1; i < roots.size(); ++i) {
        mean_spacing += roots[i].lambda_exact.imag() - roots[i - 1].lambda_exact.imag();
    }
    mean_spacing /= static_cast<double>(roots.size() - 1);
    const double spacing_dev = std::abs(mean_spacing - 2.0 * M_PI / 101.0);

    crit.clauses.push_back({roots.size() == 21 && max_residual < 1e-12,
                            fmt("21 roots, residual certified: max %.3e < 1e-12",
                                max_residual)});
    crit.clauses.push_back({max_asym < 1e-6,
                            fmt("max |exact - asym| = %.3e, required < 1e-6 "
                                "(approximation error grows as n^3/T^4; bound holds "
                                "only for |n| <= 1 at T=100)",
                                max_asym)});
    crit.clauses.push_back({spacing_dev < 1e-4,
                            fmt("mean imaginary spacing %.8f within 1e-4 of 2pi/101 "
                                "(dev %.3e)",
                                mean_spacing, spacing_dev)});
    crit.seconds = timer.seconds();
    crit.clauses.push_back({crit.seconds < 1.0, fmt("runtime %.3f s < 1 s", crit.seconds)});
    g_results.push_back(std::move(crit));
}

void criterion_2_trivial_root() {
    Timer timer;
    Criterion crit{2, "trivial-root exactness (r=1, n=0)", {}};
    for (double T : {30.0, 100.0}) {
        const auto root = spectrum::exact_root(1.0, T, 0);
        crit.clauses.push_back(
            {root.lambda_exact == std::complex<double>(0.0, 0.0) && root.residual == 0.0,
             fmt("T=%g: lambda = (%g, %g), residual = %g (both exactly zero)", T,
                 root.lambda_exact.real(), root.lambda_exact.imag(), root.residual)});
    }
    crit.seconds = timer.seconds();
    g_results.push_back(std::move(crit));
}

void criterion_3_convergence() {
    Timer timer;
    Criterion crit{3, "integrator order-4 convergence against the quadrature oracle", {}};

    dde::DdeProblem p;
    p.feedback_gain = 1.0;
    p.delay = 10.0;
    p.history = gaussian(20, -5, 1);
    p.horizon = 50.0;
    dde::SolverConfig fine;
    fine.steps_per_delay = 2048;
    const auto oracle = dde::linear_oracle_integrate(p, fine);

    std::vector<double> errs;
    for (int m : {64, 128, 256}) {
        dde::SolverConfig c;
        c.steps_per_delay = m;
        const auto rk = dde::integrate(p, c);
        double err = 0.0;
        for (std::size_t i = 0; i < rk.size(); ++i) {
            err = std::max(err,
                           std::abs(rk.samples()[i] - dde::dense_eval(oracle, rk.time_at(i))));
        }
        errs.push_back(err);
    }
    const double r1 = errs[0] / errs[1];
    const double r2 = errs[1] / errs[2];
    crit.clauses.push_back({r1 >= 15.0, fmt("error(m=64)/error(m=128) = %.2f >= 15 "
                                            "(%.3e -> %.3e)", r1, errs[0], errs[1])});
    crit.clauses.push_back({r2 >= 15.0, fmt("error(m=128)/error(m=256) = %.2f >= 15 "
                                            "(%.3e -> %.3e)", r2, errs[1], errs[2])});
    crit.seconds = timer.seconds();
    crit.clauses.push_back({crit.seconds < 10.0, fmt("runtime %.3f s < 10 s", crit.seconds)});
    g_results.push_back(std::move(crit));
}

struct EnvelopeRun {
    double worst_dev = 0.0;
    double mean_spacing = 0.0;
    std::size_t peaks_used = 0;
};

EnvelopeRun envelope_run(double T, int m, double t_end) {
    const double t0 = 25.0;
    const auto traj = run(1.0, T, gaussian(20, -t0, 1), t_end, m);
    const auto peaks = mapper::extract_peaks(traj, 2.0 * (T + 1.0), 1e-6);
    const auto env = mapper::envelope_prediction(1.0, T, t0, peaks.front());
    EnvelopeRun out;
    double spacing_sum = 0.0;
    for (std::size_t i = 0;
         i < peaks.size() && peaks[i].t < peaks.front().t + 10.0 * (T + 1.0); ++i) {
        const double pred = env(peaks[i].t);
        out.worst_dev = std::max(out.worst_dev, std::abs(peaks[i].y - pred) / pred);
        if (i > 0) spacing_sum += peaks[i].t - peaks[i - 1].t;
        out.peaks_used = i + 1;
    }
    out.mean_spacing = spacing_sum / static_cast<double>(out.peaks_used - 1);
    return out;
}

void criterion_4_recurrent_pulse_envelope() {
    Timer timer;
    Criterion crit{4, "recurrent pulse: spacing and inverse-sqrt envelope", {}};

    const EnvelopeRun at30 = envelope_run(30.0, 256, 420.0);
    const EnvelopeRun at60 = envelope_run(60.0, 512, 800.0);

    crit.clauses.push_back({at30.mean_spacing > 30.5 && at30.mean_spacing < 31.5,
                            fmt("T=30: mean peak spacing %.5f in [30.5, 31.5]",
                                at30.mean_spacing)});
    crit.clauses.push_back({at30.worst_dev < 0.15,
                            fmt("T=30: %zu peaks over 10 recurrences within 15%% of the "
                                "anchored envelope (worst %.4f)",
                                at30.peaks_used, at30.worst_dev)});
    // The post-guard peak sequence is the same function of the recurrence count
    // at every delay (each recurrence convolves with a unit-mean exponential),
    // so the anchored-envelope deviation does not contract when T doubles; it
    // approaches its large-T limit from below.
    crit.clauses.push_back({at60.worst_dev < at30.worst_dev,
                            fmt("T=60 rerun tightens the worst deviation: %.4f vs %.4f "
                                "(measured: it does not)",
                                at60.worst_dev, at30.worst_dev)});
    crit.seconds = timer.seconds();
    crit.clauses.push_back({crit.seconds < 30.0, fmt("runtime %.3f s < 30 s", crit.seconds)});
    g_results.push_back(std::move(crit));
}

void criterion_5_growing_feedback_envelope() {
    Timer timer;
    Criterion crit{5, "growing feedback: non-monotone peak sequence", {}};

    const double T = 30.0, t0 = 15.0, P = T + 1.0;
    const auto traj = run(1.1, T, gaussian(20, -t0, 1), 600.0, 256);
    const auto peaks = mapper::extract_peaks(traj, 10.0, 1e-6);
    const auto env = mapper::envelope_prediction(1.1, T, t0, peaks.front());

    std::size_t imin = 0;
    for (std::size_t i = 1; i < peaks.size(); ++i) {
        if (peaks[i].y < peaks[imin].y) imin = i;
    }
    bool shape_ok = imin > 0 && imin + 1 < peaks.size();
    for (std::size_t i = 0; i < imin; ++i) shape_ok = shape_ok && peaks[i].y > peaks[i + 1].y;
    for (std::size_t i = imin; i + 1 < std::min<std::size_t>(peaks.size(), 15); ++i) {
        shape_ok = shape_ok && peaks[i].y < peaks[i + 1].y;
    }
    crit.clauses.push_back({shape_ok,
                            fmt("peak sequence decreases to index %zu (t=%.2f) then grows",
                                imin, peaks[imin].t)});

    const double k_measured = std::round((peaks[imin].t + t0) / P);
    const double k_closed_form = (env.minimum_time() + t0) / P;
    crit.clauses.push_back({std::abs(k_measured - k_closed_form) <= 1.0,
                            fmt("minimum at recurrence %.0f vs closed form %.3f "
                                "(|diff| = %.3f <= 1)",
                                k_measured, k_closed_form,
                                std::abs(k_measured - k_closed_form))});
    crit.seconds = timer.seconds();
    crit.clauses.push_back({crit.seconds < 30.0, fmt("runtime %.3f s < 30 s", crit.seconds)});
    g_results.push_back(std::move(crit));
}

void criterion_6_green_function() {
    Timer timer;
    Criterion crit{6, "localized pulse vs wrapped heat kernel, rows 1-5", {}};

    const double t0 = 25.0;
    auto errors_at = [&](double T) {
        const int m = static_cast<int>(40.0 * T);  // step 0.025
        const auto traj = run(1.0, T, gaussian(20, -t0, 0.2), 6.4 * (T + 1.0), m);
        std::vector<double> l2;
        for (long row = 1; row <= 5; ++row) {
            l2.push_back(mapper::compare_profiles(traj, 1.0, T, t0, row).l2_err);
        }
        return l2;
    };
    const auto e30 = errors_at(30.0);
    const auto e60 = errors_at(60.0);
    const auto e120 = errors_at(120.0);

    // After k recurrences the profile is the history convolved with a
    // Gamma(k,1) kernel; its skewness 2/sqrt(k) keeps the distance to the
    // symmetric Gaussian near 0.4/sqrt(k) at any delay, so the 0.05 bound is
    // out of reach for the first few rows.
    double worst60 = 0.0;
    for (double v : e60) worst60 = std::max(worst60, v);
    crit.clauses.push_back({worst60 < 0.05,
                            fmt("T=60 rows 1-5: normalized L2 = %.3f %.3f %.3f %.3f %.3f, "
                                "required < 0.05 each",
                                e60[0], e60[1], e60[2], e60[3], e60[4])});

    bool ordered = true;
    for (std::size_t i = 0; i < e60.size(); ++i) {
        ordered = ordered && e120[i] < e60[i] && e60[i] < e30[i];
    }
    crit.clauses.push_back({ordered,
                            fmt("row-wise error ordering T=120 < T=60 < T=30 "
                                "(row 1: %.4f < %.4f < %.4f)",
                                e120[0], e60[0], e30[0])});
    crit.notes.push_back(fmt("T=30:  %.4f %.4f %.4f %.4f %.4f", e30[0], e30[1], e30[2],
                             e30[3], e30[4]));
    crit.notes.push_back(fmt("T=120: %.4f %.4f %.4f %.4f %.4f", e120[0], e120[1], e120[2],
                             e120[3], e120[4]));
    crit.seconds = timer.seconds();
    crit.clauses.push_back({crit.seconds < 60.0, fmt("runtime %.3f s < 60 s", crit.seconds)});
    g_results.push_back(std::move(crit));
}

void criterion_7_square_wave() {
    Timer timer;
    Criterion crit{7, "cubic counterexample: square wave plateaus and period", {}};

    const double T = 10.0;
    const auto traj = run(0.0, T,
                          [](double t) { return 0.1 * std::sin(t) - 0.02 * std::cos(3.0 * t); },
                          600.0, 256, dde::Model::CubicCounterexample);
    const auto& y = traj.samples();
    const auto& dy = traj.derivatives();

    std::vector<double> hi, lo;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (traj.time_at(i) <= 30.0 * T) continue;
        if (y[i] > 1.2) hi.push_back(y[i]);
        if (y[i] < -1.2) lo.push_back(-y[i]);
    }
    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return v[v.size() / 2];
    };
    const double root2 = std::sqrt(2.0);
    const double hi_dev = std::abs(median(hi) - root2) / root2;
    const double lo_dev = std::abs(median(lo) - root2) / root2;
    crit.clauses.push_back({hi_dev < 0.05 && lo_dev < 0.05,
                            fmt("plateau medians +/-%.5f / %.5f within 5%% of sqrt(2) "
                                "(devs %.4f, %.4f)",
                                median(hi), -median(lo), hi_dev, lo_dev)});

    std::vector<double> crossings;
    for (std::size_t i = 1; i < y.size(); ++i) {
        if (traj.time_at(i) <= 30.0 * T) continue;
        if (y[i - 1] < 0.0 && y[i] >= 0.0) {
            const double frac = y[i - 1] / (y[i - 1] - y[i]);
            crossings.push_back(traj.time_at(i - 1) + frac * traj.step());
        }
    }
    const double period = (crossings.back() - crossings.front()) /
                          static_cast<double>(crossings.size() - 1);
    const double period_dev = std::abs(period - 2.0 * T) / (2.0 * T);
    // The switching layers add an O(1) lag per half cycle; at T=10 the true
    // limit-cycle period is 2T + 2.85, outside the 5% band (it enters the band
    // for T of roughly 40 and beyond).
    crit.clauses.push_back({period_dev < 0.05,
                            fmt("oscillation period %.5f within 5%% of 2T=20 (dev %.4f)",
                                period, period_dev)});

    // transient length is measured, not asserted: last quasi-stationary sample
    // still away from the plateau level
    double lock_in = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const bool on_plateau = std::abs(y[i]) > 1.2 && std::abs(dy[i]) < 0.02;
        if (on_plateau && std::abs(std::abs(y[i]) - root2) > 0.05 * root2) {
            lock_in = traj.time_at(i);
        }
    }
    crit.notes.push_back(fmt("square wave locked in (plateaus within 5%%) after t = %.2f",
                             lock_in));

    crit.seconds = timer.seconds();
    crit.clauses.push_back({crit.seconds < 10.0, fmt("runtime %.3f s < 10 s", crit.seconds)});
    g_results.push_back(std::move(crit));
}

void criterion_8_diffusion_suite() {
    Timer timer;
    Criterion crit{8, "diffusion property suite (N=512)", {}};

    std::vector<double> f(512);
    for (std::size_t j = 0; j < 512; ++j) {
        const double s = j / 512.0;
        f[j] = 2.0 + std::sin(2 * M_PI * s) + 0.7 * std::cos(2 * M_PI * 5 * s + 1.0);
    }
    const diffusion::PeriodicField field(f);

    {
        const auto out = diffusion::evolve(field, 0.004);
        double m0 = 0.0, m1 = 0.0;
        for (std::size_t j = 0; j < 512; ++j) {
            m0 += f[j];
            m1 += out.samples()[j];
        }
        const double drift = std::abs(m1 - m0) / std::abs(m0);
        crit.clauses.push_back({drift < 1e-12, fmt("mass conservation: drift %.3e < 1e-12",
                                                   drift)});
    }
    {
        const auto two = diffusion::evolve(diffusion::evolve(field, 0.013), 0.027);
        const auto one = diffusion::evolve(field, 0.040);
        double worst = 0.0;
        for (std::size_t j = 0; j < 512; ++j) {
            worst = std::max(worst, std::abs(two.samples()[j] - one.samples()[j]));
        }
        crit.clauses.push_back({worst < 1e-12, fmt("semigroup: max |two-step - one-step| "
                                                   "%.3e < 1e-12", worst)});
    }
    {
        const double dz = 0.01;
        const auto out = diffusion::evolve(field, dz);
        double worst = 0.0;
        for (std::size_t i = 0; i < 512; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < 512; ++j) {
                acc += f[j] * diffusion::wrapped_heat_kernel(field.grid(i), field.grid(j), dz);
            }
            worst = std::max(worst, std::abs(acc / 512.0 - out.samples()[i]));
        }
        crit.clauses.push_back({worst < 1e-8, fmt("kernel convolution equivalence: max "
                                                  "diff %.3e < 1e-8", worst)});
    }
    {
        std::vector<double> c(512);
        for (std::size_t j = 0; j < 512; ++j) c[j] = std::cos(2 * M_PI * j / 512.0);
        const diffusion::PeriodicField cosine(c);
        const auto out = diffusion::evolve(cosine, std::log(2.0) / (2.0 * M_PI * M_PI));
        double worst = 0.0;
        for (std::size_t j = 0; j < 512; ++j) {
            worst = std::max(worst, std::abs(out.samples()[j] - 0.5 * c[j]));
        }
        crit.clauses.push_back({worst < 1e-12, fmt("cosine half-life at dz = ln2/(2pi^2): "
                                                   "max dev %.3e < 1e-12", worst)});
    }
    crit.seconds = timer.seconds();
    crit.clauses.push_back({crit.seconds < 5.0, fmt("runtime %.3f s < 5 s", crit.seconds)});
    g_results.push_back(std::move(crit));
}

void criterion_9_factorization() {
    Timer timer;
    Criterion crit{9, "asymptotic root vs prefactor-oscillation-decay factorization", {}};

    const double T = 100.0;
    const double strain = mapper::coefficients(1.0).strain_rate(T);
    double worst_series = 0.0, worst_resummed = 0.0, drift = 0.0;
    for (int n = -5; n <= 5; ++n) {
        const auto series = spectrum::asymptotic_root_series(1.0, T, n);
        const auto resummed = spectrum::asymptotic_root(1.0, T, n);
        for (int i = 0; i <= 400; ++i) {
            const double t = 10.0 * T * i / 400.0;
            const double decay = std::exp(-2.0 * M_PI * M_PI * n * n * t / (T * T * T));
            const double pf = mapper::prefactor(1.0, T, t);
            const std::complex<double> osc_strain =
                std::exp(std::complex<double>(0.0, 2.0 * M_PI * n * strain * t));
            const std::complex<double> osc_resummed =
                std::exp(std::complex<double>(0.0, 2.0 * M_PI * n * t / (T + 1.0)));

            const std::complex<double> lhs_series = std::exp(series * t);
            worst_series = std::max(worst_series,
                                    std::abs(lhs_series - pf * osc_strain * decay) /
                                        std::abs(lhs_series));
            const std::complex<double> lhs_resummed = std::exp(resummed * t);
            worst_resummed = std::max(worst_resummed,
                                      std::abs(lhs_resummed - pf * osc_resummed * decay) /
                                          std::abs(lhs_resummed));
            drift = std::max(drift, std::abs(lhs_resummed - pf * osc_strain * decay) /
                                        std::abs(lhs_resummed));
        }
    }
    crit.clauses.push_back({worst_series < 1e-8,
                            fmt("series root == prefactor x strain oscillation x decay: "
                                "max rel diff %.3e < 1e-8", worst_series)});
    crit.clauses.push_back({worst_resummed < 1e-8,
                            fmt("resummed root == prefactor x 1/(T+1) oscillation x decay: "
                                "max rel diff %.3e < 1e-8", worst_resummed)});
    crit.notes.push_back(fmt("strain vs resummed oscillation rates differ by 1/((T+1)T^3); "
                             "over t <= 10T, |n| <= 5 that amounts to %.3e relative",
                             drift));
    crit.seconds = timer.seconds();
    g_results.push_back(std::move(crit));
}

}  // namespace

int main() {
    criterion_1_spectrum_certification();
    criterion_2_trivial_root();
    criterion_3_convergence();
    criterion_4_recurrent_pulse_envelope();
    criterion_5_growing_feedback_envelope();
    criterion_6_green_function();
    criterion_7_square_wave();
    criterion_8_diffusion_suite();
    criterion_9_factorization();

    int failed = 0;
    std::printf("\n");
    for (const auto& crit : g_results) {
        const bool ok = crit.pass();
        if (!ok) ++failed;
        std::printf("[%s] criterion %d: %s (%.2f s)\n", ok ? "PASS" : "FAIL", crit.id,
                    crit.title.c_str(), crit.seconds);
        for (const auto& clause : crit.clauses) {
            std::printf("         %s %s\n", clause.pass ? "ok  " : "FAIL", clause.text.c_str());
        }
        for (const auto& note : crit.notes) {
            std::printf("         note %s\n", note.c_str());
        }
    }
    std::printf("\n%d of %zu criteria fully green\n", static_cast<int>(g_results.size()) - failed,
                g_results.size());
    return failed;
}
