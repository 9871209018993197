// laglens - command-line front end: integrate the delay models, compute their
// characteristic spectrum, verify peak envelopes and run the diffusion
// comparison, all as reproducible CSV/JSON pipelines.

#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "laglens/csv.hpp"
#include "laglens/dde.hpp"
#include "laglens/diffusion.hpp"
#include "laglens/errors.hpp"
#include "laglens/mapper.hpp"
#include "laglens/spectrum.hpp"
#include "laglens/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitAnalysis = 4;

/// Flag values that parsed but make no sense; mapped to the usage exit code.
struct UsageError : laglens::Error {
    using laglens::Error::Error;
};

fs::path output_dir(const std::string& flag_value) {
    fs::path dir = flag_value;
    if (dir.empty()) {
        if (const char* env = std::getenv("LAGLENS_OUT")) dir = env;
    }
    if (dir.empty()) dir = ".";
    fs::create_directories(dir);
    return dir;
}

void write_json(const fs::path& path, const ordered_json& j) {
    std::ofstream out(path);
    if (!out) throw laglens::Error("cannot open " + path.string() + " for writing");
    out << j.dump(2) << '\n';
}

laglens::dde::HistoryFn parse_history(const std::string& spec) {
    if (spec == "sine-mix") {
        return [](double t) { return 0.1 * std::sin(t) - 0.02 * std::cos(3.0 * t); };
    }
    const std::string prefix = "gaussian:";
    if (spec.rfind(prefix, 0) == 0) {
        double amp = 0, center = 0, width = 0;
        char tail = 0;
        const int got = std::sscanf(spec.c_str() + prefix.size(), "%lf,%lf,%lf%c", &amp,
                                    &center, &width, &tail);
        if (got != 3) throw UsageError("history: expected gaussian:<amp>,<center>,<width>");
        if (!(width > 0.0)) throw UsageError("history: gaussian width must be positive");
        return [amp, center, width](double t) {
            const double x = (t - center) / width;
            return amp * std::exp(-x * x);
        };
    }
    throw UsageError("history: unknown spec '" + spec + "' (gaussian:...|sine-mix)");
}

std::size_t count_local_maxima(const laglens::dde::Trajectory& traj) {
    const auto& y = traj.samples();
    std::size_t count = 0;
    for (std::size_t i = 1; i + 1 < y.size(); ++i) {
        if (y[i - 1] < y[i] && y[i] >= y[i + 1]) ++count;
    }
    return count;
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
    std::string model = "linear";
    double r = 1.0;
    double T = 30.0;
    std::string history = "gaussian:20,-25,1";
    double t_end = 1200.0;
    int steps_per_delay = 256;
    std::string out;
    std::string tag = "trajectory";
    bool svg = false;
};

int run_simulate(const SimulateArgs& a) {
    laglens::dde::DdeProblem problem;
    if (a.model == "linear") {
        problem.model = laglens::dde::Model::LinearDecayFeedback;
    } else if (a.model == "cubic") {
        problem.model = laglens::dde::Model::CubicCounterexample;
    } else {
        throw UsageError("model must be 'linear' or 'cubic'");
    }
    if (!(a.T > 0.0)) throw UsageError("T must be positive");
    if (!(a.t_end > 0.0)) throw UsageError("t-end must be positive");
    if (a.steps_per_delay < 16) throw UsageError("steps-per-delay must be at least 16");
    problem.feedback_gain = a.r;
    problem.delay = a.T;
    problem.history = parse_history(a.history);
    problem.horizon = a.t_end;

    laglens::dde::SolverConfig config;
    config.steps_per_delay = a.steps_per_delay;

    laglens::dde::Trajectory traj = laglens::dde::integrate(problem, config);

    const fs::path dir = output_dir(a.out);
    const fs::path csv_path = dir / (a.tag + ".csv");
    const fs::path meta_path = dir / (a.tag + ".meta.json");
    laglens::io::write_trajectory_csv(csv_path.string(), traj);

    double ymin = traj.samples()[0], ymax = ymin;
    for (double v : traj.samples()) {
        ymin = std::min(ymin, v);
        ymax = std::max(ymax, v);
    }
    const std::size_t peak_count = count_local_maxima(traj);

    ordered_json meta;
    meta["command"] = "simulate";
    meta["model"] = a.model;
    meta["r"] = a.r;
    meta["T"] = a.T;
    meta["history"] = a.history;
    meta["t_end"] = a.t_end;
    meta["steps_per_delay"] = a.steps_per_delay;
    meta["samples"] = traj.size();
    meta["step"] = traj.step();
    meta["y_min"] = ymin;
    meta["y_max"] = ymax;
    meta["peak_count"] = peak_count;
    meta["files"] = {{"trajectory", csv_path.string()}};
    write_json(meta_path, meta);

    if (a.svg) {
        laglens::io::SvgSeries series;
        series.label = "y(t)";
        series.x.reserve(traj.size());
        series.y = traj.samples();
        for (std::size_t i = 0; i < traj.size(); ++i) series.x.push_back(traj.time_at(i));
        laglens::io::write_line_chart((dir / (a.tag + ".svg")).string(),
                                      a.model + " model, T=" + std::to_string(a.T),
                                      {series});
    }

    std::cout << "simulate: samples=" << traj.size() << " t=[0," << traj.back_time()
              << "] y=[" << ymin << ',' << ymax << "] peaks=" << peak_count << '\n'
              << "wrote " << csv_path.string() << '\n';
    return 0;
}

// ---------------------------------------------------------------------------

struct SpectrumArgs {
    double r = 1.0;
    double T = 100.0;
    int n_max = 10;
    std::string out;
    std::string tag = "spectrum";
};

int run_spectrum(const SpectrumArgs& a) {
    if (!(a.r > 0.0)) throw UsageError("r must be positive");
    if (!(a.T > 0.0)) throw UsageError("T must be positive");
    if (a.n_max < 0) throw UsageError("n-max must be >= 0");

    laglens::spectrum::SpectrumRequest request{a.r, a.T, a.n_max};
    const auto roots = laglens::spectrum::compute(request);

    double max_residual = 0.0, max_asym = 0.0;
    std::size_t outside = 0;
    for (const auto& root : roots) {
        max_residual = std::max(max_residual, root.residual);
        max_asym = std::max(max_asym, std::abs(root.lambda_exact - root.lambda_asym));
        if (root.outside_asymptotic_window) ++outside;
    }
    double spacing = 0.0;
    if (roots.size() > 1) {
        for (std::size_t i = 1; i < roots.size(); ++i) {
            spacing += roots[i].lambda_exact.imag() - roots[i - 1].lambda_exact.imag();
        }
        spacing /= static_cast<double>(roots.size() - 1);
    }

    const fs::path dir = output_dir(a.out);
    const fs::path csv_path = dir / (a.tag + ".csv");
    laglens::io::write_spectrum_csv(csv_path.string(), roots);

    ordered_json summary;
    summary["command"] = "spectrum";
    summary["r"] = a.r;
    summary["T"] = a.T;
    summary["n_max"] = a.n_max;
    summary["n_roots"] = roots.size();
    summary["max_residual"] = max_residual;
    summary["max_asym_error"] = max_asym;
    summary["imag_spacing_estimate"] = spacing;
    summary["outside_window_count"] = outside;
    summary["files"] = {{"spectrum", csv_path.string()}};
    write_json(dir / (a.tag + ".summary.json"), summary);

    std::cout << "spectrum: roots=" << roots.size() << " max_residual=" << max_residual
              << " max_asym_error=" << max_asym << " spacing=" << spacing << '\n'
              << "wrote " << csv_path.string() << '\n';
    return 0;
}

// ---------------------------------------------------------------------------

struct EnvelopeArgs {
    std::string input;
    double r = 1.0;
    double T = 30.0;
    double t0 = 25.0;
    double guard = 50.0;
    double threshold = 1e-6;
    std::string out;
    std::string tag = "envelope";
    bool svg = false;
};

int run_envelope(const EnvelopeArgs& a) {
    if (!(a.T > 0.0)) throw UsageError("T must be positive");
    const auto traj = laglens::io::read_trajectory_csv(a.input);
    const auto peaks = laglens::mapper::extract_peaks(traj, a.guard, a.threshold);

    const laglens::mapper::Peak anchor = peaks.front();
    const auto envelope = laglens::mapper::envelope_prediction(a.r, a.T, a.t0, anchor);

    double worst = 0.0;
    for (const auto& peak : peaks) {
        const double pred = envelope(peak.t);
        worst = std::max(worst, std::abs(peak.y - pred) / pred);
    }
    double spacing = 0.0;
    if (peaks.size() > 1) {
        spacing = (peaks.back().t - peaks.front().t) / static_cast<double>(peaks.size() - 1);
    }

    const fs::path dir = output_dir(a.out);
    const fs::path csv_path = dir / (a.tag + ".peaks.csv");
    laglens::io::write_peaks_csv(csv_path.string(), peaks, envelope);

    ordered_json verdict;
    verdict["command"] = "envelope";
    verdict["r"] = a.r;
    verdict["T"] = a.T;
    verdict["t0"] = a.t0;
    verdict["guard"] = a.guard;
    verdict["threshold"] = a.threshold;
    verdict["n_peaks"] = peaks.size();
    verdict["anchor_t"] = anchor.t;
    verdict["anchor_y"] = anchor.y;
    verdict["constant_anchored"] = envelope.constant();
    verdict["constant_least_squares"] = envelope.least_squares_constant(peaks);
    verdict["growth_rate"] = envelope.growth_rate();
    verdict["growth_rate_strained"] = laglens::mapper::prefactor_growth_rate(a.r, a.T);
    verdict["mean_peak_spacing"] = spacing;
    verdict["worst_rel_err"] = worst;
    verdict["files"] = {{"peaks", csv_path.string()}};
    write_json(dir / (a.tag + ".envelope.json"), verdict);

    if (a.svg) {
        laglens::io::SvgSeries measured{"peaks", "#1f77b4", {}, {}};
        laglens::io::SvgSeries predicted{"envelope", "#ff7f0e", {}, {}};
        for (const auto& peak : peaks) {
            measured.x.push_back(peak.t);
            measured.y.push_back(peak.y);
            predicted.x.push_back(peak.t);
            predicted.y.push_back(envelope(peak.t));
        }
        laglens::io::write_line_chart((dir / (a.tag + ".envelope.svg")).string(),
                                      "peak envelope", {measured, predicted});
    }

    std::cout << "envelope: peaks=" << peaks.size() << " anchor=(" << anchor.t << ','
              << anchor.y << ") worst_rel_err=" << worst << '\n'
              << "wrote " << csv_path.string() << '\n';
    return 0;
}

// ---------------------------------------------------------------------------

struct SpatiotemporalArgs {
    std::string input;
    double r = 1.0;
    double T = 30.0;
    double period = 0.0;  // 0 -> T + 1
    std::string out;
    std::string tag = "spatiotemporal";
};

int run_spatiotemporal(const SpatiotemporalArgs& a) {
    if (!(a.T > 0.0)) throw UsageError("T must be positive");
    double period = a.period;
    if (period == 0.0) period = a.T + 1.0;
    if (!(period > 0.0)) throw UsageError("period must be positive");

    const auto traj = laglens::io::read_trajectory_csv(a.input);
    const auto grid = laglens::mapper::reshape(traj, period);
    const double strain = laglens::mapper::coefficients(a.r).strain_rate(a.T);

    const fs::path dir = output_dir(a.out);
    const fs::path csv_path = dir / (a.tag + ".spatiotemporal.csv");
    laglens::io::write_spatiotemporal_csv(csv_path.string(), grid, strain);

    std::cout << "spatiotemporal: rows=" << grid.rows.size() << " period=" << period
              << " samples=" << grid.sample_count() << '\n'
              << "wrote " << csv_path.string() << '\n';
    return 0;
}

// ---------------------------------------------------------------------------

struct CompareArgs {
    std::string input;
    double r = 1.0;
    double T = 30.0;
    double t0 = 25.0;
    long row = 0;
    double period = 0.0;
    std::string out;
    std::string tag = "compare";
};

int run_compare(const CompareArgs& a) {
    if (!(a.T > 0.0)) throw UsageError("T must be positive");
    const auto traj = laglens::io::read_trajectory_csv(a.input);
    const auto cmp =
        laglens::mapper::compare_profiles(traj, a.r, a.T, a.t0, a.row, a.period);

    const fs::path dir = output_dir(a.out);
    const fs::path profile_path = dir / (a.tag + ".profile.csv");
    laglens::io::write_profile_csv(profile_path.string(), cmp);

    ordered_json report;
    report["row"] = cmp.row;
    report["dz"] = cmp.dz;
    report["l2_err"] = cmp.l2_err;
    report["linf_err"] = cmp.linf_err;
    report["peak_col_err"] = cmp.peak_col_err;
    report["l2_err_raw"] = cmp.l2_err_raw;
    report["linf_err_raw"] = cmp.linf_err_raw;
    report["mass"] = cmp.mass;
    report["col_center_measured"] = cmp.col_center_measured;
    report["col_center_predicted"] = cmp.col_center_predicted;
    report["files"] = {{"profile", profile_path.string()}};
    write_json(dir / (a.tag + ".compare.json"), report);

    std::cout << "compare: row=" << cmp.row << " dz=" << cmp.dz
              << " l2_err=" << cmp.l2_err << " linf_err=" << cmp.linf_err
              << " peak_col_err=" << cmp.peak_col_err << '\n'
              << "wrote " << profile_path.string() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"laglens: large-delay differential equation toolkit"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "integrate a delay model to CSV");
    sim_cmd->add_option("--model", sim.model, "linear|cubic")->capture_default_str();
    sim_cmd->add_option("--r", sim.r, "feedback gain")->capture_default_str();
    sim_cmd->add_option("--T", sim.T, "delay")->capture_default_str();
    sim_cmd->add_option("--history", sim.history, "gaussian:<amp>,<center>,<width>|sine-mix")
        ->capture_default_str();
    sim_cmd->add_option("--t-end", sim.t_end, "horizon")->capture_default_str();
    sim_cmd->add_option("--steps-per-delay", sim.steps_per_delay, "grid points per delay")
        ->capture_default_str();
    sim_cmd->add_option("--out", sim.out, "output directory (default $LAGLENS_OUT or .)");
    sim_cmd->add_option("--tag", sim.tag, "output basename")->capture_default_str();
    sim_cmd->add_flag("--svg", sim.svg, "also write a line chart");

    SpectrumArgs spec;
    auto* spec_cmd = app.add_subcommand("spectrum", "characteristic roots to CSV");
    spec_cmd->add_option("--r", spec.r, "feedback gain")->capture_default_str();
    spec_cmd->add_option("--T", spec.T, "delay")->capture_default_str();
    spec_cmd->add_option("--n-max", spec.n_max, "largest branch index")
        ->capture_default_str();
    spec_cmd->add_option("--out", spec.out, "output directory");
    spec_cmd->add_option("--tag", spec.tag, "output basename")->capture_default_str();

    EnvelopeArgs env;
    auto* env_cmd = app.add_subcommand("envelope", "verify the peak envelope law");
    env_cmd->add_option("--input", env.input, "trajectory CSV")->required();
    env_cmd->add_option("--r", env.r, "feedback gain")->capture_default_str();
    env_cmd->add_option("--T", env.T, "delay")->capture_default_str();
    env_cmd->add_option("--t0", env.t0, "initial pulse center offset")
        ->capture_default_str();
    env_cmd->add_option("--guard", env.guard, "ignore peaks before this time")
        ->capture_default_str();
    env_cmd->add_option("--threshold", env.threshold, "peak detection floor")
        ->capture_default_str();
    env_cmd->add_option("--out", env.out, "output directory");
    env_cmd->add_option("--tag", env.tag, "output basename")->capture_default_str();
    env_cmd->add_flag("--svg", env.svg, "also write a line chart");

    SpatiotemporalArgs st;
    auto* st_cmd = app.add_subcommand("spatiotemporal", "reshape a trajectory into rows");
    st_cmd->add_option("--input", st.input, "trajectory CSV")->required();
    st_cmd->add_option("--r", st.r, "feedback gain")->capture_default_str();
    st_cmd->add_option("--T", st.T, "delay")->capture_default_str();
    st_cmd->add_option("--period", st.period, "recurrence period (default T+1)");
    st_cmd->add_option("--out", st.out, "output directory");
    st_cmd->add_option("--tag", st.tag, "output basename")->capture_default_str();

    CompareArgs cmp;
    auto* cmp_cmd = app.add_subcommand("compare", "row profile vs heat-kernel prediction");
    cmp_cmd->add_option("--input", cmp.input, "trajectory CSV")->required();
    cmp_cmd->add_option("--r", cmp.r, "feedback gain")->capture_default_str();
    cmp_cmd->add_option("--T", cmp.T, "delay")->capture_default_str();
    cmp_cmd->add_option("--t0", cmp.t0, "initial pulse center offset")
        ->capture_default_str();
    cmp_cmd->add_option("--row", cmp.row, "row index")->capture_default_str();
    cmp_cmd->add_option("--period", cmp.period, "recurrence period (default T+1)");
    cmp_cmd->add_option("--out", cmp.out, "output directory");
    cmp_cmd->add_option("--tag", cmp.tag, "output basename")->capture_default_str();

    try {
        app.parse(argc, argv);
        if (sim_cmd->parsed()) return run_simulate(sim);
        if (spec_cmd->parsed()) return run_spectrum(spec);
        if (env_cmd->parsed()) return run_envelope(env);
        if (st_cmd->parsed()) return run_spatiotemporal(st);
        if (cmp_cmd->parsed()) return run_compare(cmp);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const laglens::NoPeaks& e) {
        std::cerr << "analysis error: " << e.what() << '\n';
        return kExitAnalysis;
    } catch (const laglens::RowOutOfRange& e) {
        std::cerr << "analysis error: " << e.what() << '\n';
        return kExitAnalysis;
    } catch (const laglens::NotLocalized& e) {
        std::cerr << "analysis error: " << e.what() << '\n';
        return kExitAnalysis;
    } catch (const laglens::DegenerateAnchor& e) {
        std::cerr << "analysis error: " << e.what() << '\n';
        return kExitAnalysis;
    } catch (const laglens::HorizonTooShort& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const laglens::Error& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
}
