#include "laglens/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "laglens/errors.hpp"

namespace laglens::io {
namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("io: cannot open " + path + " for writing");
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_trajectory_csv(const std::string& path, const dde::Trajectory& traj) {
    auto out = open_out(path);
    out << "t,y\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        out << format_double(traj.time_at(i)) << ',' << format_double(traj.samples()[i])
            << '\n';
    }
}

dde::Trajectory read_trajectory_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("io: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != "t,y") {
        throw Error("io: " + path + " is not a trajectory file (expected header t,y)");
    }
    std::vector<double> ts, ys;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw Error("io: malformed row in " + path);
        try {
            ts.push_back(std::stod(line.substr(0, comma)));
            ys.push_back(std::stod(line.substr(comma + 1)));
        } catch (const std::exception&) {
            throw Error("io: malformed number in " + path + ": " + line);
        }
    }
    if (ts.size() < 2) throw Error("io: " + path + " holds fewer than two samples");
    const double h = ts[1] - ts[0];
    if (!(h > 0.0)) throw Error("io: " + path + " has a non-increasing time grid");
    for (std::size_t i = 1; i < ts.size(); ++i) {
        if (std::abs(ts[i] - ts[i - 1] - h) > 1e-6 * h) {
            throw Error("io: " + path + " is not uniformly sampled");
        }
    }
    return {ts[0], h, std::move(ys), {}, {}};
}

void write_spectrum_csv(const std::string& path,
                        const std::vector<spectrum::SpectrumRoot>& roots) {
    auto out = open_out(path);
    out << "n,re_exact,im_exact,re_asym,im_asym,residual,asym_error,outside_window\n";
    for (const auto& root : roots) {
        out << root.branch << ',' << format_double(root.lambda_exact.real()) << ','
            << format_double(root.lambda_exact.imag()) << ','
            << format_double(root.lambda_asym.real()) << ','
            << format_double(root.lambda_asym.imag()) << ','
            << format_double(root.residual) << ','
            << format_double(std::abs(root.lambda_exact - root.lambda_asym)) << ','
            << (root.outside_asymptotic_window ? 1 : 0) << '\n';
    }
}

void write_field_csv(const std::string& path, const diffusion::PeriodicField& field) {
    auto out = open_out(path);
    out << "s,Y\n";
    for (std::size_t j = 0; j < field.size(); ++j) {
        out << format_double(field.grid(j)) << ',' << format_double(field.samples()[j])
            << '\n';
    }
}

void write_spatiotemporal_csv(const std::string& path, const mapper::ReshapedGrid& grid,
                              double strain_rate) {
    auto out = open_out(path);
    out << "row,col,s,y\n";
    for (std::size_t row = 0; row < grid.rows.size(); ++row) {
        for (const auto& [col, y] : grid.rows[row]) {
            const double t = (static_cast<double>(row) + col) * grid.period;
            out << row << ',' << format_double(col) << ','
                << format_double(strain_rate * t) << ',' << format_double(y) << '\n';
        }
    }
}

void write_peaks_csv(const std::string& path, const mapper::PeakList& peaks,
                     const mapper::EnvelopePrediction& envelope) {
    auto out = open_out(path);
    out << "t_peak,y_peak,envelope_pred,rel_err\n";
    for (const auto& peak : peaks) {
        const double pred = envelope(peak.t);
        out << format_double(peak.t) << ',' << format_double(peak.y) << ','
            << format_double(pred) << ',' << format_double((peak.y - pred) / pred)
            << '\n';
    }
}

void write_profile_csv(const std::string& path, const mapper::ProfileComparison& cmp) {
    auto out = open_out(path);
    out << "col,y_scaled,y_predicted\n";
    for (std::size_t i = 0; i < cmp.cols.size(); ++i) {
        out << format_double(cmp.cols[i]) << ',' << format_double(cmp.measured[i]) << ','
            << format_double(cmp.predicted[i]) << '\n';
    }
}

}  // namespace laglens::io
