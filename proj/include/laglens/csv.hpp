#pragma once

#include <string>
#include <vector>

#include "laglens/dde.hpp"
#include "laglens/diffusion.hpp"
#include "laglens/mapper.hpp"
#include "laglens/spectrum.hpp"

namespace laglens::io {

/// Shortest decimal that round-trips a double (17 significant digits).
std::string format_double(double v);

/// Header `t,y`, one row per node.
void write_trajectory_csv(const std::string& path, const dde::Trajectory& traj);

/// Rebuilds a trajectory from a `t,y` file. The grid must be uniform; the
/// result carries no derivative samples (dense_eval is unavailable on it).
dde::Trajectory read_trajectory_csv(const std::string& path);

/// Header `n,re_exact,im_exact,re_asym,im_asym,residual,asym_error,outside_window`.
void write_spectrum_csv(const std::string& path,
                        const std::vector<spectrum::SpectrumRoot>& roots);

/// Header `s,Y`, one row per grid point.
void write_field_csv(const std::string& path, const diffusion::PeriodicField& field);

/// Header `row,col,s,y`; s is the pseudo-space coordinate strain*t.
void write_spatiotemporal_csv(const std::string& path, const mapper::ReshapedGrid& grid,
                              double strain_rate);

/// Header `t_peak,y_peak,envelope_pred,rel_err`.
void write_peaks_csv(const std::string& path, const mapper::PeakList& peaks,
                     const mapper::EnvelopePrediction& envelope);

/// Header `col,y_scaled,y_predicted`.
void write_profile_csv(const std::string& path, const mapper::ProfileComparison& cmp);

}  // namespace laglens::io
