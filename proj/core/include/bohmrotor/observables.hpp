#pragma once

#include <vector>

#include "bohmrotor/grid.hpp"
#include "bohmrotor/trajectory.hpp"
#include "bohmrotor/wave_field.hpp"

namespace bohmrotor {

/// Binned masses. `excluded` holds node-flagged mass and `outside` mass that
/// fell beyond the bin range; neither is part of `total`.
struct Histogram1D {
    std::vector<double> bin_edges;
    std::vector<double> masses;
    double total = 0.0;
    double excluded = 0.0;
    double outside = 0.0;

    double center(std::size_t bin) const { return 0.5 * (bin_edges[bin] + bin_edges[bin + 1]); }
};

struct BinSpec {
    double lower = 0.0;
    double width = 1.0;
    int count = 1;
};

/// One bin of width hbar per p1 lattice point, centred on hbar*m.
BinSpec lattice_bins(const GridSpec& grid);

struct MomentEntry {
    int n;
    double q;
};

/// Q(n) series at kick indices.
struct MomentSeries {
    std::vector<MomentEntry> entries;
    /// Throws ObservableError unless n increases strictly and Q >= 0.
    void append(int n, double q);
};

/// Q = <(p1 - <p1>)^2> over the momentum-representation weights.
double momentum_moment(const WaveField& field);

/// |<p1|Phi>|^2: mass at hbar*m1 summed over m2, one bin per lattice point.
Histogram1D momentum_marginal(const WaveField& field);

/// f_Q(p1): |Phi|^2 cell mass binned by dS/dq1.
Histogram1D bohm_momentum_distribution(const WaveField& field, const BinSpec& bins);

/// Mean and variance of a histogram's bin centres weighted by mass.
struct HistogramMoments {
    double mean = 0.0;
    double variance = 0.0;
};
HistogramMoments histogram_moments(const Histogram1D& histogram);

/// V_i(n) = (q_{i,n+1} - q_{i,n}) / T.
double averaged_velocity(const TrajectoryRecord& record, Axis axis, int n);

/// F_i(n) = (V_i(n) - V_i(n-1)) / T.
double effective_kick(const TrajectoryRecord& record, Axis axis, int n);

} // namespace bohmrotor
