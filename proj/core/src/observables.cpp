#include "bohmrotor/observables.hpp"

#include <cmath>
#include <string>

#include "bohmrotor/errors.hpp"
#include "bohmrotor/flow.hpp"
#include "spectral.hpp"

namespace bohmrotor {

BinSpec lattice_bins(const GridSpec& grid) {
    return {grid.hbar() * (grid.min_mode(Axis::Q1) - 0.5), grid.hbar(), grid.n1()};
}

void MomentSeries::append(int n, double q) {
    if (!entries.empty() && n <= entries.back().n) {
        throw ObservableError("moment series indices must increase");
    }
    if (!(q >= 0.0)) {
        throw ObservableError("second moment must be nonnegative");
    }
    entries.push_back({n, q});
}

namespace {

// Per-m1 marginal weights, slot ordered, with deterministic summation over m2.
std::vector<double> marginal_by_slot(const WaveField& momentum) {
    const GridSpec& grid = momentum.grid();
    std::vector<double> row(grid.n2());
    std::vector<double> out(grid.n1());
    for (int k1 = 0; k1 < grid.n1(); ++k1) {
        for (int k2 = 0; k2 < grid.n2(); ++k2) {
            row[k2] = std::norm(momentum.at(k1, k2));
        }
        out[k1] = detail::pairwise_sum(row);
    }
    return out;
}

Histogram1D make_histogram(const BinSpec& bins) {
    if (bins.count <= 0 || !(bins.width > 0.0)) {
        throw ConfigError("histogram needs a positive bin count and width");
    }
    Histogram1D h;
    h.bin_edges.resize(static_cast<std::size_t>(bins.count) + 1);
    for (int i = 0; i <= bins.count; ++i) {
        h.bin_edges[i] = bins.lower + bins.width * i;
    }
    h.masses.assign(static_cast<std::size_t>(bins.count), 0.0);
    return h;
}

} // namespace

double momentum_moment(const WaveField& field) {
    const WaveField momentum = transform(field, Representation::Momentum);
    const GridSpec& grid = momentum.grid();
    const std::vector<double> marginal = marginal_by_slot(momentum);
    std::vector<double> terms(marginal.size());
    for (int k1 = 0; k1 < grid.n1(); ++k1) {
        terms[k1] = marginal[k1] * grid.momentum(grid.mode_of_slot(Axis::Q1, k1));
    }
    const double weight = detail::pairwise_sum(marginal);
    const double mean = detail::pairwise_sum(terms) / weight;
    for (int k1 = 0; k1 < grid.n1(); ++k1) {
        const double d = grid.momentum(grid.mode_of_slot(Axis::Q1, k1)) - mean;
        terms[k1] = marginal[k1] * d * d;
    }
    return detail::pairwise_sum(terms) / weight;
}

Histogram1D momentum_marginal(const WaveField& field) {
    const WaveField momentum = transform(field, Representation::Momentum);
    const GridSpec& grid = momentum.grid();
    Histogram1D h = make_histogram(lattice_bins(grid));
    const std::vector<double> marginal = marginal_by_slot(momentum);
    for (int k1 = 0; k1 < grid.n1(); ++k1) {
        const int m1 = grid.mode_of_slot(Axis::Q1, k1);
        h.masses[static_cast<std::size_t>(m1 - grid.min_mode(Axis::Q1))] = marginal[k1];
    }
    h.total = detail::pairwise_sum(h.masses);
    return h;
}

Histogram1D bohm_momentum_distribution(const WaveField& field, const BinSpec& bins) {
    const WaveField position = transform(field, Representation::Position);
    const VectorGrid gradient = phase_gradient(position);
    Histogram1D h = make_histogram(bins);
    const auto amplitudes = position.amplitudes();
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        const double mass = std::norm(amplitudes[i]);
        if (!gradient.valid[i]) {
            h.excluded += mass;
            continue;
        }
        const double slot = std::floor((gradient.first[i] - bins.lower) / bins.width);
        if (slot < 0.0 || slot >= bins.count) {
            h.outside += mass;
            continue;
        }
        h.masses[static_cast<std::size_t>(slot)] += mass;
    }
    h.total = detail::pairwise_sum(h.masses);
    return h;
}

HistogramMoments histogram_moments(const Histogram1D& histogram) {
    if (!(histogram.total > 0.0)) {
        throw ObservableError("moments of an empty histogram");
    }
    std::vector<double> terms(histogram.masses.size());
    for (std::size_t i = 0; i < terms.size(); ++i) {
        terms[i] = histogram.masses[i] * histogram.center(i);
    }
    const double mean = detail::pairwise_sum(terms) / histogram.total;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const double d = histogram.center(i) - mean;
        terms[i] = histogram.masses[i] * d * d;
    }
    return {mean, detail::pairwise_sum(terms) / histogram.total};
}

namespace {

double coordinate(const TrajectoryRecord& record, Axis axis, int n) {
    if (record.samples.empty()) {
        throw ObservableError("trajectory record is empty");
    }
    const int offset = n - record.samples.front().n;
    if (offset < 0 || offset >= static_cast<int>(record.samples.size())) {
        throw ObservableError("trajectory record has no sample at kick " + std::to_string(n));
    }
    const TrajectorySample& sample = record.samples[static_cast<std::size_t>(offset)];
    if (sample.n != n) {
        throw ObservableError("trajectory samples are not at consecutive kicks");
    }
    return axis == Axis::Q1 ? sample.q1 : sample.q2;
}

void require_usable(const TrajectoryRecord& record) {
    if (record.status == ProbeStatus::NodeContact) {
        throw ObservableError("probe " + std::to_string(record.probe_id) + " froze at a node");
    }
}

} // namespace

double averaged_velocity(const TrajectoryRecord& record, Axis axis, int n) {
    require_usable(record);
    return (coordinate(record, axis, n + 1) - coordinate(record, axis, n)) / record.period;
}

double effective_kick(const TrajectoryRecord& record, Axis axis, int n) {
    require_usable(record);
    const double before = coordinate(record, axis, n - 1);
    const double here = coordinate(record, axis, n);
    const double after = coordinate(record, axis, n + 1);
    return ((after - here) - (here - before)) / (record.period * record.period);
}

} // namespace bohmrotor
