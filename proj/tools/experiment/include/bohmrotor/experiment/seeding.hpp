#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bohmrotor/probes.hpp"
#include "bohmrotor/wave_field.hpp"

namespace bohmrotor::experiment {

/// `count` probes at q1 = 2 pi j / count on the surface q2.
struct UniformLine {
    double q2 = 0.0;
    int count = 0;
};

/// `rows` surfaces q2 = 2 pi i / rows, each with `cols` probes along q1.
struct UniformGrid {
    int rows = 0;
    int cols = 0;
};

/// Draws from |Phi|^2.
struct BornSample {
    int count = 0;
};

using LayoutPart = std::variant<UniformLine, UniformGrid, BornSample>;

/// Text form: parts separated by ';', each one of
/// "line:<q2>:<count>", "grid:<rows>:<cols>", "born:<count>".
struct ProbeLayout {
    std::vector<LayoutPart> parts;

    static ProbeLayout parse(std::string_view text);
    std::size_t count() const;
};

ProbeSet uniform_line(double q2, int count);
ProbeSet uniform_grid(int rows, int cols);

/// Stratified inverse-CDF sampling over grid cells (centred on grid points)
/// with uniform jitter inside the cell.
ProbeSet born_sample(const WaveField& field, int count, std::uint64_t seed);

/// Probes of all parts in order, ids 0..count-1, time = field.time().
ProbeSet seed_probes(const ProbeLayout& layout, const WaveField& field, std::uint64_t seed);

/// Deterministic uniform on [0, 1) from the top 53 bits of a 64-bit word.
double unit_uniform(std::uint64_t bits);

} // namespace bohmrotor::experiment
