#include "bohmrotor/experiment/seeding.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "bohmrotor/errors.hpp"
#include "bohmrotor/experiment/format.hpp"

namespace bohmrotor::experiment {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

int positive_count(std::string_view text) {
    const long long value = parse_integer(text);
    if (value <= 0 || value > 100'000'000) {
        throw ConfigError("probe count must be positive, got '" + std::string(text) + "'");
    }
    return static_cast<int>(value);
}

double wrap(double q) {
    const double r = q - kTwoPi * std::floor(q / kTwoPi);
    return r >= kTwoPi ? 0.0 : r;
}

void append(ProbeSet& into, const ProbeSet& part) {
    for (Probe p : part.probes) {
        p.id = static_cast<int>(into.probes.size());
        into.probes.push_back(p);
    }
}

} // namespace

ProbeLayout ProbeLayout::parse(std::string_view text) {
    ProbeLayout layout;
    for (std::string_view part : split(text, ';')) {
        const auto fields = split(part, ':');
        const std::string_view kind = fields.front();
        if (kind == "line" && fields.size() == 3) {
            layout.parts.emplace_back(UniformLine{parse_double(fields[1]), positive_count(fields[2])});
        } else if (kind == "grid" && fields.size() == 3) {
            layout.parts.emplace_back(UniformGrid{positive_count(fields[1]), positive_count(fields[2])});
        } else if (kind == "born" && fields.size() == 2) {
            layout.parts.emplace_back(BornSample{positive_count(fields[1])});
        } else {
            throw ConfigError("bad probe layout '" + std::string(part) + "'");
        }
    }
    return layout;
}

std::size_t ProbeLayout::count() const {
    std::size_t total = 0;
    for (const auto& part : parts) {
        if (const auto* line = std::get_if<UniformLine>(&part)) {
            total += static_cast<std::size_t>(line->count);
        } else if (const auto* grid = std::get_if<UniformGrid>(&part)) {
            total += static_cast<std::size_t>(grid->rows) * static_cast<std::size_t>(grid->cols);
        } else {
            total += static_cast<std::size_t>(std::get<BornSample>(part).count);
        }
    }
    return total;
}

ProbeSet uniform_line(double q2, int count) {
    if (count <= 0) {
        throw ConfigError("probe count must be positive");
    }
    ProbeSet set;
    set.probes.reserve(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) {
        set.probes.push_back({kTwoPi * j / count, q2, ProbeStatus::Active, j});
    }
    return set;
}

ProbeSet uniform_grid(int rows, int cols) {
    if (rows <= 0 || cols <= 0) {
        throw ConfigError("probe count must be positive");
    }
    ProbeSet set;
    for (int i = 0; i < rows; ++i) {
        append(set, uniform_line(kTwoPi * i / rows, cols));
    }
    return set;
}

double unit_uniform(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

ProbeSet born_sample(const WaveField& field, int count, std::uint64_t seed) {
    if (count <= 0) {
        throw ConfigError("probe count must be positive");
    }
    const WaveField position = transform(field, Representation::Position);
    const GridSpec& grid = position.grid();
    const auto amplitudes = position.amplitudes();
    std::vector<double> cdf(amplitudes.size());
    double running = 0.0;
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        running += std::norm(amplitudes[i]);
        cdf[i] = running;
    }
    std::mt19937_64 rng(seed);
    const double d1 = grid.spacing(Axis::Q1);
    const double d2 = grid.spacing(Axis::Q2);
    ProbeSet set;
    set.probes.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        const double u = (k + unit_uniform(rng())) / count * running;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const auto cell = static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - cdf.begin(), cdf.size() - 1));
        const int i1 = static_cast<int>(cell / static_cast<std::size_t>(grid.n2()));
        const int i2 = static_cast<int>(cell % static_cast<std::size_t>(grid.n2()));
        const double j1 = unit_uniform(rng()) - 0.5;
        const double j2 = unit_uniform(rng()) - 0.5;
        set.probes.push_back({wrap(grid.position(Axis::Q1, i1) + j1 * d1), wrap(grid.position(Axis::Q2, i2) + j2 * d2),
                              ProbeStatus::Active, k});
    }
    return set;
}

ProbeSet seed_probes(const ProbeLayout& layout, const WaveField& field, std::uint64_t seed) {
    ProbeSet set;
    set.time = field.time();
    std::uint64_t stream = seed;
    for (const auto& part : layout.parts) {
        if (const auto* line = std::get_if<UniformLine>(&part)) {
            append(set, uniform_line(line->q2, line->count));
        } else if (const auto* g = std::get_if<UniformGrid>(&part)) {
            append(set, uniform_grid(g->rows, g->cols));
        } else {
            append(set, born_sample(field, std::get<BornSample>(part).count, stream));
            stream = stream * 6364136223846793005ULL + 1442695040888963407ULL;
        }
    }
    return set;
}

} // namespace bohmrotor::experiment
