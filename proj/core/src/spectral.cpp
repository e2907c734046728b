#include "spectral.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include <fftw3.h>

namespace bohmrotor::detail {

namespace {

// fftw planning is not thread-safe; execution on new arrays is.
class PlanCache {
  public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) {
            fftw_destroy_plan(plan);
        }
    }

    // Plans are keyed by the buffer's SIMD alignment offset so execution may use vector kernels.
    fftw_plan get(int n1, int n2, FftDirection direction, int alignment) {
        const auto key = std::make_tuple(n1, n2, direction == FftDirection::Forward, alignment);
        std::lock_guard lock(mutex_);
        if (auto it = plans_.find(key); it != plans_.end()) {
            return it->second;
        }
        const std::size_t cells = static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2);
        auto* raw = static_cast<char*>(fftw_malloc(cells * sizeof(fftw_complex) + 64));
        auto* buffer = reinterpret_cast<fftw_complex*>(raw + alignment);
        // ESTIMATE keeps the plan choice independent of timing noise.
        fftw_plan plan = fftw_plan_dft_2d(n1, n2, buffer, buffer,
                                          direction == FftDirection::Forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                          FFTW_ESTIMATE);
        fftw_free(raw);
        plans_.emplace(key, plan);
        return plan;
    }

  private:
    std::mutex mutex_;
    std::map<std::tuple<int, int, bool, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

double pairwise_sum_range(const double* values, std::size_t count) {
    if (count <= 64) {
        double sum = 0.0;
        for (std::size_t i = 0; i < count; ++i) {
            sum += values[i];
        }
        return sum;
    }
    const std::size_t half = count / 2;
    return pairwise_sum_range(values, half) + pairwise_sum_range(values + half, count - half);
}

} // namespace

void fft2d(std::span<std::complex<double>> data, int n1, int n2, FftDirection direction) {
    auto* buffer = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan = plan_cache().get(n1, n2, direction, fftw_alignment_of(reinterpret_cast<double*>(buffer)));
    fftw_execute_dft(plan, buffer, buffer);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n1) * static_cast<double>(n2));
    for (auto& value : data) {
        value *= scale;
    }
}

double pairwise_sum(std::span<const double> values) { return pairwise_sum_range(values.data(), values.size()); }

} // namespace bohmrotor::detail
