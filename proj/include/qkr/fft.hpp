#pragma once

// Thin FFTW3 wrapper: one pair of in-place, unaligned, estimate-mode plans per
// transform length, created once and shared. fftw_execute_dft is thread safe;
// plan creation is not, so the cache is guarded.

#include <fftw3.h>

#include <complex>
#include <map>
#include <mutex>
#include <span>
#include <utility>

namespace qkr::fft {

namespace detail {

class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  std::pair<fftw_plan, fftw_plan> plans(int length) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(length);
    if (it != plans_.end()) return it->second;
    auto* scratch = fftw_alloc_complex(static_cast<std::size_t>(length));
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan fwd = fftw_plan_dft_1d(length, scratch, scratch, FFTW_FORWARD, flags);
    fftw_plan bwd = fftw_plan_dft_1d(length, scratch, scratch, FFTW_BACKWARD, flags);
    fftw_free(scratch);
    return plans_.emplace(length, std::make_pair(fwd, bwd)).first->second;
  }

  PlanCache(const PlanCache&) = delete;
  PlanCache& operator=(const PlanCache&) = delete;

 private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [len, p] : plans_) {
      fftw_destroy_plan(p.first);
      fftw_destroy_plan(p.second);
    }
  }

  std::mutex mutex_;
  std::map<int, std::pair<fftw_plan, fftw_plan>> plans_;
};

inline fftw_complex* as_fftw(std::span<std::complex<double>> data) {
  return reinterpret_cast<fftw_complex*>(data.data());
}

}  // namespace detail

// X_k = sum_j x_j exp(-2 pi i j k / L), unnormalised.
inline void forward(std::span<std::complex<double>> data) {
  auto plan = detail::PlanCache::instance().plans(static_cast<int>(data.size())).first;
  fftw_execute_dft(plan, detail::as_fftw(data), detail::as_fftw(data));
}

// x_j = sum_k X_k exp(+2 pi i j k / L), unnormalised.
inline void backward(std::span<std::complex<double>> data) {
  auto plan = detail::PlanCache::instance().plans(static_cast<int>(data.size())).second;
  fftw_execute_dft(plan, detail::as_fftw(data), detail::as_fftw(data));
}

}  // namespace qkr::fft
