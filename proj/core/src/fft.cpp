#include "fft.hpp"

#include <fftw3.h>

#include <memory>
#include <mutex>

#include "mqcardinal/errors.hpp"

namespace mqc::detail {
namespace {

// FFTW's planner is not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};

}  // namespace

void fft_inplace(std::span<std::complex<double>> data, int n, int dim, FftDirection dir) {
  if (n < 1 || dim < 1 || dim > 3) throw_validation("fft_inplace: unsupported shape");
  std::size_t total = 1;
  for (int i = 0; i < dim; ++i) total *= static_cast<std::size_t>(n);
  if (data.size() != total) throw_validation("fft_inplace: buffer size does not match shape");

  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  const int dims[3] = {n, n, n};
  const int sign = dir == FftDirection::forward ? FFTW_FORWARD : FFTW_BACKWARD;
  std::unique_ptr<fftw_plan_s, PlanDeleter> plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.reset(fftw_plan_dft(dim, dims, buf, buf, sign, FFTW_ESTIMATE));
  }
  if (!plan) throw_budget("fft_inplace: FFTW could not create a plan");
  fftw_execute(plan.get());
}

}  // namespace mqc::detail
