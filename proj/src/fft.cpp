#include "gpqla/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <numbers>
#include <utility>

namespace gpqla {

namespace {

// Plans are created once per (L, direction) and reused through the new-array
// execute interface, which is safe to call concurrently.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int L, int sign) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find({L, sign});
    if (it != plans_.end()) return it->second;
    auto* buf = fftw_alloc_complex(static_cast<std::size_t>(L) * static_cast<std::size_t>(L));
    fftw_plan p = fftw_plan_dft_2d(L, L, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    plans_.emplace(std::make_pair(L, sign), p);
    return p;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

ComplexField transform(const ComplexField& in, int sign) {
  ComplexField out = in;
  auto* data = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(cache().get(in.L(), sign), data, data);
  return out;
}

}  // namespace

ComplexField fft2(const ComplexField& in) { return transform(in, FFTW_FORWARD); }

ComplexField inverse_fft2(const ComplexField& in) {
  ComplexField out = transform(in, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(out.size());
  for (Complex& z : out.values()) z *= scale;
  return out;
}

std::vector<int> mode_numbers(int L) {
  std::vector<int> n(static_cast<std::size_t>(L));
  for (int i = 0; i < L; ++i) n[static_cast<std::size_t>(i)] = i < L / 2 ? i : i - L;
  return n;
}

std::vector<int> derivative_mode_numbers(int L) {
  std::vector<int> n = mode_numbers(L);
  n[static_cast<std::size_t>(L / 2)] = 0;
  return n;
}

std::vector<double> wavenumbers(const Grid& grid) {
  const double unit = 2.0 * std::numbers::pi / grid.extent();
  std::vector<double> k;
  for (int n : mode_numbers(grid.L())) k.push_back(unit * n);
  return k;
}

std::vector<double> derivative_wavenumbers(const Grid& grid) {
  std::vector<double> k = wavenumbers(grid);
  k[static_cast<std::size_t>(grid.L() / 2)] = 0.0;
  return k;
}

}  // namespace gpqla
