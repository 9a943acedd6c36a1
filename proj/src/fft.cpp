#include "holo/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace holo {

namespace {

// FFTW plan creation is not thread-safe; new-array execution is. Plans are
// created once per (h, w, direction) with FFTW_UNALIGNED so they can run on
// any buffer.
class PlanCache {
 public:
  fftw_plan get(int h, int w, int sign) {
    const auto key = std::make_tuple(h, w, sign);
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::vector<fftw_complex> dummy(static_cast<std::size_t>(h) * w);
    fftw_plan p = fftw_plan_dft_2d(h, w, dummy.data(), dummy.data(), sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, p);
    return p;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

} // namespace

namespace fft_detail {

void transform(Complex* data, int height, int width, bool inverse) {
  const int sign = inverse ? FFTW_BACKWARD : FFTW_FORWARD;
  fftw_plan plan = cache().get(height, width, sign);
  auto* raw = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan, raw, raw);
  if (inverse) {
    const double scale = 1.0 / (static_cast<double>(height) * width);
    const std::size_t n = static_cast<std::size_t>(height) * width;
    for (std::size_t i = 0; i < n; ++i) data[i] *= scale;
  }
}

} // namespace fft_detail

ComplexField fft2(const ComplexField& field) {
  ComplexField out = field;
  fft_detail::transform(out.data.data(), out.height, out.width, false);
  return out;
}

ComplexField ifft2(const ComplexField& field) {
  ComplexField out = field;
  fft_detail::transform(out.data.data(), out.height, out.width, true);
  return out;
}

} // namespace holo
