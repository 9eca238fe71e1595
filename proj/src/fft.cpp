#include "fft.hpp"

#include <fftw3.h>

#include <new>

namespace ehrenfest::detail {

Fft::Fft(std::size_t n) : n_(n) {
  auto* data = fftw_alloc_complex(n);
  if (data == nullptr) throw std::bad_alloc();
  data_ = data;
  const int size = static_cast<int>(n);
  forward_plan_ = fftw_plan_dft_1d(size, data, data, FFTW_FORWARD, FFTW_ESTIMATE);
  inverse_plan_ = fftw_plan_dft_1d(size, data, data, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft::~Fft() {
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
  fftw_free(data_);
}

std::span<std::complex<double>> Fft::buffer() {
  // fftw_complex is layout-compatible with std::complex<double>.
  return {reinterpret_cast<std::complex<double>*>(data_), n_};
}

void Fft::forward() { fftw_execute(static_cast<fftw_plan>(forward_plan_)); }

void Fft::inverse_unscaled() { fftw_execute(static_cast<fftw_plan>(inverse_plan_)); }

void Fft::inverse() {
  inverse_unscaled();
  const double scale = 1.0 / static_cast<double>(n_);
  for (auto& v : buffer()) v *= scale;
}

}  // namespace ehrenfest::detail
