#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace ehrenfest::detail {

/// In-place 1-D complex transform pair on a private buffer. Plans are made
/// with FFTW_ESTIMATE so repeated runs are bit-identical. Plan creation is
/// not thread-safe; build Fft objects on one thread.
class Fft {
 public:
  explicit Fft(std::size_t n);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  std::span<std::complex<double>> buffer();

  /// Unnormalized forward transform of buffer().
  void forward();
  /// Inverse transform of buffer(), scaled by 1/n.
  void inverse();
  /// Inverse transform without the 1/n factor.
  void inverse_unscaled();

 private:
  std::size_t n_;
  void* data_;
  void* forward_plan_;
  void* inverse_plan_;
};

}  // namespace ehrenfest::detail
