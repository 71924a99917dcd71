// core/fft.hpp

// Copyright 2026  The revkit authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef REVKIT_CORE_FFT_HPP
#define REVKIT_CORE_FFT_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace revkit {

// Real-input FFT of a fixed size, backed by FFTW. Plan creation is serialized
// internally (the FFTW planner is not thread safe); executing transforms from
// several RealFft instances concurrently is fine.
class RealFft {
 public:
  explicit RealFft(std::size_t size);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return size_; }
  std::size_t bins() const { return size_ / 2 + 1; }

  // Input shorter than size() is zero padded. `out` must hold bins() values.
  void forward(std::span<const double> in, std::complex<double>* out);
  // Inverse transform scaled by 1/size(). `out` must hold size() values.
  void inverse(std::span<const std::complex<double>> in, double* out);

  std::vector<std::complex<double>> forward(std::span<const double> in) {
    std::vector<std::complex<double>> out(bins());
    forward(in, out.data());
    return out;
  }
  std::vector<double> inverse(std::span<const std::complex<double>> in) {
    std::vector<double> out(size_);
    inverse(in, out.data());
    return out;
  }

 private:
  std::size_t size_;
  double* real_buf_;
  void* cplx_buf_;  // fftw_complex*
  void* fwd_plan_;
  void* inv_plan_;
};

std::size_t next_pow2(std::size_t n);

std::vector<std::complex<double>> rfft(std::span<const double> x,
                                       std::size_t n);
std::vector<double> irfft(std::span<const std::complex<double>> x,
                          std::size_t n);

}  // namespace revkit

#endif  // REVKIT_CORE_FFT_HPP
