// Copyright 2026 The soaf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SOAF_FFT_H_
#define SOAF_FFT_H_

#include <complex>
#include <memory>
#include <span>

namespace soaf {

// Real-to-complex transform of fixed size n, backed by FFTW. Forward yields
// the n/2 + 1 non-negative frequency bins; Inverse is unnormalized (the
// caller divides by n). Plans are created under a process-wide lock; one
// instance must not be used from several threads at once.
class RealFft {
 public:
  explicit RealFft(int n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  int size() const { return n_; }
  int num_bins() const { return n_ / 2 + 1; }

  void Forward(std::span<const double> in, std::span<std::complex<double>> out);
  void Inverse(std::span<const std::complex<double>> in, std::span<double> out);

 private:
  struct Impl;
  int n_;
  std::unique_ptr<Impl> impl_;
};

// Complex transform of fixed size n. Inverse is unnormalized.
class ComplexFft {
 public:
  explicit ComplexFft(int n);
  ~ComplexFft();
  ComplexFft(const ComplexFft&) = delete;
  ComplexFft& operator=(const ComplexFft&) = delete;

  int size() const { return n_; }
  void Forward(std::span<const std::complex<double>> in,
               std::span<std::complex<double>> out);
  void Inverse(std::span<const std::complex<double>> in,
               std::span<std::complex<double>> out);

 private:
  struct Impl;
  int n_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace soaf

#endif  // SOAF_FFT_H_
