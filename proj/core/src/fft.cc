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

#include "soaf/fft.h"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <mutex>

#include "soaf/error.h"

namespace soaf {
namespace {

// FFTW's planner is not reentrant.
std::mutex& PlannerMutex() {
  static std::mutex mu;
  return mu;
}

template <typename T>
T* Allocate(size_t count) {
  void* p = fftw_malloc(sizeof(T) * count);
  if (p == nullptr) throw std::bad_alloc();
  return static_cast<T*>(p);
}

}  // namespace

struct RealFft::Impl {
  double* real = nullptr;
  fftw_complex* spectrum = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;

  ~Impl() {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    if (forward != nullptr) fftw_destroy_plan(forward);
    if (inverse != nullptr) fftw_destroy_plan(inverse);
    fftw_free(real);
    fftw_free(spectrum);
  }
};

RealFft::RealFft(int n) : n_(n), impl_(std::make_unique<Impl>()) {
  if (n < 1) throw DomainError("FFT size must be positive");
  impl_->real = Allocate<double>(n);
  impl_->spectrum = Allocate<fftw_complex>(n / 2 + 1);
  std::lock_guard<std::mutex> lock(PlannerMutex());
  impl_->forward =
      fftw_plan_dft_r2c_1d(n, impl_->real, impl_->spectrum, FFTW_ESTIMATE);
  impl_->inverse =
      fftw_plan_dft_c2r_1d(n, impl_->spectrum, impl_->real, FFTW_ESTIMATE);
}

RealFft::~RealFft() = default;

void RealFft::Forward(std::span<const double> in,
                      std::span<std::complex<double>> out) {
  if (static_cast<int>(in.size()) != n_ ||
      static_cast<int>(out.size()) != num_bins()) {
    throw DomainError("RealFft::Forward size mismatch");
  }
  std::copy(in.begin(), in.end(), impl_->real);
  fftw_execute(impl_->forward);
  std::memcpy(reinterpret_cast<fftw_complex*>(out.data()), impl_->spectrum,
              sizeof(fftw_complex) * num_bins());
}

void RealFft::Inverse(std::span<const std::complex<double>> in,
                      std::span<double> out) {
  if (static_cast<int>(in.size()) != num_bins() ||
      static_cast<int>(out.size()) != n_) {
    throw DomainError("RealFft::Inverse size mismatch");
  }
  // c2r destroys its input, so the copy doubles as scratch.
  std::memcpy(impl_->spectrum, in.data(), sizeof(fftw_complex) * num_bins());
  fftw_execute(impl_->inverse);
  std::copy(impl_->real, impl_->real + n_, out.begin());
}

struct ComplexFft::Impl {
  fftw_complex* in = nullptr;
  fftw_complex* out = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;

  ~Impl() {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    if (forward != nullptr) fftw_destroy_plan(forward);
    if (inverse != nullptr) fftw_destroy_plan(inverse);
    fftw_free(in);
    fftw_free(out);
  }
};

ComplexFft::ComplexFft(int n) : n_(n), impl_(std::make_unique<Impl>()) {
  if (n < 1) throw DomainError("FFT size must be positive");
  impl_->in = Allocate<fftw_complex>(n);
  impl_->out = Allocate<fftw_complex>(n);
  std::lock_guard<std::mutex> lock(PlannerMutex());
  impl_->forward =
      fftw_plan_dft_1d(n, impl_->in, impl_->out, FFTW_FORWARD, FFTW_ESTIMATE);
  impl_->inverse =
      fftw_plan_dft_1d(n, impl_->in, impl_->out, FFTW_BACKWARD, FFTW_ESTIMATE);
}

ComplexFft::~ComplexFft() = default;

void ComplexFft::Forward(std::span<const std::complex<double>> in,
                         std::span<std::complex<double>> out) {
  if (static_cast<int>(in.size()) != n_ || static_cast<int>(out.size()) != n_) {
    throw DomainError("ComplexFft::Forward size mismatch");
  }
  std::memcpy(impl_->in, in.data(), sizeof(fftw_complex) * n_);
  fftw_execute(impl_->forward);
  std::memcpy(reinterpret_cast<fftw_complex*>(out.data()), impl_->out,
              sizeof(fftw_complex) * n_);
}

void ComplexFft::Inverse(std::span<const std::complex<double>> in,
                         std::span<std::complex<double>> out) {
  if (static_cast<int>(in.size()) != n_ || static_cast<int>(out.size()) != n_) {
    throw DomainError("ComplexFft::Inverse size mismatch");
  }
  std::memcpy(impl_->in, in.data(), sizeof(fftw_complex) * n_);
  fftw_execute(impl_->inverse);
  std::memcpy(reinterpret_cast<fftw_complex*>(out.data()), impl_->out,
              sizeof(fftw_complex) * n_);
}

}  // namespace soaf
