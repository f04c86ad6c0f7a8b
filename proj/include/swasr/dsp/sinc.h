// Copyright 2026 The swasr Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SWASR_DSP_SINC_H_
#define SWASR_DSP_SINC_H_

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "swasr/tensor.h"

namespace swasr::dsp {

enum class WindowMode {
  // w[m] = 0.54 - 0.46 cos(2 pi m / (L - 1))
  kStandardHamming,
  // w[m] = 0.54 - 0.46 cos(pi m / L), as printed in the original model
  // description. Not symmetric.
  kPaperLiteral,
};

WindowMode ParseWindowMode(const std::string& name);
std::string WindowModeName(WindowMode mode);

struct SincLayerConfig {
  std::size_t num_filters = 64;
  std::size_t kernel_length = 129;  // odd
  double sample_rate = 8000.0;
  WindowMode window = WindowMode::kStandardHamming;

  // Throws std::invalid_argument on an even kernel, zero filters or a
  // non-positive sample rate.
  void Validate() const;
};

// Raw learnable cutoffs, one entry per filter. The effective band is
//   f1 = min(|low_hz|, fs/2),  f2 = min(f1 + |band_hz|, fs/2).
template <typename T>
struct SincParams {
  Tensor<T> low_hz;
  Tensor<T> band_hz;
};

struct Band {
  double f1_hz;
  double f2_hz;
};

// Uniform random cutoffs with 0 <= f1 <= f2 <= fs/2, deterministic in seed.
template <typename T>
SincParams<T> InitSincParams(const SincLayerConfig& config, std::uint64_t seed);

template <typename T>
std::vector<Band> EffectiveBands(const SincParams<T>& params,
                                 const SincLayerConfig& config);

// sin(x) / x with sinc(0) = 1.
double Sinc(double x);

std::vector<double> WindowVector(std::size_t length, WindowMode mode);

// Windowed ideal bandpass kernels [num_filters, L]. Frequencies enter as
// fractions of the sample rate, so tap n (centered, n = -(L-1)/2 ..
// (L-1)/2) of filter i is
//   (2 a2 sinc(2 pi a2 n) - 2 a1 sinc(2 pi a1 n)) * w[n + (L-1)/2],
// with a = f / fs. The passband gain is therefore close to 1.
template <typename T>
Tensor<T> MaterializeFilters(const SincParams<T>& params,
                             const SincLayerConfig& config);

// Valid cross-correlation of [B, 1, N] waveforms with every filter, giving
// [B, num_filters, N - L + 1]. Throws if N < L.
template <typename T>
Tensor<T> SincConv(const Tensor<T>& waveforms, const SincParams<T>& params,
                   const SincLayerConfig& config);

template <typename T>
struct SincConvGrads {
  Tensor<T> input;  // empty when not requested
  Tensor<T> low_hz;
  Tensor<T> band_hz;
};

template <typename T>
SincConvGrads<T> SincConvBackward(const Tensor<T>& waveforms,
                                  const SincParams<T>& params,
                                  const SincLayerConfig& config,
                                  const Tensor<T>& grad_output,
                                  bool need_input_grad = true);

// Chain rule from d(loss)/d(filter taps) to the raw cutoff parameters.
template <typename T>
void FilterGradToParams(const Tensor<T>& filter_grad,
                        const SincParams<T>& params,
                        const SincLayerConfig& config, Tensor<T>* low_grad,
                        Tensor<T>* band_grad);

// |H(f)| of a real FIR kernel at `num_points` frequencies spaced uniformly
// over [0, fs/2] inclusive.
std::vector<double> MagnitudeResponse(std::span<const double> taps,
                                      std::size_t num_points);

inline constexpr std::size_t kResponsePoints = 256;

// One CSV row per filter: index, f1_hz, f2_hz, then |H| at kResponsePoints
// frequencies over [0, fs/2]. Preceded by a header row. `index_offset` lets
// several layers share one file.
template <typename T>
void WriteFilterResponseCsv(std::ostream& os, const SincParams<T>& params,
                            const SincLayerConfig& config,
                            std::size_t index_offset = 0,
                            bool write_header = true);

}  // namespace swasr::dsp

#endif  // SWASR_DSP_SINC_H_
