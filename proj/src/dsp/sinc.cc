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

#include "swasr/dsp/sinc.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <random>
#include <stdexcept>

#include "swasr/nn/conv1d.h"

namespace swasr::dsp {

namespace {

constexpr double kPi = std::numbers::pi;

struct BandWithSlopes {
  double f1, f2;
  // Partial derivatives of the clamped cutoffs w.r.t. the raw parameters.
  double df1_dlow, df2_dlow, df2_dband;
};

BandWithSlopes Reparameterize(double low, double band, double fs) {
  const double nyquist = fs / 2.0;
  BandWithSlopes r{};
  const double sign_low = low > 0 ? 1.0 : (low < 0 ? -1.0 : 0.0);
  const double sign_band = band > 0 ? 1.0 : (band < 0 ? -1.0 : 0.0);
  const double abs_low = std::abs(low);
  if (abs_low < nyquist) {
    r.f1 = abs_low;
    r.df1_dlow = sign_low;
  } else {
    r.f1 = nyquist;
    r.df1_dlow = 0.0;
  }
  const double upper = r.f1 + std::abs(band);
  if (upper < nyquist) {
    r.f2 = upper;
    r.df2_dlow = r.df1_dlow;
    r.df2_dband = sign_band;
  } else {
    r.f2 = nyquist;
    r.df2_dlow = 0.0;
    r.df2_dband = 0.0;
  }
  return r;
}

template <typename T>
void CheckParams(const SincParams<T>& params, const SincLayerConfig& config) {
  config.Validate();
  if (params.low_hz.size() != config.num_filters ||
      params.band_hz.size() != config.num_filters) {
    throw std::invalid_argument("sinc: expected " +
                                std::to_string(config.num_filters) +
                                " cutoff pairs");
  }
}

template <typename T>
void CheckWaveforms(const Tensor<T>& waveforms,
                    const SincLayerConfig& config) {
  RequireRank(waveforms, 3, "sinc conv input");
  if (waveforms.dim(1) != 1) {
    throw std::invalid_argument("sinc conv: expected a single input channel");
  }
  if (waveforms.dim(2) < config.kernel_length) {
    throw std::invalid_argument(
        "sinc conv: waveform length " + std::to_string(waveforms.dim(2)) +
        " is below the required minimum of " +
        std::to_string(config.kernel_length) + " samples");
  }
}

}  // namespace

WindowMode ParseWindowMode(const std::string& name) {
  if (name == "standard-hamming") return WindowMode::kStandardHamming;
  if (name == "paper-literal") return WindowMode::kPaperLiteral;
  throw std::invalid_argument("unknown window mode '" + name + "'");
}

std::string WindowModeName(WindowMode mode) {
  return mode == WindowMode::kStandardHamming ? "standard-hamming"
                                              : "paper-literal";
}

void SincLayerConfig::Validate() const {
  if (num_filters == 0) {
    throw std::invalid_argument("sinc: num_filters must be >= 1");
  }
  if (kernel_length % 2 == 0) {
    throw std::invalid_argument("sinc: kernel length must be odd, got " +
                                std::to_string(kernel_length));
  }
  if (!(sample_rate > 0.0)) {
    throw std::invalid_argument("sinc: sample rate must be positive");
  }
}

template <typename T>
SincParams<T> InitSincParams(const SincLayerConfig& config,
                             std::uint64_t seed) {
  config.Validate();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, config.sample_rate / 2.0);
  SincParams<T> params{Tensor<T>({config.num_filters}),
                       Tensor<T>({config.num_filters})};
  for (std::size_t i = 0; i < config.num_filters; ++i) {
    double a = dist(rng);
    double b = dist(rng);
    if (a > b) std::swap(a, b);
    params.low_hz[i] = static_cast<T>(a);
    params.band_hz[i] = static_cast<T>(b - a);
  }
  return params;
}

template <typename T>
std::vector<Band> EffectiveBands(const SincParams<T>& params,
                                 const SincLayerConfig& config) {
  CheckParams(params, config);
  std::vector<Band> bands(config.num_filters);
  for (std::size_t i = 0; i < config.num_filters; ++i) {
    const BandWithSlopes r = Reparameterize(
        params.low_hz[i], params.band_hz[i], config.sample_rate);
    bands[i] = {r.f1, r.f2};
  }
  return bands;
}

double Sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

std::vector<double> WindowVector(std::size_t length, WindowMode mode) {
  if (length % 2 == 0) {
    throw std::invalid_argument("window: length must be odd, got " +
                                std::to_string(length));
  }
  std::vector<double> w(length);
  for (std::size_t m = 0; m < length; ++m) {
    const double md = static_cast<double>(m);
    if (mode == WindowMode::kStandardHamming) {
      w[m] = length == 1
                 ? 1.0
                 : 0.54 - 0.46 * std::cos(2.0 * kPi * md /
                                          static_cast<double>(length - 1));
    } else {
      w[m] = 0.54 - 0.46 * std::cos(kPi * md / static_cast<double>(length));
    }
  }
  return w;
}

template <typename T>
Tensor<T> MaterializeFilters(const SincParams<T>& params,
                             const SincLayerConfig& config) {
  CheckParams(params, config);
  const std::size_t len = config.kernel_length;
  const std::ptrdiff_t half = static_cast<std::ptrdiff_t>(len / 2);
  const std::vector<double> window = WindowVector(len, config.window);
  const double fs = config.sample_rate;
  Tensor<T> filters({config.num_filters, len});
  for (std::size_t i = 0; i < config.num_filters; ++i) {
    const BandWithSlopes r =
        Reparameterize(params.low_hz[i], params.band_hz[i], fs);
    const double a1 = r.f1 / fs, a2 = r.f2 / fs;
    for (std::size_t m = 0; m < len; ++m) {
      const double n = static_cast<double>(static_cast<std::ptrdiff_t>(m) - half);
      const double g = 2.0 * a2 * Sinc(2.0 * kPi * a2 * n) -
                       2.0 * a1 * Sinc(2.0 * kPi * a1 * n);
      filters(i, m) = static_cast<T>(g * window[m]);
    }
  }
  return filters;
}

template <typename T>
void FilterGradToParams(const Tensor<T>& filter_grad,
                        const SincParams<T>& params,
                        const SincLayerConfig& config, Tensor<T>* low_grad,
                        Tensor<T>* band_grad) {
  CheckParams(params, config);
  const std::size_t len = config.kernel_length;
  if (filter_grad.shape() != Shape{config.num_filters, len}) {
    throw std::invalid_argument("sinc: filter gradient shape " +
                                ShapeString(filter_grad.shape()));
  }
  const std::ptrdiff_t half = static_cast<std::ptrdiff_t>(len / 2);
  const std::vector<double> window = WindowVector(len, config.window);
  const double fs = config.sample_rate;
  *low_grad = Tensor<T>({config.num_filters});
  *band_grad = Tensor<T>({config.num_filters});
  for (std::size_t i = 0; i < config.num_filters; ++i) {
    const BandWithSlopes r =
        Reparameterize(params.low_hz[i], params.band_hz[i], fs);
    const double a1 = r.f1 / fs, a2 = r.f2 / fs;
    // d/da [2a sinc(2 pi a n)] = 2 cos(2 pi a n); the 1/fs converts to Hz.
    double d_f1 = 0.0, d_f2 = 0.0;
    for (std::size_t m = 0; m < len; ++m) {
      const double n = static_cast<double>(static_cast<std::ptrdiff_t>(m) - half);
      const double gw = static_cast<double>(filter_grad(i, m)) * window[m];
      d_f2 += gw * 2.0 * std::cos(2.0 * kPi * a2 * n) / fs;
      d_f1 -= gw * 2.0 * std::cos(2.0 * kPi * a1 * n) / fs;
    }
    (*low_grad)[i] = static_cast<T>(d_f1 * r.df1_dlow + d_f2 * r.df2_dlow);
    (*band_grad)[i] = static_cast<T>(d_f2 * r.df2_dband);
  }
}

template <typename T>
Tensor<T> SincConv(const Tensor<T>& waveforms, const SincParams<T>& params,
                   const SincLayerConfig& config) {
  CheckWaveforms(waveforms, config);
  const Tensor<T> filters = MaterializeFilters(params, config).Reshaped(
      {config.num_filters, 1, config.kernel_length});
  return nn::Conv1d(waveforms, filters, 1);
}

template <typename T>
SincConvGrads<T> SincConvBackward(const Tensor<T>& waveforms,
                                  const SincParams<T>& params,
                                  const SincLayerConfig& config,
                                  const Tensor<T>& grad_output,
                                  bool need_input_grad) {
  CheckWaveforms(waveforms, config);
  const Tensor<T> filters = MaterializeFilters(params, config).Reshaped(
      {config.num_filters, 1, config.kernel_length});
  nn::Conv1dGrads<T> conv =
      nn::Conv1dBackward(waveforms, filters, 1, grad_output, need_input_grad);
  SincConvGrads<T> grads;
  grads.input = std::move(conv.input);
  FilterGradToParams(
      conv.kernel.Reshaped({config.num_filters, config.kernel_length}), params,
      config, &grads.low_hz, &grads.band_hz);
  return grads;
}

std::vector<double> MagnitudeResponse(std::span<const double> taps,
                                      std::size_t num_points) {
  std::vector<double> mag(num_points);
  for (std::size_t k = 0; k < num_points; ++k) {
    const double freq = num_points == 1
                            ? 0.0
                            : 0.5 * static_cast<double>(k) /
                                  static_cast<double>(num_points - 1);
    double re = 0.0, im = 0.0;
    for (std::size_t m = 0; m < taps.size(); ++m) {
      const double phase = 2.0 * kPi * freq * static_cast<double>(m);
      re += taps[m] * std::cos(phase);
      im -= taps[m] * std::sin(phase);
    }
    mag[k] = std::hypot(re, im);
  }
  return mag;
}

template <typename T>
void WriteFilterResponseCsv(std::ostream& os, const SincParams<T>& params,
                            const SincLayerConfig& config,
                            std::size_t index_offset, bool write_header) {
  const Tensor<double> filters =
      MaterializeFilters(params, config).template Cast<double>();
  const std::vector<Band> bands = EffectiveBands(params, config);
  const std::size_t len = config.kernel_length;
  if (write_header) {
    os << "index,f1_hz,f2_hz";
    for (std::size_t k = 0; k < kResponsePoints; ++k) {
      os << ",h" << k;
    }
    os << '\n';
  }
  const auto old_precision = os.precision(9);
  for (std::size_t i = 0; i < config.num_filters; ++i) {
    const std::vector<double> mag = MagnitudeResponse(
        std::span<const double>(filters.data() + i * len, len),
        kResponsePoints);
    os << index_offset + i << ',' << bands[i].f1_hz << ',' << bands[i].f2_hz;
    for (double v : mag) os << ',' << v;
    os << '\n';
  }
  os.precision(old_precision);
}

#define SWASR_INSTANTIATE(T)                                                  \
  template SincParams<T> InitSincParams<T>(const SincLayerConfig&,            \
                                           std::uint64_t);                    \
  template std::vector<Band> EffectiveBands(const SincParams<T>&,             \
                                            const SincLayerConfig&);          \
  template Tensor<T> MaterializeFilters(const SincParams<T>&,                 \
                                        const SincLayerConfig&);              \
  template void FilterGradToParams(const Tensor<T>&, const SincParams<T>&,    \
                                   const SincLayerConfig&, Tensor<T>*,        \
                                   Tensor<T>*);                               \
  template Tensor<T> SincConv(const Tensor<T>&, const SincParams<T>&,         \
                              const SincLayerConfig&);                        \
  template SincConvGrads<T> SincConvBackward(                                 \
      const Tensor<T>&, const SincParams<T>&, const SincLayerConfig&,         \
      const Tensor<T>&, bool);                                                \
  template void WriteFilterResponseCsv(std::ostream&, const SincParams<T>&,   \
                                       const SincLayerConfig&, std::size_t,   \
                                       bool);
SWASR_INSTANTIATE(float)
SWASR_INSTANTIATE(double)
#undef SWASR_INSTANTIATE

}  // namespace swasr::dsp
