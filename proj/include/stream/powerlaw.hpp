//------------------------------------------------------------------------------
//
//   Copyright 2026 The stream-metrics Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "stream/error.hpp"
#include "stream/parallel.hpp"
#include "stream/spectral.hpp"
#include "stream/tensor.hpp"

namespace stream {

/// Amplitudes are clamped to this floor before taking logs.
inline constexpr double kAmplitudeFloor = 1e-8;

/// Amplitude model C * zeta^-alpha fitted in the log-log domain.
struct PowerLawFit
{
  double alpha    = 0.0;
  double c        = 1.0;
  double residual = 0.0;  ///< sum of squared log-domain residuals
};

enum class SkewnessMode
{
  paper,   ///< published closed form
  direct,  ///< third standardized moment of the fitted distribution
};

inline char const *to_string(SkewnessMode mode)
{
  return mode == SkewnessMode::paper ? "paper" : "direct";
}

/**
 * Ordinary least squares of ln(max(amp, floor)) on ln(zeta) for zeta = 1..F,
 * where F = amps.size(). Slope is -alpha, intercept is ln C.
 */
inline PowerLawFit fit_power_law(std::span<double const> amps)
{
  std::size_t const count = amps.size();
  require(count >= 2, ErrorKind::insufficient_frequencies,
          "power-law fit needs at least 2 frequencies, got " + std::to_string(count));

  // Responses are taken relative to the first one so that a constant input
  // gives exactly zero slope.
  double const y0     = std::log(std::max(amps[0], kAmplitudeFloor));
  double       mean_x = 0.0;
  double       mean_y = 0.0;
  for (std::size_t i = 0; i < count; ++i)
  {
    mean_x += std::log(static_cast<double>(i + 1));
    mean_y += std::log(std::max(amps[i], kAmplitudeFloor)) - y0;
  }
  mean_x /= static_cast<double>(count);
  mean_y /= static_cast<double>(count);

  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < count; ++i)
  {
    double const dx = std::log(static_cast<double>(i + 1)) - mean_x;
    double const dy = std::log(std::max(amps[i], kAmplitudeFloor)) - y0 - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
  }
  double const slope     = sxy / sxx;
  double const intercept = y0 + mean_y - slope * mean_x;

  double residual = 0.0;
  for (std::size_t i = 0; i < count; ++i)
  {
    double const r = std::log(std::max(amps[i], kAmplitudeFloor)) - (intercept + slope * std::log(static_cast<double>(i + 1)));
    residual += r * r;
  }

  return {-slope, std::exp(intercept), residual};
}

/// K = C * sum_{i=1..F} i^-alpha, so (C/K) zeta^-alpha sums to one.
inline double normalization_constant(PowerLawFit const &fit, std::size_t frequencies)
{
  double sum = 0.0;
  for (std::size_t i = 1; i <= frequencies; ++i)
  {
    sum += std::pow(static_cast<double>(i), -fit.alpha);
  }
  return fit.c * sum;
}

/// sqrt(K) * sum zeta^(3-alpha) / sqrt(C * sum zeta^(2-alpha)), zeta = 1..F.
inline double skewness_paper(PowerLawFit const &fit, std::size_t frequencies)
{
  require(frequencies >= 2, ErrorKind::insufficient_frequencies, "skewness needs at least 2 frequencies");
  double const k      = normalization_constant(fit, frequencies);
  double       third  = 0.0;
  double       second = 0.0;
  for (std::size_t i = 1; i <= frequencies; ++i)
  {
    double const z = static_cast<double>(i);
    third += std::pow(z, 3.0 - fit.alpha);
    second += std::pow(z, 2.0 - fit.alpha);
  }
  return std::sqrt(k) * third / std::sqrt(fit.c * second);
}

/// m3 / sigma^3 of p(zeta) proportional to zeta^-alpha on zeta = 1..F.
inline double skewness_direct(PowerLawFit const &fit, std::size_t frequencies)
{
  require(frequencies >= 2, ErrorKind::insufficient_frequencies, "skewness needs at least 2 frequencies");
  std::vector<double> p(frequencies);
  double              total = 0.0;
  for (std::size_t i = 0; i < frequencies; ++i)
  {
    p[i] = std::pow(static_cast<double>(i + 1), -fit.alpha);
    total += p[i];
  }
  double mean = 0.0;
  for (std::size_t i = 0; i < frequencies; ++i)
  {
    p[i] /= total;
    mean += static_cast<double>(i + 1) * p[i];
  }
  double var = 0.0;
  double m3  = 0.0;
  for (std::size_t i = 0; i < frequencies; ++i)
  {
    double const d = static_cast<double>(i + 1) - mean;
    var += d * d * p[i];
    m3 += d * d * d * p[i];
  }
  require(var > 0.0, ErrorKind::numeric, "fitted distribution has zero variance");
  return m3 / (var * std::sqrt(var));
}

inline double skewness(PowerLawFit const &fit, std::size_t frequencies, SkewnessMode mode)
{
  return mode == SkewnessMode::paper ? skewness_paper(fit, frequencies) : skewness_direct(fit, frequencies);
}

struct SkewnessOptions
{
  SkewnessMode mode                   = SkewnessMode::paper;
  bool         include_zero_frequency = false;
};

/**
 * Per-video, per-dimension skewness values (N x d). With the zero frequency
 * included, bins 0..F are fitted on the grid zeta = 1..F+1.
 */
struct SkewnessTable
{
  std::size_t         videos = 0;
  std::size_t         dims   = 0;
  SkewnessMode        mode   = SkewnessMode::paper;
  std::vector<double> values;

  double at(std::size_t n, std::size_t k) const
  {
    return values[n * dims + k];
  }
  /// Column k, copied out (strided in storage).
  std::vector<double> column(std::size_t k) const
  {
    std::vector<double> out(videos);
    for (std::size_t n = 0; n < videos; ++n)
    {
      out[n] = at(n, k);
    }
    return out;
  }
};

namespace detail {

template <typename PerCell>
void for_each_fit(FeatureDataset const &ds, bool include_zero_frequency, PerCell &&cell)
{
  std::size_t const frames = ds.frames();
  std::size_t const dims   = ds.dims();
  std::size_t const first  = include_zero_frequency ? 0 : 1;
  std::size_t const bins   = bin_count(frames);
  require(bins - first >= 2, ErrorKind::insufficient_frequencies, "too few frequencies to fit");

  parallel_for(ds.videos(), [&](std::size_t n) {
    std::vector<double> signal(frames);
    std::vector<double> amps(bins);
    for (std::size_t k = 0; k < dims; ++k)
    {
      for (std::size_t t = 0; t < frames; ++t)
      {
        signal[t] = static_cast<double>(ds.at(n, t, k));
      }
      signal_amplitudes(signal, amps);
      auto const used = std::span<double const>(amps).subspan(first);
      cell(n, k, fit_power_law(used), used.size());
    }
  });
}

}  // namespace detail

inline SkewnessTable skewness_table(FeatureDataset const &ds, SkewnessOptions const &options = {})
{
  SkewnessTable table{ds.videos(), ds.dims(), options.mode, std::vector<double>(ds.videos() * ds.dims())};
  detail::for_each_fit(ds, options.include_zero_frequency,
                       [&](std::size_t n, std::size_t k, PowerLawFit const &fit, std::size_t frequencies) {
                         double const g = skewness(fit, frequencies, options.mode);
                         require(std::isfinite(g), ErrorKind::numeric, "skewness is not finite");
                         table.values[n * table.dims + k] = g;
                       });
  return table;
}

/// Fitted exponents alpha, (N x d).
inline PointSet exponent_table(FeatureDataset const &ds, bool include_zero_frequency = false)
{
  PointSet out(ds.videos(), ds.dims());
  detail::for_each_fit(ds, include_zero_frequency,
                       [&](std::size_t n, std::size_t k, PowerLawFit const &fit, std::size_t) {
                         out.row(n)[k] = fit.alpha;
                       });
  return out;
}

}  // namespace stream
