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

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include <fftw3.h>

#include "stream/error.hpp"
#include "stream/parallel.hpp"
#include "stream/tensor.hpp"

namespace stream {

/// Number of non-negative frequency bins, floor(T/2) + 1.
inline std::size_t bin_count(std::size_t frames)
{
  return frames / 2 + 1;
}

/**
 * Temporal amplitude spectrum of one video: d rows of floor(T/2)+1 amplitudes,
 * bin i holding |sum_t x[t] exp(-2 pi i t i / T)| / T. Bin 0 is the modulus of
 * the frame mean.
 */
struct AmplitudeSpectrum
{
  std::size_t         dims = 0;
  std::size_t         bins = 0;
  std::vector<double> amplitudes;

  double at(std::size_t k, std::size_t i) const
  {
    return amplitudes[k * bins + i];
  }
  std::span<double const> row(std::size_t k) const
  {
    return {amplitudes.data() + k * bins, bins};
  }
};

/// Zero-frequency amplitude per video, (N x d).
using MeanAmplitudeSet = PointSet;

namespace detail {

struct PlanDeleter
{
  void operator()(fftw_plan_s *plan) const
  {
    fftw_destroy_plan(plan);
  }
};
using PlanHandle = std::unique_ptr<fftw_plan_s, PlanDeleter>;

/**
 * FFTW planning is not thread-safe, execution with the new-array interface
 * is. Plans are created once per length under a lock and shared afterwards.
 */
inline fftw_plan r2c_plan(std::size_t n)
{
  static std::mutex                          mutex;
  static std::map<std::size_t, PlanHandle>   plans;
  std::lock_guard                            lock(mutex);
  auto                                       it = plans.find(n);
  if (it == plans.end())
  {
    auto *in  = fftw_alloc_real(n);
    auto *out = fftw_alloc_complex(n / 2 + 1);
    auto  plan =
        fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_PRESERVE_INPUT);
    fftw_free(in);
    fftw_free(out);
    require(plan != nullptr, ErrorKind::numeric, "FFTW could not plan a transform of length " + std::to_string(n));
    it = plans.emplace(n, PlanHandle(plan)).first;
  }
  return it->second.get();
}

}  // namespace detail

/**
 * Amplitudes of a single real signal into `out` (size floor(n/2)+1).
 */
inline void signal_amplitudes(std::span<double const> signal, std::span<double> out)
{
  std::size_t const n = signal.size();
  require(out.size() == bin_count(n), ErrorKind::shape_mismatch, "amplitude buffer has the wrong size");

  thread_local std::vector<std::complex<double>> coeffs;
  coeffs.resize(bin_count(n));
  fftw_execute_dft_r2c(detail::r2c_plan(n), const_cast<double *>(signal.data()),
                       reinterpret_cast<fftw_complex *>(coeffs.data()));
  double const scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < out.size(); ++i)
  {
    out[i] = std::abs(coeffs[i]) * scale;
  }
}

/// Spectrum of one (T x d) sequence stored row-major by frame.
template <typename Scalar>
AmplitudeSpectrum amplitude_spectrum(std::span<Scalar const> sequence, std::size_t frames, std::size_t dims)
{
  require(frames >= FeatureDataset::kMinFrames, ErrorKind::too_short,
          "need at least 4 frames for a spectrum, got " + std::to_string(frames));
  require(sequence.size() == frames * dims, ErrorKind::shape_mismatch, "sequence size is not T * d");

  AmplitudeSpectrum spectrum{dims, bin_count(frames), {}};
  spectrum.amplitudes.resize(dims * spectrum.bins);
  std::vector<double> signal(frames);
  for (std::size_t k = 0; k < dims; ++k)
  {
    for (std::size_t t = 0; t < frames; ++t)
    {
      double const v = static_cast<double>(sequence[t * dims + k]);
      require(std::isfinite(v), ErrorKind::validation, "sequence contains a non-finite value");
      signal[t] = v;
    }
    signal_amplitudes(signal, std::span<double>(spectrum.amplitudes).subspan(k * spectrum.bins, spectrum.bins));
  }
  return spectrum;
}

inline AmplitudeSpectrum amplitude_spectrum(FeatureDataset const &ds, std::size_t video)
{
  auto const &data = ds.tensor().data();
  auto const  len  = ds.frames() * ds.dims();
  return amplitude_spectrum(std::span<float const>(data.data() + video * len, len), ds.frames(), ds.dims());
}

/// points[n, k] = |mean_t features[n, t, k]|.
inline MeanAmplitudeSet mean_amplitude_set(FeatureDataset const &ds)
{
  MeanAmplitudeSet set(ds.videos(), ds.dims());
  auto const       frames = static_cast<double>(ds.frames());
  parallel_for(ds.videos(), [&](std::size_t n) {
    auto row = set.row(n);
    for (std::size_t t = 0; t < ds.frames(); ++t)
    {
      for (std::size_t k = 0; k < ds.dims(); ++k)
      {
        row[k] += static_cast<double>(ds.at(n, t, k));
      }
    }
    for (auto &v : row)
    {
      v = std::abs(v / frames);
    }
  });
  return set;
}

}  // namespace stream
