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
#include <cstdint>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stream/error.hpp"
#include "stream/parallel.hpp"
#include "stream/rng.hpp"
#include "stream/spectral.hpp"
#include "stream/tensor.hpp"

namespace stream {

/// Default grid for synthetic features: values below 128 in magnitude are
/// exactly representable in float32, so offsets on the same grid add exactly.
inline constexpr double kDefaultQuantum = 0x1.0p-16;

struct SyntheticSpec
{
  std::size_t   n_videos       = 256;
  std::size_t   t_frames       = 16;
  std::size_t   d_dims         = 64;
  double        alpha          = 1.0;  ///< spectral exponent of the amplitudes
  double        base_offset    = 4.0;  ///< added to every value
  std::uint64_t seed           = 0;
  double        amplitude      = 1.0;  ///< amplitude at frequency bin 1
  double        mean_spread    = 0.5;  ///< std-dev of the per-video frame mean around its scene center
  double        quantum        = kDefaultQuantum;  ///< 0 disables rounding
  /// Scene clusters for the per-video means; 0 or 1 gives a single cloud.
  std::size_t   clusters       = 16;
  double        cluster_spread = 3.0;  ///< std-dev of cluster centers per dim
  /// Seeds the cluster centers only, so sets drawn with different `seed`
  /// values share one scene layout.
  std::uint64_t scene_seed     = 0;
};

inline double quantize(double v, double quantum)
{
  return quantum > 0.0 ? std::nearbyint(v / quantum) * quantum : v;
}

/**
 * Colored-noise feature sequences. For each (video, dim) the frame mean is
 * base_offset + center + mean_spread * N(0,1), where `center` is the video's
 * scene-cluster center (zero without clusters). Positive bin i carries amplitude
 * amplitude * i^-alpha * R with R Rayleigh-distributed (unit mean square) and
 * a uniform random phase. The Nyquist bin of even T gets a random sign in
 * place of a phase. E[ln amplitude] is then linear in ln i with slope -alpha.
 */
inline FeatureDataset generate_synthetic(SyntheticSpec const &spec)
{
  require(spec.n_videos >= 1 && spec.d_dims >= 1, ErrorKind::invalid_argument, "synthetic sizes must be positive");
  require(spec.t_frames >= FeatureDataset::kMinFrames, ErrorKind::invalid_argument,
          "synthetic videos need at least 4 frames");
  require(std::isfinite(spec.alpha) && spec.alpha >= 0.0, ErrorKind::invalid_argument,
          "spectral exponent must be >= 0");
  require(spec.base_offset >= 0.0 && spec.amplitude >= 0.0 && spec.mean_spread >= 0.0 && spec.quantum >= 0.0 &&
              spec.cluster_spread >= 0.0,
          ErrorKind::invalid_argument, "synthetic scales must be non-negative");

  std::size_t const  frames  = spec.t_frames;
  std::size_t const  dims    = spec.d_dims;
  std::size_t const  top     = frames / 2;
  bool const         nyquist = frames % 2 == 0;
  std::vector<float> values(spec.n_videos * frames * dims);

  std::size_t const   clusters = std::max<std::size_t>(spec.clusters, 1);
  std::vector<double> centers(clusters * dims, 0.0);
  if (spec.clusters > 1)
  {
    Rng scene(mix_seed(spec.scene_seed));
    for (auto &c : centers)
    {
      c = spec.cluster_spread * scene.normal();
    }
  }

  parallel_for(spec.n_videos, [&](std::size_t n) {
    Rng                 rng(video_seed(spec.seed, n));
    std::vector<double> signal(frames);
    auto const          cluster = static_cast<std::size_t>(rng.below(clusters));
    for (std::size_t k = 0; k < dims; ++k)
    {
      double const mean = spec.base_offset + centers[cluster * dims + k] + spec.mean_spread * rng.normal();
      std::fill(signal.begin(), signal.end(), mean);
      for (std::size_t i = 1; i <= top; ++i)
      {
        double const g1      = rng.normal();
        double const g2      = rng.normal();
        double const rayleigh = std::sqrt(0.5 * (g1 * g1 + g2 * g2));
        double const amp     = spec.amplitude * std::pow(static_cast<double>(i), -spec.alpha) * rayleigh;
        double const phase   = rng.uniform(0.0, 2.0 * std::numbers::pi);
        if (nyquist && i == top)
        {
          double const sign = phase < std::numbers::pi ? 1.0 : -1.0;
          for (std::size_t t = 0; t < frames; ++t)
          {
            signal[t] += sign * amp * (t % 2 == 0 ? 1.0 : -1.0);
          }
        }
        else
        {
          double const w = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(frames);
          for (std::size_t t = 0; t < frames; ++t)
          {
            signal[t] += 2.0 * amp * std::cos(w * static_cast<double>(t) + phase);
          }
        }
      }
      for (std::size_t t = 0; t < frames; ++t)
      {
        values[(n * frames + t) * dims + k] = static_cast<float>(quantize(signal[t], spec.quantum));
      }
    }
  });

  return FeatureDataset(spec.n_videos, frames, dims, std::move(values),
                        "synthetic(alpha=" + std::to_string(spec.alpha) + ",seed=" + std::to_string(spec.seed) + ")");
}

// ---------------------------------------------------------------------------
// Temporal distortions. These act on any (N, T, ...) tensor and move whole
// frames, so they serve both feature and raw-pixel datasets.

namespace temporal {

template <typename T>
void copy_frame(Tensor<T> &dst, std::size_t dn, std::size_t dt, Tensor<T> const &src, std::size_t sn, std::size_t st)
{
  auto const from = src.frame(sn, st);
  auto       to   = dst.frame(dn, dt);
  std::copy(from.begin(), from.end(), to.begin());
}

template <typename T>
void swap_frames(Tensor<T> &x, std::size_t n, std::size_t a, std::size_t b)
{
  auto fa = x.frame(n, a);
  auto fb = x.frame(n, b);
  std::swap_ranges(fa.begin(), fa.end(), fb.begin());
}

/// `count` exchanges of two distinct, uniformly drawn frames per video.
template <typename T>
Tensor<T> local_swap(Tensor<T> const &x, std::size_t count, std::uint64_t seed)
{
  std::size_t const frames = x.shape()[1];
  require(frames >= 2 || count == 0, ErrorKind::invalid_argument, "local swap needs at least 2 frames");
  Tensor<T> out = x;
  parallel_for(x.shape()[0], [&](std::size_t n) {
    Rng rng(video_seed(seed, n));
    for (std::size_t s = 0; s < count; ++s)
    {
      auto const a = static_cast<std::size_t>(rng.below(frames));
      auto       b = static_cast<std::size_t>(rng.below(frames - 1));
      if (b >= a)
      {
        ++b;
      }
      swap_frames(out, n, a, b);
    }
  });
  return out;
}

/**
 * `count` times per video, a random frame is overwritten by a random frame of
 * a different random video. Donor frames always come from the undistorted
 * input.
 */
template <typename T>
Tensor<T> global_swap(Tensor<T> const &x, std::size_t count, std::uint64_t seed)
{
  std::size_t const videos = x.shape()[0];
  std::size_t const frames = x.shape()[1];
  require(videos >= 2 || count == 0, ErrorKind::invalid_argument, "global swap needs at least 2 videos");
  Tensor<T> out = x;
  parallel_for(videos, [&](std::size_t n) {
    Rng rng(video_seed(seed, n));
    for (std::size_t s = 0; s < count; ++s)
    {
      auto const t     = static_cast<std::size_t>(rng.below(frames));
      auto       donor = static_cast<std::size_t>(rng.below(videos - 1));
      if (donor >= n)
      {
        ++donor;
      }
      auto const dt = static_cast<std::size_t>(rng.below(frames));
      copy_frame(out, n, t, x, donor, dt);
    }
  });
  return out;
}

/// floor(ratio * N) seeded-random videos become their first frame held for T frames.
template <typename T>
Tensor<T> stop_scene(Tensor<T> const &x, double ratio, std::uint64_t seed)
{
  require(ratio >= 0.0 && ratio <= 1.0, ErrorKind::invalid_argument, "stop-scene ratio must be in [0, 1]");
  std::size_t const videos   = x.shape()[0];
  std::size_t const frames   = x.shape()[1];
  auto const        replaced = static_cast<std::size_t>(std::floor(ratio * static_cast<double>(videos)));

  std::vector<std::size_t> order(videos);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = 0; i < replaced; ++i)
  {
    auto const j = i + static_cast<std::size_t>(rng.below(videos - i));
    std::swap(order[i], order[j]);
  }

  Tensor<T> out = x;
  for (std::size_t i = 0; i < replaced; ++i)
  {
    for (std::size_t t = 1; t < frames; ++t)
    {
      copy_frame(out, order[i], t, x, order[i], 0);
    }
  }
  return out;
}

template <typename T>
Tensor<T> full_reverse(Tensor<T> const &x)
{
  std::size_t const frames = x.shape()[1];
  Tensor<T>         out    = x;
  for (std::size_t n = 0; n < x.shape()[0]; ++n)
  {
    for (std::size_t t = 0; t < frames; ++t)
    {
      copy_frame(out, n, t, x, n, frames - 1 - t);
    }
  }
  return out;
}

/// `count` random 3-frame runs per video are played backwards, one after another.
template <typename T>
Tensor<T> partial_reverse(Tensor<T> const &x, std::size_t count, std::uint64_t seed)
{
  std::size_t const frames = x.shape()[1];
  require(frames >= 3 || count == 0, ErrorKind::invalid_argument, "partial reverse needs at least 3 frames");
  Tensor<T> out = x;
  parallel_for(x.shape()[0], [&](std::size_t n) {
    Rng rng(video_seed(seed, n));
    for (std::size_t s = 0; s < count; ++s)
    {
      auto const start = static_cast<std::size_t>(rng.below(frames - 2));
      swap_frames(out, n, start, start + 2);
    }
  });
  return out;
}

/// Output frame t shows input frame floor(t * rate); T is unchanged.
template <typename T>
Tensor<T> fps_resample(Tensor<T> const &x, double rate)
{
  require(rate > 0.0 && rate <= 1.0, ErrorKind::invalid_argument, "frame-rate factor must be in (0, 1]");
  std::size_t const frames = x.shape()[1];
  Tensor<T>         out    = x;
  for (std::size_t t = 0; t < frames; ++t)
  {
    // The small slack keeps products such as 15 * 0.2 from landing just below an integer.
    auto const src = static_cast<std::size_t>(std::floor(static_cast<double>(t) * rate + 1e-9));
    for (std::size_t n = 0; n < x.shape()[0]; ++n)
    {
      copy_frame(out, n, t, x, n, src);
    }
  }
  return out;
}

}  // namespace temporal

// ---------------------------------------------------------------------------
// Feature-space wrappers.

inline FeatureDataset local_swap(FeatureDataset const &ds, std::size_t count, std::uint64_t seed)
{
  return FeatureDataset(temporal::local_swap(ds.tensor(), count, seed), ds.source_id());
}

inline FeatureDataset global_swap(FeatureDataset const &ds, std::size_t count, std::uint64_t seed)
{
  return FeatureDataset(temporal::global_swap(ds.tensor(), count, seed), ds.source_id());
}

inline FeatureDataset stop_scene(FeatureDataset const &ds, double ratio, std::uint64_t seed)
{
  return FeatureDataset(temporal::stop_scene(ds.tensor(), ratio, seed), ds.source_id());
}

inline FeatureDataset full_reverse(FeatureDataset const &ds)
{
  return FeatureDataset(temporal::full_reverse(ds.tensor()), ds.source_id());
}

inline FeatureDataset partial_reverse(FeatureDataset const &ds, std::size_t count, std::uint64_t seed)
{
  return FeatureDataset(temporal::partial_reverse(ds.tensor(), count, seed), ds.source_id());
}

inline FeatureDataset fps_resample(FeatureDataset const &ds, double rate)
{
  return FeatureDataset(temporal::fps_resample(ds.tensor(), rate), ds.source_id());
}

/// Adds `offset` (length d) to every frame of every video.
inline FeatureDataset constant_offset(FeatureDataset const &ds, std::span<double const> offset)
{
  require(offset.size() == ds.dims(), ErrorKind::dimension_mismatch, "offset length must equal d");
  auto values = ds.tensor().data();
  for (std::size_t i = 0; i < values.size(); ++i)
  {
    values[i] = static_cast<float>(static_cast<double>(values[i]) + offset[i % ds.dims()]);
  }
  return FeatureDataset(ds.videos(), ds.frames(), ds.dims(), std::move(values), ds.source_id());
}

/// Random direction scaled to `magnitude` per component RMS, rounded to `quantum`.
inline std::vector<double> random_offset(std::size_t dims, double magnitude, std::uint64_t seed,
                                         double quantum = kDefaultQuantum)
{
  require(magnitude >= 0.0, ErrorKind::invalid_argument, "offset magnitude must be non-negative");
  Rng                 rng(seed);
  std::vector<double> v(dims);
  double              norm = 0.0;
  for (auto &x : v)
  {
    x = rng.normal();
    norm += x * x;
  }
  norm = std::sqrt(norm / static_cast<double>(dims));
  for (auto &x : v)
  {
    x = norm > 0.0 ? quantize(magnitude * x / norm, quantum) : 0.0;
  }
  return v;
}

/**
 * Gaussian noise of standard deviation `sigma`. By default one noise vector
 * is drawn per video and added to all of its frames, so differences between
 * frames are untouched; `per_frame` draws fresh noise for every frame.
 */
inline FeatureDataset feature_noise(FeatureDataset const &ds, double sigma, std::uint64_t seed, bool per_frame = false,
                                    double quantum = kDefaultQuantum)
{
  require(sigma >= 0.0, ErrorKind::invalid_argument, "noise sigma must be non-negative");
  if (sigma == 0.0)
  {
    return ds;
  }
  auto              values = ds.tensor().data();
  std::size_t const frames = ds.frames();
  std::size_t const dims   = ds.dims();
  parallel_for(ds.videos(), [&](std::size_t n) {
    Rng                 rng(video_seed(seed, n));
    std::vector<double> noise(dims);
    for (std::size_t t = 0; t < frames; ++t)
    {
      if (t == 0 || per_frame)
      {
        for (auto &e : noise)
        {
          e = quantize(sigma * rng.normal(), quantum);
        }
      }
      for (std::size_t k = 0; k < dims; ++k)
      {
        auto &v = values[(n * frames + t) * dims + k];
        v       = static_cast<float>(static_cast<double>(v) + noise[k]);
      }
    }
  });
  return FeatureDataset(ds.videos(), frames, dims, std::move(values), ds.source_id());
}

}  // namespace stream
