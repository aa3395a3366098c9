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
#include <vector>

#include "stream/error.hpp"
#include "stream/harness.hpp"
#include "stream/parallel.hpp"
#include "stream/rng.hpp"
#include "stream/tensor.hpp"

// Pixel-space distortions on (N, T, H, W, C) uint8 videos. Results are
// rounded to nearest and clamped to [0, 255]. Every operation is the
// identity, bit-exact, at zero intensity.

namespace stream::pixel {

namespace detail {

inline std::uint8_t to_pixel(double v)
{
  return static_cast<std::uint8_t>(std::clamp(std::nearbyint(v), 0.0, 255.0));
}

/// Mirror index into [0, n) without repeating the edge sample.
inline std::size_t reflect(std::ptrdiff_t i, std::size_t n)
{
  if (n == 1)
  {
    return 0;
  }
  auto const period = static_cast<std::ptrdiff_t>(2 * (n - 1));
  i %= period;
  if (i < 0)
  {
    i += period;
  }
  if (i >= static_cast<std::ptrdiff_t>(n))
  {
    i = period - i;
  }
  return static_cast<std::size_t>(i);
}

template <typename PerPixel>
RawVideoDataset map_pixels(RawVideoDataset const &ds, PerPixel &&per_video)
{
  auto out = ds.tensor();
  parallel_for(ds.videos(), [&](std::size_t n) { per_video(n, out); });
  return RawVideoDataset(std::move(out));
}

}  // namespace detail

/**
 * One N(0, sigma^2) noise field per video, added identically to every frame.
 * With `per_frame` each frame draws its own field.
 */
inline RawVideoDataset gaussian_noise(RawVideoDataset const &ds, double sigma, std::uint64_t seed,
                                      bool per_frame = false)
{
  require(sigma >= 0.0, ErrorKind::invalid_argument, "noise sigma must be non-negative");
  if (sigma == 0.0)
  {
    return ds;
  }
  auto const frame_size = ds.tensor().frame_size();
  return detail::map_pixels(ds, [&](std::size_t n, Tensor<std::uint8_t> &out) {
    Rng                 rng(video_seed(seed, n));
    std::vector<double> noise(frame_size);
    for (std::size_t t = 0; t < ds.frames(); ++t)
    {
      if (t == 0 || per_frame)
      {
        for (auto &e : noise)
        {
          e = sigma * rng.normal();
        }
      }
      auto const src = ds.tensor().frame(n, t);
      auto       dst = out.frame(n, t);
      for (std::size_t i = 0; i < frame_size; ++i)
      {
        dst[i] = detail::to_pixel(static_cast<double>(src[i]) + noise[i]);
      }
    }
  });
}

/// A p-fraction of pixel positions per video is forced to 0 or 255 in every frame.
inline RawVideoDataset salt_pepper(RawVideoDataset const &ds, double p, std::uint64_t seed)
{
  require(p >= 0.0 && p <= 1.0, ErrorKind::invalid_argument, "salt-and-pepper probability must be in [0, 1]");
  if (p == 0.0)
  {
    return ds;
  }
  std::size_t const plane    = ds.height() * ds.width();
  std::size_t const channels = ds.channels();
  return detail::map_pixels(ds, [&](std::size_t n, Tensor<std::uint8_t> &out) {
    Rng                       rng(video_seed(seed, n));
    std::vector<std::int16_t> mask(plane, -1);
    for (auto &m : mask)
    {
      if (rng.uniform() < p)
      {
        m = rng.uniform() < 0.5 ? 0 : 255;
      }
    }
    for (std::size_t t = 0; t < ds.frames(); ++t)
    {
      auto dst = out.frame(n, t);
      for (std::size_t px = 0; px < plane; ++px)
      {
        if (mask[px] >= 0)
        {
          std::fill_n(dst.begin() + static_cast<std::ptrdiff_t>(px * channels), channels,
                      static_cast<std::uint8_t>(mask[px]));
        }
      }
    }
  });
}

/// One gain per channel per video, drawn from U[1 - intensity, 1 + intensity].
inline RawVideoDataset color_jitter(RawVideoDataset const &ds, double intensity, std::uint64_t seed)
{
  require(intensity >= 0.0 && intensity <= 1.0, ErrorKind::invalid_argument, "jitter intensity must be in [0, 1]");
  if (intensity == 0.0)
  {
    return ds;
  }
  std::size_t const channels = ds.channels();
  return detail::map_pixels(ds, [&](std::size_t n, Tensor<std::uint8_t> &out) {
    Rng                 rng(video_seed(seed, n));
    std::vector<double> gain(channels);
    for (auto &g : gain)
    {
      g = rng.uniform(1.0 - intensity, 1.0 + intensity);
    }
    for (std::size_t t = 0; t < ds.frames(); ++t)
    {
      auto dst = out.frame(n, t);
      for (std::size_t i = 0; i < dst.size(); ++i)
      {
        dst[i] = detail::to_pixel(static_cast<double>(dst[i]) * gain[i % channels]);
      }
    }
  });
}

/// Contrast reduction: v -> 128 + (v - 128) * (1 - factor).
inline RawVideoDataset luminance_shift(RawVideoDataset const &ds, double factor)
{
  require(factor >= 0.0 && factor <= 1.0, ErrorKind::invalid_argument, "luminance factor must be in [0, 1]");
  if (factor == 0.0)
  {
    return ds;
  }
  auto out = ds.tensor();
  for (auto &v : out.data())
  {
    v = detail::to_pixel(128.0 + (static_cast<double>(v) - 128.0) * (1.0 - factor));
  }
  return RawVideoDataset(std::move(out));
}

/// Separable Gaussian blur, radius ceil(3 sigma), reflection padding.
inline RawVideoDataset gaussian_blur(RawVideoDataset const &ds, double sigma)
{
  require(sigma >= 0.0, ErrorKind::invalid_argument, "blur sigma must be non-negative");
  if (sigma == 0.0)
  {
    return ds;
  }
  auto const          radius = static_cast<std::ptrdiff_t>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
  double              total = 0.0;
  for (std::ptrdiff_t i = -radius; i <= radius; ++i)
  {
    double const w                              = std::exp(-0.5 * static_cast<double>(i * i) / (sigma * sigma));
    kernel[static_cast<std::size_t>(i + radius)] = w;
    total += w;
  }
  for (auto &w : kernel)
  {
    w /= total;
  }

  std::size_t const h = ds.height();
  std::size_t const w = ds.width();
  std::size_t const c = ds.channels();
  return detail::map_pixels(ds, [&](std::size_t n, Tensor<std::uint8_t> &out) {
    std::vector<double> rows(h * w * c);
    for (std::size_t t = 0; t < ds.frames(); ++t)
    {
      auto const src = ds.tensor().frame(n, t);
      for (std::size_t y = 0; y < h; ++y)
      {
        for (std::size_t x = 0; x < w; ++x)
        {
          for (std::size_t ch = 0; ch < c; ++ch)
          {
            double acc = 0.0;
            for (std::ptrdiff_t i = -radius; i <= radius; ++i)
            {
              auto const xx = detail::reflect(static_cast<std::ptrdiff_t>(x) + i, w);
              acc += kernel[static_cast<std::size_t>(i + radius)] * src[(y * w + xx) * c + ch];
            }
            rows[(y * w + x) * c + ch] = acc;
          }
        }
      }
      auto dst = out.frame(n, t);
      for (std::size_t y = 0; y < h; ++y)
      {
        for (std::size_t x = 0; x < w; ++x)
        {
          for (std::size_t ch = 0; ch < c; ++ch)
          {
            double acc = 0.0;
            for (std::ptrdiff_t i = -radius; i <= radius; ++i)
            {
              auto const yy = detail::reflect(static_cast<std::ptrdiff_t>(y) + i, h);
              acc += kernel[static_cast<std::size_t>(i + radius)] * rows[(yy * w + x) * c + ch];
            }
            dst[(y * w + x) * c + ch] = detail::to_pixel(acc);
          }
        }
      }
    }
  });
}

/**
 * Each frame moves by `pixels` along its own uniformly drawn direction;
 * uncovered regions are filled by reflection.
 */
inline RawVideoDataset random_translation(RawVideoDataset const &ds, std::size_t pixels, std::uint64_t seed)
{
  if (pixels == 0)
  {
    return ds;
  }
  std::size_t const h = ds.height();
  std::size_t const w = ds.width();
  std::size_t const c = ds.channels();
  return detail::map_pixels(ds, [&](std::size_t n, Tensor<std::uint8_t> &out) {
    Rng rng(video_seed(seed, n));
    for (std::size_t t = 0; t < ds.frames(); ++t)
    {
      double const angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
      auto const   dx    = static_cast<std::ptrdiff_t>(std::lround(static_cast<double>(pixels) * std::cos(angle)));
      auto const   dy    = static_cast<std::ptrdiff_t>(std::lround(static_cast<double>(pixels) * std::sin(angle)));
      auto const   src   = ds.tensor().frame(n, t);
      auto         dst   = out.frame(n, t);
      for (std::size_t y = 0; y < h; ++y)
      {
        auto const sy = detail::reflect(static_cast<std::ptrdiff_t>(y) - dy, h);
        for (std::size_t x = 0; x < w; ++x)
        {
          auto const sx = detail::reflect(static_cast<std::ptrdiff_t>(x) - dx, w);
          for (std::size_t ch = 0; ch < c; ++ch)
          {
            dst[(y * w + x) * c + ch] = src[(sy * w + sx) * c + ch];
          }
        }
      }
    }
  });
}

inline RawVideoDataset horizontal_flip(RawVideoDataset const &ds)
{
  std::size_t const h = ds.height();
  std::size_t const w = ds.width();
  std::size_t const c = ds.channels();
  return detail::map_pixels(ds, [&](std::size_t n, Tensor<std::uint8_t> &out) {
    for (std::size_t t = 0; t < ds.frames(); ++t)
    {
      auto const src = ds.tensor().frame(n, t);
      auto       dst = out.frame(n, t);
      for (std::size_t y = 0; y < h; ++y)
      {
        for (std::size_t x = 0; x < w; ++x)
        {
          for (std::size_t ch = 0; ch < c; ++ch)
          {
            dst[(y * w + x) * c + ch] = src[(y * w + (w - 1 - x)) * c + ch];
          }
        }
      }
    }
  });
}

inline RawVideoDataset local_swap(RawVideoDataset const &ds, std::size_t count, std::uint64_t seed)
{
  return RawVideoDataset(temporal::local_swap(ds.tensor(), count, seed));
}

inline RawVideoDataset global_swap(RawVideoDataset const &ds, std::size_t count, std::uint64_t seed)
{
  return RawVideoDataset(temporal::global_swap(ds.tensor(), count, seed));
}

inline RawVideoDataset stop_scene(RawVideoDataset const &ds, double ratio, std::uint64_t seed)
{
  return RawVideoDataset(temporal::stop_scene(ds.tensor(), ratio, seed));
}

inline RawVideoDataset full_reverse(RawVideoDataset const &ds)
{
  return RawVideoDataset(temporal::full_reverse(ds.tensor()));
}

inline RawVideoDataset partial_reverse(RawVideoDataset const &ds, std::size_t count, std::uint64_t seed)
{
  return RawVideoDataset(temporal::partial_reverse(ds.tensor(), count, seed));
}

inline RawVideoDataset fps_resample(RawVideoDataset const &ds, double rate)
{
  return RawVideoDataset(temporal::fps_resample(ds.tensor(), rate));
}

}  // namespace stream::pixel
