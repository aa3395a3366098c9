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

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include <nlohmann/json.hpp>

#include "stream/error.hpp"
#include "stream/harness.hpp"
#include "stream/pixel.hpp"

namespace stream {

enum class DistortionKind
{
  local_swap,
  global_swap,
  stop_scene,
  random_translation,
  gaussian_noise,
  salt_pepper,
  color_jitter,
  luminance_shift,
  gaussian_blur,
  fps_resample,
  partial_reverse,
  full_reverse,
  horizontal_flip,
  constant_offset,
};

inline constexpr std::array<std::pair<DistortionKind, std::string_view>, 14> kDistortionNames{{
    {DistortionKind::local_swap, "local_swap"},
    {DistortionKind::global_swap, "global_swap"},
    {DistortionKind::stop_scene, "stop_scene"},
    {DistortionKind::random_translation, "random_translation"},
    {DistortionKind::gaussian_noise, "gaussian_noise"},
    {DistortionKind::salt_pepper, "salt_pepper"},
    {DistortionKind::color_jitter, "color_jitter"},
    {DistortionKind::luminance_shift, "luminance_shift"},
    {DistortionKind::gaussian_blur, "gaussian_blur"},
    {DistortionKind::fps_resample, "fps_resample"},
    {DistortionKind::partial_reverse, "partial_reverse"},
    {DistortionKind::full_reverse, "full_reverse"},
    {DistortionKind::horizontal_flip, "horizontal_flip"},
    {DistortionKind::constant_offset, "constant_offset"},
}};

inline std::string_view to_string(DistortionKind kind)
{
  for (auto const &[k, name] : kDistortionNames)
  {
    if (k == kind)
    {
      return name;
    }
  }
  return "unknown";
}

inline DistortionKind parse_distortion(std::string_view name)
{
  for (auto const &[k, n] : kDistortionNames)
  {
    if (n == name)
    {
      return k;
    }
  }
  throw Error(ErrorKind::invalid_argument, "unknown distortion kind '" + std::string(name) + "'");
}

/**
 * What `intensity` means per kind:
 *   local_swap, global_swap, partial_reverse : count per video (integer >= 0)
 *   stop_scene                               : ratio of videos in [0, 1]
 *   gaussian_noise                           : sigma >= 0
 *   salt_pepper                              : pixel probability in [0, 1]
 *   color_jitter                             : gain half-width in [0, 1]
 *   luminance_shift                          : contrast factor in [0, 1]
 *   gaussian_blur                            : sigma >= 0 (pixels)
 *   random_translation                       : shift in pixels (integer >= 0)
 *   fps_resample                             : rate factor in (0, 1]
 *   constant_offset                          : RMS per component >= 0 (features)
 *   full_reverse, horizontal_flip            : ignored
 */
struct DistortionSpec
{
  DistortionKind kind      = DistortionKind::local_swap;
  double         intensity = 0.0;
  std::uint64_t  seed      = 0;
  bool           per_frame = false;  ///< gaussian_noise only
};

inline nlohmann::json to_json(DistortionSpec const &spec)
{
  return {{"kind", std::string(to_string(spec.kind))},
          {"intensity", spec.intensity},
          {"seed", spec.seed},
          {"per_frame", spec.per_frame},
          {"rng", Rng::kName}};
}

namespace detail {

inline std::size_t as_count(DistortionSpec const &spec)
{
  require(spec.intensity >= 0.0 && std::floor(spec.intensity) == spec.intensity, ErrorKind::invalid_argument,
          std::string(to_string(spec.kind)) + " needs a non-negative integer intensity");
  return static_cast<std::size_t>(spec.intensity);
}

}  // namespace detail

inline FeatureDataset apply(DistortionSpec const &spec, FeatureDataset const &ds)
{
  switch (spec.kind)
  {
  case DistortionKind::local_swap:
    return local_swap(ds, detail::as_count(spec), spec.seed);
  case DistortionKind::global_swap:
    return global_swap(ds, detail::as_count(spec), spec.seed);
  case DistortionKind::stop_scene:
    return stop_scene(ds, spec.intensity, spec.seed);
  case DistortionKind::partial_reverse:
    return partial_reverse(ds, detail::as_count(spec), spec.seed);
  case DistortionKind::full_reverse:
    return full_reverse(ds);
  case DistortionKind::fps_resample:
    return fps_resample(ds, spec.intensity);
  case DistortionKind::gaussian_noise:
    return feature_noise(ds, spec.intensity, spec.seed, spec.per_frame);
  case DistortionKind::constant_offset:
    return constant_offset(ds, random_offset(ds.dims(), spec.intensity, spec.seed));
  default:
    break;
  }
  throw Error(ErrorKind::invalid_argument,
              std::string(to_string(spec.kind)) + " is a pixel-space distortion and needs a raw video file");
}

inline RawVideoDataset apply(DistortionSpec const &spec, RawVideoDataset const &ds)
{
  switch (spec.kind)
  {
  case DistortionKind::local_swap:
    return pixel::local_swap(ds, detail::as_count(spec), spec.seed);
  case DistortionKind::global_swap:
    return pixel::global_swap(ds, detail::as_count(spec), spec.seed);
  case DistortionKind::stop_scene:
    return pixel::stop_scene(ds, spec.intensity, spec.seed);
  case DistortionKind::partial_reverse:
    return pixel::partial_reverse(ds, detail::as_count(spec), spec.seed);
  case DistortionKind::full_reverse:
    return pixel::full_reverse(ds);
  case DistortionKind::fps_resample:
    return pixel::fps_resample(ds, spec.intensity);
  case DistortionKind::gaussian_noise:
    return pixel::gaussian_noise(ds, spec.intensity, spec.seed, spec.per_frame);
  case DistortionKind::salt_pepper:
    return pixel::salt_pepper(ds, spec.intensity, spec.seed);
  case DistortionKind::color_jitter:
    return pixel::color_jitter(ds, spec.intensity, spec.seed);
  case DistortionKind::luminance_shift:
    return pixel::luminance_shift(ds, spec.intensity);
  case DistortionKind::gaussian_blur:
    return pixel::gaussian_blur(ds, spec.intensity);
  case DistortionKind::random_translation:
    return pixel::random_translation(ds, detail::as_count(spec), spec.seed);
  case DistortionKind::horizontal_flip:
    return pixel::horizontal_flip(ds);
  case DistortionKind::constant_offset:
    break;
  }
  throw Error(ErrorKind::invalid_argument, "constant_offset applies to feature files only");
}

}  // namespace stream
