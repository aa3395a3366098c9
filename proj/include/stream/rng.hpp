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
#include <cstdint>
#include <numbers>
#include <random>

namespace stream {

/**
 * Seeded generator with distribution code written out here rather than taken
 * from <random>, whose distributions are implementation-defined. Same seed,
 * same stream on every platform.
 */
class Rng
{
public:
  static constexpr char const *kName = "mt19937_64";

  explicit Rng(std::uint64_t seed)
    : engine_(seed)
  {}

  std::uint64_t next()
  {
    return engine_();
  }

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform()
  {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi)
  {
    return lo + (hi - lo) * uniform();
  }

  /// Uniform integer in [0, bound), rejection-sampled to avoid modulo bias.
  std::uint64_t below(std::uint64_t bound)
  {
    std::uint64_t const limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t       x     = engine_();
    while (x >= limit)
    {
      x = engine_();
    }
    return x % bound;
  }

  /// Standard normal via Box-Muller; the second variate is cached.
  double normal()
  {
    if (has_spare_)
    {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0)
    {
      u1 = uniform();
    }
    double const u2 = uniform();
    double const r  = std::sqrt(-2.0 * std::log(u1));
    double const th = 2.0 * std::numbers::pi * u2;
    spare_          = r * std::sin(th);
    has_spare_      = true;
    return r * std::cos(th);
  }

private:
  std::mt19937_64 engine_;
  double          spare_     = 0.0;
  bool            has_spare_ = false;
};

/// splitmix64 finalizer.
inline std::uint64_t mix_seed(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/**
 * Sub-seed for per-video work so parallel and serial runs agree. The seed is
 * mixed before the XOR with the index; a bare `seed ^ video` would make video
 * 3 of seed 1 identical to video 0 of seed 2.
 */
inline std::uint64_t video_seed(std::uint64_t seed, std::size_t video)
{
  return mix_seed(seed) ^ static_cast<std::uint64_t>(video);
}

}  // namespace stream
