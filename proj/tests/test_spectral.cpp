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

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "stream/spectral.hpp"

namespace stream::tests {

namespace {

std::vector<float> random_values(std::size_t count, std::uint32_t seed, double scale = 1.0)
{
  std::mt19937                     gen(seed);
  std::normal_distribution<double> dist(0.0, scale);
  std::vector<float>               out(count);
  for (auto &v : out)
  {
    v = static_cast<float>(dist(gen));
  }
  return out;
}

}  // namespace

TEST(SpectralTest, ConstantSignalHasOnlyDc)
{
  std::vector<float> const seq(4, 3.0f);
  auto const               s = amplitude_spectrum(std::span<float const>(seq), 4, 1);
  ASSERT_EQ(s.bins, 3u);
  EXPECT_NEAR(s.at(0, 0), 3.0, 1e-15);
  EXPECT_NEAR(s.at(0, 1), 0.0, 1e-15);
  EXPECT_NEAR(s.at(0, 2), 0.0, 1e-15);
}

TEST(SpectralTest, AlternatingSignalHitsNyquist)
{
  std::vector<float> const seq{0, 1, 0, 1};
  auto const               s = amplitude_spectrum(std::span<float const>(seq), 4, 1);
  EXPECT_NEAR(s.at(0, 0), 0.5, 1e-15);
  EXPECT_NEAR(s.at(0, 1), 0.0, 1e-15);
  EXPECT_NEAR(s.at(0, 2), 0.5, 1e-15);
}

TEST(SpectralTest, MatchesDirectDft)
{
  for (std::size_t frames : {4u, 5u, 16u, 17u, 33u, 128u})
  {
    std::size_t const dims = 3;
    auto const        seq  = random_values(frames * dims, static_cast<std::uint32_t>(frames));
    auto const        s    = amplitude_spectrum(std::span<float const>(seq), frames, dims);
    ASSERT_EQ(s.bins, frames / 2 + 1);
    for (std::size_t k = 0; k < dims; ++k)
    {
      std::vector<double> x(frames);
      for (std::size_t t = 0; t < frames; ++t)
      {
        x[t] = seq[t * dims + k];
      }
      auto const expected = oracle::direct_dft_amplitudes(x);
      for (std::size_t i = 0; i < s.bins; ++i)
      {
        EXPECT_NEAR(s.at(k, i), expected[i], 1e-9) << "T=" << frames << " k=" << k << " bin=" << i;
      }
    }
  }
}

TEST(SpectralTest, TooShort)
{
  std::vector<float> const seq(3, 1.0f);
  try
  {
    amplitude_spectrum(std::span<float const>(seq), 3, 1);
    FAIL();
  }
  catch (Error const &e)
  {
    EXPECT_EQ(e.kind(), ErrorKind::too_short);
  }
}

TEST(SpectralTest, TimeReversalInvariance)
{
  std::size_t const frames = 16, dims = 8;
  auto const        seq    = random_values(frames * dims, 7);
  std::vector<float> rev(seq.size());
  for (std::size_t t = 0; t < frames; ++t)
  {
    for (std::size_t k = 0; k < dims; ++k)
    {
      rev[t * dims + k] = seq[(frames - 1 - t) * dims + k];
    }
  }
  auto const a = amplitude_spectrum(std::span<float const>(seq), frames, dims);
  auto const b = amplitude_spectrum(std::span<float const>(rev), frames, dims);
  for (std::size_t i = 0; i < a.amplitudes.size(); ++i)
  {
    EXPECT_NEAR(a.amplitudes[i], b.amplitudes[i], 1e-9);
  }
}

TEST(SpectralTest, DcPowerBoundedByTotalPower)
{
  for (std::uint32_t seed = 0; seed < 20; ++seed)
  {
    std::size_t const frames = 5 + seed, dims = 4;
    auto const        seq    = random_values(frames * dims, seed, 3.0);
    auto const        s      = amplitude_spectrum(std::span<float const>(seq), frames, dims);
    EXPECT_EQ(s.bins, frames / 2 + 1);
    for (std::size_t k = 0; k < dims; ++k)
    {
      double power = 0.0;
      for (std::size_t t = 0; t < frames; ++t)
      {
        power += static_cast<double>(seq[t * dims + k]) * seq[t * dims + k];
      }
      EXPECT_GE(power / static_cast<double>(frames) + 1e-12, s.at(k, 0) * s.at(k, 0));
      for (double a : s.row(k))
      {
        EXPECT_GE(a, 0.0);
      }
    }
  }
}

TEST(MeanAmplitudeTest, ConstantFramesGiveTheVector)
{
  std::vector<float> values;
  for (int t = 0; t < 6; ++t)
  {
    values.insert(values.end(), {0.5f, 2.0f, 7.25f});
  }
  auto const set = mean_amplitude_set(FeatureDataset(1, 6, 3, values));
  EXPECT_DOUBLE_EQ(set.row(0)[0], 0.5);
  EXPECT_DOUBLE_EQ(set.row(0)[1], 2.0);
  EXPECT_DOUBLE_EQ(set.row(0)[2], 7.25);
}

TEST(MeanAmplitudeTest, CancellationUnderModulus)
{
  auto const set = mean_amplitude_set(FeatureDataset(1, 4, 2, {-1, -1, 1, 1, -1, -1, 1, 1}));
  EXPECT_EQ(set.row(0)[0], 0.0);
  EXPECT_EQ(set.row(0)[1], 0.0);
}

TEST(MeanAmplitudeTest, AgreesWithSpectrumColumnZero)
{
  std::size_t const n = 6, t = 13, d = 5;
  FeatureDataset    ds(n, t, d, random_values(n * t * d, 99, 2.0));
  auto const        set = mean_amplitude_set(ds);
  for (std::size_t v = 0; v < n; ++v)
  {
    auto const s = amplitude_spectrum(ds, v);
    for (std::size_t k = 0; k < d; ++k)
    {
      EXPECT_NEAR(set.row(v)[k], s.at(k, 0), 1e-12);
    }
  }
}

}  // namespace stream::tests
