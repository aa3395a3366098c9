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
#include <vector>

#include "stream/error.hpp"
#include "stream/feature_io.hpp"
#include "stream/parallel.hpp"
#include "stream/powerlaw.hpp"

namespace stream {

inline constexpr std::size_t kDefaultBins = 50;

/// Real and fake counts over one shared set of equal-width bins.
struct HistogramPair
{
  std::vector<double>      edges;
  std::vector<std::size_t> real_counts;
  std::vector<std::size_t> fake_counts;

  bool degenerate() const
  {
    return edges.front() == edges.back();
  }
};

/**
 * Bins both columns over [min, max] of their union. Bins are closed on the
 * right, (e_i, e_i+1], and the first bin also holds the minimum. A zero-width
 * range puts every value in bin 0.
 */
inline HistogramPair build_histograms(std::span<double const> real, std::span<double const> fake, std::size_t bins)
{
  require(bins >= 2, ErrorKind::invalid_argument, "histograms need at least 2 bins");
  require(!real.empty() && !fake.empty(), ErrorKind::insufficient_points, "cannot histogram an empty column");

  double lo = real[0];
  double hi = real[0];
  for (auto col : {real, fake})
  {
    for (double v : col)
    {
      require(std::isfinite(v), ErrorKind::numeric, "histogram input is not finite");
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }

  HistogramPair pair;
  pair.edges.resize(bins + 1);
  double const width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t i = 0; i <= bins; ++i)
  {
    pair.edges[i] = lo + width * static_cast<double>(i);
  }
  pair.edges.back() = hi;

  auto const index = [&](double v) -> std::size_t {
    if (hi == lo)
    {
      return 0;
    }
    double const pos = std::ceil((v - lo) / (hi - lo) * static_cast<double>(bins));
    if (pos <= 1.0)
    {
      return 0;
    }
    return std::min(static_cast<std::size_t>(pos) - 1, bins - 1);
  };

  pair.real_counts.assign(bins, 0);
  pair.fake_counts.assign(bins, 0);
  for (double v : real)
  {
    ++pair.real_counts[index(v)];
  }
  for (double v : fake)
  {
    ++pair.fake_counts[index(v)];
  }
  return pair;
}

/**
 * Pearson correlation of the two count vectors. When either side has zero
 * variance the answer is 1 for equal vectors and 0 otherwise. Equal vectors
 * always give exactly 1.
 */
inline double histogram_correlation(std::span<std::size_t const> a, std::span<std::size_t const> b)
{
  require(a.size() == b.size() && !a.empty(), ErrorKind::shape_mismatch, "histograms differ in bin count");
  bool const equal = std::equal(a.begin(), a.end(), b.begin());
  if (equal)
  {
    return 1.0;
  }

  auto const n      = static_cast<double>(a.size());
  double     mean_a = 0.0;
  double     mean_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    mean_a += static_cast<double>(a[i]);
    mean_b += static_cast<double>(b[i]);
  }
  mean_a /= n;
  mean_b /= n;

  double saa = 0.0;
  double sbb = 0.0;
  double sab = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    double const da = static_cast<double>(a[i]) - mean_a;
    double const db = static_cast<double>(b[i]) - mean_b;
    saa += da * da;
    sbb += db * db;
    sab += da * db;
  }
  if (saa == 0.0 || sbb == 0.0)
  {
    return 0.0;
  }
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

inline double histogram_correlation(HistogramPair const &pair)
{
  return histogram_correlation(pair.real_counts, pair.fake_counts);
}

struct StreamTConfig
{
  std::size_t  bins                   = kDefaultBins;
  SkewnessMode mode                   = SkewnessMode::paper;
  bool         include_zero_frequency = false;
};

struct StreamTScore
{
  double              score = 0.0;
  std::vector<double> per_dimension_rho;
  StreamTConfig       config;
};

/// Per-dimension histogram correlation of two precomputed skewness tables.
inline StreamTScore stream_t(SkewnessTable const &real, SkewnessTable const &fake, StreamTConfig const &config = {})
{
  require(real.dims == fake.dims, ErrorKind::shape_mismatch, "skewness tables differ in dimension");
  require(real.videos >= 2 && fake.videos >= 2, ErrorKind::insufficient_points,
          "STREAM-T needs at least 2 videos per set");

  StreamTScore result{0.0, std::vector<double>(real.dims), config};
  parallel_for(real.dims, [&](std::size_t k) {
    auto const r              = real.column(k);
    auto const f              = fake.column(k);
    result.per_dimension_rho[k] = histogram_correlation(build_histograms(r, f, config.bins));
  });
  double sum = 0.0;
  for (double rho : result.per_dimension_rho)
  {
    sum += rho;
  }
  result.score = sum / static_cast<double>(real.dims);
  return result;
}

inline StreamTScore stream_t(FeatureDataset const &real, FeatureDataset const &fake, StreamTConfig const &config = {})
{
  validate_pair(real, fake);
  SkewnessOptions const options{config.mode, config.include_zero_frequency};
  return stream_t(skewness_table(real, options), skewness_table(fake, options), config);
}

}  // namespace stream
