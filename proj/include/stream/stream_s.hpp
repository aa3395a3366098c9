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
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "stream/error.hpp"
#include "stream/parallel.hpp"
#include "stream/spectral.hpp"
#include "stream/tensor.hpp"

namespace stream {

inline constexpr std::size_t kDefaultNeighbors = 5;

/// Union of spheres: center i covers everything within radii[i].
struct SupportEstimate
{
  PointSet            centers;
  std::vector<double> radii;
  std::size_t         k = kDefaultNeighbors;
};

struct StreamSScore
{
  double      fidelity  = 0.0;
  double      diversity = 0.0;
  std::size_t k         = kDefaultNeighbors;
};

inline double euclidean(std::span<double const> a, std::span<double const> b)
{
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    double const d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

/// Exact distance from each point to its k-th nearest other point.
inline SupportEstimate knn_radii(PointSet const &points, std::size_t k = kDefaultNeighbors)
{
  require(k >= 1, ErrorKind::invalid_argument, "k must be positive");
  require(points.count > k, ErrorKind::insufficient_points,
          "k-NN support needs more than k = " + std::to_string(k) + " points, got " + std::to_string(points.count));
  for (double v : points.values)
  {
    require(std::isfinite(v), ErrorKind::validation, "point set contains a non-finite value");
  }

  SupportEstimate support{points, std::vector<double>(points.count), k};
  parallel_for(points.count, [&](std::size_t i) {
    std::vector<double> dist;
    dist.reserve(points.count - 1);
    auto const query = points.row(i);
    for (std::size_t j = 0; j < points.count; ++j)
    {
      if (j != i)
      {
        dist.push_back(euclidean(query, points.row(j)));
      }
    }
    auto const kth = dist.begin() + static_cast<std::ptrdiff_t>(k - 1);
    std::nth_element(dist.begin(), kth, dist.end());
    support.radii[i] = *kth;
  });
  return support;
}

/// True iff some sphere contains the query, boundary included.
inline bool membership(std::span<double const> query, SupportEstimate const &support)
{
  require(query.size() == support.centers.dims, ErrorKind::dimension_mismatch,
          "query has " + std::to_string(query.size()) + " dims, support has " + std::to_string(support.centers.dims));
  for (std::size_t i = 0; i < support.centers.count; ++i)
  {
    if (euclidean(query, support.centers.row(i)) <= support.radii[i])
    {
      return true;
    }
  }
  return false;
}

/// Fraction of `queries` that fall inside `support`.
inline double coverage(PointSet const &queries, SupportEstimate const &support)
{
  require(queries.dims == support.centers.dims, ErrorKind::dimension_mismatch, "point sets differ in dimension");
  std::vector<unsigned char> inside(queries.count, 0);
  parallel_for(queries.count, [&](std::size_t q) { inside[q] = membership(queries.row(q), support) ? 1 : 0; });
  std::size_t hits = 0;
  for (auto v : inside)
  {
    hits += v;
  }
  return static_cast<double>(hits) / static_cast<double>(queries.count);
}

/**
 * Fidelity is the share of fake points inside the real support; diversity is
 * the share of real points inside the fake support.
 */
inline StreamSScore stream_s(MeanAmplitudeSet const &real, MeanAmplitudeSet const &fake,
                             std::size_t k = kDefaultNeighbors)
{
  require(real.dims == fake.dims, ErrorKind::shape_mismatch, "real and fake mean amplitudes differ in dimension");
  auto const real_support = knn_radii(real, k);
  auto const fake_support = knn_radii(fake, k);
  return {coverage(fake, real_support), coverage(real, fake_support), k};
}

inline StreamSScore stream_s(FeatureDataset const &real, FeatureDataset const &fake, std::size_t k = kDefaultNeighbors)
{
  return stream_s(mean_amplitude_set(real), mean_amplitude_set(fake), k);
}

}  // namespace stream
