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
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "stream/error.hpp"
#include "stream/feature_io.hpp"
#include "stream/parallel.hpp"
#include "stream/tensor.hpp"

// Frechet distance between Gaussian fits of two feature clouds. This is the
// FVD formula applied to whatever features the engine is given (by default
// per-video mean amplitudes of frame embeddings). It is a comparison baseline
// and its values are not comparable with FVD computed on I3D logits.

namespace stream {

struct GaussianFit
{
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
};

/// Sample mean and unbiased (N-1) covariance.
inline GaussianFit fit_gaussian(PointSet const &points)
{
  require(points.count >= 2, ErrorKind::insufficient_points, "a Gaussian fit needs at least 2 points");
  for (double v : points.values)
  {
    require(std::isfinite(v), ErrorKind::numeric, "point set contains a non-finite value");
  }
  auto const n = static_cast<Eigen::Index>(points.count);
  auto const d = static_cast<Eigen::Index>(points.dims);
  Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> const> x(points.values.data(), n,
                                                                                              d);
  GaussianFit fit;
  fit.mean                    = x.colwise().mean().transpose();
  Eigen::MatrixXd const centered = x.rowwise() - fit.mean.transpose();
  fit.covariance = (centered.transpose() * centered) / static_cast<double>(n - 1);
  fit.covariance = 0.5 * (fit.covariance + fit.covariance.transpose());
  return fit;
}

namespace detail {

inline constexpr double kEigenFloor    = -1e-8;
inline constexpr double kDistanceFloor = -1e-6;

/// Symmetric PSD square root; eigenvalues in (kEigenFloor, 0) are treated as 0.
inline Eigen::MatrixXd psd_sqrt(Eigen::MatrixXd const &m)
{
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  require(solver.info() == Eigen::Success, ErrorKind::numeric, "eigendecomposition failed");
  Eigen::VectorXd values = solver.eigenvalues();
  double const    scale  = std::max(1.0, values.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < values.size(); ++i)
  {
    require(values[i] >= kEigenFloor * scale, ErrorKind::numeric, "covariance is not positive semidefinite");
    values[i] = std::sqrt(std::max(values[i], 0.0));
  }
  return solver.eigenvectors() * values.asDiagonal() * solver.eigenvectors().transpose();
}

}  // namespace detail

/**
 * |mu_a - mu_b|^2 + Tr(S_a + S_b - 2 (S_a S_b)^{1/2}). The trace of the
 * square root is taken from the spectrum of S_a^{1/2} S_b S_a^{1/2}, which is
 * symmetric and shares its eigenvalues with S_a S_b.
 */
inline double frechet_distance(GaussianFit const &a, GaussianFit const &b)
{
  require(a.mean.size() == b.mean.size() && a.covariance.rows() == b.covariance.rows(),
          ErrorKind::dimension_mismatch, "Gaussian fits differ in dimension");
  require(a.mean.allFinite() && b.mean.allFinite() && a.covariance.allFinite() && b.covariance.allFinite(),
          ErrorKind::numeric, "Gaussian fit holds non-finite values");

  Eigen::MatrixXd const root_a = detail::psd_sqrt(a.covariance);
  Eigen::MatrixXd       inner  = root_a * b.covariance * root_a;
  inner                        = 0.5 * (inner + inner.transpose());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(inner, Eigen::EigenvaluesOnly);
  require(solver.info() == Eigen::Success, ErrorKind::numeric, "eigendecomposition failed");
  double trace_root = 0.0;
  for (double v : solver.eigenvalues())
  {
    trace_root += std::sqrt(std::max(v, 0.0));
  }

  double const mean_term = (a.mean - b.mean).squaredNorm();
  double const distance  = mean_term + a.covariance.trace() + b.covariance.trace() - 2.0 * trace_root;
  require(std::isfinite(distance), ErrorKind::numeric, "Frechet distance is not finite");
  double const scale = std::max(1.0, a.covariance.trace() + b.covariance.trace());
  require(distance >= detail::kDistanceFloor * scale, ErrorKind::numeric,
          "Frechet distance is negative beyond rounding: " + std::to_string(distance));
  return std::max(distance, 0.0);
}

inline double frechet_distance(PointSet const &real, PointSet const &fake)
{
  return frechet_distance(fit_gaussian(real), fit_gaussian(fake));
}

struct SlidingWindow
{
  std::size_t window = 16;
  std::size_t stride = 16;
};

/// |mean over frames [begin, begin+length)| per video, (N x d).
inline PointSet window_mean_amplitude(FeatureDataset const &ds, std::size_t begin, std::size_t length)
{
  PointSet out(ds.videos(), ds.dims());
  for (std::size_t n = 0; n < ds.videos(); ++n)
  {
    auto row = out.row(n);
    for (std::size_t t = begin; t < begin + length; ++t)
    {
      for (std::size_t k = 0; k < ds.dims(); ++k)
      {
        row[k] += static_cast<double>(ds.at(n, t, k));
      }
    }
    for (auto &v : row)
    {
      v = std::abs(v / static_cast<double>(length));
    }
  }
  return out;
}

struct SlidingFrechet
{
  double              mean = 0.0;  ///< averaged over window positions
  std::vector<double> per_window;
};

/// Frechet distance per window of frames, averaged over window positions.
inline SlidingFrechet sliding_frechet(FeatureDataset const &real, FeatureDataset const &fake,
                                      SlidingWindow const &sw = {})
{
  validate_pair(real, fake);
  require(sw.window >= 1 && sw.stride >= 1, ErrorKind::invalid_argument, "window and stride must be positive");
  require(real.frames() >= sw.window, ErrorKind::too_short,
          "video has " + std::to_string(real.frames()) + " frames, window needs " + std::to_string(sw.window));

  std::size_t const positions = (real.frames() - sw.window) / sw.stride + 1;
  SlidingFrechet    result{0.0, std::vector<double>(positions)};
  parallel_for(positions, [&](std::size_t p) {
    std::size_t const begin = p * sw.stride;
    result.per_window[p] =
        frechet_distance(window_mean_amplitude(real, begin, sw.window), window_mean_amplitude(fake, begin, sw.window));
  });
  for (double v : result.per_window)
  {
    result.mean += v;
  }
  result.mean /= static_cast<double>(positions);
  return result;
}

}  // namespace stream
