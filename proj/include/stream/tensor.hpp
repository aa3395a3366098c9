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
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stream/error.hpp"

namespace stream {

using Shape = std::vector<std::size_t>;

inline std::size_t element_count(Shape const &shape)
{
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>{});
}

inline std::string shape_string(Shape const &shape)
{
  std::string out = "(";
  for (std::size_t i = 0; i < shape.size(); ++i)
  {
    if (i > 0)
    {
      out += ",";
    }
    out += std::to_string(shape[i]);
  }
  return out + ")";
}

/**
 * Dense row-major tensor. The leading two axes are always (video, frame) for
 * the datasets handled here; everything after them is one "frame" worth of
 * contiguous values.
 */
template <typename T>
class Tensor
{
public:
  using value_type = T;

  Tensor() = default;

  explicit Tensor(Shape shape, T fill = T{})
    : shape_(std::move(shape))
    , data_(element_count(shape_), fill)
  {}

  Tensor(Shape shape, std::vector<T> data)
    : shape_(std::move(shape))
    , data_(std::move(data))
  {
    require(data_.size() == element_count(shape_), ErrorKind::shape_mismatch,
            "payload size does not match shape " + shape_string(shape_));
  }

  Shape const &shape() const noexcept
  {
    return shape_;
  }
  std::size_t rank() const noexcept
  {
    return shape_.size();
  }
  std::size_t size() const noexcept
  {
    return data_.size();
  }

  std::vector<T> const &data() const noexcept
  {
    return data_;
  }
  std::vector<T> &data() noexcept
  {
    return data_;
  }

  /// Number of scalars in one (video, frame) slice.
  std::size_t frame_size() const noexcept
  {
    std::size_t s = 1;
    for (std::size_t i = 2; i < shape_.size(); ++i)
    {
      s *= shape_[i];
    }
    return s;
  }

  std::span<T const> frame(std::size_t video, std::size_t t) const
  {
    auto const fs = frame_size();
    return {data_.data() + (video * shape_[1] + t) * fs, fs};
  }
  std::span<T> frame(std::size_t video, std::size_t t)
  {
    auto const fs = frame_size();
    return {data_.data() + (video * shape_[1] + t) * fs, fs};
  }

  bool operator==(Tensor const &) const = default;

private:
  Shape          shape_;
  std::vector<T> data_;
};

/**
 * Per-frame feature sequences, shape (N videos, T frames, d dims), stored as
 * 32-bit floats.
 */
class FeatureDataset
{
public:
  static constexpr std::size_t kMinFrames = 4;

  FeatureDataset() = default;

  FeatureDataset(Tensor<float> features, std::string source_id = {})
    : features_(std::move(features))
    , source_id_(std::move(source_id))
  {
    validate();
  }

  FeatureDataset(std::size_t n, std::size_t t, std::size_t d, std::vector<float> values,
                 std::string source_id = {})
    : FeatureDataset(Tensor<float>({n, t, d}, std::move(values)), std::move(source_id))
  {}

  std::size_t videos() const noexcept
  {
    return features_.shape()[0];
  }
  std::size_t frames() const noexcept
  {
    return features_.shape()[1];
  }
  std::size_t dims() const noexcept
  {
    return features_.shape()[2];
  }

  float at(std::size_t n, std::size_t t, std::size_t k) const noexcept
  {
    return features_.data()[(n * frames() + t) * dims() + k];
  }

  Tensor<float> const &tensor() const noexcept
  {
    return features_;
  }
  std::string const &source_id() const noexcept
  {
    return source_id_;
  }
  void set_source_id(std::string id)
  {
    source_id_ = std::move(id);
  }

  /// Selects a subset of videos, in the given order.
  FeatureDataset select(std::span<std::size_t const> indices) const
  {
    std::vector<float> out;
    auto const         stride = frames() * dims();
    out.reserve(indices.size() * stride);
    for (auto idx : indices)
    {
      require(idx < videos(), ErrorKind::invalid_argument, "video index out of range");
      auto const begin = features_.data().begin() + static_cast<std::ptrdiff_t>(idx * stride);
      out.insert(out.end(), begin, begin + static_cast<std::ptrdiff_t>(stride));
    }
    return FeatureDataset(indices.size(), frames(), dims(), std::move(out), source_id_);
  }

  bool operator==(FeatureDataset const &other) const
  {
    return features_ == other.features_;
  }

private:
  void validate() const
  {
    auto const &shape = features_.shape();
    require(shape.size() == 3, ErrorKind::validation,
            "feature tensor must have 3 axes (N,T,d), got " + shape_string(shape));
    require(shape[0] >= 1, ErrorKind::validation, "feature dataset needs at least one video");
    require(shape[1] >= kMinFrames, ErrorKind::validation,
            "feature dataset needs at least 4 frames, got " + std::to_string(shape[1]));
    require(shape[2] >= 1, ErrorKind::validation, "feature dimension must be positive");
    for (float v : features_.data())
    {
      require(std::isfinite(v), ErrorKind::validation, "feature tensor contains a non-finite value");
    }
  }

  Tensor<float> features_;
  std::string   source_id_;
};

/// Raw frames, shape (N, T, H, W, C) with C in {1, 3}.
class RawVideoDataset
{
public:
  static constexpr std::size_t kMinSide = 8;

  RawVideoDataset() = default;

  explicit RawVideoDataset(Tensor<std::uint8_t> frames)
    : frames_(std::move(frames))
  {
    auto const &shape = frames_.shape();
    require(shape.size() == 5, ErrorKind::validation,
            "raw video tensor must have 5 axes (N,T,H,W,C), got " + shape_string(shape));
    require(shape[0] >= 1 && shape[1] >= 1, ErrorKind::validation, "raw video tensor is empty");
    require(shape[2] >= kMinSide && shape[3] >= kMinSide, ErrorKind::validation,
            "raw frames must be at least 8x8");
    require(shape[4] == 1 || shape[4] == 3, ErrorKind::validation, "color channels must be 1 or 3");
  }

  std::size_t videos() const noexcept
  {
    return frames_.shape()[0];
  }
  std::size_t frames() const noexcept
  {
    return frames_.shape()[1];
  }
  std::size_t height() const noexcept
  {
    return frames_.shape()[2];
  }
  std::size_t width() const noexcept
  {
    return frames_.shape()[3];
  }
  std::size_t channels() const noexcept
  {
    return frames_.shape()[4];
  }

  Tensor<std::uint8_t> const &tensor() const noexcept
  {
    return frames_;
  }

  bool operator==(RawVideoDataset const &) const = default;

private:
  Tensor<std::uint8_t> frames_;
};

/// Row-major set of points, one row of `dims` doubles per point.
struct PointSet
{
  std::size_t         count = 0;
  std::size_t         dims  = 0;
  std::vector<double> values;

  PointSet() = default;
  PointSet(std::size_t n, std::size_t d)
    : count(n)
    , dims(d)
    , values(n * d, 0.0)
  {}
  PointSet(std::size_t n, std::size_t d, std::vector<double> v)
    : count(n)
    , dims(d)
    , values(std::move(v))
  {
    require(values.size() == n * d, ErrorKind::shape_mismatch, "point payload does not match (n, d)");
  }

  std::span<double const> row(std::size_t i) const
  {
    return {values.data() + i * dims, dims};
  }
  std::span<double> row(std::size_t i)
  {
    return {values.data() + i * dims, dims};
  }
};

}  // namespace stream
