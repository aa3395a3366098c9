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
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <regex>
#include <string>
#include <variant>
#include <vector>

#include "stream/error.hpp"
#include "stream/tensor.hpp"

// Reader/writer for the NumPy .npy v1.0 layout: magic "\x93NUMPY", version
// bytes, little-endian uint16 header length, an ASCII dict header padded to a
// 64-byte boundary, then the C-order payload.

namespace stream::npy {

enum class Dtype
{
  float32,
  float64,
  uint8,
};

inline char const *descr(Dtype dtype)
{
  switch (dtype)
  {
  case Dtype::float32:
    return "<f4";
  case Dtype::float64:
    return "<f8";
  case Dtype::uint8:
    return "|u1";
  }
  return "";
}

inline std::size_t item_size(Dtype dtype)
{
  switch (dtype)
  {
  case Dtype::float32:
    return 4;
  case Dtype::float64:
    return 8;
  case Dtype::uint8:
    return 1;
  }
  return 0;
}

/// A loaded array of any supported dtype, payload in native byte order.
struct AnyArray
{
  Dtype dtype = Dtype::float32;
  std::variant<Tensor<float>, Tensor<double>, Tensor<std::uint8_t>> tensor;

  Shape const &shape() const
  {
    return std::visit([](auto const &t) -> Shape const & { return t.shape(); }, tensor);
  }
};

namespace detail {

inline constexpr char        kMagic[]     = "\x93NUMPY";
inline constexpr std::size_t kMagicLength = 6;
inline constexpr std::size_t kAlign       = 64;

struct Header
{
  Dtype dtype;
  bool  byte_swap = false;
  Shape shape;
};

inline Header parse_header(std::string const &dict)
{
  static std::regex const descr_re(R"('descr'\s*:\s*'([<>|=])([a-z])(\d+)')");
  static std::regex const order_re(R"('fortran_order'\s*:\s*(True|False))");
  static std::regex const shape_re(R"('shape'\s*:\s*\(([^)]*)\))");

  std::smatch m;
  require(std::regex_search(dict, m, descr_re), ErrorKind::format, "header lacks a 'descr' entry");
  char const        order = m[1].str()[0];
  std::string const kind  = m[2].str();
  std::string const size  = m[3].str();

  Header header;
  if (kind == "f" && size == "4")
  {
    header.dtype = Dtype::float32;
  }
  else if (kind == "f" && size == "8")
  {
    header.dtype = Dtype::float64;
  }
  else if (kind == "u" && size == "1")
  {
    header.dtype = Dtype::uint8;
  }
  else
  {
    throw Error(ErrorKind::unsupported_dtype, "dtype '" + m[0].str() + "' is not supported");
  }
  bool const little = std::endian::native == std::endian::little;
  header.byte_swap  = header.dtype != Dtype::uint8 && ((order == '>' && little) || (order == '<' && !little));

  require(std::regex_search(dict, m, order_re), ErrorKind::format, "header lacks 'fortran_order'");
  require(m[1].str() == "False", ErrorKind::format, "fortran-ordered arrays are not supported");

  require(std::regex_search(dict, m, shape_re), ErrorKind::format, "header lacks a 'shape' entry");
  std::string const dims = m[1].str();
  static std::regex const int_re(R"(\d+)");
  for (auto it = std::sregex_iterator(dims.begin(), dims.end(), int_re); it != std::sregex_iterator(); ++it)
  {
    header.shape.push_back(static_cast<std::size_t>(std::stoull(it->str())));
  }
  require(header.shape.size() == 3 || header.shape.size() == 5, ErrorKind::format,
          "only 3- or 5-axis arrays are supported, got " + shape_string(header.shape));
  return header;
}

inline std::string make_header(Dtype dtype, Shape const &shape)
{
  std::string dict = "{'descr': '";
  dict += descr(dtype);
  dict += "', 'fortran_order': False, 'shape': (";
  for (std::size_t i = 0; i < shape.size(); ++i)
  {
    dict += std::to_string(shape[i]);
    if (shape.size() == 1 || i + 1 < shape.size())
    {
      dict += ",";
    }
    if (i + 1 < shape.size())
    {
      dict += " ";
    }
  }
  dict += "), }";
  // Pad with spaces so magic + version + length + dict + '\n' is 64-aligned.
  std::size_t const unpadded = kMagicLength + 2 + 2 + dict.size() + 1;
  dict.append((kAlign - unpadded % kAlign) % kAlign, ' ');
  dict += '\n';
  return dict;
}

template <typename T>
Tensor<T> decode_payload(std::vector<char> const &bytes, Shape shape, bool byte_swap)
{
  std::vector<T> values(element_count(shape));
  std::memcpy(values.data(), bytes.data(), values.size() * sizeof(T));
  if (byte_swap)
  {
    for (auto &v : values)
    {
      auto raw = std::bit_cast<std::array<unsigned char, sizeof(T)>>(v);
      std::reverse(raw.begin(), raw.end());
      v = std::bit_cast<T>(raw);
    }
  }
  return Tensor<T>(std::move(shape), std::move(values));
}

template <typename T>
void check_writable(Tensor<T> const &tensor)
{
  auto const &shape = tensor.shape();
  require(!shape.empty(), ErrorKind::validation, "cannot write a scalar tensor");
  require(shape[0] >= 1 && element_count(shape) > 0, ErrorKind::validation, "cannot write an empty tensor");
  if constexpr (std::is_floating_point_v<T>)
  {
    for (T v : tensor.data())
    {
      require(std::isfinite(v), ErrorKind::validation, "tensor contains a non-finite value");
    }
  }
}

template <typename T>
constexpr Dtype dtype_of()
{
  if constexpr (std::is_same_v<T, float>)
  {
    return Dtype::float32;
  }
  else if constexpr (std::is_same_v<T, double>)
  {
    return Dtype::float64;
  }
  else
  {
    static_assert(std::is_same_v<T, std::uint8_t>, "unsupported element type");
    return Dtype::uint8;
  }
}

}  // namespace detail

inline AnyArray read_array(std::filesystem::path const &path)
{
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorKind::io, "cannot open '" + path.string() + "'");

  char magic[detail::kMagicLength];
  in.read(magic, detail::kMagicLength);
  require(in.gcount() == static_cast<std::streamsize>(detail::kMagicLength) &&
              std::memcmp(magic, detail::kMagic, detail::kMagicLength) == 0,
          ErrorKind::format, "'" + path.string() + "' is not an .npy file");

  unsigned char version[2];
  in.read(reinterpret_cast<char *>(version), 2);
  require(in.gcount() == 2, ErrorKind::format, "truncated .npy preamble");
  require(version[0] == 1 || version[0] == 2, ErrorKind::format,
          "unsupported .npy version " + std::to_string(version[0]));

  std::size_t header_len = 0;
  int const   len_bytes  = version[0] == 1 ? 2 : 4;
  unsigned char len_raw[4] = {};
  in.read(reinterpret_cast<char *>(len_raw), len_bytes);
  require(in.gcount() == len_bytes, ErrorKind::format, "truncated .npy preamble");
  for (int i = len_bytes - 1; i >= 0; --i)
  {
    header_len = (header_len << 8) | len_raw[i];
  }

  std::string dict(header_len, '\0');
  in.read(dict.data(), static_cast<std::streamsize>(header_len));
  require(in.gcount() == static_cast<std::streamsize>(header_len), ErrorKind::format, "truncated .npy header");

  auto header = detail::parse_header(dict);

  std::size_t const expected = element_count(header.shape) * item_size(header.dtype);
  std::vector<char> payload(std::istreambuf_iterator<char>(in), {});
  require(payload.size() >= expected, ErrorKind::corruption,
          "payload holds " + std::to_string(payload.size()) + " bytes, shape " + shape_string(header.shape) +
              " needs " + std::to_string(expected));
  require(payload.size() == expected, ErrorKind::corruption, "trailing bytes after .npy payload");

  AnyArray out;
  out.dtype = header.dtype;
  switch (header.dtype)
  {
  case Dtype::float32:
    out.tensor = detail::decode_payload<float>(payload, header.shape, header.byte_swap);
    break;
  case Dtype::float64:
    out.tensor = detail::decode_payload<double>(payload, header.shape, header.byte_swap);
    break;
  case Dtype::uint8:
    out.tensor = detail::decode_payload<std::uint8_t>(payload, header.shape, false);
    break;
  }
  return out;
}

template <typename T>
void write_array(Tensor<T> const &tensor, std::filesystem::path const &path)
{
  detail::check_writable(tensor);

  std::string const header = detail::make_header(detail::dtype_of<T>(), tensor.shape());
  std::ofstream     out(path, std::ios::binary | std::ios::trunc);
  require(out.good(), ErrorKind::io, "cannot open '" + path.string() + "' for writing");

  out.write(detail::kMagic, detail::kMagicLength);
  char const version[2] = {1, 0};
  out.write(version, 2);
  auto const len      = static_cast<std::uint16_t>(header.size());
  char const len_le[2] = {static_cast<char>(len & 0xff), static_cast<char>(len >> 8)};
  out.write(len_le, 2);
  out.write(header.data(), static_cast<std::streamsize>(header.size()));

  if constexpr (sizeof(T) > 1)
  {
    if constexpr (std::endian::native == std::endian::big)
    {
      for (T v : tensor.data())
      {
        auto raw = std::bit_cast<std::array<char, sizeof(T)>>(v);
        std::reverse(raw.begin(), raw.end());
        out.write(raw.data(), sizeof(T));
      }
      require(out.good(), ErrorKind::io, "write to '" + path.string() + "' failed");
      return;
    }
  }
  out.write(reinterpret_cast<char const *>(tensor.data().data()),
            static_cast<std::streamsize>(tensor.size() * sizeof(T)));
  require(out.good(), ErrorKind::io, "write to '" + path.string() + "' failed");
}

inline void write_array(AnyArray const &array, std::filesystem::path const &path)
{
  std::visit([&](auto const &t) { write_array(t, path); }, array.tensor);
}

/// Loads an (N,T,d) feature file; float64 payloads are narrowed to float32.
inline FeatureDataset load_features(std::filesystem::path const &path)
{
  auto array = read_array(path);
  require(array.shape().size() == 3, ErrorKind::format,
          "feature files must be (N,T,d), got " + shape_string(array.shape()));
  switch (array.dtype)
  {
  case Dtype::float32:
    return FeatureDataset(std::get<Tensor<float>>(std::move(array.tensor)), path.string());
  case Dtype::float64:
  {
    auto const        &src = std::get<Tensor<double>>(array.tensor);
    std::vector<float> narrowed(src.data().begin(), src.data().end());
    return FeatureDataset(Tensor<float>(src.shape(), std::move(narrowed)), path.string());
  }
  case Dtype::uint8:
    break;
  }
  throw Error(ErrorKind::unsupported_dtype, "feature files must hold float32 or float64 values");
}

inline RawVideoDataset load_raw(std::filesystem::path const &path)
{
  auto array = read_array(path);
  require(array.dtype == Dtype::uint8, ErrorKind::unsupported_dtype, "raw video files must hold uint8 values");
  return RawVideoDataset(std::get<Tensor<std::uint8_t>>(std::move(array.tensor)));
}

inline void save(FeatureDataset const &ds, std::filesystem::path const &path)
{
  write_array(ds.tensor(), path);
}

inline void save(RawVideoDataset const &ds, std::filesystem::path const &path)
{
  write_array(ds.tensor(), path);
}

}  // namespace stream::npy
