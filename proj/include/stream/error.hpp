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

#include <stdexcept>
#include <string>

namespace stream {

enum class ErrorKind
{
  invalid_argument,
  io,
  format,
  unsupported_dtype,
  corruption,
  validation,
  shape_mismatch,
  too_short,
  insufficient_frequencies,
  insufficient_points,
  dimension_mismatch,
  numeric,
};

inline char const *to_string(ErrorKind kind)
{
  switch (kind)
  {
  case ErrorKind::invalid_argument:
    return "invalid-argument";
  case ErrorKind::io:
    return "io";
  case ErrorKind::format:
    return "format";
  case ErrorKind::unsupported_dtype:
    return "unsupported-dtype";
  case ErrorKind::corruption:
    return "corruption";
  case ErrorKind::validation:
    return "validation";
  case ErrorKind::shape_mismatch:
    return "shape-mismatch";
  case ErrorKind::too_short:
    return "too-short";
  case ErrorKind::insufficient_frequencies:
    return "insufficient-frequencies";
  case ErrorKind::insufficient_points:
    return "insufficient-points";
  case ErrorKind::dimension_mismatch:
    return "dimension-mismatch";
  case ErrorKind::numeric:
    return "numeric";
  }
  return "unknown";
}

/// Every failure raised by the engine carries a kind so callers (the CLI in
/// particular) can map it onto a stable exit code.
class Error : public std::runtime_error
{
public:
  Error(ErrorKind kind, std::string const &message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message)
    , kind_(kind)
  {}

  ErrorKind kind() const noexcept
  {
    return kind_;
  }

private:
  ErrorKind kind_;
};

inline void require(bool condition, ErrorKind kind, std::string const &message)
{
  if (!condition)
  {
    throw Error(kind, message);
  }
}

}  // namespace stream
