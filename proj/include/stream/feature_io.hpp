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

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "stream/error.hpp"
#include "stream/npy.hpp"
#include "stream/tensor.hpp"

namespace stream {

/// Below this many videos per set the metrics become noticeably unstable.
inline constexpr std::size_t kStableSampleSize = 2000;

struct ValidatedPair
{
  FeatureDataset const    *real = nullptr;
  FeatureDataset const    *fake = nullptr;
  std::vector<std::string> warnings;
};

/// Real and fake sets may differ in N but must agree on T and d.
inline ValidatedPair validate_pair(FeatureDataset const &real, FeatureDataset const &fake)
{
  require(real.frames() == fake.frames() && real.dims() == fake.dims(), ErrorKind::shape_mismatch,
          "real " + shape_string(real.tensor().shape()) + " and fake " + shape_string(fake.tensor().shape()) +
              " disagree on (T, d)");

  ValidatedPair pair{&real, &fake, {}};
  auto const    smallest = std::min(real.videos(), fake.videos());
  if (smallest < kStableSampleSize)
  {
    pair.warnings.push_back("small sample: min(N_real, N_fake) = " + std::to_string(smallest) +
                            " is below the stability threshold of " + std::to_string(kStableSampleSize) +
                            " videos per set");
  }
  return pair;
}

struct DatasetManifest
{
  std::filesystem::path                               real_path;
  std::filesystem::path                               fake_path;
  std::string                                         label;
  std::optional<std::pair<std::size_t, std::size_t>> expected_shape;  // (T, d)
};

/**
 * Reads a JSON manifest of the form
 *   {"real": "...", "fake": "...", "label": "...", "expected_shape": [T, d]}
 * Relative paths resolve against the manifest's directory. Both files must
 * exist and carry a parseable .npy header.
 */
inline DatasetManifest load_manifest(std::filesystem::path const &path)
{
  std::ifstream in(path);
  require(in.good(), ErrorKind::io, "cannot open manifest '" + path.string() + "'");

  nlohmann::json doc;
  try
  {
    in >> doc;
  }
  catch (nlohmann::json::exception const &e)
  {
    throw Error(ErrorKind::format, "manifest '" + path.string() + "': " + e.what());
  }
  require(doc.is_object() && doc.contains("real") && doc.contains("fake"), ErrorKind::format,
          "manifest needs 'real' and 'fake' entries");

  auto const      base = path.parent_path();
  DatasetManifest manifest;
  auto const      resolve = [&](std::string const &p) {
    std::filesystem::path fp(p);
    return fp.is_absolute() ? fp : base / fp;
  };
  manifest.real_path = resolve(doc.at("real").get<std::string>());
  manifest.fake_path = resolve(doc.at("fake").get<std::string>());
  manifest.label     = doc.value("label", std::string{});
  if (doc.contains("expected_shape"))
  {
    auto const &s = doc.at("expected_shape");
    require(s.is_array() && s.size() == 2, ErrorKind::format, "'expected_shape' must be [T, d]");
    manifest.expected_shape = std::make_pair(s[0].get<std::size_t>(), s[1].get<std::size_t>());
  }

  for (auto const &p : {manifest.real_path, manifest.fake_path})
  {
    require(std::filesystem::exists(p), ErrorKind::io, "manifest entry '" + p.string() + "' does not exist");
    npy::read_array(p);
  }
  return manifest;
}

/// Loads both sides of a manifest and checks them against `expected_shape`.
inline std::pair<FeatureDataset, FeatureDataset> load_pair(DatasetManifest const &manifest)
{
  auto real = npy::load_features(manifest.real_path);
  auto fake = npy::load_features(manifest.fake_path);
  if (manifest.expected_shape)
  {
    auto const [t, d] = *manifest.expected_shape;
    for (auto const *ds : {&real, &fake})
    {
      require(ds->frames() == t && ds->dims() == d, ErrorKind::shape_mismatch,
              ds->source_id() + " does not match the manifest's expected (T, d)");
    }
  }
  return {std::move(real), std::move(fake)};
}

}  // namespace stream
