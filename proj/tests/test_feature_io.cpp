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
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "stream/feature_io.hpp"
#include "stream/npy.hpp"

namespace fs = std::filesystem;

namespace stream::tests {

namespace {

fs::path data_dir()
{
  return fs::path(STREAM_TEST_DATA_DIR);
}

fs::path temp_path(std::string const &name)
{
  auto dir = fs::temp_directory_path() / "stream_feature_io";
  fs::create_directories(dir);
  return dir / name;
}

std::vector<char> slurp(fs::path const &p)
{
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void spit(fs::path const &p, std::vector<char> const &bytes)
{
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

FeatureDataset make_features(std::size_t n, std::size_t t, std::size_t d, float fill = 0.0f)
{
  return FeatureDataset(n, t, d, std::vector<float>(n * t * d, fill));
}

}  // namespace

TEST(NpyTest, ZeroTensorRoundTrip)
{
  auto const path = temp_path("zeros.npy");
  npy::write_array(Tensor<float>({2, 4, 3}, 0.0f), path);
  auto const array = npy::read_array(path);
  EXPECT_EQ(array.dtype, npy::Dtype::float32);
  EXPECT_EQ(array.shape(), (Shape{2, 4, 3}));
  auto const &t = std::get<Tensor<float>>(array.tensor);
  ASSERT_EQ(t.size(), 24u);
  for (float v : t.data())
  {
    EXPECT_EQ(v, 0.0f);
  }
}

TEST(NpyTest, NumpyFilesRoundTripByteIdentically)
{
  for (auto const *name : {"features_f4.npy", "features_f8.npy", "raw_u1.npy"})
  {
    auto const src = data_dir() / name;
    auto const dst = temp_path(std::string("copy_") + name);
    npy::write_array(npy::read_array(src), dst);
    EXPECT_EQ(slurp(src), slurp(dst)) << name;
  }
}

TEST(NpyTest, PayloadSizing)
{
  auto const path = temp_path("one.npy");
  npy::write_array(Tensor<float>({1, 4, 1}, std::vector<float>{0, 1, 0, 1}), path);
  auto const bytes = slurp(path);
  ASSERT_GE(bytes.size(), 10u);
  std::size_t const header_len = static_cast<unsigned char>(bytes[8]) | (static_cast<unsigned char>(bytes[9]) << 8);
  EXPECT_EQ((10 + header_len) % 64, 0u);
  EXPECT_EQ(bytes.size() - 10 - header_len, 16u);
  EXPECT_EQ(static_cast<unsigned char>(bytes.back()), 0x3f);  // high byte of 1.0f
}

TEST(NpyTest, BigEndianIsNormalized)
{
  auto const  array = npy::read_array(data_dir() / "features_be_f4.npy");
  auto const &t     = std::get<Tensor<float>>(array.tensor);
  for (std::size_t i = 0; i < t.size(); ++i)
  {
    EXPECT_EQ(t.data()[i], static_cast<float>(i));
  }
}

TEST(NpyTest, TruncatedPayloadIsCorruption)
{
  auto const path = temp_path("short.npy");
  npy::write_array(Tensor<float>({2, 4, 3}, 1.0f), path);
  auto bytes = slurp(path);
  bytes.resize(bytes.size() - 4);  // 23 floats
  spit(path, bytes);
  try
  {
    npy::read_array(path);
    FAIL() << "expected corruption error";
  }
  catch (Error const &e)
  {
    EXPECT_EQ(e.kind(), ErrorKind::corruption);
  }
}

TEST(NpyTest, MalformedHeaderIsFormatError)
{
  auto const path = temp_path("garbage.npy");
  spit(path, {'n', 'o', 't', ' ', 'n', 'p', 'y', '!', 0, 0});
  try
  {
    npy::read_array(path);
    FAIL() << "expected format error";
  }
  catch (Error const &e)
  {
    EXPECT_EQ(e.kind(), ErrorKind::format);
  }
}

TEST(NpyTest, UnsupportedDtype)
{
  auto const path  = temp_path("int.npy");
  auto       bytes = slurp(data_dir() / "features_f4.npy");
  std::string text(bytes.begin(), bytes.end());
  auto const  pos = text.find("<f4");
  ASSERT_NE(pos, std::string::npos);
  bytes[pos + 1] = 'i';  // "<i4"
  spit(path, bytes);
  try
  {
    npy::read_array(path);
    FAIL() << "expected unsupported-dtype error";
  }
  catch (Error const &e)
  {
    EXPECT_EQ(e.kind(), ErrorKind::unsupported_dtype);
  }
}

TEST(NpyTest, MissingFileIsIoError)
{
  try
  {
    npy::read_array(temp_path("does_not_exist.npy"));
    FAIL();
  }
  catch (Error const &e)
  {
    EXPECT_EQ(e.kind(), ErrorKind::io);
  }
}

TEST(NpyTest, WriteRejectsNonFiniteAndEmpty)
{
  Tensor<float> bad({1, 4, 1}, std::vector<float>{0.0f, std::numeric_limits<float>::quiet_NaN(), 0.0f, 0.0f});
  EXPECT_THROW(npy::write_array(bad, temp_path("nan.npy")), Error);
  EXPECT_THROW(npy::write_array(Tensor<float>({0, 4, 3}), temp_path("empty.npy")), Error);
}

TEST(NpyTest, UnwritablePathIsIoError)
{
  try
  {
    npy::write_array(Tensor<float>({1, 4, 1}, 0.0f), "/nonexistent-dir/x.npy");
    FAIL();
  }
  catch (Error const &e)
  {
    EXPECT_EQ(e.kind(), ErrorKind::io);
  }
}

TEST(NpyTest, RoundTripPropertyOnRandomShapes)
{
  std::mt19937                          gen(42);
  std::uniform_int_distribution<int>    dim(1, 7);
  std::normal_distribution<double>      value(0.0, 100.0);
  for (int trial = 0; trial < 20; ++trial)
  {
    Shape shape{static_cast<std::size_t>(dim(gen)), static_cast<std::size_t>(dim(gen) + 3),
                static_cast<std::size_t>(dim(gen))};
    std::vector<double> values(element_count(shape));
    for (auto &v : values)
    {
      v = value(gen);
    }
    Tensor<double> const original(shape, values);
    auto const           path = temp_path("prop.npy");
    npy::write_array(original, path);
    EXPECT_EQ(std::get<Tensor<double>>(npy::read_array(path).tensor), original);
  }
}

TEST(FeatureDatasetTest, InvariantsEnforced)
{
  EXPECT_THROW(make_features(0, 4, 1), Error);
  EXPECT_THROW(make_features(1, 3, 1), Error);
  EXPECT_THROW(make_features(1, 4, 0), Error);
  EXPECT_THROW(FeatureDataset(1, 4, 1, {0, std::numeric_limits<float>::infinity(), 0, 0}), Error);
  EXPECT_NO_THROW(make_features(1, 4, 1));
}

TEST(FeatureDatasetTest, LoadNarrowsDoubles)
{
  auto const ds = npy::load_features(data_dir() / "features_f8.npy");
  EXPECT_EQ(ds.videos(), 2u);
  EXPECT_EQ(ds.frames(), 4u);
  EXPECT_EQ(ds.dims(), 3u);
  EXPECT_THROW(npy::load_features(data_dir() / "raw_u1.npy"), Error);
  auto const raw = npy::load_raw(data_dir() / "raw_u1.npy");
  EXPECT_EQ(raw.tensor().shape(), (Shape{2, 3, 8, 8, 1}));
}

TEST(ValidatePairTest, MatchingShapesNoWarning)
{
  auto const real = make_features(2048, 16, 128);
  auto const fake = make_features(2048, 16, 128);
  auto const pair = validate_pair(real, fake);
  EXPECT_TRUE(pair.warnings.empty());
}

TEST(ValidatePairTest, DimensionMismatch)
{
  auto const real = make_features(2048, 16, 128);
  auto const fake = make_features(2048, 16, 64);
  try
  {
    validate_pair(real, fake);
    FAIL();
  }
  catch (Error const &e)
  {
    EXPECT_EQ(e.kind(), ErrorKind::shape_mismatch);
  }
}

TEST(ValidatePairTest, SmallSampleWarns)
{
  auto const real = make_features(512, 16, 128);
  auto const fake = make_features(512, 16, 128);
  auto const pair = validate_pair(real, fake);
  ASSERT_EQ(pair.warnings.size(), 1u);
  EXPECT_NE(pair.warnings[0].find("2000"), std::string::npos);
}

TEST(ValidatePairTest, UnequalCountsAllowed)
{
  EXPECT_NO_THROW(validate_pair(make_features(10, 8, 4), make_features(30, 8, 4)));
}

TEST(ManifestTest, ResolvesRelativePaths)
{
  auto const dir = fs::temp_directory_path() / "stream_manifest";
  fs::create_directories(dir);
  npy::save(make_features(3, 8, 2, 1.0f), dir / "real.npy");
  npy::save(make_features(4, 8, 2, 2.0f), dir / "fake.npy");
  {
    std::ofstream out(dir / "pair.json");
    out << R"({"real": "real.npy", "fake": "fake.npy", "label": "toy", "expected_shape": [8, 2]})";
  }
  auto const manifest = load_manifest(dir / "pair.json");
  EXPECT_EQ(manifest.label, "toy");
  auto const [real, fake] = load_pair(manifest);
  EXPECT_EQ(real.videos(), 3u);
  EXPECT_EQ(fake.videos(), 4u);

  {
    std::ofstream out(dir / "bad_shape.json");
    out << R"({"real": "real.npy", "fake": "fake.npy", "expected_shape": [16, 2]})";
  }
  EXPECT_THROW(load_pair(load_manifest(dir / "bad_shape.json")), Error);

  {
    std::ofstream out(dir / "missing.json");
    out << R"({"real": "nope.npy", "fake": "fake.npy"})";
  }
  EXPECT_THROW(load_manifest(dir / "missing.json"), Error);
}

}  // namespace stream::tests
