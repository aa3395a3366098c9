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
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "stream/distortion.hpp"
#include "stream/feature_io.hpp"
#include "stream/frechet.hpp"
#include "stream/rng.hpp"
#include "stream/stream_s.hpp"
#include "stream/stream_t.hpp"

namespace stream {

inline constexpr char const *kEngineVersion = "1.0.0";
inline constexpr int         kReportSchema  = 1;

struct EvalConfig
{
  StreamTConfig stream_t;
  std::size_t   k           = kDefaultNeighbors;
  std::size_t   repeats     = 5;
  std::size_t   sample_size = 2048;
  std::uint64_t seed        = 0;
  bool          frechet     = true;
  /// Frechet window/stride in frames; window 0 means the whole video.
  SlidingWindow frechet_window{0, 0};
};

struct RepeatStats
{
  std::vector<double> values;
  double              mean   = 0.0;
  double              stddev = 0.0;  ///< population standard deviation
};

inline RepeatStats summarize(std::vector<double> values)
{
  RepeatStats s;
  s.values = std::move(values);
  if (s.values.empty())
  {
    return s;
  }
  auto const n = static_cast<double>(s.values.size());
  s.mean       = std::accumulate(s.values.begin(), s.values.end(), 0.0) / n;
  if (s.values.size() > 1)
  {
    double ss = 0.0;
    for (double v : s.values)
    {
      ss += (v - s.mean) * (v - s.mean);
    }
    s.stddev = std::sqrt(ss / n);
  }
  return s;
}

struct MetricReport
{
  std::map<std::string, RepeatStats> metrics;  ///< stream_t, stream_f, stream_d, frechet
  EvalConfig                         config;
  Shape                              real_shape;
  Shape                              fake_shape;
  std::string                        real_source;
  std::string                        fake_source;
  std::vector<std::string>           warnings;
};

/**
 * Seeded subsample of min(N, size) video indices, in ascending order. When
 * N <= size every video is used.
 */
inline std::vector<std::size_t> subsample_indices(std::size_t videos, std::size_t size, std::uint64_t seed)
{
  std::vector<std::size_t> idx(videos);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (videos <= size)
  {
    return idx;
  }
  Rng rng(seed);
  for (std::size_t i = 0; i < size; ++i)
  {
    auto const j = i + static_cast<std::size_t>(rng.below(videos - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(size);
  std::sort(idx.begin(), idx.end());
  return idx;
}

inline std::uint64_t repeat_seed(std::uint64_t seed, std::size_t repeat, std::uint64_t stream)
{
  return mix_seed(mix_seed(seed) ^ (static_cast<std::uint64_t>(repeat) << 8) ^ stream);
}

struct MetricScores
{
  double                stream_t = 0.0;
  double                stream_f = 0.0;
  double                stream_d = 0.0;
  std::optional<double> frechet;
};

/// All metrics on one (already subsampled) pair.
inline MetricScores score_pair(FeatureDataset const &real, FeatureDataset const &fake, EvalConfig const &config)
{
  validate_pair(real, fake);
  MetricScores scores;
  scores.stream_t = stream_t(real, fake, config.stream_t).score;
  auto const s    = stream_s(real, fake, config.k);
  scores.stream_f = s.fidelity;
  scores.stream_d = s.diversity;
  if (config.frechet)
  {
    SlidingWindow sw = config.frechet_window;
    if (sw.window == 0)
    {
      sw.window = real.frames();
    }
    if (sw.stride == 0)
    {
      sw.stride = sw.window;
    }
    scores.frechet = sliding_frechet(real, fake, sw).mean;
  }
  return scores;
}

namespace detail {

inline void record(MetricReport &report, std::vector<MetricScores> const &runs)
{
  std::vector<double> t, f, d, fr;
  for (auto const &r : runs)
  {
    t.push_back(r.stream_t);
    f.push_back(r.stream_f);
    d.push_back(r.stream_d);
    if (r.frechet)
    {
      fr.push_back(*r.frechet);
    }
  }
  report.metrics["stream_t"] = summarize(std::move(t));
  report.metrics["stream_f"] = summarize(std::move(f));
  report.metrics["stream_d"] = summarize(std::move(d));
  if (!fr.empty())
  {
    report.metrics["frechet"] = summarize(std::move(fr));
  }
}

}  // namespace detail

/// `repeats` runs, each on independent seeded subsamples of both sets.
inline MetricReport evaluate(FeatureDataset const &real, FeatureDataset const &fake, EvalConfig const &config)
{
  require(config.repeats >= 1, ErrorKind::invalid_argument, "repeats must be at least 1");
  require(config.sample_size >= 2, ErrorKind::invalid_argument, "sample size must be at least 2");
  auto const pair = validate_pair(real, fake);

  MetricReport report;
  report.config      = config;
  report.real_shape  = real.tensor().shape();
  report.fake_shape  = fake.tensor().shape();
  report.real_source = real.source_id();
  report.fake_source = fake.source_id();
  report.warnings    = pair.warnings;

  std::vector<MetricScores> runs;
  for (std::size_t r = 0; r < config.repeats; ++r)
  {
    auto const ri = subsample_indices(real.videos(), config.sample_size, repeat_seed(config.seed, r, 0));
    auto const fi = subsample_indices(fake.videos(), config.sample_size, repeat_seed(config.seed, r, 1));
    runs.push_back(score_pair(real.select(ri), fake.select(fi), config));
  }
  detail::record(report, runs);
  return report;
}

struct SweepRow
{
  double      intensity = 0.0;
  std::string metric;
  double      mean   = 0.0;
  double      stddev = 0.0;
};

/**
 * For each grid value and repeat r, the fake set is the base set distorted
 * with seed derived from (seed, r). Real and fake share one subsample per
 * repeat since the fake videos are derived from the real ones.
 */
inline std::vector<SweepRow> sweep(FeatureDataset const &base, DistortionKind kind, std::vector<double> const &grid,
                                   EvalConfig const &config, bool per_frame = false)
{
  require(!grid.empty(), ErrorKind::invalid_argument, "sweep grid is empty");
  require(config.repeats >= 1, ErrorKind::invalid_argument, "repeats must be at least 1");

  std::vector<SweepRow> rows;
  for (double intensity : grid)
  {
    std::vector<MetricScores> runs;
    for (std::size_t r = 0; r < config.repeats; ++r)
    {
      DistortionSpec const spec{kind, intensity, repeat_seed(config.seed, r, 2), per_frame};
      auto const           fake = apply(spec, base);
      auto const           idx  = subsample_indices(base.videos(), config.sample_size, repeat_seed(config.seed, r, 0));
      runs.push_back(score_pair(base.select(idx), fake.select(idx), config));
    }
    MetricReport report;
    detail::record(report, runs);
    for (auto const &[name, stats] : report.metrics)
    {
      rows.push_back({intensity, name, stats.mean, stats.stddev});
    }
  }
  return rows;
}

inline std::string format_double(double v)
{
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

inline void write_csv(std::ostream &out, std::vector<SweepRow> const &rows)
{
  out << "intensity,metric,mean,stddev\n";
  for (auto const &r : rows)
  {
    out << format_double(r.intensity) << ',' << r.metric << ',' << format_double(r.mean) << ','
        << format_double(r.stddev) << '\n';
  }
}

inline std::string utc_timestamp()
{
  auto const  now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm     tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline nlohmann::json to_json(EvalConfig const &c)
{
  return {{"bins", c.stream_t.bins},
          {"skewness_mode", to_string(c.stream_t.mode)},
          {"include_zero_frequency", c.stream_t.include_zero_frequency},
          {"k", c.k},
          {"repeats", c.repeats},
          {"sample_size", c.sample_size},
          {"seed", c.seed},
          {"frechet", c.frechet},
          {"window", c.frechet_window.window},
          {"stride", c.frechet_window.stride},
          {"frechet_window_reducer", "mean"},
          {"rng", Rng::kName}};
}

/// Scores sit flat under "scores" (means); per-repeat detail under "repeats".
inline nlohmann::json to_json(MetricReport const &report, bool with_timestamp = true)
{
  nlohmann::json scores  = nlohmann::json::object();
  nlohmann::json repeats = nlohmann::json::object();
  for (auto const &[name, stats] : report.metrics)
  {
    scores[name]  = stats.mean;
    repeats[name] = {{"values", stats.values}, {"mean", stats.mean}, {"stddev", stats.stddev}};
  }
  nlohmann::json doc = {
      {"schema", kReportSchema},
      {"engine_version", kEngineVersion},
      {"scores", scores},
      {"repeats", repeats},
      {"config", to_json(report.config)},
      {"datasets",
       {{"real", {{"source", report.real_source}, {"shape", report.real_shape}}},
        {"fake", {{"source", report.fake_source}, {"shape", report.fake_shape}}}}},
      {"warnings", report.warnings},
      {"frechet_note", "Frechet distance between Gaussian fits of per-video mean-amplitude features; not FVD on I3D"},
  };
  if (with_timestamp)
  {
    doc["generated_at"] = utc_timestamp();
  }
  return doc;
}

}  // namespace stream
