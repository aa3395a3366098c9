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

// stream: command-line front end for the metric engine.
//
//   stream compute   --real a.npy --fake b.npy [--out report.json]
//   stream frechet   --real a.npy --fake b.npy [--window 16 --stride 16]
//   stream synth     --n 512 --t 16 --d 64 --alpha 1 --seed 3 --out x.npy
//   stream distort   --in x.npy --kind local_swap --count 2 --seed 1 --out y.npy
//   stream sweep     --real x.npy --kind local_swap --grid 0,1,2,3 [--out sweep.csv]
//
// Exit codes: 0 ok, 2 bad arguments, 3 I/O or format error, 4 shape
// mismatch, 5 numeric failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "stream/stream.hpp"

namespace {

constexpr int kExitArgs    = 2;
constexpr int kExitIo      = 3;
constexpr int kExitShape   = 4;
constexpr int kExitNumeric = 5;

int exit_code(stream::ErrorKind kind)
{
  using stream::ErrorKind;
  switch (kind)
  {
  case ErrorKind::invalid_argument:
    return kExitArgs;
  case ErrorKind::io:
  case ErrorKind::format:
  case ErrorKind::unsupported_dtype:
  case ErrorKind::corruption:
  case ErrorKind::validation:
    return kExitIo;
  case ErrorKind::shape_mismatch:
  case ErrorKind::too_short:
  case ErrorKind::insufficient_frequencies:
  case ErrorKind::insufficient_points:
  case ErrorKind::dimension_mismatch:
    return kExitShape;
  case ErrorKind::numeric:
    return kExitNumeric;
  }
  return kExitNumeric;
}

struct EvalFlags
{
  std::string   real;
  std::string   fake;
  std::string   manifest;
  std::string   out;
  std::size_t   bins        = stream::kDefaultBins;
  std::size_t   k           = stream::kDefaultNeighbors;
  std::size_t   repeats     = 5;
  std::size_t   sample_size = 2048;
  std::uint64_t seed        = 0;
  std::string   mode        = "paper";
  bool          include_zero = false;
  std::size_t   window       = 0;
  std::size_t   stride       = 0;
  bool          no_frechet   = false;

  stream::EvalConfig config() const
  {
    stream::EvalConfig c;
    c.stream_t.bins                   = bins;
    c.stream_t.mode                   = mode == "direct" ? stream::SkewnessMode::direct : stream::SkewnessMode::paper;
    c.stream_t.include_zero_frequency = include_zero;
    c.k                               = k;
    c.repeats                         = repeats;
    c.sample_size                     = sample_size;
    c.seed                            = seed;
    c.frechet                         = !no_frechet;
    c.frechet_window                  = {window, stride};
    return c;
  }
};

void add_metric_flags(CLI::App *cmd, EvalFlags &f)
{
  cmd->add_option("--bins", f.bins, "histogram bins for STREAM-T")->check(CLI::Range(2, 100000));
  cmd->add_option("--k", f.k, "nearest neighbour used for support radii")->check(CLI::Range(1, 100000));
  cmd->add_option("--repeats", f.repeats, "repeated measurements")->check(CLI::Range(1, 100000));
  cmd->add_option("--sample-size", f.sample_size, "videos drawn per set and repeat")->check(CLI::Range(2, 100000000));
  cmd->add_option("--seed", f.seed, "subsampling seed");
  cmd->add_option("--skewness-mode", f.mode, "paper or direct")->check(CLI::IsMember({"paper", "direct"}));
  cmd->add_flag("--include-zero-frequency", f.include_zero, "fit the power law with the zero-frequency bin included");
}

void add_window_flags(CLI::App *cmd, EvalFlags &f)
{
  cmd->add_option("--window", f.window, "Frechet window length in frames");
  cmd->add_option("--stride", f.stride, "Frechet window stride in frames");
}

void write_text(std::string const &path, std::string const &text)
{
  if (path.empty() || path == "-")
  {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  stream::require(out.good(), stream::ErrorKind::io, "cannot open '" + path + "' for writing");
  out << text;
  stream::require(out.good(), stream::ErrorKind::io, "failed writing '" + path + "'");
}

std::pair<stream::FeatureDataset, stream::FeatureDataset> load_inputs(EvalFlags const &f)
{
  if (!f.manifest.empty())
  {
    stream::require(f.real.empty() && f.fake.empty(), stream::ErrorKind::invalid_argument,
                    "--manifest excludes --real/--fake");
    return stream::load_pair(stream::load_manifest(f.manifest));
  }
  stream::require(!f.real.empty() && !f.fake.empty(), stream::ErrorKind::invalid_argument,
                  "--real and --fake are required");
  return {stream::npy::load_features(f.real), stream::npy::load_features(f.fake)};
}

int run_compute(EvalFlags const &f)
{
  auto const [real, fake] = load_inputs(f);
  auto const report       = stream::evaluate(real, fake, f.config());
  for (auto const &w : report.warnings)
  {
    std::cerr << "warning: " << w << '\n';
  }
  write_text(f.out, stream::to_json(report).dump(2) + "\n");
  return 0;
}

int run_frechet(EvalFlags const &f)
{
  auto const [real, fake] = load_inputs(f);
  auto const pair         = stream::validate_pair(real, fake);
  for (auto const &w : pair.warnings)
  {
    std::cerr << "warning: " << w << '\n';
  }
  stream::SlidingWindow const sw{f.window == 0 ? 16 : f.window, f.stride == 0 ? (f.window == 0 ? 16 : f.window)
                                                                              : f.stride};
  auto const result = stream::sliding_frechet(real, fake, sw);
  nlohmann::json doc = {
      {"schema", stream::kReportSchema},
      {"engine_version", stream::kEngineVersion},
      {"scores", {{"frechet", result.mean}}},
      {"per_window", result.per_window},
      {"config", {{"window", sw.window}, {"stride", sw.stride}, {"reducer", "mean"}}},
      {"datasets",
       {{"real", {{"source", real.source_id()}, {"shape", real.tensor().shape()}}},
        {"fake", {{"source", fake.source_id()}, {"shape", fake.tensor().shape()}}}}},
      {"warnings", pair.warnings},
      {"frechet_note",
       "Frechet distance between Gaussian fits of per-window mean-amplitude features; not FVD on I3D"},
      {"generated_at", stream::utc_timestamp()},
  };
  write_text(f.out, doc.dump(2) + "\n");
  return 0;
}

struct SynthFlags
{
  stream::SyntheticSpec spec;
  std::string           out;
};

int run_synth(SynthFlags const &f)
{
  stream::require(!f.out.empty(), stream::ErrorKind::invalid_argument, "--out is required");
  stream::npy::save(stream::generate_synthetic(f.spec), f.out);
  return 0;
}

struct DistortFlags
{
  std::string   in;
  std::string   out;
  std::string   kind;
  double        intensity = 0.0;
  std::uint64_t seed      = 0;
  bool          per_frame = false;
};

int run_distort(DistortFlags const &f)
{
  stream::DistortionSpec const spec{stream::parse_distortion(f.kind), f.intensity, f.seed, f.per_frame};
  auto const                   array = stream::npy::read_array(f.in);
  if (array.shape().size() == 5)
  {
    stream::npy::save(stream::apply(spec, stream::npy::load_raw(f.in)), f.out);
  }
  else
  {
    stream::npy::save(stream::apply(spec, stream::npy::load_features(f.in)), f.out);
  }
  auto sidecar      = stream::to_json(spec);
  sidecar["schema"] = stream::kReportSchema;
  sidecar["input"]  = f.in;
  write_text(f.out + ".json", sidecar.dump(2) + "\n");
  return 0;
}

struct SweepFlags
{
  EvalFlags   eval;
  std::string kind;
  std::string grid;
  bool        per_frame = false;
  bool        frechet   = false;
};

std::vector<double> parse_grid(std::string const &text)
{
  std::vector<double> grid;
  std::stringstream   in(text);
  std::string         item;
  while (std::getline(in, item, ','))
  {
    std::size_t used = 0;
    double      v    = 0.0;
    try
    {
      v = std::stod(item, &used);
    }
    catch (std::exception const &)
    {
      used = 0;
    }
    stream::require(used > 0 && used == item.size(), stream::ErrorKind::invalid_argument,
                    "bad grid value '" + item + "'");
    grid.push_back(v);
  }
  stream::require(!grid.empty(), stream::ErrorKind::invalid_argument, "--grid is empty");
  return grid;
}

int run_sweep(SweepFlags const &f)
{
  auto const grid = parse_grid(f.grid);
  auto const kind = stream::parse_distortion(f.kind);
  stream::require(!f.eval.real.empty(), stream::ErrorKind::invalid_argument, "--real is required");
  auto const base   = stream::npy::load_features(f.eval.real);
  auto       config = f.eval.config();
  config.frechet    = f.frechet;
  auto const rows   = stream::sweep(base, kind, grid, config, f.per_frame);
  std::ostringstream csv;
  stream::write_csv(csv, rows);
  write_text(f.eval.out, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Spectral video-generation metrics (STREAM-T, STREAM-F, STREAM-D) with a Frechet baseline"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(stream::kEngineVersion));

  EvalFlags compute;
  auto     *cmd_compute = app.add_subcommand("compute", "score a fake feature set against a real one");
  cmd_compute->add_option("--real", compute.real, "real features (N,T,d) .npy");
  cmd_compute->add_option("--fake", compute.fake, "fake features (N,T,d) .npy");
  cmd_compute->add_option("--manifest", compute.manifest, "JSON manifest naming the real and fake files");
  cmd_compute->add_option("--out", compute.out, "report path (default stdout)");
  add_metric_flags(cmd_compute, compute);
  add_window_flags(cmd_compute, compute);
  cmd_compute->add_flag("--no-frechet", compute.no_frechet, "skip the Frechet baseline");

  EvalFlags frechet;
  auto     *cmd_frechet = app.add_subcommand("frechet", "sliding-window Frechet baseline");
  cmd_frechet->add_option("--real", frechet.real, "real features (N,T,d) .npy");
  cmd_frechet->add_option("--fake", frechet.fake, "fake features (N,T,d) .npy");
  cmd_frechet->add_option("--manifest", frechet.manifest, "JSON manifest naming the real and fake files");
  cmd_frechet->add_option("--out", frechet.out, "report path (default stdout)");
  add_window_flags(cmd_frechet, frechet);

  SynthFlags synth;
  auto      *cmd_synth = app.add_subcommand("synth", "write a synthetic 1/f^alpha feature set");
  cmd_synth->add_option("--n", synth.spec.n_videos, "videos")->check(CLI::PositiveNumber);
  cmd_synth->add_option("--t", synth.spec.t_frames, "frames per video")->check(CLI::Range(4, 1 << 20));
  cmd_synth->add_option("--d", synth.spec.d_dims, "feature dimension")->check(CLI::PositiveNumber);
  cmd_synth->add_option("--alpha", synth.spec.alpha, "spectral exponent (>= 0)")->check(CLI::NonNegativeNumber);
  cmd_synth->add_option("--seed", synth.spec.seed, "video seed");
  cmd_synth->add_option("--base-offset", synth.spec.base_offset, "constant added to every value")
      ->check(CLI::NonNegativeNumber);
  cmd_synth->add_option("--amplitude", synth.spec.amplitude, "amplitude at the first frequency")
      ->check(CLI::NonNegativeNumber);
  cmd_synth->add_option("--mean-spread", synth.spec.mean_spread, "per-video mean jitter")
      ->check(CLI::NonNegativeNumber);
  cmd_synth->add_option("--clusters", synth.spec.clusters, "scene clusters (1 = none)");
  cmd_synth->add_option("--cluster-spread", synth.spec.cluster_spread, "spread of scene centers")
      ->check(CLI::NonNegativeNumber);
  cmd_synth->add_option("--scene-seed", synth.spec.scene_seed, "seed for scene centers");
  cmd_synth->add_option("--out", synth.out, "output .npy")->required();

  DistortFlags distort;
  auto        *cmd_distort = app.add_subcommand("distort", "apply one distortion to a feature or raw video file");
  cmd_distort->add_option("--in,--input", distort.in, "input .npy (N,T,d) or (N,T,H,W,C)")->required();
  cmd_distort->add_option("--out", distort.out, "output .npy; the spec goes to <out>.json")->required();
  cmd_distort->add_option("--kind", distort.kind, "distortion name")->required();
  cmd_distort->add_option("--intensity,--count,--ratio,--sigma,--rate,--pixels,--factor,--probability",
                          distort.intensity, "distortion strength");
  cmd_distort->add_option("--seed", distort.seed, "distortion seed");
  cmd_distort->add_flag("--per-frame", distort.per_frame, "fresh noise for every frame");

  SweepFlags sweep;
  auto      *cmd_sweep = app.add_subcommand("sweep", "score a distortion over an intensity grid (CSV)");
  cmd_sweep->add_option("--real", sweep.eval.real, "base features (N,T,d) .npy")->required();
  cmd_sweep->add_option("--kind", sweep.kind, "distortion name")->required();
  cmd_sweep->add_option("--grid", sweep.grid, "comma-separated intensities")->required();
  cmd_sweep->add_option("--out", sweep.eval.out, "CSV path (default stdout)");
  cmd_sweep->add_flag("--per-frame", sweep.per_frame, "fresh noise for every frame");
  cmd_sweep->add_flag("--frechet", sweep.frechet, "also report the Frechet baseline");
  add_metric_flags(cmd_sweep, sweep.eval);
  add_window_flags(cmd_sweep, sweep.eval);

  try
  {
    app.parse(argc, argv);
  }
  catch (CLI::CallForHelp const &e)
  {
    return app.exit(e);
  }
  catch (CLI::CallForAllHelp const &e)
  {
    return app.exit(e);
  }
  catch (CLI::CallForVersion const &e)
  {
    return app.exit(e);
  }
  catch (CLI::ParseError const &e)
  {
    app.exit(e);
    return kExitArgs;
  }

  try
  {
    if (*cmd_compute)
    {
      return run_compute(compute);
    }
    if (*cmd_frechet)
    {
      return run_frechet(frechet);
    }
    if (*cmd_synth)
    {
      return run_synth(synth);
    }
    if (*cmd_distort)
    {
      return run_distort(distort);
    }
    if (*cmd_sweep)
    {
      return run_sweep(sweep);
    }
  }
  catch (stream::Error const &e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  }
  catch (std::bad_alloc const &)
  {
    std::cerr << "error: out of memory\n";
    return kExitNumeric;
  }
  return kExitArgs;
}
