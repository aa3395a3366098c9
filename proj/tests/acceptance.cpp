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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
// Every check runs on synthetic data from the harness generator.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "stream/stream.hpp"

using namespace stream;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome
{
  bool        pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start)
{
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v, int precision = 4)
{
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

std::string join(std::vector<double> const &v, int precision = 4)
{
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i)
  {
    out += (i ? " " : "") + fmt(v[i], precision);
  }
  return out + "]";
}

bool non_increasing(std::vector<double> const &v, double slack = 0.0)
{
  for (std::size_t i = 1; i < v.size(); ++i)
  {
    if (v[i] > v[i - 1] + slack)
    {
      return false;
    }
  }
  return true;
}

FeatureDataset synthetic(std::size_t n, std::size_t t, std::size_t d, std::uint64_t seed, std::uint64_t scene = 0)
{
  SyntheticSpec spec;
  spec.n_videos   = n;
  spec.t_frames   = t;
  spec.d_dims     = d;
  spec.seed       = seed;
  spec.scene_seed = scene;
  return generate_synthetic(spec);
}

constexpr std::size_t kSeeds = 5;

/// Seed-averaged curve of `score(real, distort(real, x, seed))` over `grid`.
std::vector<double> seed_averaged(std::vector<double> const &grid,
                                  std::function<double(FeatureDataset const &, double, std::uint64_t)> const &score)
{
  std::vector<double> curve(grid.size(), 0.0);
  for (std::uint64_t s = 0; s < kSeeds; ++s)
  {
    auto const real = synthetic(512, 16, 64, 100 + s, s);
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
      curve[i] += score(real, grid[i], 1000 + s) / static_cast<double>(kSeeds);
    }
  }
  return curve;
}

Outcome identity_suite()
{
  auto const start = Clock::now();
  bool       ok    = true;
  double     worst = 0.0;
  for (std::uint64_t s = 0; s < 10; ++s)
  {
    auto const x = synthetic(256, 16, 64, s, s);
    auto const t = stream_t(x, x).score;
    auto const f = stream_s(x, x);
    auto const m = mean_amplitude_set(x);
    double const fr = frechet_distance(m, m);
    worst           = std::max(worst, fr);
    ok              = ok && t == 1.0 && f.fidelity == 1.0 && f.diversity == 1.0 && fr <= 1e-8;
  }
  double const elapsed = seconds_since(start);
  ok                   = ok && elapsed < 30.0;
  return {ok, "10 datasets, max frechet(X,X)=" + fmt(worst, 3) + ", " + fmt(elapsed, 3) + " s"};
}

Outcome oracle_equivalence()
{
  std::mt19937 gen(2024);

  // (a) FFT amplitudes against direct summation.
  double                             dft_err = 0.0;
  std::uniform_int_distribution<int> len(4, 200);
  std::normal_distribution<double>   value(0.0, 5.0);
  for (int i = 0; i < 100; ++i)
  {
    std::size_t const  frames = static_cast<std::size_t>(len(gen));
    std::vector<float> seq(frames);
    std::vector<double> x(frames);
    for (std::size_t t = 0; t < frames; ++t)
    {
      seq[t] = static_cast<float>(value(gen));
      x[t]   = seq[t];
    }
    auto const fast = amplitude_spectrum(std::span<float const>(seq), frames, 1);
    auto const slow = oracle::direct_dft_amplitudes(x);
    for (std::size_t b = 0; b < slow.size(); ++b)
    {
      dft_err = std::max(dft_err, std::abs(fast.at(0, b) - slow[b]));
    }
  }

  // (b) k-NN radii and STREAM-S against brute force.
  bool                             knn_exact = true;
  std::normal_distribution<double> unit(0.0, 1.0);
  for (std::size_t trial = 0; trial < 6; ++trial)
  {
    std::size_t const n = 40 + 43 * trial, m = 256 - 30 * trial, d = 2 + trial * 5;
    PointSet          real(n, d), fake(m, d);
    for (auto &v : real.values)
    {
      v = unit(gen);
    }
    for (auto &v : fake.values)
    {
      v = unit(gen) * 1.2 + 0.3;
    }
    auto const rr = oracle::knn_radii(real.values, d, 5);
    auto const fr = oracle::knn_radii(fake.values, d, 5);
    auto const s  = stream_s(real, fake, 5);
    knn_exact     = knn_exact && knn_radii(real, 5).radii == rr && knn_radii(fake, 5).radii == fr &&
                s.fidelity == oracle::coverage(real.values, rr, fake.values, d) &&
                s.diversity == oracle::coverage(fake.values, fr, real.values, d);
  }

  // (c) planted power laws.
  double                                 alpha_err = 0.0;
  std::uniform_real_distribution<double> alpha(0.0, 3.0), logc(0.0, 4.0);
  for (int i = 0; i < 200; ++i)
  {
    double const        a = alpha(gen), c = std::exp(logc(gen));
    std::size_t const   f = 2 + static_cast<std::size_t>(i % 64);
    std::vector<double> amps(f);
    for (std::size_t z = 0; z < f; ++z)
    {
      amps[z] = c * std::pow(static_cast<double>(z + 1), -a);
    }
    alpha_err = std::max(alpha_err, std::abs(fit_power_law(amps).alpha - a));
  }

  // (d) Frechet against the diagonal closed form.
  double                                 fr_err = 0.0;
  std::uniform_real_distribution<double> pos(0.05, 4.0);
  for (int i = 0; i < 50; ++i)
  {
    std::size_t const   d = 1 + static_cast<std::size_t>(i);
    std::vector<double> ma(d), va(d), mb(d), vb(d);
    for (std::size_t k = 0; k < d; ++k)
    {
      ma[k] = pos(gen);
      va[k] = pos(gen);
      mb[k] = pos(gen);
      vb[k] = pos(gen);
    }
    GaussianFit a{Eigen::Map<Eigen::VectorXd>(ma.data(), static_cast<Eigen::Index>(d)),
                  Eigen::Map<Eigen::VectorXd>(va.data(), static_cast<Eigen::Index>(d)).asDiagonal()};
    GaussianFit b{Eigen::Map<Eigen::VectorXd>(mb.data(), static_cast<Eigen::Index>(d)),
                  Eigen::Map<Eigen::VectorXd>(vb.data(), static_cast<Eigen::Index>(d)).asDiagonal()};
    fr_err = std::max(fr_err, std::abs(frechet_distance(a, b) - oracle::diagonal_frechet(ma, va, mb, vb)));
  }

  bool const ok = dft_err <= 1e-9 && knn_exact && alpha_err <= 1e-9 && fr_err <= 1e-8;
  return {ok, "dft max err=" + fmt(dft_err, 3) + ", knn/stream_s exact=" + (knn_exact ? "yes" : "no") +
                  ", |d alpha|=" + fmt(alpha_err, 3) + ", frechet err=" + fmt(fr_err, 3)};
}

Outcome temporal_trend()
{
  auto const                start = Clock::now();
  std::vector<double> const swaps{0, 1, 2, 3, 4, 5, 6, 7};
  auto const local_t = seed_averaged(swaps, [](FeatureDataset const &x, double m, std::uint64_t s) {
    return stream_t(x, local_swap(x, static_cast<std::size_t>(m), s)).score;
  });
  std::vector<double> const budget{7};
  auto const local_d = seed_averaged(budget, [](FeatureDataset const &x, double m, std::uint64_t s) {
    return stream_s(x, local_swap(x, static_cast<std::size_t>(m), s)).diversity;
  });
  auto const global_d = seed_averaged(budget, [](FeatureDataset const &x, double m, std::uint64_t s) {
    return stream_s(x, global_swap(x, static_cast<std::size_t>(m), s)).diversity;
  });
  double const elapsed = seconds_since(start);
  bool const   ok = non_increasing(local_t) && local_t.back() <= local_t.front() - 0.1 &&
                  global_d[0] <= local_d[0] - 0.05 && elapsed < 300.0;
  return {ok, "local-swap stream_t " + join(local_t) + "; stream_d at 7 swaps local=" + fmt(local_d[0]) +
                  " global=" + fmt(global_d[0]) + "; " + fmt(elapsed, 3) + " s"};
}

Outcome spatial_robustness()
{
  auto const                real = synthetic(512, 16, 64, 7, 1);
  auto const                fake = synthetic(512, 16, 64, 8, 1);
  double const              base = stream_t(real, fake).score;
  std::vector<double> const magnitudes{0.0, 0.25, 0.5, 1.0, 2.0, 4.0};
  std::vector<double>       fidelity;
  double                    max_dt = 0.0;
  for (double mag : magnitudes)
  {
    auto const shifted = constant_offset(fake, random_offset(fake.dims(), mag, 99));
    max_dt             = std::max(max_dt, std::abs(stream_t(real, shifted).score - base));
    fidelity.push_back(stream_s(real, shifted).fidelity);
  }
  bool const ok = max_dt <= 1e-9 && non_increasing(fidelity) && fidelity.front() > fidelity.back() &&
                  fidelity.back() <= 0.05;
  return {ok, "max |d stream_t|=" + fmt(max_dt, 3) + ", stream_f over offsets " + join(magnitudes, 3) + " = " +
                  join(fidelity)};
}

Outcome stop_scene_degradation()
{
  std::vector<double> const ratios{0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double>       curve;
  try
  {
    curve = seed_averaged(ratios, [](FeatureDataset const &x, double r, std::uint64_t s) {
      return stream_t(x, stop_scene(x, r, s)).score;
    });
  }
  catch (Error const &e)
  {
    return {false, std::string("stop scene raised: ") + e.what()};
  }
  return {non_increasing(curve), "stream_t over ratios " + join(ratios, 2) + " = " + join(curve)};
}

Outcome reversal()
{
  double worst = 0.0;
  for (std::uint64_t s = 0; s < kSeeds; ++s)
  {
    auto const x = synthetic(512, 16, 64, 200 + s, s);
    worst        = std::max(worst, std::abs(stream_t(x, full_reverse(x)).score - 1.0));
  }
  std::vector<double> const counts{0, 2, 4, 6, 8, 10, 12};
  auto const curve = seed_averaged(counts, [](FeatureDataset const &x, double c, std::uint64_t s) {
    return stream_t(x, partial_reverse(x, static_cast<std::size_t>(c), s)).score;
  });
  bool const ok = worst <= 1e-9 && non_increasing(curve);
  return {ok, "max |full reverse - 1|=" + fmt(worst, 3) + ", partial reverse " + join(curve)};
}

Outcome ablation()
{
  auto const          real = synthetic(2048, 16, 64, 300, 2);
  auto const          fake = synthetic(2048, 16, 64, 301, 2);
  std::vector<double> by_bins;
  for (std::size_t bins : {50u, 75u, 100u})
  {
    StreamTConfig cfg;
    cfg.bins = bins;
    by_bins.push_back(stream_t(real, fake, cfg).score);
  }
  double const spread = *std::max_element(by_bins.begin(), by_bins.end()) -
                        *std::min_element(by_bins.begin(), by_bins.end());

  // Score at sizes 500, 1000 against the full 2000-video score, averaged over subsamples.
  auto const real2k = real.select(subsample_indices(2048, 2000, 1));
  auto const fake2k = fake.select(subsample_indices(2048, 2000, 2));
  double const reference = stream_t(real2k, fake2k).score;
  std::vector<double> drift;
  for (std::size_t size : {500u, 1000u, 2000u})
  {
    double mean = 0.0;
    for (std::size_t r = 0; r < kSeeds; ++r)
    {
      auto const ri = subsample_indices(2000, size, repeat_seed(5, r, 0));
      auto const fi = subsample_indices(2000, size, repeat_seed(5, r, 1));
      mean += stream_t(real2k.select(ri), fake2k.select(fi)).score / static_cast<double>(kSeeds);
    }
    drift.push_back(std::abs(mean - reference));
  }
  bool const ok = spread < 0.02 && drift[0] > drift[1] && drift[1] > drift[2] - 1e-15;
  return {ok, "stream_t for bins 50/75/100 " + join(by_bins) + " (spread " + fmt(spread, 3) +
                  "), |drift| at N=500/1000/2000 " + join(drift, 3)};
}

Outcome determinism()
{
  auto const real = synthetic(300, 16, 32, 400, 3);
  auto const fake = local_swap(synthetic(300, 16, 32, 401, 3), 2, 9);
  EvalConfig cfg;
  cfg.repeats     = 3;
  cfg.sample_size = 200;
  cfg.seed        = 7;
  auto const a    = to_json(evaluate(real, fake, cfg), false).dump();
  auto const b    = to_json(evaluate(real, fake, cfg), false).dump();

  bool distort_same = true;
  for (auto kind : {DistortionKind::local_swap, DistortionKind::global_swap, DistortionKind::stop_scene,
                    DistortionKind::partial_reverse, DistortionKind::gaussian_noise})
  {
    DistortionSpec const spec{kind, kind == DistortionKind::stop_scene ? 0.5 : 3.0, 42};
    distort_same = distort_same && apply(spec, real) == apply(spec, real);
  }
  bool const synth_same = synthetic(64, 16, 8, 1) == synthetic(64, 16, 8, 1);

  auto const long_real = synthetic(64, 128, 12, 500, 4);
  auto const long_fake = synthetic(64, 128, 12, 501, 4);
  auto const sliding   = sliding_frechet(long_real, long_fake, {16, 16});
  double     hand      = 0.0;
  for (std::size_t w = 0; w < 8; ++w)
  {
    PointSet pr(64, 12), pf(64, 12);
    for (std::size_t n = 0; n < 64; ++n)
    {
      for (std::size_t k = 0; k < 12; ++k)
      {
        double sr = 0.0, sf = 0.0;
        for (std::size_t t = w * 16; t < w * 16 + 16; ++t)
        {
          sr += long_real.at(n, t, k);
          sf += long_fake.at(n, t, k);
        }
        pr.row(n)[k] = std::abs(sr / 16.0);
        pf.row(n)[k] = std::abs(sf / 16.0);
      }
    }
    hand += frechet_distance(pr, pf) / 8.0;
  }
  double const gap = std::abs(sliding.mean - hand);
  bool const   ok  = a == b && distort_same && synth_same && sliding.per_window.size() == 8 && gap <= 1e-8;
  return {ok, std::string("report rerun identical=") + (a == b ? "yes" : "no") +
                  ", distortions identical=" + (distort_same ? "yes" : "no") + ", sliding frechet=" +
                  fmt(sliding.mean, 8) + " vs hand loop gap " + fmt(gap, 3)};
}

}  // namespace

int main()
{
  struct Criterion
  {
    char const *name;
    Outcome (*run)();
  };
  Criterion const criteria[] = {
      {"identity-suite", identity_suite},
      {"oracle-equivalence", oracle_equivalence},
      {"temporal-sensitivity-trend", temporal_trend},
      {"spatial-robustness", spatial_robustness},
      {"stop-scene-degradation", stop_scene_degradation},
      {"reversal-invariance", reversal},
      {"ablation-stability", ablation},
      {"determinism-and-sliding-frechet", determinism},
  };

  int failed = 0;
  for (auto const &c : criteria)
  {
    Outcome result;
    try
    {
      result = c.run();
    }
    catch (std::exception const &e)
    {
      result = {false, std::string("exception: ") + e.what()};
    }
    failed += result.pass ? 0 : 1;
    std::printf("%s  %-32s %s\n", result.pass ? "PASS" : "FAIL", c.name, result.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
