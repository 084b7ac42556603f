// tests/pesq-test.cc

// Copyright 2026  The Lipper Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "lipper/base/error.h"
#include "lipper/harness/synthetic.h"
#include "lipper/pesq/pesq-lite.h"

using namespace lipper;

namespace {

// Brute-force lag scan with its own correlation loop.
int ScanOracle(const std::vector<double> &ref, const std::vector<double> &deg, int max_lag) {
  int best = 0;
  double best_c = -2.0;
  for (int lag = -max_lag; lag <= max_lag; lag++) {
    double xy = 0, xx = 0, yy = 0;
    for (long n = 0; n < static_cast<long>(ref.size()); n++) {
      long m = n + lag;
      if (m < 0 || m >= static_cast<long>(deg.size())) continue;
      xy += ref[n] * deg[m];
      xx += ref[n] * ref[n];
      yy += deg[m] * deg[m];
    }
    double c = (xx > 0 && yy > 0) ? xy / std::sqrt(xx * yy) : 0.0;
    if (c > best_c + 1e-12 || (std::abs(c - best_c) <= 1e-12 && std::abs(lag) < std::abs(best))) {
      best_c = std::max(c, best_c);
      best = lag;
    }
  }
  return best;
}

AudioSignal ColoredNoise(size_t n, double rate, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  AudioSignal s;
  s.sample_rate = rate;
  double y1 = 0, y2 = 0;
  for (size_t i = 0; i < n; i++) {
    double y = g(rng) + 1.3 * y1 - 0.6 * y2;
    y2 = y1;
    y1 = y;
    s.samples.push_back(0.05 * y);
  }
  return s;
}

AudioSignal Speech(uint64_t seed) {
  SyntheticConfig c;
  c.speakers = 2;
  c.seed = seed;
  c.views.clear();
  c.phrases = 1;
  c.repetitions = 1;
  return GenerateSyntheticCorpus(c).utterances[seed % 2].audio;
}

AudioSignal AddNoise(const AudioSignal &x, double snr_db, uint64_t seed) {
  double e = 0.0;
  for (double v : x.samples) e += v * v;
  double sigma = std::sqrt(e / x.samples.size() / std::pow(10.0, snr_db / 10.0));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, sigma);
  AudioSignal y = x;
  for (double &v : y.samples) v += g(rng);
  return y;
}

}  // namespace

TEST_CASE("identical inputs score exactly 4.5") {
  for (uint64_t seed : {1, 2, 3}) {
    AudioSignal x = Speech(seed);
    CHECK(PesqLite(x, x) == 4.5);
  }
  AudioSignal n = ColoredNoise(8000, 20000, 4);
  CHECK(PesqLite(n, n) == 4.5);
}

TEST_CASE("level_align") {
  AudioSignal x = ColoredNoise(2000, 20000, 1);
  AudioSignal half = x;
  for (double &v : half.samples) v *= 0.5;
  AudioSignal back = LevelAlign(x, half);
  for (size_t i = 0; i < x.samples.size(); i++) CHECK(std::abs(back.samples[i] - x.samples[i]) < 1e-12);
  CHECK(LevelAlign(x, x) == x);
  AudioSignal zero = x;
  std::fill(zero.samples.begin(), zero.samples.end(), 0.0);
  CHECK(LevelAlign(x, zero) == zero);
  AudioSignal other = x;
  other.sample_rate = 16000;
  CHECK_THROWS_AS(LevelAlign(x, other), RateMismatch);
  CHECK_THROWS_AS(PesqLite(x, other), RateMismatch);
}

TEST_CASE("time_align recovers constructed shifts") {
  AudioSignal x = ColoredNoise(10000, 20000, 2);
  CHECK(TimeAlign(x, x) == 0);
  AudioSignal d = x;
  d.samples.insert(d.samples.begin(), 100, 0.0);
  CHECK(TimeAlign(x, d) == 100);
  AudioSignal e = x;
  e.samples.erase(e.samples.begin(), e.samples.begin() + 37);
  CHECK(TimeAlign(x, e) == -37);
}

TEST_CASE("time_align matches an exhaustive correlation scan") {
  const double rate = 8000;
  const int w = 2000;
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; trial++) {
    AudioSignal x = ColoredNoise(4000, rate, 100 + trial);
    int shift = static_cast<int>(rng() % (2 * w + 1)) - w;
    AudioSignal d;
    d.sample_rate = rate;
    for (long n = 0; n < 4000; n++) {
      long m = n - shift;
      d.samples.push_back(m >= 0 && m < 4000 ? x.samples[m] : 0.0);
    }
    d = AddNoise(d, 20.0, 500 + trial);
    int got = TimeAlign(x, d, 0.25);
    CHECK(got == ScanOracle(x.samples, d.samples, w));
    CHECK(got == shift);
  }
}

TEST_CASE("scores stay in range") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10; i++) {
    AudioSignal a = ColoredNoise(6000, 20000, rng()), b = ColoredNoise(7000, 20000, rng());
    double s = PesqLite(a, b);
    CHECK(s >= -0.5);
    CHECK(s <= 4.5);
  }
  AudioSignal quiet = Speech(1), loud = ColoredNoise(quiet.samples.size(), 20000, 3);
  for (double &v : loud.samples) v *= 1e3;
  double s = PesqLite(quiet, loud);
  CHECK(s >= -0.5);
  CHECK(s < 4.5);
}

TEST_CASE("score decreases with noise power for every seed") {
  AudioSignal x = Speech(5);
  for (uint64_t seed = 0; seed < 20; seed++) {
    double prev = 4.5;
    for (double snr : {30.0, 20.0, 10.0, 5.0, 0.0}) {
      double s = PesqLite(x, AddNoise(x, snr, seed));
      CHECK(s <= prev);
      prev = s;
    }
    CHECK(PesqLite(x, AddNoise(x, 30.0, seed)) > PesqLite(x, AddNoise(x, 0.0, seed)));
  }
}

TEST_CASE("gain and delay leave the score nearly unchanged") {
  AudioSignal x = Speech(6);
  AudioSignal y = AddNoise(x, 10.0, 1);
  double base = PesqLite(x, y);
  for (double g : {0.25, 0.5, 2.0, 4.0}) {
    AudioSignal s = y;
    for (double &v : s.samples) v *= g;
    CHECK(std::abs(PesqLite(x, s) - base) < 0.05);
  }
  for (int d : {1, 100, 1234, 5000}) {
    AudioSignal s = y;
    s.samples.insert(s.samples.begin(), d, 0.0);
    CHECK(std::abs(PesqLite(x, s) - base) < 0.05);
  }
}

TEST_CASE("white noise at 10 dB scores about 1.5") {
  SyntheticConfig c;
  c.speakers = 3;
  c.seed = 42;
  c.views.clear();
  Corpus corpus = GenerateSyntheticCorpus(c);
  double sum = 0.0;
  int n = 0;
  for (const Utterance &u : corpus.utterances) sum += PesqLite(u.audio, AddNoise(u.audio, 10.0, n++));
  CHECK(std::abs(sum / n - 1.5) <= 0.2);
}

TEST_CASE("short inputs are degenerate") {
  AudioSignal a = ColoredNoise(4000, 20000, 1);
  AudioSignal b = ColoredNoise(6000, 20000, 2);
  CHECK_THROWS_AS(PesqLite(a, b), DegenerateInput);
  CHECK_THROWS_AS(PesqLite(b, a), DegenerateInput);
}

TEST_CASE("bark bands") {
  auto edges = BarkBandEdges(20000);
  REQUIRE(edges.size() == 25);
  CHECK(edges.front() == 0.0);
  CHECK(edges.back() == 10000.0);
  for (size_t i = 1; i < edges.size(); i++) CHECK(edges[i] > edges[i - 1]);
  double step = HzToBark(10000.0) / 24;
  for (int b = 1; b < 24; b++) CHECK(HzToBark(edges[b]) == doctest::Approx(b * step).epsilon(1e-9));
  AudioSignal x = ColoredNoise(20000, 20000, 3);
  BarkSpectrum s = ComputeBarkSpectrum(x);
  CHECK(s.frames == (20000 - 640) / 320 + 1);
  for (double p : s.power) CHECK(p >= 0.0);
}
