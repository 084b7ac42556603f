// tests/codec-test.cc

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

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "lipper/base/error.h"
#include "lipper/codec/lpc-codec.h"
#include "lipper/codec/wav-io.h"
#include "oracles.h"

using namespace lipper;
using std::numbers::pi;

TEST_CASE("frame_signal count formula") {
  std::vector<double> x(10, 1.0);
  auto frames = FrameSignal(x, 4, 2);
  REQUIRE(frames.size() == 4);
  for (size_t i = 0; i < frames.size(); i++)
    CHECK(frames[i].data() == x.data() + 2 * i);

  std::vector<double> y(3333);
  CHECK(FrameSignal(y, 1666, 1666).size() == 2);

  std::vector<double> z{1, 2, 3, 4};
  auto one = FrameSignal(z, 4, 1);
  REQUIRE(one.size() == 1);
  CHECK(std::equal(one[0].begin(), one[0].end(), z.begin()));

  CHECK_THROWS_AS(FrameSignal(std::vector<double>{}, 1, 1), DegenerateInput);
  CHECK_THROWS_AS(FrameSignal(z, 5, 1), DegenerateInput);
  CHECK_THROWS_AS(FrameSignal(z, 2, 3), DegenerateInput);
}

TEST_CASE("autocorrelate") {
  CHECK(Autocorrelate(std::vector<double>(8, 0.0), 3) ==
        std::vector<double>(4, 0.0));
  CHECK(Autocorrelate(std::vector<double>{1, 0, 0, 0}, 2) ==
        std::vector<double>{1, 0, 0});
  std::vector<double> ones{1, 1, 1, 1};
  CHECK(Autocorrelate(ones, 2) == oracle::DirectAutocorrelation(ones, 2));
  CHECK(Autocorrelate(ones, 2) == std::vector<double>{4, 3, 2});
  CHECK_THROWS_AS(Autocorrelate(ones, 4), DegenerateInput);

  std::mt19937_64 rng(3);
  std::normal_distribution<double> n01;
  for (int trial = 0; trial < 50; trial++) {
    std::vector<double> x(64);
    for (double &v : x) v = n01(rng);
    auto r = Autocorrelate(x, 24);
    for (double rk : r) CHECK(r[0] >= std::abs(rk));
  }
}

TEST_CASE("levinson_durbin analytic cases") {
  std::vector<double> coef;
  std::vector<double> white(25, 0.0);
  white[0] = 1.0;
  CHECK(SolveYuleWalker(white, 24, &coef) == doctest::Approx(1.0));
  for (double a : coef) CHECK(a == 0.0);

  std::vector<double> ar1{1.0, 0.9};
  double err = SolveYuleWalker(ar1, 1, &coef);
  CHECK(coef[0] == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(err == doctest::Approx(0.19).epsilon(1e-14));

  std::vector<double> silent(3, 0.0);
  CHECK_THROWS_AS(SolveYuleWalker(silent, 2, &coef), SilentFrame);

  LpcFrame lpc = LevinsonDurbin(white, 24, 100);
  CHECK(lpc.log_gain == doctest::Approx(0.5 * std::log(1.0 / 100)));
}

TEST_CASE("levinson_durbin matches dense Toeplitz solve for every order") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; trial++) {
    int order = 1 + trial % 24;
    std::vector<double> frame = oracle::SyntheticSpeechFrame(rng, 800);
    std::vector<double> r = Autocorrelate(frame, order);
    std::vector<double> coef;
    SolveYuleWalker(r, order, &coef);
    std::vector<double> dense = oracle::DenseToeplitzSolve(r, order);
    double worst = 0.0;
    for (int k = 0; k < order; k++) worst = std::max(worst, std::abs(coef[k] - dense[k]));
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("lpc_to_lsp on the flat filter") {
  LpcFrame flat{{0.0, 0.0}, 0.0};
  LspFrame lsp = LpcToLsp(flat);
  std::vector<double> expected = oracle::LspByPolynomialRoots(flat.coefficients);
  REQUIRE(expected.size() == 2);
  CHECK(expected[0] == doctest::Approx(pi / 3).epsilon(1e-12));
  CHECK(expected[1] == doctest::Approx(2 * pi / 3).epsilon(1e-12));
  CHECK(lsp.frequencies[0] == doctest::Approx(expected[0]).epsilon(1e-12));
  CHECK(lsp.frequencies[1] == doctest::Approx(expected[1]).epsilon(1e-12));

  LpcFrame back = LspToLpc(LspFrame{{pi / 3, 2 * pi / 3}, 0.0});
  CHECK(std::abs(back.coefficients[0]) < 1e-12);
  CHECK(std::abs(back.coefficients[1]) < 1e-12);

  LpcFrame unsorted = LspToLpc(LspFrame{{2 * pi / 3, pi / 3}, 0.0});
  CHECK(unsorted.coefficients == back.coefficients);
}

TEST_CASE("lpc_to_lsp agrees with the companion-matrix root oracle") {
  std::mt19937_64 rng(5);
  for (int order : {1, 2, 3, 7, 10, 16, 24}) {
    for (int trial = 0; trial < 5; trial++) {
      LpcFrame lpc{oracle::RandomStableFilter(rng, order, 0.9), 0.0};
      LspFrame lsp = LpcToLsp(lpc);
      std::vector<double> expected = oracle::LspByPolynomialRoots(lpc.coefficients);
      REQUIRE(expected.size() == static_cast<size_t>(order));
      for (int i = 0; i < order; i++)
        CHECK(std::abs(lsp.frequencies[i] - expected[i]) < 1e-7);
    }
  }
}

TEST_CASE("lsp round trips in both directions") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; trial++) {
    LpcFrame lpc{oracle::RandomStableFilter(rng, 24, 0.95), 0.0};
    LspFrame lsp = LpcToLsp(lpc);
    for (int i = 0; i < 24; i++) {
      CHECK(lsp.frequencies[i] > (i == 0 ? 0.0 : lsp.frequencies[i - 1]));
      CHECK(lsp.frequencies[i] < pi);
    }
    LpcFrame back = LspToLpc(lsp);
    CHECK(oracle::MaxAbsDiff(back.coefficients, lpc.coefficients) < 1e-6);
  }

  std::uniform_real_distribution<double> u(0.05, pi - 0.05);
  for (int trial = 0; trial < 100; trial++) {
    std::vector<double> f(24);
    for (double &v : f) v = u(rng);
    std::sort(f.begin(), f.end());
    for (size_t i = 1; i < f.size(); i++) f[i] = std::max(f[i], f[i - 1] + 0.01);
    if (f.back() >= pi - 0.01) continue;
    LspFrame lsp{f, -1.0};
    LspFrame again = LpcToLsp(LspToLpc(lsp));
    CHECK(oracle::MaxAbsDiff(again.frequencies, f) < 1e-6);
    CHECK(again.log_gain == -1.0);
  }
}

TEST_CASE("lsp perturbation keeps the filter stable") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> jitter(-0.01, 0.01);
  for (int trial = 0; trial < 100; trial++) {
    std::vector<double> frame = oracle::SyntheticSpeechFrame(rng, 1666);
    CodecConfig cfg;
    auto r = Autocorrelate(frame, 24);
    LspFrame lsp = LpcToLsp(LevinsonDurbin(r, 24, 1666));
    for (double &f : lsp.frequencies) f += jitter(rng);
    LpcFrame lpc = LspToLpc(lsp);
    CHECK(oracle::IsStable(lpc.coefficients));
  }
}

TEST_CASE("repair enforces ordering, gap and range") {
  std::vector<double> f{3.5, -1.0, 1.0, 1.0, 1.00001, 3.14159};
  RepairLsp(&f);
  CHECK(f.front() >= kLspMinGap);
  CHECK(f.back() <= pi - kLspMinGap);
  for (size_t i = 1; i < f.size(); i++) CHECK(f[i] - f[i - 1] >= kLspMinGap * 0.999);
}

TEST_CASE("encode_window layout and silence") {
  CodecConfig cfg;
  REQUIRE(cfg.WindowSamples() == 3333);
  REQUIRE(cfg.CodeSize() == 50);

  std::vector<double> zeros(3333, 0.0);
  EncodedAudioVector code = EncodeWindow(zeros, cfg);
  REQUIRE(code.values.size() == 50);
  for (int s = 0; s < 2; s++) {
    for (int k = 1; k <= 24; k++)
      CHECK(code.values[s * 25 + k - 1] == doctest::Approx(k * pi / 25));
    CHECK(code.values[s * 25 + 24] == kLogGainFloor);
  }
  std::vector<double> out = DecodeWindow(code, cfg, 1);
  CHECK(out.size() == 3333);
  CHECK(oracle::Rms(out) < 1e-6);

  CHECK_THROWS_AS(EncodeWindow(std::vector<double>(3332, 0.0), cfg), DegenerateInput);
}

TEST_CASE("encode_window produces ordered LSP blocks on speech-like input") {
  CodecConfig cfg;
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; trial++) {
    std::vector<double> seg = oracle::SyntheticSpeechFrame(rng, 3333);
    EncodedAudioVector code = EncodeWindow(seg, cfg);
    for (int s = 0; s < 2; s++)
      for (int k = 0; k < 24; k++) {
        double f = code.values[s * 25 + k];
        CHECK(f > (k == 0 ? 0.0 : code.values[s * 25 + k - 1]));
        CHECK(f < pi);
      }
    CHECK(DecodeWindow(code, cfg, trial).size() == seg.size());
  }
}

TEST_CASE("white noise energy survives encode/decode") {
  CodecConfig cfg;
  std::mt19937_64 rng(23);
  std::normal_distribution<double> n01;
  for (int trial = 0; trial < 10; trial++) {
    double sigma = 0.01 + 0.1 * trial;
    std::vector<double> x(3333);
    for (double &v : x) v = sigma * n01(rng);
    std::vector<double> y = DecodeWindow(EncodeWindow(x, cfg), cfg, 100 + trial);
    const int len = cfg.SubframeSamples();
    // Skip the crossfade zone so each span is synthesised by one sub-frame.
    for (int s = 0; s < 2; s++) {
      auto in = std::span<const double>(x).subspan(s * len + 32, len - 64);
      auto out = std::span<const double>(y).subspan(s * len + 32, len - 64);
      CHECK(oracle::Rms(out) == doctest::Approx(oracle::Rms(in)).epsilon(0.10));
    }
  }
}

TEST_CASE("decode_window is deterministic and rejects bad codes") {
  CodecConfig cfg;
  std::mt19937_64 rng(29);
  EncodedAudioVector code = EncodeWindow(oracle::SyntheticSpeechFrame(rng, 3333), cfg);
  CHECK(DecodeWindow(code, cfg, 42) == DecodeWindow(code, cfg, 42));
  CHECK(DecodeWindow(code, cfg, 42) != DecodeWindow(code, cfg, 43));

  EncodedAudioVector bad = code;
  bad.values[3] = std::nan("");
  CHECK_THROWS_AS(DecodeWindow(bad, cfg, 1), DegenerateInput);
  bad.values.pop_back();
  CHECK_THROWS_AS(DecodeWindow(bad, cfg, 1), DegenerateInput);
}

TEST_CASE("decoded resonance peaks at the filter frequency") {
  CodecConfig cfg;
  const double fc = 500.0, radius = 0.98;
  const double theta = 2 * pi * fc / cfg.sample_rate;
  LpcFrame lpc;
  lpc.coefficients.assign(24, 0.0);
  lpc.coefficients[0] = 2 * radius * std::cos(theta);
  lpc.coefficients[1] = -radius * radius;
  lpc.log_gain = std::log(0.01);
  LspFrame lsp = LpcToLsp(lpc);

  EncodedAudioVector code;
  for (int s = 0; s < 2; s++) {
    code.values.insert(code.values.end(), lsp.frequencies.begin(), lsp.frequencies.end());
    code.values.push_back(lsp.log_gain);
  }
  for (uint64_t seed = 0; seed < 5; seed++) {
    std::vector<double> y = DecodeWindow(code, cfg, seed);
    double peak = oracle::PeriodogramPeakHz(y, cfg.sample_rate, 20.0, 5000.0);
    CHECK(std::abs(peak - fc) <= 50.0);
  }
}

TEST_CASE("encode/decode sequence length contract") {
  CodecConfig cfg;
  std::mt19937_64 rng(31);
  AudioSignal sig;
  sig.samples = oracle::SyntheticSpeechFrame(rng, 3333 * 3 + 100);
  auto codes = EncodeSignal(sig, cfg);
  CHECK(codes.size() == 3);
  AudioSignal out = DecodeSequence(codes, cfg, 9);
  CHECK(out.samples.size() == 3333 * 3);
}

TEST_CASE("wav write/read") {
  AudioSignal sig;
  sig.sample_rate = 20000;
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 1000; i++) sig.samples.push_back(u(rng));
  QuantizeTo16Bit(&sig);

  std::stringstream ss;
  WriteWav(ss, sig);
  std::string bytes = ss.str();
  CHECK(bytes.size() == 44 + 2000);
  CHECK(bytes.substr(0, 4) == "RIFF");
  CHECK(bytes.substr(36, 4) == "data");
  AudioSignal back = ReadWav(ss);
  CHECK(back == sig);

  std::stringstream junk("RIFFxxxxWAVEfmt ");
  CHECK_THROWS_AS(ReadWav(junk), FormatError);
}
