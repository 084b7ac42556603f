// tests/harness-test.cc

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
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "lipper/base/error.h"
#include "lipper/codec/wav-io.h"
#include "lipper/harness/config.h"
#include "lipper/harness/corpus-io.h"
#include "lipper/harness/experiment.h"
#include "lipper/harness/protocols.h"
#include "lipper/harness/synthetic.h"
#include "lipper/harness/toml-lite.h"

using namespace lipper;
namespace fs = std::filesystem;

namespace {

Corpus SmallCorpus(int speakers = 3, uint64_t seed = 1, int size = 16,
                   std::vector<int> views = {0, 45}) {
  SyntheticConfig c;
  c.speakers = speakers;
  c.seed = seed;
  c.frame_size = size;
  c.views = std::move(views);
  return GenerateSyntheticCorpus(c);
}

fs::path TempDir(const std::string &name) {
  fs::path p = fs::temp_directory_path() / ("lipper-harness-test-" + name);
  fs::remove_all(p);
  return p;
}

std::string ReadAll(const fs::path &p) {
  std::ifstream is(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(is), {});
}

}  // namespace

TEST_CASE("synthetic corpus shape and determinism") {
  SyntheticConfig c;
  c.speakers = 2;
  c.frame_size = 16;
  Corpus a = GenerateSyntheticCorpus(c), b = GenerateSyntheticCorpus(c);
  CHECK(a == b);
  CHECK(a.utterances.size() == 2u * 10 * 3);
  for (const Utterance &u : a.utterances) {
    CHECK(u.views.size() == 5);
    for (const auto &[angle, frames] : u.views) {
      CHECK(static_cast<int>(frames.size()) == u.NumFrames());
      CHECK(frames[0].width == 16);
    }
    double expect = u.NumFrames() / a.fps * a.sample_rate;
    CHECK(std::abs(static_cast<double>(u.audio.samples.size()) - expect) <= 1.0);
  }
  c.seed = 2;
  CHECK(!(GenerateSyntheticCorpus(c) == a));
  c.speakers = 1;
  CHECK_THROWS_AS(GenerateSyntheticCorpus(c), DegenerateInput);
}

TEST_CASE("speaker slots follow the seven-to-three timbre split") {
  int female = 0;
  for (int i = 0; i < 10; i++) female += IsFemaleSlot(i);
  CHECK(female == 3);
  SpeakerStyle m = MakeSpeakerStyle(1, 0), f = MakeSpeakerStyle(1, 1);
  CHECK(!m.female);
  CHECK(f.female);
  CHECK(f.pitch_hz > m.pitch_hz);
  CHECK(f.formant_scale > m.formant_scale);
}

TEST_CASE("projected mouth width shrinks toward profile while protrusion shows") {
  SpeakerStyle s = MakeSpeakerStyle(1, 0);
  auto dark = [](const GrayImage &g) {
    return std::count_if(g.pixels.begin(), g.pixels.end(), [](uint8_t p) { return p < 40; });
  };
  Articulation wide{0.6, 1.0, 0.0}, narrow{0.6, 0.0, 0.0}, round{0.6, 0.5, 1.0}, flat{0.6, 0.5, 0.0};
  // Spread changes the frontal view more than the profile view.
  long front = dark(RenderLips(wide, 0, 64, s)) - dark(RenderLips(narrow, 0, 64, s));
  long side = dark(RenderLips(wide, 90, 64, s)) - dark(RenderLips(narrow, 90, 64, s));
  CHECK(front > side);
  CHECK(RenderLips(round, 0, 64, s) == RenderLips(flat, 0, 64, s));
  CHECK(!(RenderLips(round, 90, 64, s) == RenderLips(flat, 90, 64, s)));
}

TEST_CASE("pose dataset is balanced and deterministic") {
  PoseDataset d = MakePoseDataset(6, 24, 3);
  REQUIRE(d.size() == 30);
  for (int a : kPoseAngles) CHECK(std::count(d.angles.begin(), d.angles.end(), a) == 6);
  CHECK(d.image(7) == d.image(7));
  CHECK(d.image(7).width == 24);
}

TEST_CASE("speaker-dependent split") {
  Corpus c = SmallCorpus();
  ExperimentSplit s = MakeSpeakerDependentSplit(c, 2);
  CHECK(s.train.size() == 20);
  CHECK(s.test.size() == 10);
  std::set<std::string> tr(s.train.begin(), s.train.end());
  std::set<int> phrases_train, phrases_test;
  for (auto *u : ResolveUtterances(c, s.train)) {
    CHECK(u->speaker == 2);
    phrases_train.insert(u->phrase);
  }
  for (auto *u : ResolveUtterances(c, s.test)) {
    CHECK(u->repetition == 3);
    CHECK(!tr.count(u->Id()));
    phrases_test.insert(u->phrase);
  }
  CHECK(phrases_train.size() == 10);
  CHECK(phrases_test == phrases_train);
  CHECK_THROWS_AS(MakeSpeakerDependentSplit(c, 9), ProtocolViolation);
}

TEST_CASE("out-of-vocabulary folds") {
  Corpus c = SmallCorpus();
  auto folds = MakeOovSplits(c, 1);
  REQUIRE(folds.size() == 10);
  std::set<int> tested;
  for (const ExperimentSplit &f : folds) {
    for (auto *u : ResolveUtterances(c, f.test)) {
      CHECK(u->phrase == f.fold);
      tested.insert(u->phrase);
    }
    for (auto *u : ResolveUtterances(c, f.train)) CHECK(u->phrase != f.fold);
    CHECK(f.test.size() == 3);
    CHECK(f.train.size() == 27);
  }
  CHECK(tested.size() == 10);
}

TEST_CASE("speaker-independent split") {
  Corpus c = SmallCorpus(4);
  auto pair = DefaultHeldoutPair(c);
  CHECK(!c.Speaker(pair[0]).female);
  CHECK(c.Speaker(pair[1]).female);
  ExperimentSplit s = MakeSpeakerIndependentSplit(c, pair);
  for (auto *u : ResolveUtterances(c, s.train)) CHECK((u->speaker != pair[0] && u->speaker != pair[1]));
  CHECK(s.train.size() == 60);
  CHECK(s.test.size() == 60);
  CHECK_THROWS_AS(MakeSpeakerIndependentSplit(c, {1, 1}), ProtocolViolation);

  ExperimentSplit bad = s;
  bad.train.push_back(bad.test.front());
  CHECK_THROWS_AS(CheckSplit(c, bad), ProtocolViolation);
}

TEST_CASE("export then ingest is the identity") {
  Corpus c = SmallCorpus(2, 5, 16, {0, 30});
  fs::path root = TempDir("roundtrip");
  ExportCorpus(c, root);
  CHECK(fs::exists(root / "s1/p3/r2/v30/frame_0000.png"));
  CHECK(fs::exists(root / "s2/p10/r3/audio.wav"));
  Corpus back = IngestCorpus(root);
  CHECK(back == c);
  fs::remove_all(root);

  Corpus audio_only = SmallCorpus(2, 5, 16, {});
  ExportCorpus(audio_only, root);
  CHECK(IngestCorpus(root) == audio_only);
  fs::remove_all(root);
}

TEST_CASE("ingest errors name the problem") {
  Corpus c = SmallCorpus(2, 5, 16, {0, 30});
  fs::path root = TempDir("errors");
  ExportCorpus(c, root);
  fs::remove_all(root / "s2/p4/r1/v30");
  try {
    IngestCorpus(root);
    FAIL("expected IngestError");
  } catch (const IngestError &e) {
    CHECK(std::string(e.what()).find("s2/p4/r1/v30") != std::string::npos);
  }
  fs::remove_all(root);

  ExportCorpus(c, root);
  AudioSignal a = ReadWav((root / "s1/p1/r1/audio.wav").string());
  a.samples.insert(a.samples.end(), a.samples.begin(), a.samples.end());
  WriteWav((root / "s1/p1/r1/audio.wav").string(), a);
  CHECK_THROWS_AS(IngestCorpus(root), AlignmentError);
  fs::remove(root / "s1/p1/r1/audio.wav");
  CHECK_THROWS_AS(IngestCorpus(root), IngestError);
  fs::remove(root / "corpus.toml");
  CHECK_THROWS_AS(IngestCorpus(root), IngestError);
  fs::remove_all(root);
}

TEST_CASE("toml subset") {
  std::istringstream is(
      "# comment\ntop = 1\n[codec]\nsample_rate = 16_000.5 # trailing\nname = \"a \\\"b\\\"\"\n"
      "flags = [true, false]\nsizes = [1, 2, 3,]\n[other]\nx = -4\n");
  TomlDocument d = TomlDocument::Parse(is);
  CHECK(d.Get("top").AsInt() == 1);
  CHECK(d.Get("codec.sample_rate").AsDouble() == 16000.5);
  CHECK(d.Get("codec.name").AsString() == "a \"b\"");
  CHECK(d.Get("codec.flags").array.size() == 2);
  CHECK(d.Get("codec.sizes").AsIntArray() == std::vector<int>{1, 2, 3});
  CHECK(d.Get("other.x").AsDouble() == -4.0);
  CHECK_THROWS_AS(d.Get("codec.name").AsInt(), FormatError);
  CHECK_THROWS_AS(d.Get("missing"), FormatError);
  for (const char *bad : {"a = \n", "a = 1 2\n", "a = \"x\n", "a = 1\na = 2\n", "[t\n", "= 3\n"}) {
    std::istringstream b(bad);
    CHECK_THROWS_AS(TomlDocument::Parse(b), FormatError);
  }
  for (double v : {30.0, 0.1, 20000.0, 1e-7, 29.97}) {
    std::istringstream r("v = " + TomlDouble(v) + "\n");
    CHECK(TomlDocument::Parse(r).Get("v").AsDouble() == v);
  }
}

TEST_CASE("config file overrides defaults") {
  std::istringstream is(
      "[codec]\nlpc_order = 12\n[training]\nlr = 0.0005\nepochs = 7\nseed = 3\n"
      "[corpus]\nfps = 25\n[model]\nchannels = [4, 4, 8, 8, 16, 16]\ngru1 = 8\n");
  LipperConfig c;
  ApplyConfig(TomlDocument::Parse(is), &c);
  CHECK(c.model.codec.lpc_order == 12);
  CHECK(c.model.codec.CodeSize() == 26);
  CHECK(c.model.learning_rate == 0.0005);
  CHECK(c.model.epochs == 7);
  CHECK(c.model.finetune_epochs == 20);
  CHECK(c.model.seed == 3u);
  CHECK(c.fps == 25.0);
  CHECK(c.model.codec.fps == 25.0);
  CHECK(c.model.channels[5] == 16);
  CHECK(c.model.gru1 == 8);
  std::istringstream unknown("[training]\nlearning_rate = 1\n");
  LipperConfig d;
  CHECK_THROWS_AS(ApplyConfig(TomlDocument::Parse(unknown), &d), FormatError);
}

TEST_CASE("windows cover whole frame groups and matching audio") {
  Corpus c = SmallCorpus(2);
  CodecConfig codec;
  const Utterance &u = c.utterances[4];
  int n = NumWindows(u, codec);
  CHECK(n == u.NumFrames() / 5);
  VideoWindow w = ExtractWindow(u, n - 1, codec);
  CHECK(w.views.at(45).size() == 5);
  CHECK(w.views.at(45)[0] == u.views.at(45)[(n - 1) * 5]);
  CHECK_THROWS_AS(ExtractWindow(u, n, codec), ShapeError);
  CHECK(UtteranceTargets(u, codec).size() == size_t(n));
  CHECK(ReferenceAudio(u, codec).samples.size() == size_t(n) * 3333);
}

TEST_CASE("result table csv") {
  ResultTable t;
  t.cells.push_back({"0", "all", "ok", 10, 2.5, 0.25, 1.5});
  t.cells.push_back({"0+45", "all", "diverged", 0, 0, 0, 3.0});
  std::stringstream ss;
  t.WriteCsv(ss);
  CHECK(ss.str() == "combination,group,status,n,mean,std\n0,all,ok,10,2.5000,0.2500\n0+45,all,diverged,0,,\n");
  ResultTable back = ResultTable::ReadCsv(ss);
  REQUIRE(back.cells.size() == 2);
  CHECK(back.cells[0].mean == 2.5);
  CHECK(back.cells[1].status == "diverged");

  ResultTable u;
  u.cells.push_back({"0+45", "all", "ok", 10, 3.0, 0.1, 0});
  u.cells.push_back({"30", "all", "ok", 10, 1.0, 0.1, 0});
  ResultTable m = MergeTables({t, u});
  REQUIRE(m.cells.size() == 3);
  CHECK(m.Find("0+45", "all")->status == "ok");
  CHECK(m.Find("30", "all") != nullptr);
}

TEST_CASE("run_experiment: empty list, reproducible bytes, baseline rows") {
  Corpus c = SmallCorpus(2, 3, 16, {0, 45});
  ExperimentConfig cfg;
  cfg.model.channels = {2, 2, 2, 2, 4, 4};
  cfg.model.gru1 = 4;
  cfg.model.gru2 = 4;
  cfg.model.epochs = 1;
  cfg.model.finetune_epochs = 1;
  cfg.speakers = {1};
  CHECK(RunExperiment(c, Protocol::kSpeakerDependent, {}, cfg).cells.empty());

  std::vector<ViewCombination> combos{ViewCombination({0}), ViewCombination({0, 45})};
  ResultTable a = RunExperiment(c, Protocol::kSpeakerDependent, combos, cfg);
  ResultTable b = RunExperiment(c, Protocol::kSpeakerDependent, combos, cfg);
  std::stringstream sa, sb;
  a.WriteCsv(sa);
  b.WriteCsv(sb);
  CHECK(sa.str() == sb.str());
  REQUIRE(a.Find("random", "all"));
  CHECK(a.Find("random", "all")->n == 10);
  CHECK(a.Find("0+45", "s01")->n == 10);
  for (const CellResult &cell : a.cells) {
    CHECK(cell.mean >= -0.5);
    CHECK(cell.mean <= 4.5);
  }
}

TEST_CASE("measure_delay") {
  ReconstructorConfig rc;
  rc.frame_size = 16;
  rc.channels = {2, 2, 2, 2, 4, 4};
  Reconstructor m = Reconstructor::Build(ViewCombination({0}), rc);
  Corpus c = SmallCorpus(2, 1, 16, {0});
  VideoWindow clip;
  const auto &frames = c.utterances[0].views.at(0);
  REQUIRE(frames.size() >= 10);
  clip.views[0].assign(frames.begin(), frames.begin() + 10);
  DelayReport r = MeasureDelay(m, clip, 30.0);
  CHECK(r.chunks == 2);
  CHECK(r.window_seconds == doctest::Approx(5.0 / 30.0));
  CHECK(r.latency_seconds >= 5.0 / 30.0);
  CHECK(!r.hardware.empty());
  clip.views[0].resize(4);
  CHECK_THROWS_AS(MeasureDelay(m, clip, 30.0), DegenerateInput);
}

TEST_CASE("corpus export bytes depend only on the seed") {
  fs::path a = TempDir("bytes-a"), b = TempDir("bytes-b");
  ExportCorpus(SmallCorpus(2, 8, 16, {0}), a);
  ExportCorpus(SmallCorpus(2, 8, 16, {0}), b);
  for (const auto &e : fs::recursive_directory_iterator(a)) {
    if (!e.is_regular_file()) continue;
    fs::path rel = fs::relative(e.path(), a);
    REQUIRE(fs::exists(b / rel));
    CHECK(ReadAll(e.path()) == ReadAll(b / rel));
  }
  fs::remove_all(a);
  fs::remove_all(b);
}
