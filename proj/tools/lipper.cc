// tools/lipper.cc

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

// lipper: command-line front end.
//
//   lipper gen-corpus --speakers N --seed S --out DIR
//   lipper train --protocol {dep,oov,indep} --views 0+45+60 --corpus DIR --out CKPT
//   lipper eval --ckpt CKPT --corpus DIR --report CSV
//   lipper delay --ckpt CKPT --clip DIR
//   lipper report --merge CSV...
//   lipper experiment --protocol dep --views 0,0+45+60 --corpus DIR --report CSV
//   lipper select --available 0,45,60
//
// Exit codes: 0 success, 1 usage or other error, 2 protocol violation,
// 3 ingest or alignment error, 4 training divergence.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lipper/base/error.h"
#include "lipper/harness/config.h"
#include "lipper/harness/corpus-io.h"
#include "lipper/harness/experiment.h"
#include "lipper/harness/synthetic.h"

namespace {

using namespace lipper;
namespace fs = std::filesystem;

std::vector<int> ParseIntList(const std::string &text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stoi(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception &) {
      throw CLI::ValidationError("bad integer list '" + text + "'");
    }
  }
  return out;
}

LipperConfig ConfigFrom(const std::string &path) {
  return path.empty() ? LipperConfig{} : LoadConfig(path);
}

void Log(const std::string &msg) { std::fprintf(stderr, "lipper: %s\n", msg.c_str()); }

fs::path SplitPath(const std::string &ckpt) { return ckpt + ".split.json"; }

void WriteSplitInfo(const std::string &ckpt, const ExperimentSplit &s, uint64_t seed) {
  nlohmann::json j = {{"protocol", ProtocolName(s.protocol)},
                      {"speaker", s.speaker},
                      {"fold", s.fold},
                      {"heldout", s.heldout},
                      {"seed", seed}};
  std::ofstream os(SplitPath(ckpt));
  if (!os) throw FormatError("cannot write " + SplitPath(ckpt).string());
  os << j.dump(2) << '\n';
}

ExperimentSplit RebuildSplit(const Corpus &corpus, const std::string &ckpt, uint64_t *seed) {
  std::ifstream is(SplitPath(ckpt));
  if (!is) throw FormatError("missing split description " + SplitPath(ckpt).string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(is);
    Protocol p = ParseProtocol(j.at("protocol").get<std::string>());
    *seed = j.at("seed").get<uint64_t>();
    int speaker = j.at("speaker").get<int>();
    switch (p) {
      case Protocol::kSpeakerDependent: return MakeSpeakerDependentSplit(corpus, speaker);
      case Protocol::kOov: return MakeOovSplits(corpus, speaker).at(j.at("fold").get<int>() - 1);
      case Protocol::kSpeakerIndependent:
        return MakeSpeakerIndependentSplit(corpus, j.at("heldout").get<std::array<int, 2>>());
    }
  } catch (const nlohmann::json::exception &e) {
    throw FormatError(SplitPath(ckpt).string() + ": " + e.what());
  }
  throw FormatError("bad split description");
}

int Run(int argc, char **argv) {
  CLI::App app{"Multi-view lip-to-speech reconstruction toolkit"};
  app.require_subcommand(1);

  // gen-corpus
  auto *gen = app.add_subcommand("gen-corpus", "Generate and export a synthetic corpus");
  SyntheticConfig sc;
  std::string gen_out, gen_views;
  bool audio_only = false;
  gen->add_option("--speakers", sc.speakers, "Number of speakers (>= 2)")->default_val(10);
  gen->add_option("--seed", sc.seed, "Corpus seed")->default_val(1);
  gen->add_option("--out", gen_out, "Output directory")->required();
  gen->add_option("--frame-size", sc.frame_size, "Square frame size in pixels")->default_val(128);
  gen->add_option("--views", gen_views, "Comma-separated views (default all five)");
  gen->add_flag("--audio-only", audio_only, "Render no video");

  // train
  auto *train = app.add_subcommand("train", "Train a reconstructor on one protocol split");
  std::string protocol = "dep", views = "0", corpus_dir, out, config_path, heldout;
  int speaker = 0, fold = 1;
  train->add_option("--protocol", protocol, "dep, oov or indep")->default_val("dep");
  train->add_option("--views", views, "View combination, e.g. 0+45+60")->default_val("0");
  train->add_option("--corpus", corpus_dir, "Corpus directory")->required();
  train->add_option("--out", out, "Checkpoint path")->required();
  train->add_option("--speaker", speaker, "Speaker for dep/oov (default: first)");
  train->add_option("--fold", fold, "Held-out phrase for oov (1-10)")->default_val(1);
  train->add_option("--heldout", heldout, "Two held-out speakers for indep, e.g. 9,10");
  train->add_option("--config", config_path, "TOML config file");

  // eval
  auto *eval = app.add_subcommand("eval", "Score a checkpoint on its test split");
  std::string ckpt, report;
  bool with_seconds = false;
  eval->add_option("--ckpt", ckpt, "Checkpoint path")->required();
  eval->add_option("--corpus", corpus_dir, "Corpus directory")->required();
  eval->add_option("--report", report, "Output CSV")->required();
  eval->add_flag("--seconds", with_seconds, "Add the wall-clock column");

  // delay
  auto *delay = app.add_subcommand("delay", "Measure per-chunk latency");
  std::string clip;
  double fps = 30.0;
  delay->add_option("--ckpt", ckpt, "Checkpoint path")->required();
  delay->add_option("--clip", clip, "Clip directory (v{angle}/frame_%04d.png)")->required();
  delay->add_option("--fps", fps, "Frame rate")->default_val(30.0);

  // report
  auto *rep = app.add_subcommand("report", "Merge result tables");
  std::vector<std::string> merge;
  std::string merged_out;
  rep->add_option("--merge", merge, "Result CSVs")->required();
  rep->add_option("--out", merged_out, "Output CSV (default stdout)");

  // experiment
  auto *exp = app.add_subcommand("experiment", "Run a protocol over several view combinations");
  std::string combos = "0";
  std::string exp_speakers;
  exp->add_option("--protocol", protocol, "dep, oov or indep")->default_val("dep");
  exp->add_option("--views", combos, "Comma-separated combinations, e.g. 0,0+45+60")
      ->default_val("0");
  exp->add_option("--corpus", corpus_dir, "Corpus directory")->required();
  exp->add_option("--report", report, "Output CSV")->required();
  exp->add_option("--speakers", exp_speakers, "Speakers for dep/oov (default all)");
  exp->add_option("--heldout", heldout, "Two held-out speakers for indep");
  exp->add_option("--config", config_path, "TOML config file");
  exp->add_flag("--seconds", with_seconds, "Add the wall-clock column");

  // select
  auto *sel = app.add_subcommand("select", "Pick the view combination for the available views");
  std::string available, table_path;
  sel->add_option("--available", available, "Available views, e.g. 0,45")->required();
  sel->add_option("--table", table_path, "Score table CSV (default: published scores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (gen->parsed()) {
    if (audio_only) {
      sc.views.clear();
    } else if (!gen_views.empty()) {
      sc.views = ParseIntList(gen_views);
    }
    Corpus c = GenerateSyntheticCorpus(sc);
    ExportCorpus(c, gen_out);
    Log("wrote " + std::to_string(c.utterances.size()) + " utterances to " + gen_out);
    return 0;
  }

  auto parse_heldout = [&]() -> std::array<int, 2> {
    if (heldout.empty()) return {0, 0};
    std::vector<int> v = ParseIntList(heldout);
    if (v.size() != 2) throw ProtocolViolation("--heldout needs exactly two speakers");
    return {v[0], v[1]};
  };

  if (train->parsed()) {
    LipperConfig cfg = ConfigFrom(config_path);
    Corpus c = IngestCorpus(corpus_dir);
    if (!speaker) speaker = c.speakers.at(0).id;
    Protocol p = ParseProtocol(protocol);
    ExperimentSplit split;
    if (p == Protocol::kSpeakerDependent) split = MakeSpeakerDependentSplit(c, speaker);
    if (p == Protocol::kOov) {
      if (fold < 1 || fold > kNumPhrases) throw ProtocolViolation("--fold must be 1..10");
      split = MakeOovSplits(c, speaker)[fold - 1];
    }
    if (p == Protocol::kSpeakerIndependent) {
      auto pair = parse_heldout();
      split = MakeSpeakerIndependentSplit(c, pair[0] ? pair : DefaultHeldoutPair(c));
    }
    Reconstructor model =
        TrainOnSplit(c, split, ViewCombination::Parse(views), cfg.model, Log);
    model.Save(out);
    WriteSplitInfo(out, split, cfg.model.seed);
    Log("saved " + out);
    return 0;
  }

  if (eval->parsed()) {
    Reconstructor model = Reconstructor::Load(ckpt);
    Corpus c = IngestCorpus(corpus_dir);
    uint64_t seed = 1;
    ExperimentSplit split = RebuildSplit(c, ckpt, &seed);
    ResultTable t;
    auto add = [&](const std::string &name, const std::vector<UtteranceScore> &scores) {
      std::vector<double> v;
      for (const auto &s : scores) v.push_back(s.score);
      CellResult cell;
      cell.combination = name;
      cell.group = "all";
      cell.n = static_cast<int>(v.size());
      for (double x : v) cell.mean += x;
      if (!v.empty()) cell.mean /= v.size();
      for (double x : v) cell.std += (x - cell.mean) * (x - cell.mean);
      if (v.size() > 1) cell.std = std::sqrt(cell.std / (v.size() - 1));
      t.cells.push_back(cell);
    };
    add("random", ScoreRandomCodes(c, split, model.config().codec, seed));
    add(model.combination().ToString(), ScoreSplit(model, c, split, seed));
    std::ofstream os(report);
    if (!os) throw FormatError("cannot write " + report);
    t.WriteCsv(os, with_seconds);
    t.WriteCsv(std::cout, with_seconds);
    return 0;
  }

  if (delay->parsed()) {
    Reconstructor model = Reconstructor::Load(ckpt);
    VideoWindow w;
    w.views = LoadClip(clip);
    DelayReport r = MeasureDelay(model, w, fps);
    std::printf("chunks,window_seconds,compute_seconds,latency_seconds,hardware\n");
    std::printf("%d,%.4f,%.4f,%.4f,\"%s\"\n", r.chunks, r.window_seconds, r.compute_seconds,
                r.latency_seconds, r.hardware.c_str());
    return 0;
  }

  if (rep->parsed()) {
    std::vector<ResultTable> tables;
    for (const std::string &path : merge) {
      std::ifstream is(path);
      if (!is) throw FormatError("cannot read " + path);
      tables.push_back(ResultTable::ReadCsv(is));
    }
    ResultTable merged = MergeTables(tables);
    bool seconds = false;
    for (const CellResult &c : merged.cells) seconds |= c.seconds != 0.0;
    if (merged_out.empty()) {
      merged.WriteCsv(std::cout, seconds);
    } else {
      std::ofstream os(merged_out);
      if (!os) throw FormatError("cannot write " + merged_out);
      merged.WriteCsv(os, seconds);
    }
    return 0;
  }

  if (exp->parsed()) {
    LipperConfig cfg = ConfigFrom(config_path);
    Corpus c = IngestCorpus(corpus_dir);
    ExperimentConfig ec;
    ec.model = cfg.model;
    ec.seed = cfg.model.seed;
    if (!exp_speakers.empty()) ec.speakers = ParseIntList(exp_speakers);
    ec.heldout = parse_heldout();
    ec.progress = Log;
    std::vector<ViewCombination> list;
    std::stringstream ss(combos);
    std::string part;
    while (std::getline(ss, part, ',')) list.push_back(ViewCombination::Parse(part));
    ResultTable t = RunExperiment(c, ParseProtocol(protocol), list, ec);
    std::ofstream os(report);
    if (!os) throw FormatError("cannot write " + report);
    t.WriteCsv(os, with_seconds);
    t.WriteCsv(std::cout, with_seconds);
    return 0;
  }

  if (sel->parsed()) {
    CombinationScoreTable table = CombinationScoreTable::Published();
    if (!table_path.empty()) {
      std::ifstream is(table_path);
      if (!is) throw FormatError("cannot read " + table_path);
      table = CombinationScoreTable::ReadCsv(is);
    }
    std::vector<int> v = ParseIntList(available);
    ViewCombination best = SelectViewCombination(std::set<int>(v.begin(), v.end()), table);
    std::printf("%s,%.3f\n", best.ToString().c_str(), table.Get(best));
    return 0;
  }
  return 1;
}

}  // namespace

int main(int argc, char **argv) {
  try {
    return Run(argc, argv);
  } catch (const lipper::ProtocolViolation &e) {
    std::fprintf(stderr, "lipper: protocol violation: %s\n", e.what());
    return 2;
  } catch (const lipper::IngestError &e) {
    std::fprintf(stderr, "lipper: ingest error: %s\n", e.what());
    return 3;
  } catch (const lipper::AlignmentError &e) {
    std::fprintf(stderr, "lipper: alignment error: %s\n", e.what());
    return 3;
  } catch (const lipper::DivergenceError &e) {
    std::fprintf(stderr, "lipper: training diverged: %s\n", e.what());
    return 4;
  } catch (const CLI::Error &e) {
    std::fprintf(stderr, "lipper: %s\n", e.what());
    return 1;
  } catch (const std::exception &e) {
    std::fprintf(stderr, "lipper: %s\n", e.what());
    return 1;
  }
}
