// harness/experiment.cc

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

#include "lipper/harness/experiment.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "lipper/base/error.h"
#include "lipper/harness/synthetic.h"
#include "lipper/pesq/pesq-lite.h"

namespace lipper {

int NumWindows(const Utterance &u, const CodecConfig &codec) {
  int by_frames = u.NumFrames() / codec.frames_per_window;
  int by_audio = static_cast<int>(u.audio.samples.size()) / codec.WindowSamples();
  return std::min(by_frames, by_audio);
}

VideoWindow ExtractWindow(const Utterance &u, int index, const CodecConfig &codec) {
  const int f = codec.frames_per_window;
  if (index < 0 || (index + 1) * f > u.NumFrames())
    throw ShapeError(u.Id() + ": window " + std::to_string(index) + " out of range");
  VideoWindow w;
  for (const auto &[angle, frames] : u.views)
    w.views[angle].assign(frames.begin() + index * f, frames.begin() + (index + 1) * f);
  return w;
}

std::vector<EncodedAudioVector> UtteranceTargets(const Utterance &u, const CodecConfig &codec) {
  std::vector<EncodedAudioVector> codes = EncodeSignal(u.audio, codec);
  codes.resize(NumWindows(u, codec));
  return codes;
}

AudioSignal ReferenceAudio(const Utterance &u, const CodecConfig &codec) {
  AudioSignal ref = u.audio;
  ref.samples.resize(size_t(NumWindows(u, codec)) * codec.WindowSamples());
  return ref;
}

ReconstructionDataset BuildReconstructionDataset(const std::vector<const Utterance *> &utts,
                                                 const ViewCombination &combination,
                                                 const CodecConfig &codec) {
  ReconstructionDataset ds;
  std::vector<std::pair<const Utterance *, int>> index;
  for (const Utterance *u : utts) {
    std::vector<EncodedAudioVector> t = UtteranceTargets(*u, codec);
    for (int i = 0; i < static_cast<int>(t.size()); i++) {
      index.emplace_back(u, i);
      ds.targets.push_back(std::move(t[i]));
      ds.combinations.push_back(combination);
    }
  }
  ds.input = [index = std::move(index), combination, codec](size_t i) {
    return FuseViews(ExtractWindow(*index[i].first, index[i].second, codec), combination);
  };
  return ds;
}

AudioSignal ReconstructUtterance(const Reconstructor &model, const Utterance &u,
                                 uint64_t decode_seed) {
  const CodecConfig &codec = model.config().codec;
  std::vector<EncodedAudioVector> codes;
  for (int i = 0; i < NumWindows(u, codec); i++)
    codes.push_back(model.Reconstruct(ExtractWindow(u, i, codec)));
  return DecodeSequence(codes, codec, decode_seed);
}

namespace {

uint64_t UtteranceSeed(uint64_t seed, const Utterance &u) {
  return DeriveSeed(seed, {91, static_cast<uint64_t>(u.speaker), static_cast<uint64_t>(u.phrase),
                           static_cast<uint64_t>(u.repetition)});
}

UtteranceScore Score(const Utterance &u, const AudioSignal &decoded, const CodecConfig &codec) {
  return {u.Id(), u.speaker, u.phrase, PesqLite(ReferenceAudio(u, codec), decoded)};
}

void Note(const ProgressFn &progress, const std::string &msg) {
  if (progress) progress(msg);
}

}  // namespace

Reconstructor TrainOnSplit(const Corpus &corpus, const ExperimentSplit &split,
                           const ViewCombination &combination, ReconstructorConfig config,
                           const ProgressFn &progress) {
  config.frame_size = corpus.frame_size;
  config.codec.sample_rate = corpus.sample_rate;
  config.codec.fps = corpus.fps;
  ReconstructionDataset ds =
      BuildReconstructionDataset(ResolveUtterances(corpus, split.train), combination, config.codec);
  Reconstructor model = Reconstructor::Build(combination, config);
  model.InitializeOutputBias(ds.targets);
  Note(progress, "training " + combination.ToString() + " on " + std::to_string(ds.size()) +
                     " windows");
  ReconstructorTrainingReport report = TrainReconstructor(&model, ds);
  if (!report.epoch_loss.empty()) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "loss %.5f -> %.5f", report.epoch_loss.front(),
                  report.epoch_loss.back());
    Note(progress, buf);
  }
  return model;
}

std::vector<UtteranceScore> ScoreSplit(const Reconstructor &model, const Corpus &corpus,
                                       const ExperimentSplit &split, uint64_t seed) {
  std::vector<UtteranceScore> out;
  for (const Utterance *u : ResolveUtterances(corpus, split.test)) {
    if (NumWindows(*u, model.config().codec) == 0) continue;
    out.push_back(Score(*u, ReconstructUtterance(model, *u, UtteranceSeed(seed, *u)),
                        model.config().codec));
  }
  return out;
}

std::vector<UtteranceScore> ScoreRandomCodes(const Corpus &corpus, const ExperimentSplit &split,
                                             const CodecConfig &codec, uint64_t seed) {
  const int m = codec.CodeSize();
  std::vector<double> mean(m, 0.0), sq(m, 0.0);
  size_t n = 0;
  for (const Utterance *u : ResolveUtterances(corpus, split.train))
    for (const EncodedAudioVector &c : UtteranceTargets(*u, codec)) {
      for (int i = 0; i < m; i++) {
        mean[i] += c.values[i];
        sq[i] += c.values[i] * c.values[i];
      }
      n++;
    }
  if (n == 0) throw ProtocolViolation("random baseline needs training windows");
  for (int i = 0; i < m; i++) {
    mean[i] /= n;
    sq[i] = std::sqrt(std::max(0.0, sq[i] / n - mean[i] * mean[i]));
  }
  std::vector<UtteranceScore> out;
  for (const Utterance *u : ResolveUtterances(corpus, split.test)) {
    int w = NumWindows(*u, codec);
    if (w == 0) continue;
    std::mt19937_64 rng(DeriveSeed(UtteranceSeed(seed, *u), {7}));
    std::normal_distribution<double> g;
    std::vector<EncodedAudioVector> codes(w, EncodedAudioVector{std::vector<double>(m)});
    for (EncodedAudioVector &c : codes) {
      for (int i = 0; i < m; i++) c.values[i] = mean[i] + sq[i] * g(rng);
      RepairCode(&c, codec);
    }
    out.push_back(Score(*u, DecodeSequence(codes, codec, UtteranceSeed(seed, *u)), codec));
  }
  return out;
}

const CellResult *ResultTable::Find(const std::string &combination,
                                    const std::string &group) const {
  for (const CellResult &c : cells)
    if (c.combination == combination && c.group == group) return &c;
  return nullptr;
}

void ResultTable::WriteCsv(std::ostream &os, bool include_seconds) const {
  os << "combination,group,status,n,mean,std" << (include_seconds ? ",seconds" : "") << '\n';
  char buf[64];
  for (const CellResult &c : cells) {
    os << c.combination << ',' << c.group << ',' << c.status << ',' << c.n << ',';
    if (c.status == "ok") {
      std::snprintf(buf, sizeof(buf), "%.4f,%.4f", c.mean, c.std);
      os << buf;
    } else {
      os << ',';
    }
    if (include_seconds) {
      std::snprintf(buf, sizeof(buf), ",%.3f", c.seconds);
      os << buf;
    }
    os << '\n';
  }
}

ResultTable ResultTable::ReadCsv(std::istream &is) {
  ResultTable t;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    line_no++;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || (line_no == 1 && line.rfind("combination,", 0) == 0)) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) f.push_back(field);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 6 && f.size() != 7)
      throw FormatError("result table line " + std::to_string(line_no) + ": expected 6 or 7 fields");
    CellResult c;
    c.combination = f[0];
    c.group = f[1];
    c.status = f[2];
    try {
      c.n = std::stoi(f[3]);
      if (c.status == "ok") {
        c.mean = std::stod(f[4]);
        c.std = std::stod(f[5]);
      }
      if (f.size() == 7 && !f[6].empty()) c.seconds = std::stod(f[6]);
    } catch (const std::exception &) {
      throw FormatError("result table line " + std::to_string(line_no) + ": bad number");
    }
    t.cells.push_back(c);
  }
  return t;
}

ResultTable MergeTables(const std::vector<ResultTable> &tables) {
  ResultTable out;
  for (const ResultTable &t : tables)
    for (const CellResult &c : t.cells) {
      bool replaced = false;
      for (CellResult &o : out.cells)
        if (o.combination == c.combination && o.group == c.group) {
          o = c;
          replaced = true;
        }
      if (!replaced) out.cells.push_back(c);
    }
  return out;
}

namespace {

CellResult Summarize(const std::string &combination, const std::string &group,
                     const std::vector<double> &values) {
  CellResult c;
  c.combination = combination;
  c.group = group;
  c.n = static_cast<int>(values.size());
  if (values.empty()) return c;
  for (double v : values) c.mean += v;
  c.mean /= values.size();
  if (values.size() > 1) {
    for (double v : values) c.std += (v - c.mean) * (v - c.mean);
    c.std = std::sqrt(c.std / (values.size() - 1));
  }
  return c;
}

std::string GroupName(char prefix, int id) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%c%02d", prefix, id);
  return buf;
}

void AppendCells(const Corpus &corpus, Protocol protocol, const std::string &combination,
                 const std::vector<UtteranceScore> &scores, double seconds, ResultTable *table) {
  std::map<std::string, std::vector<double>> groups;
  std::vector<double> all;
  for (const UtteranceScore &s : scores) {
    all.push_back(s.score);
    switch (protocol) {
      case Protocol::kSpeakerDependent: groups[GroupName('s', s.speaker)].push_back(s.score); break;
      case Protocol::kOov: groups[GroupName('p', s.phrase)].push_back(s.score); break;
      case Protocol::kSpeakerIndependent:
        groups[corpus.Speaker(s.speaker).female ? "female" : "male"].push_back(s.score);
        break;
    }
  }
  for (const auto &[g, v] : groups) table->cells.push_back(Summarize(combination, g, v));
  table->cells.push_back(Summarize(combination, "all", all));
  for (CellResult &c : table->cells)
    if (c.combination == combination) c.seconds = seconds;
}

}  // namespace

ResultTable RunExperiment(const Corpus &corpus, Protocol protocol,
                          const std::vector<ViewCombination> &combinations,
                          const ExperimentConfig &config) {
  ResultTable table;
  if (combinations.empty()) return table;

  std::vector<ExperimentSplit> splits;
  if (protocol == Protocol::kSpeakerIndependent) {
    auto pair = config.heldout[0] ? config.heldout : DefaultHeldoutPair(corpus);
    splits.push_back(MakeSpeakerIndependentSplit(corpus, pair));
  } else {
    std::vector<int> speakers = config.speakers;
    if (speakers.empty())
      for (const SpeakerInfo &s : corpus.speakers) speakers.push_back(s.id);
    for (int s : speakers) {
      if (protocol == Protocol::kSpeakerDependent) {
        splits.push_back(MakeSpeakerDependentSplit(corpus, s));
      } else {
        for (ExperimentSplit &f : MakeOovSplits(corpus, s)) splits.push_back(std::move(f));
      }
    }
  }

  CodecConfig codec = config.model.codec;
  codec.sample_rate = corpus.sample_rate;
  codec.fps = corpus.fps;
  using Clock = std::chrono::steady_clock;
  if (config.random_baseline) {
    auto t0 = Clock::now();
    std::vector<UtteranceScore> scores;
    for (const ExperimentSplit &s : splits)
      for (UtteranceScore &u : ScoreRandomCodes(corpus, s, codec, config.seed))
        scores.push_back(std::move(u));
    AppendCells(corpus, protocol, "random", scores,
                std::chrono::duration<double>(Clock::now() - t0).count(), &table);
  }
  for (const ViewCombination &combination : combinations) {
    auto t0 = Clock::now();
    std::vector<UtteranceScore> scores;
    bool diverged = false;
    for (const ExperimentSplit &s : splits) {
      try {
        Reconstructor model = TrainOnSplit(corpus, s, combination, config.model, config.progress);
        for (UtteranceScore &u : ScoreSplit(model, corpus, s, config.seed))
          scores.push_back(std::move(u));
      } catch (const DivergenceError &e) {
        Note(config.progress, combination.ToString() + " diverged: " + e.what());
        diverged = true;
        break;
      }
    }
    double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (diverged) {
      CellResult c;
      c.combination = combination.ToString();
      c.group = "all";
      c.status = "diverged";
      c.seconds = seconds;
      table.cells.push_back(c);
    } else {
      AppendCells(corpus, protocol, combination.ToString(), scores, seconds, &table);
    }
  }
  return table;
}

namespace {

std::string HardwareNote() {
  std::ifstream cpuinfo("/proc/cpuinfo");
  std::string line, model = "unknown cpu";
  while (std::getline(cpuinfo, line))
    if (line.rfind("model name", 0) == 0) {
      model = line.substr(line.find(':') + 2);
      break;
    }
  return model + ", " + std::to_string(std::thread::hardware_concurrency()) +
         " hardware threads, 1 used";
}

}  // namespace

DelayReport MeasureDelay(const Reconstructor &model, const VideoWindow &clip, double fps) {
  const CodecConfig &codec = model.config().codec;
  const int f = codec.frames_per_window;
  if (clip.views.empty()) throw DegenerateInput("clip has no views");
  const int frames = static_cast<int>(clip.views.begin()->second.size());
  if (frames < f)
    throw DegenerateInput("clip of " + std::to_string(frames) + " frames is shorter than one window");
  using Clock = std::chrono::steady_clock;
  DelayReport r;
  r.chunks = frames / f;
  r.window_seconds = f / fps;
  double total = 0.0;
  for (int i = 0; i < r.chunks; i++) {
    VideoWindow w;
    for (const auto &[angle, stack] : clip.views)
      w.views[angle].assign(stack.begin() + i * f, stack.begin() + (i + 1) * f);
    auto t0 = Clock::now();
    EncodedAudioVector code = model.Reconstruct(w);
    std::vector<double> audio = DecodeWindow(code, codec, static_cast<uint64_t>(i));
    total += std::chrono::duration<double>(Clock::now() - t0).count();
    if (audio.empty()) throw DegenerateInput("decoder produced no audio");
  }
  r.compute_seconds = total / r.chunks;
  r.latency_seconds = r.window_seconds + r.compute_seconds;
  r.hardware = HardwareNote();
  return r;
}

}  // namespace lipper
