// harness/corpus-io.cc

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

#include "lipper/harness/corpus-io.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "lipper/base/error.h"
#include "lipper/codec/wav-io.h"
#include "lipper/harness/png-io.h"
#include "lipper/harness/toml-lite.h"

namespace lipper {

namespace fs = std::filesystem;

namespace {

std::string FrameName(int i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "frame_%04d.png", i);
  return buf;
}

fs::path UtteranceDir(const fs::path &root, int speaker, int phrase, int rep) {
  return root / ("s" + std::to_string(speaker)) / ("p" + std::to_string(phrase)) /
         ("r" + std::to_string(rep));
}

std::string IntList(const std::vector<int> &v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); i++) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + "]";
}

std::vector<GrayImage> LoadFrames(const fs::path &dir) {
  if (!fs::is_directory(dir)) throw IngestError("missing view folder " + dir.string());
  std::vector<GrayImage> frames;
  while (true) {
    fs::path p = dir / FrameName(static_cast<int>(frames.size()));
    if (!fs::exists(p)) break;
    frames.push_back(ReadPng(p));
  }
  if (frames.empty()) throw IngestError("no frames in " + dir.string());
  size_t pngs = 0;
  for (const auto &e : fs::directory_iterator(dir))
    if (e.path().extension() == ".png") pngs++;
  if (pngs != frames.size())
    throw IngestError(dir.string() + ": frame numbering has a gap after " +
                      FrameName(static_cast<int>(frames.size()) - 1));
  return frames;
}

int ParseTagged(const std::string &name, char tag) {
  if (name.size() < 2 || name[0] != tag) return -1;
  int v = 0;
  for (size_t i = 1; i < name.size(); i++) {
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return -1;
    v = v * 10 + (name[i] - '0');
  }
  return v;
}

}  // namespace

void ExportCorpus(const Corpus &corpus, const fs::path &root) {
  corpus.Validate();
  fs::create_directories(root);
  std::vector<int> speakers, female, views;
  int phrases = 0, reps = 0;
  for (const SpeakerInfo &s : corpus.speakers) {
    speakers.push_back(s.id);
    if (s.female) female.push_back(s.id);
  }
  std::set<int> view_set;
  for (const Utterance &u : corpus.utterances) {
    phrases = std::max(phrases, u.phrase);
    reps = std::max(reps, u.repetition);
    for (const auto &[angle, frames] : u.views) view_set.insert(angle);
  }
  views.assign(view_set.begin(), view_set.end());
  {
    std::ofstream os(root / "corpus.toml");
    if (!os) throw IngestError("cannot write " + (root / "corpus.toml").string());
    os << "[corpus]\n"
       << "fps = " << TomlDouble(corpus.fps) << '\n'
       << "sample_rate = " << TomlDouble(corpus.sample_rate) << '\n'
       << "frame_size = " << corpus.frame_size << '\n'
       << "seed = " << corpus.seed << '\n'
       << "generator = \"" << corpus.generator << "\"\n"
       << "phrases = " << phrases << '\n'
       << "repetitions = " << reps << '\n'
       << "views = " << IntList(views) << '\n'
       << "speakers = " << IntList(speakers) << '\n'
       << "female = " << IntList(female) << '\n';
  }
  for (const Utterance &u : corpus.utterances) {
    fs::path dir = UtteranceDir(root, u.speaker, u.phrase, u.repetition);
    fs::create_directories(dir);
    WriteWav((dir / "audio.wav").string(), u.audio);
    for (const auto &[angle, frames] : u.views) {
      fs::path vdir = dir / ("v" + std::to_string(angle));
      fs::create_directories(vdir);
      for (size_t i = 0; i < frames.size(); i++) WritePng(vdir / FrameName(static_cast<int>(i)), frames[i]);
    }
  }
}

Corpus IngestCorpus(const fs::path &root) {
  const fs::path manifest = root / "corpus.toml";
  if (!fs::exists(manifest)) throw IngestError("missing manifest " + manifest.string());
  Corpus c;
  std::vector<int> views, female;
  int phrases = 0, reps = 0;
  try {
    TomlDocument doc = TomlDocument::ParseFile(manifest);
    c.fps = doc.Get("corpus.fps").AsDouble();
    c.sample_rate = doc.Get("corpus.sample_rate").AsDouble();
    c.frame_size = static_cast<int>(doc.Get("corpus.frame_size").AsInt());
    c.seed = doc.Has("corpus.seed") ? static_cast<uint64_t>(doc.Get("corpus.seed").AsInt()) : 0;
    c.generator = doc.Has("corpus.generator") ? doc.Get("corpus.generator").AsString() : "";
    phrases = static_cast<int>(doc.Get("corpus.phrases").AsInt());
    reps = static_cast<int>(doc.Get("corpus.repetitions").AsInt());
    views = doc.Get("corpus.views").AsIntArray();
    female = doc.Has("corpus.female") ? doc.Get("corpus.female").AsIntArray() : std::vector<int>{};
    for (int id : doc.Get("corpus.speakers").AsIntArray())
      c.speakers.push_back({id, std::find(female.begin(), female.end(), id) != female.end()});
  } catch (const FormatError &e) {
    throw IngestError(std::string("bad manifest: ") + e.what());
  }
  if (phrases < 1 || phrases > kNumPhrases || reps < 1)
    throw IngestError(manifest.string() + ": bad phrase or repetition count");
  for (int v : views)
    if (!IsPoseAngle(v)) throw IngestError(manifest.string() + ": unknown view " + std::to_string(v));

  for (const SpeakerInfo &s : c.speakers) {
    fs::path sdir = root / ("s" + std::to_string(s.id));
    if (!fs::is_directory(sdir)) throw IngestError("missing speaker folder " + sdir.string());
    for (int p = 1; p <= phrases; p++)
      for (int r = 1; r <= reps; r++) {
        fs::path dir = UtteranceDir(root, s.id, p, r);
        if (!fs::is_directory(dir)) throw IngestError("missing utterance folder " + dir.string());
        Utterance u;
        u.speaker = s.id;
        u.phrase = p;
        u.repetition = r;
        fs::path wav = dir / "audio.wav";
        if (!fs::exists(wav)) throw IngestError("missing audio " + wav.string());
        try {
          u.audio = ReadWav(wav.string());
        } catch (const FormatError &e) {
          throw IngestError(wav.string() + ": " + e.what());
        }
        for (int v : views) u.views[v] = LoadFrames(dir / ("v" + std::to_string(v)));
        for (const auto &e : fs::directory_iterator(dir)) {
          int v = ParseTagged(e.path().filename().string(), 'v');
          if (e.is_directory() && v >= 0 && !u.views.count(v))
            throw IngestError("view folder " + e.path().string() + " is not listed in the manifest");
        }
        if (!u.views.empty()) {
          u.frames = static_cast<int>(u.views.begin()->second.size());
        } else {
          u.frames = static_cast<int>(std::lround(u.audio.Duration() * c.fps));
        }
        if (u.audio.sample_rate != c.sample_rate)
          throw IngestError(wav.string() + ": sample rate differs from the manifest");
        c.utterances.push_back(std::move(u));
      }
  }
  c.Validate();
  return c;
}

std::map<int, std::vector<GrayImage>> LoadClip(const fs::path &dir) {
  if (!fs::is_directory(dir)) throw IngestError("missing clip folder " + dir.string());
  std::map<int, std::vector<GrayImage>> views;
  for (const auto &e : fs::directory_iterator(dir)) {
    int v = ParseTagged(e.path().filename().string(), 'v');
    if (e.is_directory() && v >= 0) {
      if (!IsPoseAngle(v)) throw IngestError("unknown view folder " + e.path().string());
      views[v] = LoadFrames(e.path());
    }
  }
  if (views.empty()) views[0] = LoadFrames(dir);
  return views;
}

}  // namespace lipper
