// harness/protocols.cc

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

#include "lipper/harness/protocols.h"

#include <algorithm>
#include <map>
#include <set>

#include "lipper/base/error.h"

namespace lipper {

std::string ProtocolName(Protocol p) {
  switch (p) {
    case Protocol::kSpeakerDependent: return "dep";
    case Protocol::kOov: return "oov";
    case Protocol::kSpeakerIndependent: return "indep";
  }
  return "?";
}

Protocol ParseProtocol(const std::string &name) {
  if (name == "dep") return Protocol::kSpeakerDependent;
  if (name == "oov") return Protocol::kOov;
  if (name == "indep") return Protocol::kSpeakerIndependent;
  throw ProtocolViolation("unknown protocol '" + name + "' (dep, oov or indep)");
}

namespace {

void RequireSpeaker(const Corpus &corpus, int speaker) {
  for (const SpeakerInfo &s : corpus.speakers)
    if (s.id == speaker) return;
  throw ProtocolViolation("speaker " + std::to_string(speaker) + " is not in the corpus");
}

}  // namespace

ExperimentSplit MakeSpeakerDependentSplit(const Corpus &corpus, int speaker) {
  RequireSpeaker(corpus, speaker);
  ExperimentSplit s;
  s.protocol = Protocol::kSpeakerDependent;
  s.speaker = speaker;
  for (const Utterance &u : corpus.utterances) {
    if (u.speaker != speaker) continue;
    (u.repetition < kNumRepetitions ? s.train : s.test).push_back(u.Id());
  }
  CheckSplit(corpus, s);
  return s;
}

std::vector<ExperimentSplit> MakeOovSplits(const Corpus &corpus, int speaker) {
  RequireSpeaker(corpus, speaker);
  std::vector<ExperimentSplit> folds;
  for (int k = 1; k <= kNumPhrases; k++) {
    ExperimentSplit s;
    s.protocol = Protocol::kOov;
    s.speaker = speaker;
    s.fold = k;
    for (const Utterance &u : corpus.utterances)
      if (u.speaker == speaker) (u.phrase == k ? s.test : s.train).push_back(u.Id());
    CheckSplit(corpus, s);
    folds.push_back(std::move(s));
  }
  return folds;
}

ExperimentSplit MakeSpeakerIndependentSplit(const Corpus &corpus, std::array<int, 2> heldout) {
  if (heldout[0] == heldout[1]) throw ProtocolViolation("held-out speakers must differ");
  RequireSpeaker(corpus, heldout[0]);
  RequireSpeaker(corpus, heldout[1]);
  ExperimentSplit s;
  s.protocol = Protocol::kSpeakerIndependent;
  s.heldout = heldout;
  for (const Utterance &u : corpus.utterances) {
    bool held = u.speaker == heldout[0] || u.speaker == heldout[1];
    (held ? s.test : s.train).push_back(u.Id());
  }
  CheckSplit(corpus, s);
  return s;
}

std::array<int, 2> DefaultHeldoutPair(const Corpus &corpus) {
  int male = 0, female = 0;
  for (const SpeakerInfo &s : corpus.speakers) {
    int &slot = s.female ? female : male;
    slot = std::max(slot, s.id);
  }
  if (!male || !female)
    throw ProtocolViolation("speaker-independent protocol needs male and female speakers");
  return {male, female};
}

std::vector<const Utterance *> ResolveUtterances(const Corpus &corpus,
                                                 const std::vector<std::string> &ids) {
  std::map<std::string, const Utterance *> by_id;
  for (const Utterance &u : corpus.utterances) by_id[u.Id()] = &u;
  std::vector<const Utterance *> out;
  for (const std::string &id : ids) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw ProtocolViolation("unknown utterance " + id);
    out.push_back(it->second);
  }
  return out;
}

void CheckSplit(const Corpus &corpus, const ExperimentSplit &split) {
  std::set<std::string> train(split.train.begin(), split.train.end());
  if (train.size() != split.train.size()) throw ProtocolViolation("duplicate training utterance");
  for (const std::string &id : split.test)
    if (train.count(id)) throw ProtocolViolation("utterance " + id + " is in train and test");
  auto tr = ResolveUtterances(corpus, split.train);
  auto te = ResolveUtterances(corpus, split.test);
  if (tr.empty() || te.empty()) throw ProtocolViolation("empty train or test set");
  switch (split.protocol) {
    case Protocol::kSpeakerDependent: {
      std::set<int> tr_phrases, te_phrases;
      for (auto *u : tr) {
        if (u->speaker != split.speaker || u->repetition >= kNumRepetitions)
          throw ProtocolViolation(u->Id() + " violates the speaker-dependent split");
        tr_phrases.insert(u->phrase);
      }
      for (auto *u : te) {
        if (u->speaker != split.speaker || u->repetition != kNumRepetitions)
          throw ProtocolViolation(u->Id() + " violates the speaker-dependent split");
        te_phrases.insert(u->phrase);
      }
      if (tr_phrases != te_phrases)
        throw ProtocolViolation("every phrase must appear in train and test");
      break;
    }
    case Protocol::kOov:
      for (auto *u : tr)
        if (u->speaker != split.speaker || u->phrase == split.fold)
          throw ProtocolViolation(u->Id() + " violates out-of-vocabulary fold " +
                                  std::to_string(split.fold));
      for (auto *u : te)
        if (u->speaker != split.speaker || u->phrase != split.fold)
          throw ProtocolViolation(u->Id() + " violates out-of-vocabulary fold " +
                                  std::to_string(split.fold));
      break;
    case Protocol::kSpeakerIndependent:
      for (auto *u : tr)
        if (u->speaker == split.heldout[0] || u->speaker == split.heldout[1])
          throw ProtocolViolation(u->Id() + " belongs to a held-out speaker");
      for (auto *u : te)
        if (u->speaker != split.heldout[0] && u->speaker != split.heldout[1])
          throw ProtocolViolation(u->Id() + " is not from a held-out speaker");
      break;
  }
}

}  // namespace lipper
