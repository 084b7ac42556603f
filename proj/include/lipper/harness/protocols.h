// lipper/harness/protocols.h

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

#ifndef LIPPER_HARNESS_PROTOCOLS_H_
#define LIPPER_HARNESS_PROTOCOLS_H_

#include <array>
#include <string>
#include <vector>

#include "lipper/harness/corpus.h"

namespace lipper {

enum class Protocol { kSpeakerDependent, kOov, kSpeakerIndependent };

/// "dep", "oov", "indep".
std::string ProtocolName(Protocol p);
Protocol ParseProtocol(const std::string &name);

struct ExperimentSplit {
  Protocol protocol = Protocol::kSpeakerDependent;
  /// Speaker for dep/oov, unused for indep.
  int speaker = 0;
  /// Held-out phrase for oov folds, 0 otherwise.
  int fold = 0;
  std::array<int, 2> heldout{0, 0};
  std::vector<std::string> train;  // utterance ids
  std::vector<std::string> test;
};

/// Repetitions 1-2 of every phrase train, repetition 3 tests.
ExperimentSplit MakeSpeakerDependentSplit(const Corpus &corpus, int speaker);
/// Fold k trains on every other phrase and tests on all repetitions of k.
std::vector<ExperimentSplit> MakeOovSplits(const Corpus &corpus, int speaker);
ExperimentSplit MakeSpeakerIndependentSplit(const Corpus &corpus, std::array<int, 2> heldout);
/// Highest-numbered male-coded and female-coded speakers.
std::array<int, 2> DefaultHeldoutPair(const Corpus &corpus);

/// Checks disjointness, that every id exists and the protocol predicate.
/// Throws ProtocolViolation.
void CheckSplit(const Corpus &corpus, const ExperimentSplit &split);

std::vector<const Utterance *> ResolveUtterances(const Corpus &corpus,
                                                 const std::vector<std::string> &ids);

}  // namespace lipper

#endif  // LIPPER_HARNESS_PROTOCOLS_H_
