// lipper/harness/corpus-io.h

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

#ifndef LIPPER_HARNESS_CORPUS_IO_H_
#define LIPPER_HARNESS_CORPUS_IO_H_

#include <filesystem>

#include "lipper/harness/corpus.h"

namespace lipper {

/// Writes root/corpus.toml and, per utterance,
/// root/s{speaker}/p{phrase}/r{rep}/v{angle}/frame_%04d.png plus
/// root/s{speaker}/p{phrase}/r{rep}/audio.wav.  Output bytes depend only on
/// the corpus.
void ExportCorpus(const Corpus &corpus, const std::filesystem::path &root);

/// Reads a tree written by ExportCorpus (or laid out the same way) and
/// validates it.  Missing manifest, audio or view folders throw IngestError
/// naming the path; frame/audio length mismatches throw AlignmentError.
Corpus IngestCorpus(const std::filesystem::path &root);

/// Loads one clip directory holding v{angle}/frame_%04d.png folders (or the
/// frames directly, taken as view 0).
std::map<int, std::vector<GrayImage>> LoadClip(const std::filesystem::path &dir);

}  // namespace lipper

#endif  // LIPPER_HARNESS_CORPUS_IO_H_
