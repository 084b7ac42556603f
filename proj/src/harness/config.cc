// harness/config.cc

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

#include "lipper/harness/config.h"

#include <set>

#include "lipper/base/error.h"

namespace lipper {

void ApplyConfig(const TomlDocument &doc, LipperConfig *config) {
  static const std::set<std::string> known = {
      "codec.sample_rate", "codec.lpc_order",       "codec.subframes", "training.lr",
      "training.epochs",   "training.finetune_epochs", "training.batch", "training.seed",
      "corpus.fps",        "model.channels",        "model.gru1",      "model.gru2"};
  for (const auto &[key, value] : doc.values())
    if (!known.count(key)) throw FormatError("unknown config key " + key);

  ReconstructorConfig &m = config->model;
  auto get_int = [&](const char *key, int *out) {
    if (doc.Has(key)) *out = static_cast<int>(doc.Get(key).AsInt());
  };
  if (doc.Has("codec.sample_rate")) m.codec.sample_rate = doc.Get("codec.sample_rate").AsDouble();
  get_int("codec.lpc_order", &m.codec.lpc_order);
  get_int("codec.subframes", &m.codec.subframes);
  if (doc.Has("training.lr")) m.learning_rate = doc.Get("training.lr").AsDouble();
  get_int("training.epochs", &m.epochs);
  get_int("training.finetune_epochs", &m.finetune_epochs);
  get_int("training.batch", &m.batch);
  if (doc.Has("training.seed")) m.seed = static_cast<uint64_t>(doc.Get("training.seed").AsInt());
  if (doc.Has("corpus.fps")) config->fps = doc.Get("corpus.fps").AsDouble();
  m.codec.fps = config->fps;
  if (doc.Has("model.channels")) m.channels = doc.Get("model.channels").AsIntArray();
  get_int("model.gru1", &m.gru1);
  get_int("model.gru2", &m.gru2);

  if (m.channels.size() != 6) throw FormatError("model.channels needs six widths");
  if (m.epochs < 0 || m.finetune_epochs < 0 || m.batch < 1 || !(m.learning_rate > 0.0))
    throw FormatError("invalid training settings");
  m.codec.Validate();
}

LipperConfig LoadConfig(const std::filesystem::path &path) {
  LipperConfig c;
  try {
    ApplyConfig(TomlDocument::ParseFile(path), &c);
  } catch (const FormatError &e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  return c;
}

}  // namespace lipper
