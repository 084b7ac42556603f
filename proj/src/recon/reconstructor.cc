// recon/reconstructor.cc

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

#include "lipper/recon/reconstructor.h"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "lipper/base/error.h"
#include "lipper/nn/checkpoint.h"
#include "lipper/nn/trainer.h"

namespace lipper {

ViewCombination::ViewCombination(std::vector<int> angles) : angles_(std::move(angles)) {
  if (angles_.empty()) throw Error("view combination must not be empty");
  std::sort(angles_.begin(), angles_.end());
  for (size_t i = 0; i < angles_.size(); i++) {
    if (!IsPoseAngle(angles_[i])) throw Error("unknown view " + std::to_string(angles_[i]));
    if (i && angles_[i] == angles_[i - 1])
      throw Error("duplicate view " + std::to_string(angles_[i]));
  }
}

ViewCombination ViewCombination::Parse(const std::string &text) {
  std::vector<int> angles;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, '+')) {
    size_t a = part.find_first_not_of(" \t"), b = part.find_last_not_of(" \t");
    if (a == std::string::npos) throw Error("bad view combination '" + text + "'");
    part = part.substr(a, b - a + 1);
    size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(part, &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (used != part.size()) throw Error("bad view combination '" + text + "'");
    angles.push_back(v);
  }
  return ViewCombination(std::move(angles));
}

std::vector<ViewCombination> ViewCombination::All() {
  std::vector<ViewCombination> all;
  const int n = static_cast<int>(kPoseAngles.size());
  for (int k = 1; k <= n; k++) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; i++) idx[i] = i;
    while (true) {
      std::vector<int> angles;
      for (int i : idx) angles.push_back(kPoseAngles[i]);
      all.emplace_back(std::move(angles));
      int i = k - 1;
      while (i >= 0 && idx[i] == n - k + i) i--;
      if (i < 0) break;
      idx[i]++;
      for (int j = i + 1; j < k; j++) idx[j] = idx[j - 1] + 1;
    }
  }
  return all;
}

bool ViewCombination::Contains(int angle) const {
  return std::binary_search(angles_.begin(), angles_.end(), angle);
}

std::string ViewCombination::ToString() const {
  std::string s;
  for (int a : angles_) s += (s.empty() ? "" : "+") + std::to_string(a);
  return s;
}

Tensor FuseViews(const VideoWindow &window, const ViewCombination &combination) {
  if (combination.size() == 0) throw Error("empty view combination");
  const int c = combination.size();
  int frames = -1, size = -1;
  for (int angle : combination.angles()) {
    auto it = window.views.find(angle);
    if (it == window.views.end()) throw MissingView(angle);
    const auto &stack = it->second;
    if (frames < 0) {
      frames = static_cast<int>(stack.size());
      size = stack.empty() ? 0 : stack[0].width;
    }
    if (static_cast<int>(stack.size()) != frames || frames == 0)
      throw ShapeError("views of a window must have the same nonzero frame count");
    for (const GrayImage &img : stack)
      if (img.width != size || img.height != size)
        throw ShapeError("window frames must share one square size");
  }
  Tensor out(Shape{frames, size, size, c});
  for (int ci = 0; ci < c; ci++) {
    const auto &stack = window.views.at(combination.angles()[ci]);
    for (int t = 0; t < frames; t++) {
      const auto &px = stack[t].pixels;
      double *dst = out.data() + size_t(t) * size * size * c + ci;
      for (size_t p = 0; p < px.size(); p++) dst[p * c] = px[p] / 255.0;
    }
  }
  return out;
}

Reconstructor Reconstructor::Build(const ViewCombination &combination,
                                   const ReconstructorConfig &config) {
  if (combination.size() == 0) throw Error("empty view combination");
  if (config.channels.size() != 6) throw ShapeError("reconstructor needs six channel widths");
  if (config.frame_size < 8 || config.frame_size % 8)
    throw ShapeError("frame size must be a positive multiple of 8");
  if (config.frames < 1 || config.gru1 < 1 || config.gru2 < 1)
    throw ShapeError("invalid reconstructor sizes");
  config.codec.Validate();
  Reconstructor r;
  r.combination_ = combination;
  r.config_ = config;
  int c = combination.size();
  for (int b = 0; b < 3; b++) {
    r.net_.Emplace<Conv3d>(c, config.channels[2 * b], 3, 3, 3, true);
    r.net_.Emplace<Relu>();
    r.net_.Emplace<Conv3d>(config.channels[2 * b], config.channels[2 * b + 1], 3, 3, 3, true);
    r.net_.Emplace<Relu>();
    r.net_.Emplace<MaxPool>();
    c = config.channels[2 * b + 1];
  }
  const int side = config.frame_size / 8;
  r.net_.Emplace<Flatten>(true);
  r.net_.Emplace<BiGru>(side * side * c, config.gru1);
  r.net_.Emplace<BiGru>(2 * config.gru1, config.gru2);
  r.net_.Emplace<Flatten>(false);
  r.net_.Emplace<Dense>(config.frames * 2 * config.gru2, config.codec.CodeSize());
  Rng rng(config.seed);
  r.net_.Initialize(rng);
  return r;
}

Tensor Reconstructor::Forward(const Tensor &fused) const { return net_.Predict(fused); }

EncodedAudioVector Reconstructor::ReconstructFused(const Tensor &fused) const {
  const Shape want{config_.frames, config_.frame_size, config_.frame_size, combination_.size()};
  if (fused.shape() != want)
    throw ShapeError("reconstructor input " + ShapeString(fused.shape()) + ", expected " +
                     ShapeString(want));
  EncodedAudioVector code{Forward(fused).vector()};
  RepairCode(&code, config_.codec);
  return code;
}

EncodedAudioVector Reconstructor::Reconstruct(const VideoWindow &window) const {
  return ReconstructFused(FuseViews(window, combination_));
}

void Reconstructor::InitializeOutputBias(const std::vector<EncodedAudioVector> &targets) {
  if (targets.empty()) return;
  Tensor &bias = net_.layer(net_.NumLayers() - 1).params()[1];
  bias.Fill(0.0);
  for (const auto &t : targets) {
    if (t.values.size() != bias.size()) throw ShapeError("target length does not match code size");
    for (size_t i = 0; i < bias.size(); i++) bias[i] += t.values[i];
  }
  for (double &b : bias.values()) b /= static_cast<double>(targets.size());
}

namespace {

nlohmann::json ConfigToJson(const ViewCombination &combination, const ReconstructorConfig &c) {
  return {{"format", "lipper-reconstructor-1"},
          {"combination", combination.ToString()},
          {"frame_size", c.frame_size},
          {"frames", c.frames},
          {"channels", c.channels},
          {"gru1", c.gru1},
          {"gru2", c.gru2},
          {"learning_rate", c.learning_rate},
          {"batch", c.batch},
          {"epochs", c.epochs},
          {"finetune_epochs", c.finetune_epochs},
          {"seed", c.seed},
          {"codec",
           {{"sample_rate", c.codec.sample_rate},
            {"fps", c.codec.fps},
            {"frames_per_window", c.codec.frames_per_window},
            {"lpc_order", c.codec.lpc_order},
            {"subframes", c.codec.subframes},
            {"crossfade", c.codec.crossfade}}}};
}

std::filesystem::path MetaPath(const std::filesystem::path &path) {
  return path.string() + ".meta.json";
}

}  // namespace

void Reconstructor::Save(const std::filesystem::path &path) const {
  WriteCheckpoint(path, net_);
  std::ofstream os(MetaPath(path));
  if (!os) throw FormatError("cannot write " + MetaPath(path).string());
  os << std::setw(2) << ConfigToJson(combination_, config_) << '\n';
}

Reconstructor Reconstructor::Load(const std::filesystem::path &path) {
  std::ifstream is(MetaPath(path));
  if (!is) throw FormatError("missing model description " + MetaPath(path).string());
  ReconstructorConfig c;
  ViewCombination combination;
  try {
    nlohmann::json j = nlohmann::json::parse(is);
    combination = ViewCombination::Parse(j.at("combination").get<std::string>());
    c.frame_size = j.at("frame_size");
    c.frames = j.at("frames");
    c.channels = j.at("channels").get<std::vector<int>>();
    c.gru1 = j.at("gru1");
    c.gru2 = j.at("gru2");
    c.learning_rate = j.at("learning_rate");
    c.batch = j.at("batch");
    c.epochs = j.at("epochs");
    c.finetune_epochs = j.at("finetune_epochs");
    c.seed = j.at("seed");
    const auto &k = j.at("codec");
    c.codec.sample_rate = k.at("sample_rate");
    c.codec.fps = k.at("fps");
    c.codec.frames_per_window = k.at("frames_per_window");
    c.codec.lpc_order = k.at("lpc_order");
    c.codec.subframes = k.at("subframes");
    c.codec.crossfade = k.at("crossfade");
  } catch (const nlohmann::json::exception &e) {
    throw FormatError("bad model description " + MetaPath(path).string() + ": " + e.what());
  }
  Reconstructor r = Build(combination, c);
  Checkpoint ck = ReadCheckpoint(path);
  if (ck.network.NumLayers() != r.net_.NumLayers())
    throw FormatError("checkpoint does not match its model description");
  for (size_t i = 0; i < r.net_.NumLayers(); i++)
    if (ck.network.layer(i).Kind() != r.net_.layer(i).Kind() ||
        ck.network.layer(i).Hyper() != r.net_.layer(i).Hyper())
      throw FormatError("checkpoint layer " + std::to_string(i) +
                        " does not match its model description");
  r.net_ = std::move(ck.network);
  return r;
}

ReconstructorTrainingReport TrainReconstructor(Reconstructor *model,
                                               const ReconstructionDataset &data) {
  if (data.size() == 0) throw ProtocolViolation("empty reconstruction training set");
  if (data.combinations.size() != data.size())
    throw ProtocolViolation("every training example needs its view combination");
  for (const ViewCombination &c : data.combinations)
    if (c != model->combination())
      throw ProtocolViolation("training example uses views " + c.ToString() +
                              " but the model expects " + model->combination().ToString());
  const ReconstructorConfig &config = model->config();
  const int code = config.codec.CodeSize();
  for (const auto &t : data.targets)
    if (static_cast<int>(t.values.size()) != code)
      throw ShapeError("target length does not match code size");
  Dataset ds{data.size(), data.input, [&](size_t i) {
               return Tensor(Shape{code}, data.targets[i].values);
             }};
  ReconstructorTrainingReport report;
  Rng rng(config.seed ^ 0x5eedull);
  AdamState adam = AdamState::For(model->network(), config.learning_rate);
  for (int e = 0; e < config.epochs; e++)
    report.epoch_loss.push_back(
        TrainEpoch(&model->network(), ds, LossKind::kMse, config.batch, &adam, &rng));
  adam.lr = config.learning_rate / 10.0;
  for (int e = 0; e < config.finetune_epochs; e++)
    report.epoch_loss.push_back(
        TrainEpoch(&model->network(), ds, LossKind::kMse, config.batch, &adam, &rng));
  return report;
}

const CombinationScoreTable &CombinationScoreTable::Published() {
  static const CombinationScoreTable table = [] {
    const std::pair<const char *, double> rows[] = {
        {"0", 2.002},          {"30", 1.750},         {"45", 1.642},
        {"60", 1.744},         {"90", 1.804},         {"0+30", 2.125},
        {"0+45", 2.130},       {"0+60", 1.952},       {"0+90", 1.982},
        {"30+45", 1.991},      {"30+60", 1.842},      {"30+90", 2.021},
        {"45+60", 1.960},      {"45+90", 1.930},      {"60+90", 1.920},
        {"0+30+45", 1.975},    {"0+30+60", 2.112},    {"0+30+90", 2.005},
        {"0+45+60", 2.315},    {"0+45+90", 1.814},    {"0+60+90", 1.987},
        {"30+45+60", 1.931},   {"30+45+90", 1.903},   {"30+60+90", 1.965},
        {"45+60+90", 1.838},   {"0+30+45+60", 2.110}, {"0+30+45+90", 1.916},
        {"0+45+60+90", 2.147}, {"0+30+60+90", 2.071}, {"30+45+60+90", 1.948},
        {"0+30+45+60+90", 2.086}};
    CombinationScoreTable t;
    for (const auto &[c, s] : rows) t.Set(ViewCombination::Parse(c), s);
    return t;
  }();
  return table;
}

void CombinationScoreTable::Set(const ViewCombination &c, double score) {
  if (!std::isfinite(score)) throw Error("combination score must be finite");
  if (c.size() == 0) throw Error("empty view combination");
  scores_[c] = score;
}

double CombinationScoreTable::Get(const ViewCombination &c) const {
  auto it = scores_.find(c);
  if (it == scores_.end()) throw Error("no score for combination " + c.ToString());
  return it->second;
}

void CombinationScoreTable::WriteCsv(std::ostream &os) const {
  os << "combination,score\n";
  for (const ViewCombination &c : ViewCombination::All()) {
    auto it = scores_.find(c);
    if (it != scores_.end()) os << c.ToString() << ',' << it->second << '\n';
  }
}

CombinationScoreTable CombinationScoreTable::ReadCsv(std::istream &is) {
  CombinationScoreTable t;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    line_no++;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || (line_no == 1 && line.rfind("combination", 0) == 0)) continue;
    size_t comma = line.find(',');
    if (comma == std::string::npos)
      throw FormatError("score table line " + std::to_string(line_no) + ": expected 2 fields");
    try {
      size_t used = 0;
      std::string num = line.substr(comma + 1);
      double score = std::stod(num, &used);
      if (used != num.size()) throw std::invalid_argument("trailing text");
      t.Set(ViewCombination::Parse(line.substr(0, comma)), score);
    } catch (const std::exception &e) {
      throw FormatError("score table line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return t;
}

ViewCombination SelectViewCombination(const std::set<int> &available,
                                      const CombinationScoreTable &table) {
  if (available.empty()) throw NoViews("no views available");
  for (int a : available)
    if (!IsPoseAngle(a)) throw Error("unknown view " + std::to_string(a));
  const ViewCombination *best = nullptr;
  double best_score = 0.0;
  static const std::vector<ViewCombination> all = ViewCombination::All();
  for (const ViewCombination &c : all) {
    bool subset = std::all_of(c.angles().begin(), c.angles().end(),
                              [&](int a) { return available.count(a) > 0; });
    if (!subset) continue;
    double s = table.Get(c);
    if (!best || s > best_score) {
      best = &c;
      best_score = s;
    }
  }
  return *best;
}

}  // namespace lipper
