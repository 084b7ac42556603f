// nn/checkpoint.cc

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

#include "lipper/nn/checkpoint.h"

#include <bit>
#include <cstring>
#include <fstream>

#include "lipper/base/error.h"

namespace lipper {

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'L', 'P', 'R', '1'};
constexpr uint32_t kMaxCount = 1u << 28;

template <class T>
void Put(std::ostream &os, T v) {
  os.write(reinterpret_cast<const char *>(&v), sizeof(T));
}

template <class T>
T Get(std::istream &is) {
  T v;
  if (!is.read(reinterpret_cast<char *>(&v), sizeof(T)))
    throw FormatError("checkpoint truncated");
  return v;
}

uint32_t GetCount(std::istream &is, const char *what) {
  uint32_t n = Get<uint32_t>(is);
  if (n > kMaxCount) throw FormatError(std::string("checkpoint: implausible ") + what);
  return n;
}

void PutData(std::ostream &os, const Tensor &t) {
  os.write(reinterpret_cast<const char *>(t.data()),
           static_cast<std::streamsize>(t.size() * sizeof(double)));
}

void GetData(std::istream &is, Tensor *t) {
  if (!is.read(reinterpret_cast<char *>(t->data()),
               static_cast<std::streamsize>(t->size() * sizeof(double))))
    throw FormatError("checkpoint truncated");
}

}  // namespace

void WriteCheckpoint(std::ostream &os, const Network &net, const AdamState *adam) {
  os.write(kMagic, 4);
  Put<uint32_t>(os, static_cast<uint32_t>(net.NumLayers()));
  for (size_t i = 0; i < net.NumLayers(); i++) {
    const Layer &l = net.layer(i);
    Put<uint32_t>(os, static_cast<uint32_t>(l.Kind()));
    auto hyper = l.Hyper();
    Put<uint32_t>(os, static_cast<uint32_t>(hyper.size()));
    for (double h : hyper) Put<double>(os, h);
    Put<uint32_t>(os, static_cast<uint32_t>(l.params().size()));
    for (const Tensor &p : l.params()) {
      Put<uint32_t>(os, static_cast<uint32_t>(p.rank()));
      for (int d : p.shape()) Put<uint32_t>(os, static_cast<uint32_t>(d));
      PutData(os, p);
    }
  }
  Put<uint8_t>(os, adam ? 1 : 0);
  if (adam) {
    adam->CheckCompatible(net);
    Put<int64_t>(os, adam->step);
    Put<double>(os, adam->lr);
    Put<double>(os, adam->beta1);
    Put<double>(os, adam->beta2);
    Put<double>(os, adam->epsilon);
    for (const Gradients *g : {&adam->m, &adam->v})
      for (const auto &layer : *g)
        for (const Tensor &t : layer) PutData(os, t);
  }
  if (!os) throw FormatError("checkpoint write failed");
}

void WriteCheckpoint(const std::filesystem::path &path, const Network &net,
                     const AdamState *adam) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("cannot open " + path.string() + " for writing");
  WriteCheckpoint(os, net, adam);
}

Checkpoint ReadCheckpoint(std::istream &is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
    throw FormatError("not a checkpoint (bad magic)");
  Checkpoint ck;
  uint32_t n_layers = GetCount(is, "layer count");
  for (uint32_t i = 0; i < n_layers; i++) {
    auto kind = static_cast<LayerKind>(Get<uint32_t>(is));
    std::vector<double> hyper(GetCount(is, "hyperparameter count"));
    for (double &h : hyper) h = Get<double>(is);
    std::unique_ptr<Layer> layer;
    try {
      layer = MakeLayer(kind, hyper);
    } catch (const ShapeError &e) {
      throw FormatError(std::string("checkpoint: ") + e.what());
    }
    uint32_t n_params = GetCount(is, "parameter count");
    if (n_params != layer->params().size())
      throw FormatError("checkpoint: parameter count mismatch in layer " + std::to_string(i));
    for (Tensor &p : layer->params()) {
      uint32_t rank = GetCount(is, "rank");
      Shape shape(rank);
      for (int &d : shape) d = static_cast<int>(GetCount(is, "dimension"));
      if (shape != p.shape())
        throw FormatError("checkpoint: shape " + ShapeString(shape) + " does not match " +
                          ShapeString(p.shape()) + " in layer " + std::to_string(i));
      GetData(is, &p);
    }
    ck.network.Add(std::move(layer));
  }
  if (Get<uint8_t>(is)) {
    AdamState s = AdamState::For(ck.network);
    s.step = Get<int64_t>(is);
    s.lr = Get<double>(is);
    s.beta1 = Get<double>(is);
    s.beta2 = Get<double>(is);
    s.epsilon = Get<double>(is);
    if (s.step < 0) throw FormatError("checkpoint: negative adam step");
    for (Gradients *g : {&s.m, &s.v})
      for (auto &layer : *g)
        for (Tensor &t : layer) GetData(is, &t);
    ck.adam = std::move(s);
  }
  return ck;
}

Checkpoint ReadCheckpoint(const std::filesystem::path &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open checkpoint " + path.string());
  return ReadCheckpoint(is);
}

}  // namespace lipper
