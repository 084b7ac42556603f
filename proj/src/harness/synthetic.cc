// harness/synthetic.cc

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

#include "lipper/harness/synthetic.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lipper/base/error.h"
#include "lipper/codec/wav-io.h"

namespace lipper {

namespace {

using std::numbers::pi;
constexpr uint64_t kPhraseShapeSeed = 0x9e3779b97f4a7c15ull;

double Clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

double UniformIn(std::mt19937_64 &rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Articulation Jitter(Articulation a, std::mt19937_64 &rng, double amount) {
  a.height = Clamp01(a.height + UniformIn(rng, -amount, amount));
  a.width = Clamp01(a.width + UniformIn(rng, -amount, amount));
  a.protrusion = Clamp01(a.protrusion + UniformIn(rng, -amount, amount));
  return a;
}

/// Two-pole resonator with unit gain at DC.
struct Resonator {
  double b0 = 1, a1 = 0, a2 = 0, y1 = 0, y2 = 0;
  void Set(double freq, double bandwidth, double rate) {
    double r = std::exp(-pi * bandwidth / rate);
    double c = 2.0 * r * std::cos(2.0 * pi * freq / rate);
    a1 = c;
    a2 = -r * r;
    b0 = 1.0 - c + r * r;
  }
  double Step(double x) {
    double y = b0 * x + a1 * y1 + a2 * y2;
    y2 = y1;
    y1 = y;
    return y;
  }
};

}  // namespace

uint64_t DeriveSeed(uint64_t base, std::initializer_list<uint64_t> ids) {
  auto mix = [](uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  uint64_t h = mix(base);
  for (uint64_t id : ids) h = mix(h ^ mix(id + 0x632be59bd9b4e019ull));
  return h;
}

ArticulationTrack::ArticulationTrack(std::vector<Key> keys) : keys_(std::move(keys)) {
  if (keys_.size() < 2) throw DegenerateInput("articulation track needs two keys");
  for (size_t i = 1; i < keys_.size(); i++)
    if (!(keys_[i].time > keys_[i - 1].time))
      throw DegenerateInput("articulation keys must have increasing times");
}

Articulation ArticulationTrack::At(double t) const {
  if (t <= keys_.front().time) return keys_.front().value;
  if (t >= keys_.back().time) return keys_.back().value;
  auto it = std::upper_bound(keys_.begin(), keys_.end(), t,
                             [](double v, const Key &k) { return v < k.time; });
  const Key &b = *it, &a = *(it - 1);
  double u = (t - a.time) / (b.time - a.time);
  double s = 0.5 - 0.5 * std::cos(pi * u);
  return {a.value.height + s * (b.value.height - a.value.height),
          a.value.width + s * (b.value.width - a.value.width),
          a.value.protrusion + s * (b.value.protrusion - a.value.protrusion)};
}

bool IsFemaleSlot(int speaker_index) {
  int r = speaker_index % 10;
  return r == 1 || r == 4 || r == 7;
}

SpeakerStyle MakeSpeakerStyle(uint64_t seed, int speaker_index) {
  std::mt19937_64 rng(DeriveSeed(seed, {1, static_cast<uint64_t>(speaker_index)}));
  SpeakerStyle s;
  s.female = IsFemaleSlot(speaker_index);
  s.pitch_hz = s.female ? UniformIn(rng, 190, 235) : UniformIn(rng, 95, 135);
  s.formant_scale = s.female ? UniformIn(rng, 1.10, 1.20) : UniformIn(rng, 0.93, 1.05);
  s.pace = UniformIn(rng, 0.85, 1.15);
  s.mouth_scale = UniformIn(rng, 0.9, 1.1);
  s.lip_tone = UniformIn(rng, 0.30, 0.45);
  s.skin_tone = UniformIn(rng, 0.58, 0.78);
  s.head_offset = UniformIn(rng, -0.015, 0.015);
  return s;
}

ArticulationTrack PhraseTrack(int phrase, const SpeakerStyle &style, int speaker_index,
                              int repetition, uint64_t seed) {
  if (phrase < 1 || phrase > kNumPhrases) throw DegenerateInput("phrase out of range");
  std::mt19937_64 shape(DeriveSeed(kPhraseShapeSeed, {static_cast<uint64_t>(phrase)}));
  std::mt19937_64 jitter(DeriveSeed(seed, {2, static_cast<uint64_t>(speaker_index),
                                           static_cast<uint64_t>(phrase),
                                           static_cast<uint64_t>(repetition)}));
  const Articulation rest{0.0, 0.35, 0.2};
  std::vector<ArticulationTrack::Key> keys{{0.0, rest}};
  double t = 0.12;
  keys.push_back({t, rest});
  const int syllables = std::uniform_int_distribution<int>(2, 5)(shape);
  auto advance = [&](double lo, double hi) {
    double d = UniformIn(shape, lo, hi) * style.pace * UniformIn(jitter, 0.94, 1.06);
    t += d;
  };
  for (int s = 0; s < syllables; s++) {
    Articulation open{UniformIn(shape, 0.45, 1.0), UniformIn(shape, 0.0, 1.0),
                      UniformIn(shape, 0.0, 1.0)};
    advance(0.10, 0.17);
    keys.push_back({t, Jitter(open, jitter, 0.05)});
    advance(0.05, 0.10);
    keys.push_back({t, Jitter(open, jitter, 0.05)});
    if (s + 1 < syllables) {
      Articulation close{UniformIn(shape, 0.0, 0.2), UniformIn(shape, 0.1, 0.9),
                         UniformIn(shape, 0.0, 1.0)};
      advance(0.07, 0.13);
      keys.push_back({t, Jitter(close, jitter, 0.03)});
    }
  }
  advance(0.10, 0.15);
  keys.push_back({t, rest});
  t += 0.12;
  keys.push_back({t, rest});
  return ArticulationTrack(std::move(keys));
}

GrayImage RenderLips(const Articulation &a, int angle, int size, const SpeakerStyle &style,
                     std::mt19937_64 *noise_rng, double noise_sigma) {
  if (size < 8) throw DegenerateInput("render size too small");
  const double th = angle * pi / 180.0;
  const double sn = std::sin(th), cs = std::cos(th);
  const double edge = 1.02 - 0.30 * sn + style.head_offset;
  const double cx = 0.5 + 0.08 * sn, cy = 0.6;
  const double ms = style.mouth_scale;
  const double ax = ms * ((0.10 + 0.10 * a.width) * cs + 0.06 * sn) + 0.10 * a.protrusion * sn;
  const double ay = ms * (0.015 + 0.10 * a.height);
  const double lip = 0.03;
  const double px = 1.0 / size;
  std::normal_distribution<double> noise(0.0, noise_sigma);
  GrayImage img(size, size);
  for (int y = 0; y < size; y++) {
    const double v = (y + 0.5) * px;
    for (int x = 0; x < size; x++) {
      const double u = (x + 0.5) * px;
      double val = style.skin_tone * (0.9 + 0.2 * v);
      // Lips, then the dark mouth cavity, blended over a one-pixel edge.
      double du = u - cx, dv = v - cy;
      double outer = std::sqrt(du * du / ((ax + lip) * (ax + lip)) +
                               dv * dv / ((ay + lip) * (ay + lip)));
      double alpha = std::clamp((1.0 - outer) * (std::min(ax, ay) + lip) / px + 0.5, 0.0, 1.0);
      val += alpha * (style.lip_tone - val);
      double inner = std::sqrt(du * du / (ax * ax) + dv * dv / (ay * ay));
      alpha = std::clamp((1.0 - inner) * std::min(ax, ay) / px + 0.5, 0.0, 1.0);
      val += alpha * (0.06 - val);
      // Background beyond the face silhouette.
      double bg = std::clamp((u - edge) / px + 0.5, 0.0, 1.0);
      val += bg * (0.12 - val);
      if (noise_rng) val += noise(*noise_rng);
      img.at(x, y) = static_cast<uint8_t>(std::lround(std::clamp(val, 0.0, 1.0) * 255.0));
    }
  }
  return img;
}

std::vector<double> SynthesizeAudio(const ArticulationTrack &track, const SpeakerStyle &style,
                                    double sample_rate, int num_samples, uint64_t seed) {
  if (num_samples < 1 || !(sample_rate > 0)) throw DegenerateInput("empty audio request");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double vibrato_phase = UniformIn(rng, 0.0, 2 * pi);
  const double nyquist_guard = 0.45 * sample_rate;
  std::array<Resonator, 4> formants;
  std::vector<double> out(num_samples);
  double phase = 0.0, glottal = 0.0, prev = 0.0, amp = 0.0;
  for (int n = 0; n < num_samples; n++) {
    const double t = n / sample_rate;
    if (n % 10 == 0) {
      Articulation a = track.At(t);
      const double k = style.formant_scale;
      double f1 = (260 + 560 * a.height) * k;
      double f2 = (950 + 1250 * a.width - 300 * a.protrusion) * k;
      double f3 = (2200 + 900 * a.protrusion - 150 * a.width) * k;
      double f4 = 3600 * k;
      double f[4] = {f1, f2, f3, f4};
      for (int i = 0; i < 4; i++) {
        double fi = std::min(f[i], nyquist_guard);
        formants[i].Set(fi, 50 + 0.06 * fi, sample_rate);
      }
      amp = std::pow(Clamp01(a.height), 0.7);
    }
    const double f0 = style.pitch_hz * (1.0 + 0.06 * std::sin(2 * pi * 0.9 * t + vibrato_phase));
    phase += f0 / sample_rate;
    double pulse = 0.0;
    if (phase >= 1.0) {
      phase -= 1.0;
      pulse = 1.0;
    }
    glottal = 0.85 * glottal + pulse;
    double e = amp * (glottal + 0.04 * normal(rng));
    for (Resonator &r : formants) e = r.Step(e);
    out[n] = e - 0.9 * prev;
    prev = e;
  }
  double peak = 0.0;
  for (double v : out) peak = std::max(peak, std::abs(v));
  const double scale = peak > 0 ? 0.5 / peak : 0.0;
  AudioSignal sig{std::move(out), sample_rate};
  for (double &v : sig.samples) v = v * scale + 1e-3 * normal(rng);
  QuantizeTo16Bit(&sig);
  return std::move(sig.samples);
}

Corpus GenerateSyntheticCorpus(const SyntheticConfig &config) {
  if (config.speakers < 2) throw DegenerateInput("synthetic corpus needs at least two speakers");
  if (config.phrases < 1 || config.phrases > kNumPhrases || config.repetitions < 1)
    throw DegenerateInput("bad phrase/repetition counts");
  for (int v : config.views)
    if (!IsPoseAngle(v)) throw DegenerateInput("unknown view " + std::to_string(v));
  Corpus corpus;
  corpus.fps = config.fps;
  corpus.sample_rate = config.sample_rate;
  corpus.frame_size = config.frame_size;
  corpus.seed = config.seed;
  corpus.generator = kSyntheticGenerator;
  for (int si = 0; si < config.speakers; si++) {
    const SpeakerStyle style = MakeSpeakerStyle(config.seed, si);
    corpus.speakers.push_back({si + 1, style.female});
    for (int p = 1; p <= config.phrases; p++)
      for (int r = 1; r <= config.repetitions; r++) {
        ArticulationTrack track = PhraseTrack(p, style, si, r, config.seed);
        Utterance u;
        u.speaker = si + 1;
        u.phrase = p;
        u.repetition = r;
        const int frames = std::max(1, static_cast<int>(std::lround(track.Duration() * config.fps)));
        const int samples = static_cast<int>(std::lround(frames / config.fps * config.sample_rate));
        u.frames = frames;
        for (int angle : config.views) {
          std::mt19937_64 noise(DeriveSeed(config.seed, {3, uint64_t(si), uint64_t(p),
                                                         uint64_t(r), uint64_t(angle)}));
          auto &stack = u.views[angle];
          for (int f = 0; f < frames; f++)
            stack.push_back(RenderLips(track.At((f + 0.5) / config.fps), angle,
                                       config.frame_size, style, &noise, config.pixel_noise));
        }
        u.audio.sample_rate = config.sample_rate;
        u.audio.samples = SynthesizeAudio(
            track, style, config.sample_rate, samples,
            DeriveSeed(config.seed, {4, uint64_t(si), uint64_t(p), uint64_t(r)}));
        corpus.utterances.push_back(std::move(u));
      }
  }
  return corpus;
}

PoseDataset MakePoseDataset(int per_class, int size, uint64_t seed, bool shuffle_labels,
                            double noise_sigma) {
  if (per_class < 1) throw DegenerateInput("pose dataset needs at least one image per class");
  const size_t n = static_cast<size_t>(per_class) * kPoseAngles.size();
  std::vector<int> truth(n);
  for (size_t i = 0; i < n; i++) truth[i] = kPoseAngles[i % kPoseAngles.size()];
  PoseDataset data;
  data.angles = truth;
  if (shuffle_labels) {
    std::mt19937_64 rng(DeriveSeed(seed, {6}));
    std::shuffle(data.angles.begin(), data.angles.end(), rng);
  }
  data.image = [truth = std::move(truth), size, seed, noise_sigma](size_t i) {
    std::mt19937_64 rng(DeriveSeed(seed, {5, i}));
    int speaker = std::uniform_int_distribution<int>(0, 999)(rng);
    SpeakerStyle style = MakeSpeakerStyle(seed, speaker);
    Articulation a{UniformIn(rng, 0, 1), UniformIn(rng, 0, 1), UniformIn(rng, 0, 1)};
    return RenderLips(a, truth.at(i), size, style, &rng, noise_sigma);
  };
  return data;
}

}  // namespace lipper
