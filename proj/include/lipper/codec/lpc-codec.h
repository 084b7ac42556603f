// lipper/codec/lpc-codec.h

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

#ifndef LIPPER_CODEC_LPC_CODEC_H_
#define LIPPER_CODEC_LPC_CODEC_H_

#include <cstdint>
#include <span>
#include <vector>

namespace lipper {

struct AudioSignal {
  std::vector<double> samples;
  double sample_rate = 20000.0;

  /// Throws DegenerateInput on a non-positive rate or non-finite samples.
  void Validate() const;
  double Duration() const { return samples.size() / sample_rate; }
  bool operator==(const AudioSignal &other) const = default;
};

/// All-pole model x[n] ~ sum_k coefficients[k-1] * x[n-k]; the inverse filter
/// is A(z) = 1 - sum_k a_k z^-k.  log_gain is ln of the residual RMS.
struct LpcFrame {
  std::vector<double> coefficients;
  double log_gain = 0.0;
  int Order() const { return static_cast<int>(coefficients.size()); }
};

/// Line spectral frequencies in radians, strictly increasing in (0, pi) when
/// valid.
struct LspFrame {
  std::vector<double> frequencies;
  double log_gain = 0.0;
  int Order() const { return static_cast<int>(frequencies.size()); }
};

struct CodecConfig {
  double sample_rate = 20000.0;
  double fps = 30.0;
  int frames_per_window = 5;
  int lpc_order = 24;
  int subframes = 2;
  int crossfade = 64;

  /// round(frames_per_window / fps * sample_rate); 3333 with the defaults.
  int WindowSamples() const;
  /// floor(WindowSamples() / subframes); the remainder is not analysed.
  int SubframeSamples() const;
  /// subframes * (lpc_order + 1); 50 with the defaults.
  int CodeSize() const;
  double WindowSeconds() const { return frames_per_window / fps; }
  void Validate() const;
};

/// Per-window code: for each sub-frame, lpc_order LSP values followed by one
/// log-gain.
struct EncodedAudioVector {
  std::vector<double> values;
  bool operator==(const EncodedAudioVector &other) const = default;
};

inline constexpr double kSilenceEnergy = 1e-12;
inline constexpr double kLogGainFloor = -20.0;
inline constexpr double kLspMinGap = 1e-4;

/// Frame i covers [i*hop, i*hop + frame_len).  Trailing samples that do not
/// fill a frame are dropped.
std::vector<std::span<const double>> FrameSignal(std::span<const double> signal,
                                                 int frame_len, int hop);

/// r_k = sum_i frame[i] * frame[i+k] for k = 0..order.
std::vector<double> Autocorrelate(std::span<const double> frame, int order);

/// Levinson-Durbin recursion on the Yule-Walker system.  Writes the predictor
/// coefficients and returns the final prediction-error power.  Throws
/// SilentFrame when r[0] <= 0.
double SolveYuleWalker(std::span<const double> r, int order,
                       std::vector<double> *coefficients,
                       std::vector<double> *reflection = nullptr);

/// As SolveYuleWalker, packaging the result with
/// log_gain = 0.5 * ln(error / frame_len), floored at kLogGainFloor.
LpcFrame LevinsonDurbin(std::span<const double> r, int order, int frame_len);

/// Step-up recursion: reflection coefficients -> predictor coefficients.
/// |k| < 1 for every entry gives a stable synthesis filter.
std::vector<double> ReflectionToLpc(std::span<const double> reflection);

LspFrame LpcToLsp(const LpcFrame &lpc);

/// Frequencies that are not strictly increasing inside (0, pi) are passed
/// through RepairLsp first; valid input is used as is.
LpcFrame LspToLpc(const LspFrame &lsp);

/// Sorts, clamps to [kLspMinGap, pi - kLspMinGap] and enforces a minimum
/// spacing of kLspMinGap.  The result always describes a stable filter.
void RepairLsp(std::vector<double> *frequencies);

/// Equally spaced LSPs k*pi/(order+1) (A(z) = 1) with the floor gain.
LspFrame SilentLsp(int order);

EncodedAudioVector EncodeWindow(std::span<const double> segment,
                                const CodecConfig &config);

/// Noise-excited source-filter synthesis.  Output length is
/// config.WindowSamples(); identical (code, seed) pairs give identical output.
std::vector<double> DecodeWindow(const EncodedAudioVector &code,
                                 const CodecConfig &config, uint64_t seed);

/// Repairs every LSP block of a code in place (used on network outputs).
void RepairCode(EncodedAudioVector *code, const CodecConfig &config);

/// Splits a code into its per-sub-frame LSP frames (no repair).
std::vector<LspFrame> SplitCode(const EncodedAudioVector &code,
                                const CodecConfig &config);

/// Encodes consecutive non-overlapping windows; the tail that does not fill a
/// window is dropped.
std::vector<EncodedAudioVector> EncodeSignal(const AudioSignal &signal,
                                             const CodecConfig &config);

/// Decodes codes back to back; window i uses seed + i.
AudioSignal DecodeSequence(std::span<const EncodedAudioVector> codes,
                           const CodecConfig &config, uint64_t seed);

}  // namespace lipper

#endif  // LIPPER_CODEC_LPC_CODEC_H_
