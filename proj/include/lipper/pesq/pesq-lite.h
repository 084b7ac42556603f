// lipper/pesq/pesq-lite.h

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

#ifndef LIPPER_PESQ_PESQ_LITE_H_
#define LIPPER_PESQ_PESQ_LITE_H_

#include <vector>

#include "lipper/codec/lpc-codec.h"

namespace lipper {

inline constexpr double kPesqMin = -0.5;
inline constexpr double kPesqMax = 4.5;
inline constexpr int kNumBarkBands = 24;

struct PesqLiteConfig {
  double frame_seconds = 0.032;
  double hop_seconds = 0.016;
  double max_delay_seconds = 0.25;
  double loudness_power = 0.23;
  /// Weight of positive (added) loudness differences in d_a.
  double asymmetry = 12.0;
  /// Band powers below this fraction of the mean reference band power are
  /// treated as inaudible.
  double hearing_floor = 1e-4;
  /// Calibrated so white noise at 10 dB SNR scores about 1.5 on the
  /// synthetic corpus (tools/pesq-calibrate.cc).
  double alpha = 2.74352;
  double beta = 0.84775;
};

/// Frames x kNumBarkBands band powers.
struct BarkSpectrum {
  int frames = 0;
  std::vector<double> power;
  double at(int frame, int band) const { return power[size_t(frame) * kNumBarkBands + band]; }
};

struct PesqLiteResult {
  double score = kPesqMax;
  double d_sym = 0.0;
  double d_asym = 0.0;
  int offset = 0;
  double gain = 1.0;
};

/// Scales `degraded` so its RMS equals that of `reference`.  A silent
/// degraded signal is returned unchanged.  Throws RateMismatch.
AudioSignal LevelAlign(const AudioSignal &reference, const AudioSignal &degraded);

/// Lag d in [-max_delay, max_delay] (samples) maximizing the normalized
/// cross-correlation of reference[n] with degraded[n + d], over lags whose
/// overlap covers at least half the shorter signal.  When the best waveform
/// correlation is below 0.5 (e.g. noise-excited resynthesis) the region comes
/// from 16 ms RMS envelopes instead and the waveform search is limited to 5 ms
/// around it.  Ties go to the smallest |d|.
int TimeAlign(const AudioSignal &reference, const AudioSignal &degraded,
              double max_delay_seconds = 0.25);

/// Normalized cross-correlation at one lag over the overlapping part; 0 when
/// either side has no energy there.
double NormalizedCorrelation(const std::vector<double> &reference,
                             const std::vector<double> &degraded, int lag);

/// Hann-windowed power spectra summed into 24 bands equally spaced on the
/// Bark scale up to the Nyquist frequency.
BarkSpectrum ComputeBarkSpectrum(const AudioSignal &signal, const PesqLiteConfig &config = {});

/// Band edges in Hz (kNumBarkBands + 1 values).
std::vector<double> BarkBandEdges(double sample_rate);
double HzToBark(double hz);

/// level align, time align, Bark spectra, loudness, disturbances, clamp.
/// Throws DegenerateInput when either input is shorter than 0.25 s and
/// RateMismatch on differing rates.
PesqLiteResult PesqLiteDetailed(const AudioSignal &reference, const AudioSignal &degraded,
                                const PesqLiteConfig &config = {});
double PesqLite(const AudioSignal &reference, const AudioSignal &degraded,
                const PesqLiteConfig &config = {});

}  // namespace lipper

#endif  // LIPPER_PESQ_PESQ_LITE_H_
