// pesq/pesq-lite.cc

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

#include "lipper/pesq/pesq-lite.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include <unsupported/Eigen/FFT>

#include "lipper/base/error.h"

namespace lipper {

namespace {

void CheckRates(const AudioSignal &a, const AudioSignal &b) {
  if (a.sample_rate != b.sample_rate)
    throw RateMismatch("sample rates differ: " + std::to_string(a.sample_rate) + " vs " +
                       std::to_string(b.sample_rate));
}

double Rms(const std::vector<double> &x) {
  if (x.empty()) return 0.0;
  double e = 0.0;
  for (double v : x) e += v * v;
  return std::sqrt(e / x.size());
}

// Waveform correlation above this is trusted directly; below it the lag comes
// from the energy envelopes.
constexpr double kDirectAlignment = 0.5;

// Lags with less overlap than half the shorter signal are not considered.
bool EnoughOverlap(size_t n_ref, size_t n_deg, long lag) {
  long overlap = std::min<long>(n_ref, static_cast<long>(n_deg) - lag) - std::max(0L, -lag);
  return 2 * overlap >= static_cast<long>(std::min(n_ref, n_deg));
}

// Index of the best entry of curve (lag = index - offset) within [lo, hi];
// ties keep the smallest |lag|.
int PickLag(const std::vector<double> &curve, int offset, int lo, int hi) {
  int best = 0;
  double best_c = -3.0;
  for (int lag = lo; lag <= hi; lag++) {
    double c = curve[lag + offset];
    if (c > best_c + 1e-12 || (std::abs(c - best_c) <= 1e-12 && std::abs(lag) < std::abs(best))) {
      best_c = std::max(c, best_c);
      best = lag;
    }
  }
  return best;
}

// Normalized correlation for every lag in [-w, w] (index lag + w); lags
// without enough overlap get -2.
std::vector<double> CorrelationCurve(const std::vector<double> &ref,
                                     const std::vector<double> &deg, int w) {
  const size_t nr = ref.size(), nd = deg.size();
  size_t m = 1;
  while (m < nr + nd) m *= 2;
  Eigen::FFT<double> fft;
  std::vector<double> a(m, 0.0), b(m, 0.0), xy;
  std::copy(ref.begin(), ref.end(), a.begin());
  std::copy(deg.begin(), deg.end(), b.begin());
  std::vector<std::complex<double>> fa, fb;
  fft.fwd(fa, a);
  fft.fwd(fb, b);
  for (size_t k = 0; k < fa.size(); k++) fa[k] = std::conj(fa[k]) * fb[k];
  fft.inv(xy, fa);

  std::vector<double> pr(nr + 1, 0.0), pd(nd + 1, 0.0);
  for (size_t i = 0; i < nr; i++) pr[i + 1] = pr[i] + ref[i] * ref[i];
  for (size_t i = 0; i < nd; i++) pd[i + 1] = pd[i] + deg[i] * deg[i];
  std::vector<double> curve(2 * size_t(w) + 1, -2.0);
  for (long lag = -w; lag <= w; lag++) {
    if (!EnoughOverlap(nr, nd, lag)) continue;
    long begin = std::max(0L, -lag), end = std::min<long>(nr, static_cast<long>(nd) - lag);
    double xx = pr[end] - pr[begin], yy = pd[end + lag] - pd[begin + lag];
    double c = xy[lag >= 0 ? lag : static_cast<long>(m) + lag];
    curve[lag + w] = (xx > 0.0 && yy > 0.0) ? c / std::sqrt(xx * yy) : 0.0;
  }
  return curve;
}

// RMS over `len` samples every `hop` samples, mean removed.
std::vector<double> Envelope(const std::vector<double> &x, int hop, int len) {
  std::vector<double> prefix(x.size() + 1, 0.0);
  for (size_t i = 0; i < x.size(); i++) prefix[i + 1] = prefix[i] + x[i] * x[i];
  std::vector<double> env;
  for (size_t b = 0; b + len <= x.size(); b += hop)
    env.push_back(std::sqrt(std::max(0.0, prefix[b + len] - prefix[b]) / len));
  double mean = 0.0;
  for (double v : env) mean += v;
  if (!env.empty()) mean /= env.size();
  for (double &v : env) v -= mean;
  return env;
}

}  // namespace

AudioSignal LevelAlign(const AudioSignal &reference, const AudioSignal &degraded) {
  CheckRates(reference, degraded);
  AudioSignal out = degraded;
  double rd = Rms(degraded.samples);
  if (rd <= 0.0) return out;
  double g = Rms(reference.samples) / rd;
  for (double &v : out.samples) v *= g;
  return out;
}

double NormalizedCorrelation(const std::vector<double> &reference,
                             const std::vector<double> &degraded, int lag) {
  const long n_ref = static_cast<long>(reference.size());
  const long n_deg = static_cast<long>(degraded.size());
  long begin = std::max(0L, -static_cast<long>(lag));
  long end = std::min(n_ref, n_deg - lag);
  double xy = 0.0, xx = 0.0, yy = 0.0;
  for (long n = begin; n < end; n++) {
    double x = reference[n], y = degraded[n + lag];
    xy += x * y;
    xx += x * x;
    yy += y * y;
  }
  if (xx <= 0.0 || yy <= 0.0) return 0.0;
  return xy / std::sqrt(xx * yy);
}

int TimeAlign(const AudioSignal &reference, const AudioSignal &degraded,
              double max_delay_seconds) {
  CheckRates(reference, degraded);
  const int w = static_cast<int>(std::lround(max_delay_seconds * reference.sample_rate));
  const double sr = reference.sample_rate;
  const int hop = std::max(1, static_cast<int>(std::lround(0.001 * sr)));
  const int len = std::max(1, static_cast<int>(std::lround(0.016 * sr)));
  const int fine = std::max(1, static_cast<int>(std::lround(0.005 * sr)));
  std::vector<double> curve = CorrelationCurve(reference.samples, degraded.samples, w);
  int direct = PickLag(curve, w, -w, w);
  if (curve[direct + w] >= kDirectAlignment) return direct;

  std::vector<double> er = Envelope(reference.samples, hop, len);
  std::vector<double> ed = Envelope(degraded.samples, hop, len);
  if (er.empty() || ed.empty()) return direct;
  const int we = w / hop;
  std::vector<double> env_curve(2 * size_t(we) + 1, -2.0);
  for (int lag = -we; lag <= we; lag++)
    if (EnoughOverlap(er.size(), ed.size(), lag))
      env_curve[lag + we] = NormalizedCorrelation(er, ed, lag);
  int coarse = PickLag(env_curve, we, -we, we) * hop;
  return PickLag(curve, w, std::max(-w, coarse - fine), std::min(w, coarse + fine));
}

double HzToBark(double hz) {
  return 13.0 * std::atan(0.00076 * hz) + 3.5 * std::atan((hz / 7500.0) * (hz / 7500.0));
}

std::vector<double> BarkBandEdges(double sample_rate) {
  const double nyquist = sample_rate / 2.0;
  const double top = HzToBark(nyquist);
  std::vector<double> edges(kNumBarkBands + 1);
  edges[0] = 0.0;
  edges[kNumBarkBands] = nyquist;
  for (int b = 1; b < kNumBarkBands; b++) {
    double target = top * b / kNumBarkBands, lo = 0.0, hi = nyquist;
    for (int it = 0; it < 60; it++) {
      double mid = 0.5 * (lo + hi);
      (HzToBark(mid) < target ? lo : hi) = mid;
    }
    edges[b] = 0.5 * (lo + hi);
  }
  return edges;
}

BarkSpectrum ComputeBarkSpectrum(const AudioSignal &signal, const PesqLiteConfig &config) {
  const int frame = static_cast<int>(std::lround(config.frame_seconds * signal.sample_rate));
  const int hop = static_cast<int>(std::lround(config.hop_seconds * signal.sample_rate));
  int nfft = 1;
  while (nfft < frame) nfft *= 2;
  std::vector<double> window(frame);
  for (int i = 0; i < frame; i++)
    window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / frame);

  std::vector<double> edges = BarkBandEdges(signal.sample_rate);
  std::vector<int> band_of(nfft / 2 + 1);
  for (int k = 0; k <= nfft / 2; k++) {
    double f = k * signal.sample_rate / nfft;
    int b = static_cast<int>(std::upper_bound(edges.begin(), edges.end(), f) - edges.begin()) - 1;
    band_of[k] = std::clamp(b, 0, kNumBarkBands - 1);
  }

  BarkSpectrum out;
  const auto frames = FrameSignal(signal.samples, frame, hop);
  out.frames = static_cast<int>(frames.size());
  out.power.assign(frames.size() * kNumBarkBands, 0.0);
  Eigen::FFT<double> fft;
  std::vector<double> buf(nfft, 0.0);
  std::vector<std::complex<double>> spec;
  for (size_t t = 0; t < frames.size(); t++) {
    for (int i = 0; i < frame; i++) buf[i] = frames[t][i] * window[i];
    fft.fwd(spec, buf);
    for (int k = 0; k <= nfft / 2; k++)
      out.power[t * kNumBarkBands + band_of[k]] += std::norm(spec[k]);
  }
  return out;
}

PesqLiteResult PesqLiteDetailed(const AudioSignal &reference, const AudioSignal &degraded,
                                const PesqLiteConfig &config) {
  CheckRates(reference, degraded);
  reference.Validate();
  degraded.Validate();
  if (reference.Duration() < 0.25 || degraded.Duration() < 0.25)
    throw DegenerateInput("pesq-lite needs at least 0.25 s of audio");

  PesqLiteResult r;
  AudioSignal leveled = LevelAlign(reference, degraded);
  r.offset = TimeAlign(reference, leveled, config.max_delay_seconds);
  AudioSignal aligned;
  aligned.sample_rate = reference.sample_rate;
  aligned.samples.assign(reference.samples.size(), 0.0);
  for (size_t n = 0; n < aligned.samples.size(); n++) {
    long m = static_cast<long>(n) + r.offset;
    if (m >= 0 && m < static_cast<long>(leveled.samples.size())) aligned.samples[n] = leveled.samples[m];
  }
  // The shift moves samples in or out of the span, so match levels again.
  aligned = LevelAlign(reference, aligned);
  double rd = Rms(degraded.samples);
  r.gain = rd > 0.0 ? Rms(aligned.samples) / rd : 1.0;

  BarkSpectrum sr = ComputeBarkSpectrum(reference, config);
  BarkSpectrum sd = ComputeBarkSpectrum(aligned, config);
  double norm = 0.0;
  for (double p : sr.power) norm += p;
  norm = sr.power.empty() ? 0.0 : norm / sr.power.size();
  if (norm <= 0.0) norm = 1.0;

  double ds = 0.0, da = 0.0;
  for (int t = 0; t < sr.frames; t++) {
    double fs = 0.0, fa = 0.0;
    for (int b = 0; b < kNumBarkBands; b++) {
      double lr = std::pow(sr.at(t, b) / norm + config.hearing_floor, config.loudness_power);
      double ld = std::pow(sd.at(t, b) / norm + config.hearing_floor, config.loudness_power);
      double d = ld - lr;
      fs += std::abs(d);
      if (d > 0.0) fa += config.asymmetry * d;
    }
    ds += fs / kNumBarkBands;
    da += fa / kNumBarkBands;
  }
  if (sr.frames > 0) {
    ds /= sr.frames;
    da /= sr.frames;
  }
  r.d_sym = ds;
  r.d_asym = da;
  r.score = std::clamp(kPesqMax - config.alpha * ds - config.beta * da, kPesqMin, kPesqMax);
  return r;
}

double PesqLite(const AudioSignal &reference, const AudioSignal &degraded,
                const PesqLiteConfig &config) {
  return PesqLiteDetailed(reference, degraded, config).score;
}

}  // namespace lipper
