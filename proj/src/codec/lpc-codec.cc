// codec/lpc-codec.cc

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

#include "lipper/codec/lpc-codec.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "lipper/base/error.h"

namespace lipper {

namespace {

constexpr double kPi = std::numbers::pi;

// Grid used to bracket LSP roots; a denser retry catches close pairs.
constexpr int kRootGrid = 512;
constexpr int kRootGridRetry = 8192;
constexpr int kBisectionSteps = 60;

// Analysis conditioning: -40 dB white-noise floor on r[0] plus a Gaussian lag
// window, both keeping the root finder away from unit-circle pole pairs.
constexpr double kNoiseFloor = 1e-4;
constexpr double kLagWindowHz = 40.0;

constexpr int kPreroll = 256;

std::vector<double> UnitPowerHann(int n) {
  std::vector<double> w(n);
  double power = 0.0;
  for (int i = 0; i < n; i++) {
    w[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * (i + 0.5) / n);
    power += w[i] * w[i];
  }
  double scale = 1.0 / std::sqrt(power / n);
  for (double &v : w) v *= scale;
  return w;
}

// Symmetric polynomial c[0..2K] evaluated on the unit circle, with the linear
// phase removed: c[K] + 2 sum_i c[K-i] cos(i w).  Clenshaw in x = cos(w).
double EvalSymmetric(const std::vector<double> &c, double omega) {
  int k = static_cast<int>(c.size() - 1) / 2;
  double x = std::cos(omega);
  double b1 = 0.0, b2 = 0.0;
  for (int i = k; i >= 1; i--) {
    double b0 = 2.0 * c[k - i] + 2.0 * x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return c[k] + x * b1 - b2;
}

std::vector<double> FindRoots(const std::vector<double> &c, int grid) {
  std::vector<double> roots;
  double prev_w = 0.0;
  double prev_f = EvalSymmetric(c, 0.0);
  for (int j = 1; j <= grid; j++) {
    double w = kPi * j / grid;
    double f = EvalSymmetric(c, w);
    if (prev_f == 0.0) {
      if (prev_w > 0.0) roots.push_back(prev_w);
    } else if ((prev_f < 0.0) != (f < 0.0) && f != 0.0) {
      double lo = prev_w, hi = w, flo = prev_f;
      for (int it = 0; it < kBisectionSteps; it++) {
        double mid = 0.5 * (lo + hi);
        double fm = EvalSymmetric(c, mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_w = w;
    prev_f = f;
  }
  return roots;
}

// Multiplies poly by (1 + b z^-1 + c z^-2).
void MulQuadratic(std::vector<double> *poly, double b, double c) {
  std::vector<double> out(poly->size() + 2, 0.0);
  for (size_t i = 0; i < poly->size(); i++) {
    out[i] += (*poly)[i];
    out[i + 1] += b * (*poly)[i];
    out[i + 2] += c * (*poly)[i];
  }
  *poly = std::move(out);
}

void MulLinear(std::vector<double> *poly, double b) {
  std::vector<double> out(poly->size() + 1, 0.0);
  for (size_t i = 0; i < poly->size(); i++) {
    out[i] += (*poly)[i];
    out[i + 1] += b * (*poly)[i];
  }
  *poly = std::move(out);
}

void CheckCodeShape(const EncodedAudioVector &code, const CodecConfig &config) {
  if (static_cast<int>(code.values.size()) != config.CodeSize())
    throw DegenerateInput("code has " + std::to_string(code.values.size()) +
                          " values, expected " +
                          std::to_string(config.CodeSize()));
}

// All-pole filtering of excitation through 1/A(z), zero initial state.
std::vector<double> AllPole(const std::vector<double> &a, double gain,
                            std::span<const double> excitation) {
  std::vector<double> y(excitation.size());
  int p = static_cast<int>(a.size());
  for (size_t n = 0; n < excitation.size(); n++) {
    double acc = gain * excitation[n];
    int kmax = std::min<int>(p, static_cast<int>(n));
    for (int k = 1; k <= kmax; k++) acc += a[k - 1] * y[n - k];
    y[n] = acc;
  }
  return y;
}

}  // namespace

void AudioSignal::Validate() const {
  if (!(sample_rate > 0.0)) throw DegenerateInput("sample_rate must be > 0");
  for (double s : samples)
    if (!std::isfinite(s)) throw DegenerateInput("non-finite audio sample");
}

int CodecConfig::WindowSamples() const {
  return static_cast<int>(std::lround(frames_per_window / fps * sample_rate));
}

int CodecConfig::SubframeSamples() const { return WindowSamples() / subframes; }

int CodecConfig::CodeSize() const { return subframes * (lpc_order + 1); }

void CodecConfig::Validate() const {
  if (!(sample_rate > 0.0) || !(fps > 0.0) || frames_per_window < 1 ||
      lpc_order < 1 || subframes < 1 || crossfade < 0)
    throw DegenerateInput("invalid codec config");
  if (SubframeSamples() <= lpc_order)
    throw DegenerateInput("sub-frame shorter than the LPC order");
  if (crossfade / 2 > SubframeSamples())
    throw DegenerateInput("crossfade longer than a sub-frame");
}

std::vector<std::span<const double>> FrameSignal(std::span<const double> signal,
                                                 int frame_len, int hop) {
  if (frame_len < 1 || hop < 1 || hop > frame_len)
    throw DegenerateInput("frame_signal: need frame_len >= 1, 1 <= hop <= frame_len");
  if (signal.empty() || static_cast<size_t>(frame_len) > signal.size())
    throw DegenerateInput("frame_signal: signal shorter than one frame");
  size_t count = (signal.size() - frame_len) / hop + 1;
  std::vector<std::span<const double>> frames;
  frames.reserve(count);
  for (size_t i = 0; i < count; i++)
    frames.push_back(signal.subspan(i * hop, frame_len));
  return frames;
}

std::vector<double> Autocorrelate(std::span<const double> frame, int order) {
  if (order < 0 || frame.size() <= static_cast<size_t>(order))
    throw DegenerateInput("autocorrelate: frame length must exceed the order");
  std::vector<double> r(order + 1, 0.0);
  for (int k = 0; k <= order; k++) {
    double acc = 0.0;
    for (size_t i = 0; i + k < frame.size(); i++) acc += frame[i] * frame[i + k];
    r[k] = acc;
  }
  return r;
}

double SolveYuleWalker(std::span<const double> r, int order,
                       std::vector<double> *coefficients,
                       std::vector<double> *reflection) {
  if (order < 1 || r.size() < static_cast<size_t>(order) + 1)
    throw DegenerateInput("levinson_durbin: need order + 1 autocorrelation lags");
  if (!(r[0] > 0.0)) throw SilentFrame("levinson_durbin: r[0] <= 0");

  std::vector<double> a(order, 0.0), tmp(order, 0.0);
  if (reflection) reflection->assign(order, 0.0);
  double err = r[0];
  for (int i = 0; i < order; i++) {
    double acc = r[i + 1];
    for (int j = 0; j < i; j++) acc -= a[j] * r[i - j];
    double k = acc / err;
    if (reflection) (*reflection)[i] = k;
    for (int j = 0; j < i; j++) tmp[j] = a[j] - k * a[i - 1 - j];
    for (int j = 0; j < i; j++) a[j] = tmp[j];
    a[i] = k;
    err *= (1.0 - k * k);
    if (!(err > 0.0)) {
      // Singular system: the remaining lags are perfectly predicted.
      err = 0.0;
      break;
    }
  }
  *coefficients = std::move(a);
  return err;
}

LpcFrame LevinsonDurbin(std::span<const double> r, int order, int frame_len) {
  if (frame_len < 1) throw DegenerateInput("levinson_durbin: frame_len < 1");
  LpcFrame out;
  double err = SolveYuleWalker(r, order, &out.coefficients);
  double power = err / frame_len;
  out.log_gain = power > 0.0 ? std::max(kLogGainFloor, 0.5 * std::log(power))
                             : kLogGainFloor;
  return out;
}

std::vector<double> ReflectionToLpc(std::span<const double> reflection) {
  std::vector<double> a;
  for (double k : reflection) {
    size_t i = a.size();
    std::vector<double> next(i + 1);
    for (size_t j = 0; j < i; j++) next[j] = a[j] - k * a[i - 1 - j];
    next[i] = k;
    a = std::move(next);
  }
  return a;
}

LspFrame LpcToLsp(const LpcFrame &lpc) {
  const int p = lpc.Order();
  if (p < 1) throw ConversionFailure("lpc_to_lsp: empty filter");
  // alpha = coefficients of A(z) in powers of z^-1.
  std::vector<double> alpha(p + 2, 0.0);
  alpha[0] = 1.0;
  for (int k = 1; k <= p; k++) alpha[k] = -lpc.coefficients[k - 1];

  std::vector<double> sum(p + 2), diff(p + 2);
  for (int m = 0; m <= p + 1; m++) {
    sum[m] = alpha[m] + alpha[p + 1 - m];
    diff[m] = alpha[m] - alpha[p + 1 - m];
  }
  // Remove the trivial roots at z = +-1 so both polynomials are symmetric
  // with an even degree.
  std::vector<double> cp, cq;
  if (p % 2 == 0) {
    cp.resize(p + 1);
    cq.resize(p + 1);
    cp[0] = sum[0];
    cq[0] = diff[0];
    for (int m = 1; m <= p; m++) {
      cp[m] = sum[m] - cp[m - 1];
      cq[m] = diff[m] + cq[m - 1];
    }
  } else {
    cp = sum;
    cq.resize(p);
    for (int m = 0; m < p; m++) cq[m] = diff[m] + (m >= 2 ? cq[m - 2] : 0.0);
  }
  const size_t want_p = (cp.size() - 1) / 2, want_q = (cq.size() - 1) / 2;

  std::vector<double> rp, rq;
  for (int grid : {kRootGrid, kRootGridRetry}) {
    rp = FindRoots(cp, grid);
    rq = FindRoots(cq, grid);
    if (rp.size() == want_p && rq.size() == want_q) break;
  }
  if (rp.size() != want_p || rq.size() != want_q)
    throw ConversionFailure("lpc_to_lsp: could not bracket all roots (filter "
                            "near instability)");

  LspFrame out;
  out.log_gain = lpc.log_gain;
  out.frequencies.reserve(p);
  for (size_t i = 0; i < want_p; i++) {
    out.frequencies.push_back(rp[i]);
    if (i < want_q) out.frequencies.push_back(rq[i]);
  }
  for (int i = 0; i < p; i++) {
    double prev = i == 0 ? 0.0 : out.frequencies[i - 1];
    if (!(out.frequencies[i] > prev) || !(out.frequencies[i] < kPi))
      throw ConversionFailure("lpc_to_lsp: roots do not interleave");
  }
  return out;
}

void RepairLsp(std::vector<double> *frequencies) {
  std::vector<double> &f = *frequencies;
  if (f.empty()) return;
  std::sort(f.begin(), f.end());
  const double lo = kLspMinGap, hi = kPi - kLspMinGap;
  for (double &v : f) v = std::clamp(v, lo, hi);
  for (size_t i = 1; i < f.size(); i++) f[i] = std::max(f[i], f[i - 1] + kLspMinGap);
  if (f.back() > hi) {
    f.back() = hi;
    for (size_t i = f.size() - 1; i-- > 0;)
      f[i] = std::min(f[i], f[i + 1] - kLspMinGap);
  }
}

LpcFrame LspToLpc(const LspFrame &lsp) {
  const int p = lsp.Order();
  if (p < 1) throw DegenerateInput("lsp_to_lpc: empty frame");
  std::vector<double> f = lsp.frequencies;
  bool valid = true;
  for (int i = 0; i < p; i++)
    valid = valid && f[i] > (i == 0 ? 0.0 : f[i - 1]) && f[i] < kPi;
  if (!valid) RepairLsp(&f);

  std::vector<double> pp{1.0}, qq{1.0};
  for (int i = 0; i < p; i++) {
    if (i % 2 == 0)
      MulQuadratic(&pp, -2.0 * std::cos(f[i]), 1.0);
    else
      MulQuadratic(&qq, -2.0 * std::cos(f[i]), 1.0);
  }
  if (p % 2 == 0) {
    MulLinear(&pp, 1.0);
    MulLinear(&qq, -1.0);
  } else {
    MulQuadratic(&qq, 0.0, -1.0);
  }
  LpcFrame out;
  out.log_gain = lsp.log_gain;
  out.coefficients.resize(p);
  for (int k = 1; k <= p; k++) out.coefficients[k - 1] = -0.5 * (pp[k] + qq[k]);
  return out;
}

LspFrame SilentLsp(int order) {
  LspFrame out;
  out.log_gain = kLogGainFloor;
  out.frequencies.resize(order);
  for (int k = 1; k <= order; k++) out.frequencies[k - 1] = k * kPi / (order + 1);
  return out;
}

EncodedAudioVector EncodeWindow(std::span<const double> segment,
                                const CodecConfig &config) {
  config.Validate();
  if (static_cast<int>(segment.size()) != config.WindowSamples())
    throw DegenerateInput("encode_window: segment has " +
                          std::to_string(segment.size()) + " samples, expected " +
                          std::to_string(config.WindowSamples()));
  const int p = config.lpc_order;
  const int len = config.SubframeSamples();
  const std::vector<double> window = UnitPowerHann(len);

  std::vector<double> lag(p + 1);
  for (int k = 0; k <= p; k++) {
    double x = 2.0 * kPi * kLagWindowHz * k / config.sample_rate;
    lag[k] = std::exp(-0.5 * x * x);
  }
  lag[0] = 1.0 + kNoiseFloor;

  EncodedAudioVector code;
  code.values.reserve(config.CodeSize());
  std::vector<double> buf(len);
  for (auto frame : FrameSignal(segment, len, len)) {
    if (static_cast<int>(code.values.size()) == config.CodeSize()) break;
    for (int i = 0; i < len; i++) buf[i] = frame[i] * window[i];
    std::vector<double> r = Autocorrelate(buf, p);
    LspFrame lsp;
    if (r[0] <= kSilenceEnergy) {
      lsp = SilentLsp(p);
    } else {
      for (int k = 0; k <= p; k++) r[k] *= lag[k];
      LpcFrame lpc = LevinsonDurbin(r, p, len);
      // Bandwidth expansion fallback for frames whose poles hug the circle.
      for (int attempt = 0;; attempt++) {
        try {
          lsp = LpcToLsp(lpc);
          break;
        } catch (const ConversionFailure &) {
          if (attempt == 8) throw;
          double g = 1.0;
          for (double &a : lpc.coefficients) {
            g *= 0.98;
            a *= g;
          }
        }
      }
    }
    code.values.insert(code.values.end(), lsp.frequencies.begin(),
                       lsp.frequencies.end());
    code.values.push_back(lsp.log_gain);
  }
  return code;
}

std::vector<LspFrame> SplitCode(const EncodedAudioVector &code,
                                const CodecConfig &config) {
  CheckCodeShape(code, config);
  const int p = config.lpc_order;
  std::vector<LspFrame> out(config.subframes);
  for (int s = 0; s < config.subframes; s++) {
    auto begin = code.values.begin() + s * (p + 1);
    out[s].frequencies.assign(begin, begin + p);
    out[s].log_gain = *(begin + p);
  }
  return out;
}

void RepairCode(EncodedAudioVector *code, const CodecConfig &config) {
  CheckCodeShape(*code, config);
  const int p = config.lpc_order;
  for (int s = 0; s < config.subframes; s++) {
    auto begin = code->values.begin() + s * (p + 1);
    std::vector<double> f(begin, begin + p);
    RepairLsp(&f);
    std::copy(f.begin(), f.end(), begin);
  }
}

std::vector<double> DecodeWindow(const EncodedAudioVector &code,
                                 const CodecConfig &config, uint64_t seed) {
  config.Validate();
  CheckCodeShape(code, config);
  for (double v : code.values)
    if (!std::isfinite(v)) throw DegenerateInput("decode_window: non-finite code");

  const int n = config.WindowSamples();
  const int len = config.SubframeSamples();
  const int half_fade = config.crossfade / 2;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> excitation(kPreroll + n);
  for (double &e : excitation) e = normal(rng);

  std::vector<double> out(n, 0.0);
  std::vector<LspFrame> frames = SplitCode(code, config);
  for (int s = 0; s < config.subframes; s++) {
    RepairLsp(&frames[s].frequencies);
    LpcFrame lpc = LspToLpc(frames[s]);
    double gain = std::exp(std::max(frames[s].log_gain, kLogGainFloor));
    int begin = s == 0 ? 0 : s * len - half_fade;
    int end = s == config.subframes - 1 ? n : (s + 1) * len + half_fade;
    std::vector<double> y = AllPole(
        lpc.coefficients, gain,
        std::span<const double>(excitation).first(kPreroll + end));
    for (int i = begin; i < end; i++) {
      double w = 1.0;
      int left = s * len, right = (s + 1) * len;
      if (s > 0 && i < left + half_fade)
        w = (i - (left - half_fade) + 0.5) / (2.0 * half_fade);
      else if (s < config.subframes - 1 && i >= right - half_fade)
        w = 1.0 - (i - (right - half_fade) + 0.5) / (2.0 * half_fade);
      out[i] += w * y[kPreroll + i];
    }
  }
  return out;
}

std::vector<EncodedAudioVector> EncodeSignal(const AudioSignal &signal,
                                             const CodecConfig &config) {
  const size_t n = config.WindowSamples();
  std::vector<EncodedAudioVector> codes;
  std::span<const double> all(signal.samples);
  for (size_t start = 0; start + n <= all.size(); start += n)
    codes.push_back(EncodeWindow(all.subspan(start, n), config));
  return codes;
}

AudioSignal DecodeSequence(std::span<const EncodedAudioVector> codes,
                           const CodecConfig &config, uint64_t seed) {
  AudioSignal out;
  out.sample_rate = config.sample_rate;
  out.samples.reserve(codes.size() * config.WindowSamples());
  for (size_t i = 0; i < codes.size(); i++) {
    std::vector<double> w = DecodeWindow(codes[i], config, seed + i);
    out.samples.insert(out.samples.end(), w.begin(), w.end());
  }
  return out;
}

}  // namespace lipper
