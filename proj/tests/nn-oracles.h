// tests/nn-oracles.h

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

// Loop-level reference implementations for the network layers.  They work on
// plain vectors in the same channels-last layout as the library tensors.

#ifndef LIPPER_TESTS_NN_ORACLES_H_
#define LIPPER_TESTS_NN_ORACLES_H_

#include <cmath>
#include <vector>

namespace oracle {

/// x [T, H, W, C], k [kt, kh, kw, C, O], b [O]; spatial zero padding, temporal
/// zero padding of (kt - 1) / 2 when `same`, otherwise valid.
inline std::vector<double> NaiveConv3d(const std::vector<double> &x, int t, int h, int w,
                                       int c, const std::vector<double> &k, int kt,
                                       int kh, int kw, int o,
                                       const std::vector<double> &b, bool same) {
  int pt = same ? (kt - 1) / 2 : 0;
  int t_out = same ? t : t - kt + 1;
  std::vector<double> y(size_t(t_out) * h * w * o);
  for (int to = 0; to < t_out; to++)
    for (int yo = 0; yo < h; yo++)
      for (int xo = 0; xo < w; xo++)
        for (int oc = 0; oc < o; oc++) {
          double acc = b[oc];
          for (int dt = 0; dt < kt; dt++)
            for (int dy = 0; dy < kh; dy++)
              for (int dx = 0; dx < kw; dx++)
                for (int ic = 0; ic < c; ic++) {
                  int ti = to + dt - pt, yi = yo + dy - kh / 2, xi = xo + dx - kw / 2;
                  if (ti < 0 || ti >= t || yi < 0 || yi >= h || xi < 0 || xi >= w)
                    continue;
                  acc += x[((size_t(ti) * h + yi) * w + xi) * c + ic] *
                         k[(((size_t(dt) * kh + dy) * kw + dx) * c + ic) * o + oc];
                }
          y[((size_t(to) * h + yo) * w + xo) * o + oc] = acc;
        }
  return y;
}

/// Single-direction GRU cell run over x [T, F] in the given time order.
/// w_i [F, 3H], w_h [H, 3H], gate blocks (r, z, n).  Returns [T, H] indexed by
/// time step.
inline std::vector<double> UnrolledGru(const std::vector<double> &x, int t_len, int f,
                                       int hid, const std::vector<double> &w_i,
                                       const std::vector<double> &w_h,
                                       const std::vector<double> &b_i,
                                       const std::vector<double> &b_h, bool reverse) {
  auto sig = [](double v) { return 1.0 / (1.0 + std::exp(-v)); };
  std::vector<double> hs(hid, 0.0), out(size_t(t_len) * hid);
  for (int s = 0; s < t_len; s++) {
    int t = reverse ? t_len - 1 - s : s;
    std::vector<double> next(hid);
    for (int j = 0; j < hid; j++) {
      double xr = b_i[j], xz = b_i[hid + j], xn = b_i[2 * hid + j];
      for (int i = 0; i < f; i++) {
        double xv = x[size_t(t) * f + i];
        xr += xv * w_i[size_t(i) * 3 * hid + j];
        xz += xv * w_i[size_t(i) * 3 * hid + hid + j];
        xn += xv * w_i[size_t(i) * 3 * hid + 2 * hid + j];
      }
      double hr = b_h[j], hz = b_h[hid + j], hn = b_h[2 * hid + j];
      for (int i = 0; i < hid; i++) {
        hr += hs[i] * w_h[size_t(i) * 3 * hid + j];
        hz += hs[i] * w_h[size_t(i) * 3 * hid + hid + j];
        hn += hs[i] * w_h[size_t(i) * 3 * hid + 2 * hid + j];
      }
      double r = sig(xr + hr), z = sig(xz + hz);
      double n = std::tanh(xn + r * hn);
      next[j] = (1 - z) * n + z * hs[j];
    }
    hs = next;
    for (int j = 0; j < hid; j++) out[size_t(t) * hid + j] = hs[j];
  }
  return out;
}

/// Scalar Adam; returns the parameter trajectory after each step.
inline std::vector<double> ScalarAdam(double p, const std::vector<double> &grads, double lr,
                                      double b1 = 0.9, double b2 = 0.999,
                                      double eps = 1e-8) {
  double m = 0, v = 0;
  std::vector<double> traj;
  for (size_t s = 0; s < grads.size(); s++) {
    double g = grads[s];
    m = b1 * m + (1 - b1) * g;
    v = b2 * v + (1 - b2) * g * g;
    double mh = m / (1 - std::pow(b1, double(s + 1)));
    double vh = v / (1 - std::pow(b2, double(s + 1)));
    p -= lr * mh / (std::sqrt(vh) + eps);
    traj.push_back(p);
  }
  return traj;
}

}  // namespace oracle

#endif  // LIPPER_TESTS_NN_ORACLES_H_
