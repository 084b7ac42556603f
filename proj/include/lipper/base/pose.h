// lipper/base/pose.h

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

#ifndef LIPPER_BASE_POSE_H_
#define LIPPER_BASE_POSE_H_

#include <algorithm>
#include <array>
#include <string>

#include "lipper/base/error.h"

namespace lipper {

/// Camera angles in degrees, ascending.  Index order is the class order of
/// the pose classifier and the channel order of fused views.
inline constexpr std::array<int, 5> kPoseAngles{0, 30, 45, 60, 90};

inline bool IsPoseAngle(int angle) {
  return std::find(kPoseAngles.begin(), kPoseAngles.end(), angle) != kPoseAngles.end();
}

/// Position of `angle` in kPoseAngles; throws Error for other values.
inline int PoseIndex(int angle) {
  auto it = std::find(kPoseAngles.begin(), kPoseAngles.end(), angle);
  if (it == kPoseAngles.end()) throw Error("not a pose angle: " + std::to_string(angle));
  return static_cast<int>(it - kPoseAngles.begin());
}

}  // namespace lipper

#endif  // LIPPER_BASE_POSE_H_
