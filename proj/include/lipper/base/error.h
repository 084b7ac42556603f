// lipper/base/error.h

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

#ifndef LIPPER_BASE_ERROR_H_
#define LIPPER_BASE_ERROR_H_

#include <stdexcept>
#include <string>

namespace lipper {

/// Root of every error thrown by the library.  The CLI maps subclasses onto
/// process exit codes (see tools/lipper.cc).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define LIPPER_DEFINE_ERROR(Name)          \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  }

LIPPER_DEFINE_ERROR(DegenerateInput);
LIPPER_DEFINE_ERROR(SilentFrame);
LIPPER_DEFINE_ERROR(ConversionFailure);
LIPPER_DEFINE_ERROR(ShapeError);
LIPPER_DEFINE_ERROR(ProtocolViolation);
LIPPER_DEFINE_ERROR(NoViews);
LIPPER_DEFINE_ERROR(RateMismatch);
LIPPER_DEFINE_ERROR(IngestError);
LIPPER_DEFINE_ERROR(AlignmentError);
LIPPER_DEFINE_ERROR(DivergenceError);
LIPPER_DEFINE_ERROR(FormatError);

#undef LIPPER_DEFINE_ERROR

/// Thrown when a video window lacks a view the caller asked for.
class MissingView : public Error {
 public:
  MissingView(int angle)
      : Error("missing view " + std::to_string(angle) + " deg"), angle_(angle) {}
  int angle() const { return angle_; }

 private:
  int angle_;
};

}  // namespace lipper

#endif  // LIPPER_BASE_ERROR_H_
