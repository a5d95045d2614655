// Copyright 2026 The qst Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qst/error.hpp"

namespace qst {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument:
      return "InvalidArgument";
    case ErrorKind::kSiteOutOfRange:
      return "SiteOutOfRange";
    case ErrorKind::kDimensionMismatch:
      return "DimensionMismatch";
    case ErrorKind::kNotEquallySpaced:
      return "NotEquallySpaced";
    case ErrorKind::kDegenerateSpectrum:
      return "DegenerateSpectrum";
    case ErrorKind::kBlochOutOfBall:
      return "BlochOutOfBall";
    case ErrorKind::kNonUnitTrace:
      return "NonUnitTrace";
    case ErrorKind::kThermalParamMissing:
      return "ThermalParamMissing";
    case ErrorKind::kToleranceViolated:
      return "ToleranceViolated";
    case ErrorKind::kNoSignChange:
      return "NoSignChange";
    case ErrorKind::kLevelNotBracketed:
      return "LevelNotBracketed";
    case ErrorKind::kIo:
      return "Io";
  }
  return "Unknown";
}

}  // namespace qst
