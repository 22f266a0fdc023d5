// Copyright 2026 The Uhlmann Holonomy Authors
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

#include "uhlmann/error.hpp"

namespace uhlmann {

const char *to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::kNotHermitian:
            return "NotHermitian";
        case ErrorCode::kNotPsd:
            return "NotPSD";
        case ErrorCode::kNoConvergence:
            return "NoConvergence";
        case ErrorCode::kNotPartialIsometry:
            return "NotPartialIsometry";
        case ErrorCode::kDimensionMismatch:
            return "DimensionMismatch";
        case ErrorCode::kInvalidState:
            return "InvalidState";
        case ErrorCode::kMarginalMismatch:
            return "MarginalMismatch";
        case ErrorCode::kNotInQ:
            return "NotInQ";
        case ErrorCode::kBadRank:
            return "BadRank";
        case ErrorCode::kNotUnitary:
            return "NotUnitary";
        case ErrorCode::kDegenerateReadout:
            return "DegenerateReadout";
        case ErrorCode::kVanishingFilter:
            return "VanishingFilter";
        case ErrorCode::kNotContraction:
            return "NotContraction";
        case ErrorCode::kNotAdmissible:
            return "NotAdmissible";
        case ErrorCode::kBadInitialAmplitude:
            return "BadInitialAmplitude";
        case ErrorCode::kBadParams:
            return "BadParams";
        case ErrorCode::kParse:
            return "ParseError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {
}

}  // namespace uhlmann
