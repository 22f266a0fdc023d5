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

#ifndef UHLMANN_ERROR_HPP
#define UHLMANN_ERROR_HPP

#include <stdexcept>
#include <string>

namespace uhlmann {

enum class ErrorCode {
    kNotHermitian,
    kNotPsd,
    kNoConvergence,
    kNotPartialIsometry,
    kDimensionMismatch,
    kInvalidState,
    kMarginalMismatch,
    kNotInQ,
    kBadRank,
    kNotUnitary,
    kDegenerateReadout,
    kVanishingFilter,
    kNotContraction,
    kNotAdmissible,
    kBadInitialAmplitude,
    kBadParams,
    kParse,
};

const char *to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above, so
/// callers (and the CLI exit-code mapping) can branch without parsing text.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message);

    ErrorCode code() const noexcept {
        return code_;
    }

   private:
    ErrorCode code_;
};

}  // namespace uhlmann

#endif
