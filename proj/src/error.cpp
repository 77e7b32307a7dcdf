// Copyright 2026 The coolsim Authors
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

#include "coolsim/error.hpp"

namespace coolsim {

std::string_view error_kind_name(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::kInvalidDims:
            return "InvalidDims";
        case ErrorKind::kInvalidState:
            return "InvalidState";
        case ErrorKind::kInvalidUnitary:
            return "InvalidUnitary";
        case ErrorKind::kInvalidInput:
            return "InvalidInput";
        case ErrorKind::kInvalidParam:
            return "InvalidParam";
        case ErrorKind::kInvalidQubits:
            return "InvalidQubits";
        case ErrorKind::kNotTranspiled:
            return "NotTranspiled";
        case ErrorKind::kSizeLimit:
            return "SizeLimit";
        case ErrorKind::kUnmitigable:
            return "Unmitigable";
        case ErrorKind::kNoConvergence:
            return "NoConvergence";
        case ErrorKind::kNegativeTemperature:
            return "NegativeTemperature";
        case ErrorKind::kZeroTemperature:
            return "ZeroTemperature";
        case ErrorKind::kConfigError:
            return "ConfigError";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string &message)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {
}

}  // namespace coolsim
