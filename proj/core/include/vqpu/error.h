// Copyright 2026 The vqpu Authors
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

#ifndef VQPU_ERROR_H_
#define VQPU_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace vqpu {

enum class ErrorCode {
    ZeroNorm,
    QuantizationCollapse,
    NonPositiveInput,
    BelowGroundState,
    InvalidAngles,
    InvalidArgument,
    UnknownGate,
    ArityMismatch,
    CapacityExceeded,
    InvalidOperand,
    UnsupportedInstruction,
    DuplicateBackend,
    UnknownBackend,
    CapabilityMismatch,
    ValidationFailed,
    InvalidConfig,
    UnknownJob,
};

/// Stable lowercase identifier for an error code, e.g. "zero-norm".
std::string_view to_string(ErrorCode code);

/// Every recoverable failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message);

    ErrorCode code() const noexcept {
        return code_;
    }

   private:
    ErrorCode code_;
};

}  // namespace vqpu

#endif  // VQPU_ERROR_H_
