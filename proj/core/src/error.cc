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

#include "vqpu/error.h"

namespace vqpu {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::ZeroNorm:
            return "zero-norm";
        case ErrorCode::QuantizationCollapse:
            return "quantization-collapse";
        case ErrorCode::NonPositiveInput:
            return "non-positive-input";
        case ErrorCode::BelowGroundState:
            return "below-ground-state";
        case ErrorCode::InvalidAngles:
            return "invalid-angles";
        case ErrorCode::InvalidArgument:
            return "invalid-argument";
        case ErrorCode::UnknownGate:
            return "unknown-gate";
        case ErrorCode::ArityMismatch:
            return "arity-mismatch";
        case ErrorCode::CapacityExceeded:
            return "capacity-exceeded";
        case ErrorCode::InvalidOperand:
            return "invalid-operand";
        case ErrorCode::UnsupportedInstruction:
            return "unsupported-instruction";
        case ErrorCode::DuplicateBackend:
            return "duplicate-backend";
        case ErrorCode::UnknownBackend:
            return "unknown-backend";
        case ErrorCode::CapabilityMismatch:
            return "capability-mismatch";
        case ErrorCode::ValidationFailed:
            return "validation-failed";
        case ErrorCode::InvalidConfig:
            return "invalid-config";
        case ErrorCode::UnknownJob:
            return "unknown-job";
    }
    return "unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {
}

}  // namespace vqpu
