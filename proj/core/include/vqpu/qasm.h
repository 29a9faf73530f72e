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

#ifndef VQPU_QASM_H_
#define VQPU_QASM_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vqpu/circuit.h"

namespace vqpu {

/// Upper bound on declared classical bits across all cregs.
inline constexpr std::size_t kMaxClassicalBits = 4096;

struct ParseOptions {
    std::size_t max_qubits = kDefaultMaxQubits;
};

/// ir is set iff diagnostics holds no errors (warnings may be present).
/// diagnostics are ordered by position.
struct ParseResult {
    std::optional<CircuitIR> ir;
    std::vector<Diagnostic> diagnostics;

    bool ok() const noexcept {
        return ir.has_value();
    }
};

/// Parses the OpenQASM 2.0 subset: header, qelib1.inc include, qreg/creg,
/// the standard gate set (plus the U/CX builtins), measure, reset, barrier
/// and `if (creg==N) gate`. Register-wide operands are broadcast into
/// per-index instructions. Never throws on malformed input.
ParseResult parse_qasm(std::string_view source, const ParseOptions &options = {});

/// Canonical text for a valid IR. parse_qasm(emit_qasm(ir)) reproduces ir.
std::string emit_qasm(const CircuitIR &ir);

/// Parameters are written with 17 significant digits so they re-parse to the
/// same double.
std::string format_real(double value);

}  // namespace vqpu

#endif  // VQPU_QASM_H_
