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

#ifndef VQPU_CIRCUIT_H_
#define VQPU_CIRCUIT_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace vqpu {

/// Default qubit capacity of the engine (2^26 binary64 pairs is 1 GiB).
inline constexpr std::size_t kDefaultMaxQubits = 26;

struct Register {
    std::string name;
    std::size_t size = 0;

    bool operator==(const Register &) const = default;
};

// Qubit and classical-bit operands are flat indices: registers are laid out
// back to back in declaration order.

struct GateOp {
    std::string name;
    std::vector<double> params;
    std::vector<std::size_t> controls;
    std::vector<std::size_t> targets;

    /// Controls followed by targets; the order the gate matrix expects.
    std::vector<std::size_t> operands() const;

    bool operator==(const GateOp &) const = default;
};

struct MeasureOp {
    std::size_t qubit = 0;
    std::size_t bit = 0;

    bool operator==(const MeasureOp &) const = default;
};

struct ResetOp {
    std::size_t qubit = 0;

    bool operator==(const ResetOp &) const = default;
};

/// Runs `gate` iff the classical register (read little-endian, bit 0 least
/// significant) equals `value`.
struct ConditionalOp {
    std::size_t creg = 0;
    std::uint64_t value = 0;
    GateOp gate;

    bool operator==(const ConditionalOp &) const = default;
};

/// Scheduling hint only; a no-op during execution.
struct BarrierOp {
    std::vector<std::size_t> qubits;

    bool operator==(const BarrierOp &) const = default;
};

using Instruction = std::variant<GateOp, MeasureOp, ResetOp, ConditionalOp, BarrierOp>;

struct CircuitIR {
    std::vector<Register> quantum_registers;
    std::vector<Register> classical_registers;
    std::vector<Instruction> instructions;

    std::size_t num_qubits() const noexcept;
    std::size_t num_clbits() const noexcept;
    std::size_t qubit_offset(std::size_t qreg) const noexcept;
    std::size_t clbit_offset(std::size_t creg) const noexcept;

    /// (register index, index within register) for a flat qubit / clbit index.
    std::pair<std::size_t, std::size_t> locate_qubit(std::size_t qubit) const;
    std::pair<std::size_t, std::size_t> locate_clbit(std::size_t bit) const;

    bool has_conditionals() const noexcept;

    bool operator==(const CircuitIR &) const = default;
};

/// Index of the first instruction of the terminal measurement block when the
/// circuit is "gates, then only measurements": everything before it is a gate
/// or barrier, everything from it on is a measure or barrier. nullopt if the
/// circuit has resets, conditionals or mid-circuit measurements.
std::optional<std::size_t> terminal_measurement_start(const CircuitIR &ir);

enum class Severity { Error, Warning };

/// Stable diagnostic identifiers.
namespace diag {
inline constexpr const char *kSyntax = "syntax-error";
inline constexpr const char *kMissingHeader = "missing-header";
inline constexpr const char *kUnsupportedVersion = "unsupported-version";
inline constexpr const char *kUnsupported = "unsupported-construct";
inline constexpr const char *kUndeclaredRegister = "undeclared-register";
inline constexpr const char *kDuplicateRegister = "duplicate-register";
inline constexpr const char *kInvalidRegisterSize = "invalid-register-size";
inline constexpr const char *kInvalidName = "invalid-register-name";
inline constexpr const char *kIndexOutOfRange = "index-out-of-range";
inline constexpr const char *kUnknownGate = "unknown-gate";
inline constexpr const char *kArityMismatch = "arity-mismatch";
inline constexpr const char *kDuplicateOperand = "duplicate-operand";
inline constexpr const char *kSizeMismatch = "register-size-mismatch";
inline constexpr const char *kInvalidParameter = "invalid-parameter";
inline constexpr const char *kCapacityExceeded = "capacity-exceeded";
inline constexpr const char *kUnreachableCondition = "unreachable-condition";
}  // namespace diag

/// A parse or validation finding. line and column are 1-based positions in
/// the source text; both are 0 for findings on an IR that has no source.
struct Diagnostic {
    Severity severity = Severity::Error;
    std::size_t line = 0;
    std::size_t column = 0;
    std::string message;
    std::string code;

    bool operator==(const Diagnostic &) const = default;
};

std::string_view to_string(Severity severity);

/// OpenQASM 2.0 identifier: [a-z][A-Za-z0-9_]*
bool is_valid_register_name(std::string_view name) noexcept;

bool has_errors(const std::vector<Diagnostic> &diagnostics);

/// Sorts by (line, column), keeping insertion order for ties.
void sort_diagnostics(std::vector<Diagnostic> &diagnostics);

/// Checks every IR invariant. Empty result iff the IR is well formed and fits
/// in `max_qubits`.
std::vector<Diagnostic> validate(const CircuitIR &ir, std::size_t max_qubits = kDefaultMaxQubits);

}  // namespace vqpu

#endif  // VQPU_CIRCUIT_H_
