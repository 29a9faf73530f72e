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

#include "vqpu/circuit.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "vqpu/error.h"
#include "vqpu/gates.h"

namespace vqpu {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::size_t total_size(const std::vector<Register> &registers) {
    std::size_t total = 0;
    for (const auto &r : registers) {
        total += r.size;
    }
    return total;
}

std::pair<std::size_t, std::size_t> locate(const std::vector<Register> &registers, std::size_t flat) {
    std::size_t offset = 0;
    for (std::size_t r = 0; r < registers.size(); ++r) {
        if (flat < offset + registers[r].size) {
            return {r, flat - offset};
        }
        offset += registers[r].size;
    }
    throw Error(ErrorCode::InvalidOperand, "index " + std::to_string(flat) + " is outside every register");
}

Diagnostic ir_error(std::size_t index, const char *code, const std::string &message) {
    return Diagnostic{Severity::Error, 0, 0, "instruction " + std::to_string(index) + ": " + message, code};
}

class IrValidator {
   public:
    IrValidator(const CircuitIR &ir, std::vector<Diagnostic> &out) : ir_(ir), out_(out) {
    }

    void check_gate(std::size_t index, const GateOp &gate) {
        const GateDefinition *def = find_gate(gate.name);
        if (def == nullptr) {
            out_.push_back(ir_error(index, diag::kUnknownGate, "unknown gate '" + gate.name + "'"));
            return;
        }
        if (gate.params.size() != def->num_params || gate.controls.size() != def->num_controls ||
            gate.targets.size() != def->num_targets) {
            out_.push_back(ir_error(index, diag::kArityMismatch, "wrong parameter or operand count for '" + gate.name + "'"));
            return;
        }
        for (double p : gate.params) {
            if (!std::isfinite(p)) {
                out_.push_back(ir_error(index, diag::kInvalidParameter, "non-finite parameter"));
            }
        }
        check_qubits(index, gate.operands(), true);
    }

    void check_qubits(std::size_t index, const std::vector<std::size_t> &qubits, bool distinct) {
        std::set<std::size_t> seen;
        for (std::size_t q : qubits) {
            if (q >= ir_.num_qubits()) {
                out_.push_back(ir_error(index, diag::kIndexOutOfRange, "qubit " + std::to_string(q) + " out of range"));
            } else if (distinct && !seen.insert(q).second) {
                out_.push_back(ir_error(index, diag::kDuplicateOperand, "qubit " + std::to_string(q) + " used twice"));
            }
        }
    }

    void check_bit(std::size_t index, std::size_t bit) {
        if (bit >= ir_.num_clbits()) {
            out_.push_back(ir_error(index, diag::kIndexOutOfRange, "classical bit " + std::to_string(bit) + " out of range"));
        }
    }

    void run(std::size_t max_qubits) {
        std::set<std::string> names;
        auto check_registers = [&](const std::vector<Register> &registers) {
            for (const auto &r : registers) {
                if (!names.insert(r.name).second) {
                    out_.push_back(Diagnostic{Severity::Error, 0, 0, "register '" + r.name + "' declared twice",
                                              diag::kDuplicateRegister});
                }
                if (!is_valid_register_name(r.name)) {
                    out_.push_back(Diagnostic{Severity::Error, 0, 0, "register name '" + r.name + "' is not an identifier",
                                              diag::kInvalidName});
                }
                if (r.size == 0) {
                    out_.push_back(Diagnostic{Severity::Error, 0, 0, "register '" + r.name + "' has size 0",
                                              diag::kInvalidRegisterSize});
                }
            }
        };
        check_registers(ir_.quantum_registers);
        check_registers(ir_.classical_registers);
        if (ir_.num_qubits() > max_qubits) {
            out_.push_back(Diagnostic{Severity::Error, 0, 0,
                                      "circuit needs " + std::to_string(ir_.num_qubits()) +
                                          " qubits; capacity is " + std::to_string(max_qubits),
                                      diag::kCapacityExceeded});
        }
        for (std::size_t i = 0; i < ir_.instructions.size(); ++i) {
            std::visit(overloaded{
                           [&](const GateOp &g) { check_gate(i, g); },
                           [&](const MeasureOp &m) {
                               check_qubits(i, {m.qubit}, false);
                               check_bit(i, m.bit);
                           },
                           [&](const ResetOp &r) { check_qubits(i, {r.qubit}, false); },
                           [&](const ConditionalOp &c) {
                               if (c.creg >= ir_.classical_registers.size()) {
                                   out_.push_back(ir_error(i, diag::kUndeclaredRegister,
                                                           "conditional on undeclared classical register"));
                               }
                               check_gate(i, c.gate);
                           },
                           [&](const BarrierOp &b) {
                               if (b.qubits.empty()) {
                                   out_.push_back(ir_error(i, diag::kArityMismatch, "barrier without qubits"));
                               }
                               check_qubits(i, b.qubits, false);
                           },
                       },
                       ir_.instructions[i]);
        }
    }

   private:
    const CircuitIR &ir_;
    std::vector<Diagnostic> &out_;
};

}  // namespace

std::vector<std::size_t> GateOp::operands() const {
    std::vector<std::size_t> out = controls;
    out.insert(out.end(), targets.begin(), targets.end());
    return out;
}

std::size_t CircuitIR::num_qubits() const noexcept {
    return total_size(quantum_registers);
}

std::size_t CircuitIR::num_clbits() const noexcept {
    return total_size(classical_registers);
}

std::size_t CircuitIR::qubit_offset(std::size_t qreg) const noexcept {
    std::size_t offset = 0;
    for (std::size_t r = 0; r < qreg && r < quantum_registers.size(); ++r) {
        offset += quantum_registers[r].size;
    }
    return offset;
}

std::size_t CircuitIR::clbit_offset(std::size_t creg) const noexcept {
    std::size_t offset = 0;
    for (std::size_t r = 0; r < creg && r < classical_registers.size(); ++r) {
        offset += classical_registers[r].size;
    }
    return offset;
}

std::pair<std::size_t, std::size_t> CircuitIR::locate_qubit(std::size_t qubit) const {
    return locate(quantum_registers, qubit);
}

std::pair<std::size_t, std::size_t> CircuitIR::locate_clbit(std::size_t bit) const {
    return locate(classical_registers, bit);
}

bool CircuitIR::has_conditionals() const noexcept {
    return std::any_of(instructions.begin(), instructions.end(),
                       [](const Instruction &i) { return std::holds_alternative<ConditionalOp>(i); });
}

std::optional<std::size_t> terminal_measurement_start(const CircuitIR &ir) {
    std::size_t start = ir.instructions.size();
    bool in_terminal = false;
    for (std::size_t i = 0; i < ir.instructions.size(); ++i) {
        const auto &inst = ir.instructions[i];
        if (std::holds_alternative<BarrierOp>(inst)) {
            continue;
        }
        if (std::holds_alternative<MeasureOp>(inst)) {
            if (!in_terminal) {
                in_terminal = true;
                start = i;
            }
            continue;
        }
        if (in_terminal || !std::holds_alternative<GateOp>(inst)) {
            return std::nullopt;
        }
    }
    return start;
}

bool is_valid_register_name(std::string_view name) noexcept {
    if (name.empty() || name[0] < 'a' || name[0] > 'z') {
        return false;
    }
    return std::all_of(name.begin(), name.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    });
}

std::string_view to_string(Severity severity) {
    return severity == Severity::Error ? "error" : "warning";
}

bool has_errors(const std::vector<Diagnostic> &diagnostics) {
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [](const Diagnostic &d) { return d.severity == Severity::Error; });
}

void sort_diagnostics(std::vector<Diagnostic> &diagnostics) {
    std::stable_sort(diagnostics.begin(), diagnostics.end(), [](const Diagnostic &a, const Diagnostic &b) {
        return std::tie(a.line, a.column) < std::tie(b.line, b.column);
    });
}

std::vector<Diagnostic> validate(const CircuitIR &ir, std::size_t max_qubits) {
    std::vector<Diagnostic> out;
    IrValidator(ir, out).run(max_qubits);
    return out;
}

}  // namespace vqpu
