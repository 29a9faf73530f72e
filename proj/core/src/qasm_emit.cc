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

#include <cstdio>
#include <sstream>

#include "vqpu/qasm.h"

namespace vqpu {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

class Emitter {
   public:
    explicit Emitter(const CircuitIR &ir) : ir_(ir) {
    }

    std::string run() {
        out_ << "OPENQASM 2.0;\n";
        out_ << "include \"qelib1.inc\";\n";
        for (const auto &r : ir_.quantum_registers) {
            out_ << "qreg " << r.name << "[" << r.size << "];\n";
        }
        for (const auto &r : ir_.classical_registers) {
            out_ << "creg " << r.name << "[" << r.size << "];\n";
        }
        for (const auto &inst : ir_.instructions) {
            std::visit(overloaded{
                           [&](const GateOp &g) { gate(g); },
                           [&](const MeasureOp &m) {
                               out_ << "measure " << qubit(m.qubit) << " -> " << clbit(m.bit) << ";\n";
                           },
                           [&](const ResetOp &r) { out_ << "reset " << qubit(r.qubit) << ";\n"; },
                           [&](const ConditionalOp &c) {
                               out_ << "if (" << ir_.classical_registers.at(c.creg).name << "==" << c.value << ") ";
                               gate(c.gate);
                           },
                           [&](const BarrierOp &b) {
                               out_ << "barrier ";
                               for (std::size_t k = 0; k < b.qubits.size(); ++k) {
                                   out_ << (k ? "," : "") << qubit(b.qubits[k]);
                               }
                               out_ << ";\n";
                           },
                       },
                       inst);
        }
        return out_.str();
    }

   private:
    void gate(const GateOp &g) {
        out_ << g.name;
        if (!g.params.empty()) {
            out_ << "(";
            for (std::size_t k = 0; k < g.params.size(); ++k) {
                out_ << (k ? "," : "") << format_real(g.params[k]);
            }
            out_ << ")";
        }
        auto operands = g.operands();
        for (std::size_t k = 0; k < operands.size(); ++k) {
            out_ << (k ? "," : " ") << qubit(operands[k]);
        }
        out_ << ";\n";
    }

    std::string qubit(std::size_t flat) const {
        auto [reg, index] = ir_.locate_qubit(flat);
        return ir_.quantum_registers[reg].name + "[" + std::to_string(index) + "]";
    }

    std::string clbit(std::size_t flat) const {
        auto [reg, index] = ir_.locate_clbit(flat);
        return ir_.classical_registers[reg].name + "[" + std::to_string(index) + "]";
    }

    const CircuitIR &ir_;
    std::ostringstream out_;
};

}  // namespace

std::string format_real(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string emit_qasm(const CircuitIR &ir) {
    return Emitter(ir).run();
}

}  // namespace vqpu
