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

#ifndef VQPU_ENGINE_H_
#define VQPU_ENGINE_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "vqpu/bloch.h"
#include "vqpu/circuit.h"
#include "vqpu/entropy.h"
#include "vqpu/gates.h"
#include "vqpu/register.h"

namespace vqpu {

/// Classical-register bitstring (bit 0 rightmost) -> count.
using Histogram = std::map<std::string, std::uint64_t>;

/// Prepares n qubits as the tensor product of per-qubit Bloch states (qubit q
/// is bit q of the amplitude index), with all classical bits 0.
///
/// Throws Error(CapacityExceeded) if n is 0 or above max_qubits, and
/// Error(InvalidAngles) unless angles.size() == n.
BlochRegister init_qubits(std::size_t n, std::span<const BlochAngles> angles, std::size_t classical_bits,
                          PrecisionMode precision, std::size_t max_qubits = kDefaultMaxQubits);

/// All qubits at |0>.
BlochRegister init_zero(std::size_t n, std::size_t classical_bits, PrecisionMode precision = PrecisionMode::full(),
                        std::size_t max_qubits = kDefaultMaxQubits);

/// Applies a 2x2 or 4x4 unitary to the given operand qubits in place, touching
/// amplitude pairs/quads only.
void apply_matrix(StateVector &state, const GateMatrix &matrix, std::span<const std::size_t> operands);

/// Throws Error(InvalidOperand) for out-of-range or repeated operands, plus
/// whatever gate_matrix throws.
void apply_gate(BlochRegister &breg, const GateOp &gate);

/// Born-rule measurement of one qubit with projection and renormalization.
/// Writes nothing to the classical bits; records the outcome in qubit_meta.
MeasurementRecord measure_qubit(BlochRegister &breg, std::size_t qubit, EntropyStream &entropy);

/// Runs every instruction in order. Throws Error(InvalidOperand) when the
/// register shape does not match the circuit.
std::vector<MeasurementRecord> apply_circuit(BlochRegister &breg, const CircuitIR &ir, EntropyStream &entropy);
/// Same, drawing from stream 0 of `entropy`.
std::vector<MeasurementRecord> apply_circuit(BlochRegister &breg, const CircuitIR &ir, const EntropySource &entropy);

/// |a_k|^2 for every basis state. Read-only.
std::vector<double> aqic_probabilities(const BlochRegister &breg);

/// P(qubit = 0) - P(qubit = 1).
double expectation_z(const BlochRegister &breg, std::size_t qubit);

/// Runs `shots` independent executions, each on a fresh copy of `breg`. Shot
/// i draws from entropy stream i, so the histogram does not depend on
/// `workers`.
Histogram sample_shots(const BlochRegister &breg, const CircuitIR &ir, std::uint64_t shots,
                       const EntropySource &entropy, std::size_t workers = 1);

inline BlochRegister copy_breg(const BlochRegister &breg) {
    return breg;
}

/// Exact distribution of the classical bits produced by a measurement-terminal
/// circuit whose pre-measurement qubit distribution is `probabilities`.
/// Unmeasured bits stay 0. Throws Error(UnsupportedInstruction) if the circuit
/// is not measurement-terminal.
std::map<std::string, double> classical_distribution(std::span<const double> probabilities, const CircuitIR &ir);

/// Square dense complex matrix, row-major.
class ComplexMatrix {
   public:
    explicit ComplexMatrix(std::size_t dimension = 0);
    static ComplexMatrix identity(std::size_t dimension);

    std::size_t dimension() const noexcept {
        return dimension_;
    }
    Amplitude &operator()(std::size_t row, std::size_t col) {
        return data_[row * dimension_ + col];
    }
    const Amplitude &operator()(std::size_t row, std::size_t col) const {
        return data_[row * dimension_ + col];
    }

    double unitarity_error() const;
    StateVector apply(const StateVector &state) const;

   private:
    std::size_t dimension_;
    std::vector<Amplitude> data_;
};

/// Brute-force product of every gate embedded into the full 2^n space. Test
/// oracle; barriers are skipped. Throws Error(UnsupportedInstruction) for
/// measure/reset/conditional and Error(InvalidArgument) unless
/// ir.num_qubits() <= n <= 8.
ComplexMatrix full_circuit_unitary(const CircuitIR &ir, std::size_t n);

}  // namespace vqpu

#endif  // VQPU_ENGINE_H_
