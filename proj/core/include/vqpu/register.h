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

#ifndef VQPU_REGISTER_H_
#define VQPU_REGISTER_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vqpu/bloch.h"

namespace vqpu {

struct QubitMeta {
    /// Bits of storage resolution per amplitude component.
    int resolution_bits = 64;
    std::optional<std::uint8_t> last_measured;

    bool operator==(const QubitMeta &) const = default;
};

struct MeasurementRecord {
    std::size_t qubit = 0;
    std::uint8_t outcome = 0;
    /// Probability of `outcome` just before the measurement.
    double probability = 0.0;
    /// Index of the entropy draw that decided the outcome.
    std::uint64_t draw_index = 0;

    bool operator==(const MeasurementRecord &) const = default;
};

/// Bloch register (BREG): one register file holding classical bits next to
/// the classical image of an n-qubit state.
///
/// Copies are deep. If the precision is fixed the engine keeps the state in
/// quantized form after every step.
class BlochRegister {
   public:
    BlochRegister(StateVector state, std::size_t num_clbits, PrecisionMode precision);

    std::size_t num_qubits() const noexcept {
        return state_.num_qubits();
    }
    std::size_t num_clbits() const noexcept {
        return classical_bits_.size();
    }
    PrecisionMode precision() const noexcept {
        return precision_;
    }

    const StateVector &state() const noexcept {
        return state_;
    }
    StateVector &mutable_state() noexcept {
        return state_;
    }

    std::span<const std::uint8_t> classical_bits() const noexcept {
        return classical_bits_;
    }
    /// Throws Error(InvalidOperand) if index is out of range or value is not 0/1.
    void set_classical_bit(std::size_t index, std::uint8_t value);

    /// Little-endian value of bits [offset, offset + size). nullopt when a set
    /// bit lies at position 64 or above.
    std::optional<std::uint64_t> classical_value(std::size_t offset, std::size_t size) const;

    /// Classical bits as text, bit 0 rightmost.
    std::string bitstring() const;

    const std::vector<QubitMeta> &qubit_meta() const noexcept {
        return meta_;
    }
    QubitMeta &qubit_meta(std::size_t qubit) {
        return meta_.at(qubit);
    }

    bool operator==(const BlochRegister &) const = default;

   private:
    StateVector state_;
    std::vector<std::uint8_t> classical_bits_;
    PrecisionMode precision_;
    std::vector<QubitMeta> meta_;
};

/// Bits as text with bits[0] rightmost.
std::string to_bitstring(std::span<const std::uint8_t> bits);

}  // namespace vqpu

#endif  // VQPU_REGISTER_H_
