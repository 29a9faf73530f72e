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

#include "vqpu/register.h"

#include "vqpu/error.h"

namespace vqpu {

BlochRegister::BlochRegister(StateVector state, std::size_t num_clbits, PrecisionMode precision)
    : state_(std::move(state)),
      classical_bits_(num_clbits, 0),
      precision_(precision),
      meta_(state_.num_qubits(), QubitMeta{precision.resolution_bits(), std::nullopt}) {
}

void BlochRegister::set_classical_bit(std::size_t index, std::uint8_t value) {
    if (index >= classical_bits_.size() || value > 1) {
        throw Error(ErrorCode::InvalidOperand, "classical bit " + std::to_string(index) + " out of range or not 0/1");
    }
    classical_bits_[index] = value;
}

std::optional<std::uint64_t> BlochRegister::classical_value(std::size_t offset, std::size_t size) const {
    if (offset + size > classical_bits_.size()) {
        throw Error(ErrorCode::InvalidOperand, "classical register slice out of range");
    }
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < size; ++i) {
        if (classical_bits_[offset + i] == 0) {
            continue;
        }
        if (i >= 64) {
            return std::nullopt;
        }
        value |= std::uint64_t{1} << i;
    }
    return value;
}

std::string BlochRegister::bitstring() const {
    return to_bitstring(classical_bits_);
}

std::string to_bitstring(std::span<const std::uint8_t> bits) {
    std::string out(bits.size(), '0');
    for (std::size_t i = 0; i < bits.size(); ++i) {
        out[bits.size() - 1 - i] = bits[i] ? '1' : '0';
    }
    return out;
}

}  // namespace vqpu
