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

#ifndef VQPU_GATES_H_
#define VQPU_GATES_H_

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "vqpu/bloch.h"

namespace vqpu {

/// Shape of a standard gate: how many angle parameters, control qubits and
/// target qubits it takes.
struct GateDefinition {
    std::string_view name;
    std::size_t num_params;
    std::size_t num_controls;
    std::size_t num_targets;

    std::size_t num_qubits() const noexcept {
        return num_controls + num_targets;
    }
};

/// The supported gate set: id x y z h s sdg t tdg rx ry rz u cx cz swap.
std::span<const GateDefinition> standard_gates() noexcept;

/// nullptr if the name is not a standard gate. Names are case-sensitive.
const GateDefinition *find_gate(std::string_view name) noexcept;

/// Dense unitary on 1 or 2 qubits, row-major.
///
/// For two-qubit gates the local basis index is 2*b0 + b1, where b0 is the
/// first operand (the control for cx/cz) and b1 the second.
class GateMatrix {
   public:
    GateMatrix(std::size_t dimension, std::vector<Amplitude> entries);

    std::size_t dimension() const noexcept {
        return dimension_;
    }
    const Amplitude &operator()(std::size_t row, std::size_t col) const {
        return entries_[row * dimension_ + col];
    }
    std::span<const Amplitude> entries() const noexcept {
        return entries_;
    }

    /// max |(U^dagger U - I)_{ij}|
    double unitarity_error() const;

   private:
    std::size_t dimension_;
    std::vector<Amplitude> entries_;
};

/// Standard unitary for a named gate. Throws Error(UnknownGate) or
/// Error(ArityMismatch) when params.size() does not match the definition.
GateMatrix gate_matrix(std::string_view name, std::span<const double> params);

}  // namespace vqpu

#endif  // VQPU_GATES_H_
