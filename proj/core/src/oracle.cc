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

// Dense reference path: every gate is lifted to a full 2^n x 2^n matrix and
// multiplied out. Shares nothing with the pair/quad kernels in engine.cc.

#include <Eigen/Dense>

#include "vqpu/engine.h"
#include "vqpu/error.h"

namespace vqpu {

namespace {

constexpr std::size_t kMaxOracleQubits = 8;

using Dense = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// E(r, c) = G(local(r), local(c)) when r and c agree on every qubit outside
// the operands, else 0.
Dense embed(const GateMatrix &gate, const std::vector<std::size_t> &operands, std::size_t n) {
    const std::size_t dim = std::size_t{1} << n;
    std::size_t operand_mask = 0;
    for (std::size_t q : operands) {
        operand_mask |= std::size_t{1} << q;
    }
    auto local = [&](std::size_t index) {
        std::size_t out = 0;
        for (std::size_t q : operands) {
            out = (out << 1) | ((index >> q) & 1);
        }
        return out;
    };
    Dense e = Dense::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            if ((r & ~operand_mask) == (c & ~operand_mask)) {
                e(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = gate(local(r), local(c));
            }
        }
    }
    return e;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dimension) : dimension_(dimension), data_(dimension * dimension) {
}

ComplexMatrix ComplexMatrix::identity(std::size_t dimension) {
    ComplexMatrix m(dimension);
    for (std::size_t i = 0; i < dimension; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

double ComplexMatrix::unitarity_error() const {
    auto n = static_cast<Eigen::Index>(dimension_);
    Eigen::Map<const Dense> u(data_.data(), n, n);
    Dense defect = u.adjoint() * u - Dense::Identity(n, n);
    return defect.cwiseAbs().maxCoeff();
}

StateVector ComplexMatrix::apply(const StateVector &state) const {
    if (state.size() != dimension_) {
        throw Error(ErrorCode::InvalidArgument, "matrix and state dimensions differ");
    }
    auto n = static_cast<Eigen::Index>(dimension_);
    Eigen::Map<const Dense> u(data_.data(), n, n);
    Eigen::Map<const Eigen::VectorXcd> v(state.amplitudes().data(), n);
    Eigen::VectorXcd out = u * v;
    return StateVector(std::vector<Amplitude>(out.data(), out.data() + n));
}

ComplexMatrix full_circuit_unitary(const CircuitIR &ir, std::size_t n) {
    if (n > kMaxOracleQubits || n < ir.num_qubits() || n == 0) {
        throw Error(ErrorCode::InvalidArgument, "full_circuit_unitary needs circuit qubits <= n <= 8");
    }
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    Dense total = Dense::Identity(dim, dim);
    for (const auto &inst : ir.instructions) {
        if (std::holds_alternative<BarrierOp>(inst)) {
            continue;
        }
        const auto *gate = std::get_if<GateOp>(&inst);
        if (gate == nullptr) {
            throw Error(ErrorCode::UnsupportedInstruction, "only gates and barriers have a unitary");
        }
        auto operands = gate->operands();
        for (std::size_t q : operands) {
            if (q >= n) {
                throw Error(ErrorCode::InvalidOperand, "qubit " + std::to_string(q) + " out of range");
            }
        }
        total = embed(gate_matrix(gate->name, gate->params), operands, n) * total;
    }
    ComplexMatrix out(static_cast<std::size_t>(dim));
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            out(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = total(r, c);
        }
    }
    return out;
}

}  // namespace vqpu
