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

#include "vqpu/engine.h"

#include <array>
#include <cassert>
#include <exception>
#include <thread>

#include "vqpu/error.h"

namespace vqpu {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Spreads j's bits apart so that bit position `pos` is a zero.
inline std::size_t insert_zero_bit(std::size_t j, std::size_t pos) {
    std::size_t low = j & ((std::size_t{1} << pos) - 1);
    return ((j >> pos) << (pos + 1)) | low;
}

void requantize(BlochRegister &breg) {
    if (breg.precision().is_fixed()) {
        quantize_in_place(breg.mutable_state(), breg.precision().bits());
    }
}

void check_qubit(const BlochRegister &breg, std::size_t qubit) {
    if (qubit >= breg.num_qubits()) {
        throw Error(ErrorCode::InvalidOperand, "qubit " + std::to_string(qubit) + " out of range for " +
                                                   std::to_string(breg.num_qubits()) + "-qubit register");
    }
}

void apply_one(std::span<Amplitude> v, const GateMatrix &m, std::size_t q) {
    const Amplitude m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
    const std::size_t stride = std::size_t{1} << q;
    for (std::size_t base = 0; base < v.size(); base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            Amplitude a0 = v[i];
            Amplitude a1 = v[i + stride];
            v[i] = m00 * a0 + m01 * a1;
            v[i + stride] = m10 * a0 + m11 * a1;
        }
    }
}

void apply_two(std::span<Amplitude> v, const GateMatrix &m, std::size_t q0, std::size_t q1) {
    const std::size_t b0 = std::size_t{1} << q0;
    const std::size_t b1 = std::size_t{1} << q1;
    const std::size_t lo = std::min(q0, q1), hi = std::max(q0, q1);
    std::array<Amplitude, 16> u;
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            u[r * 4 + c] = m(r, c);
        }
    }
    const std::size_t quads = v.size() >> 2;
    for (std::size_t j = 0; j < quads; ++j) {
        std::size_t k = insert_zero_bit(insert_zero_bit(j, lo), hi);
        // Local index 2*bit(q0) + bit(q1).
        const std::array<std::size_t, 4> idx{k, k | b1, k | b0, k | b0 | b1};
        std::array<Amplitude, 4> a{v[idx[0]], v[idx[1]], v[idx[2]], v[idx[3]]};
        for (std::size_t r = 0; r < 4; ++r) {
            v[idx[r]] = u[r * 4] * a[0] + u[r * 4 + 1] * a[1] + u[r * 4 + 2] * a[2] + u[r * 4 + 3] * a[3];
        }
    }
}

void check_shape(const BlochRegister &breg, const CircuitIR &ir) {
    if (breg.num_qubits() != ir.num_qubits() || breg.num_clbits() != ir.num_clbits()) {
        throw Error(ErrorCode::InvalidOperand,
                    "register has " + std::to_string(breg.num_qubits()) + " qubits / " +
                        std::to_string(breg.num_clbits()) + " bits but circuit declares " +
                        std::to_string(ir.num_qubits()) + " / " + std::to_string(ir.num_clbits()));
    }
}

}  // namespace

BlochRegister init_qubits(std::size_t n, std::span<const BlochAngles> angles, std::size_t classical_bits,
                          PrecisionMode precision, std::size_t max_qubits) {
    if (n == 0 || n > max_qubits) {
        throw Error(ErrorCode::CapacityExceeded,
                    "cannot allocate " + std::to_string(n) + " qubits (capacity " + std::to_string(max_qubits) + ")");
    }
    if (angles.size() != n) {
        throw Error(ErrorCode::InvalidAngles,
                    "expected " + std::to_string(n) + " angle pairs, got " + std::to_string(angles.size()));
    }
    std::vector<Amplitude> amplitudes(std::size_t{1} << n);
    std::vector<StateVector> singles;
    singles.reserve(n);
    for (const auto &a : angles) {
        singles.push_back(angles_to_state(a));
    }
    for (std::size_t k = 0; k < amplitudes.size(); ++k) {
        Amplitude product = 1.0;
        for (std::size_t q = 0; q < n; ++q) {
            product *= singles[q][(k >> q) & 1];
        }
        amplitudes[k] = product;
    }
    BlochRegister breg(StateVector(std::move(amplitudes)), classical_bits, precision);
    requantize(breg);
    return breg;
}

BlochRegister init_zero(std::size_t n, std::size_t classical_bits, PrecisionMode precision, std::size_t max_qubits) {
    std::vector<BlochAngles> angles(n);
    return init_qubits(n, angles, classical_bits, precision, max_qubits);
}

void apply_matrix(StateVector &state, const GateMatrix &matrix, std::span<const std::size_t> operands) {
    if (operands.size() * 2 != matrix.dimension() && !(operands.size() == 2 && matrix.dimension() == 4)) {
        throw Error(ErrorCode::ArityMismatch, "matrix dimension does not match operand count");
    }
    for (std::size_t q : operands) {
        if (q >= state.num_qubits()) {
            throw Error(ErrorCode::InvalidOperand, "qubit " + std::to_string(q) + " out of range");
        }
    }
    if (operands.size() == 1) {
        apply_one(state.amplitudes(), matrix, operands[0]);
    } else {
        if (operands[0] == operands[1]) {
            throw Error(ErrorCode::InvalidOperand, "two-qubit gate needs distinct operands");
        }
        apply_two(state.amplitudes(), matrix, operands[0], operands[1]);
    }
}

void apply_gate(BlochRegister &breg, const GateOp &gate) {
    const GateDefinition *def = find_gate(gate.name);
    if (def == nullptr) {
        throw Error(ErrorCode::UnknownGate, "unknown gate '" + gate.name + "'");
    }
    if (gate.controls.size() != def->num_controls || gate.targets.size() != def->num_targets) {
        throw Error(ErrorCode::ArityMismatch, "wrong operand count for '" + gate.name + "'");
    }
    GateMatrix m = gate_matrix(gate.name, gate.params);
    auto operands = gate.operands();
    for (std::size_t q : operands) {
        check_qubit(breg, q);
    }
    apply_matrix(breg.mutable_state(), m, operands);
    requantize(breg);
}

MeasurementRecord measure_qubit(BlochRegister &breg, std::size_t qubit, EntropyStream &entropy) {
    check_qubit(breg, qubit);
    requantize(breg);
    auto v = breg.mutable_state().amplitudes();
    const std::size_t mask = std::size_t{1} << qubit;
    double p0 = 0.0, p1 = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) {
        ((k & mask) ? p1 : p0) += std::norm(v[k]);
    }
    const std::uint64_t draw = entropy.draw_index();
    const double u = entropy.next_uniform();
    std::uint8_t outcome;
    // A branch with exactly zero weight can never be selected, whatever the
    // rounding in p0 + p1.
    if (p1 == 0.0) {
        outcome = 0;
    } else if (p0 == 0.0) {
        outcome = 1;
    } else {
        outcome = u * (p0 + p1) < p0 ? 0 : 1;
    }
    const double kept = outcome ? p1 : p0;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (((k & mask) != 0) != (outcome == 1)) {
            v[k] = 0.0;
        }
    }
    normalize_in_place(breg.mutable_state());
    requantize(breg);
    breg.qubit_meta(qubit).last_measured = outcome;
    return MeasurementRecord{qubit, outcome, kept / (p0 + p1), draw};
}

std::vector<MeasurementRecord> apply_circuit(BlochRegister &breg, const CircuitIR &ir, EntropyStream &entropy) {
    check_shape(breg, ir);
    std::vector<MeasurementRecord> records;
    for (const auto &inst : ir.instructions) {
        std::visit(overloaded{
                       [&](const GateOp &g) { apply_gate(breg, g); },
                       [&](const MeasureOp &m) {
                           auto record = measure_qubit(breg, m.qubit, entropy);
                           breg.set_classical_bit(m.bit, record.outcome);
                           records.push_back(record);
                       },
                       [&](const ResetOp &r) {
                           auto record = measure_qubit(breg, r.qubit, entropy);
                           if (record.outcome == 1) {
                               apply_gate(breg, GateOp{"x", {}, {}, {r.qubit}});
                           }
                           breg.qubit_meta(r.qubit).last_measured.reset();
                       },
                       [&](const ConditionalOp &c) {
                           if (c.creg >= ir.classical_registers.size()) {
                               throw Error(ErrorCode::InvalidOperand, "conditional on undeclared register");
                           }
                           auto value =
                               breg.classical_value(ir.clbit_offset(c.creg), ir.classical_registers[c.creg].size);
                           if (value && *value == c.value) {
                               apply_gate(breg, c.gate);
                           }
                       },
                       [&](const BarrierOp &) {},
                   },
                   inst);
    }
    return records;
}

std::vector<MeasurementRecord> apply_circuit(BlochRegister &breg, const CircuitIR &ir, const EntropySource &entropy) {
    auto stream = entropy.stream(0);
    return apply_circuit(breg, ir, stream);
}

std::vector<double> aqic_probabilities(const BlochRegister &breg) {
    auto v = breg.state().amplitudes();
    std::vector<double> p(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
        p[k] = std::norm(v[k]);
    }
    return p;
}

double expectation_z(const BlochRegister &breg, std::size_t qubit) {
    check_qubit(breg, qubit);
    auto p = aqic_probabilities(breg);
    const std::size_t mask = std::size_t{1} << qubit;
    double p0 = 0.0, p1 = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        ((k & mask) ? p1 : p0) += p[k];
    }
    return p0 - p1;
}

Histogram sample_shots(const BlochRegister &breg, const CircuitIR &ir, std::uint64_t shots,
                       const EntropySource &entropy, std::size_t workers) {
    if (shots == 0) {
        throw Error(ErrorCode::InvalidArgument, "shots must be >= 1");
    }
    check_shape(breg, ir);
    workers = std::max<std::size_t>(1, std::min<std::uint64_t>(workers, shots));

    std::vector<Histogram> partial(workers);
    std::vector<std::exception_ptr> failures(workers);
    auto run_range = [&](std::size_t w) {
        try {
            // Contiguous block of shot indices per worker.
            std::uint64_t begin = shots * w / workers;
            std::uint64_t end = shots * (w + 1) / workers;
            BlochRegister work = breg;
            for (std::uint64_t shot = begin; shot < end; ++shot) {
                work = breg;
                [[maybe_unused]] const void *token = work.state().buffer_token();
                auto stream = entropy.stream(shot);
                apply_circuit(work, ir, stream);
                assert(work.state().buffer_token() == token);
                ++partial[w][work.bitstring()];
            }
        } catch (...) {
            failures[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        run_range(0);
    } else {
        std::vector<std::jthread> threads;
        threads.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            threads.emplace_back(run_range, w);
        }
    }
    for (const auto &f : failures) {
        if (f) {
            std::rethrow_exception(f);
        }
    }
    Histogram total;
    for (const auto &h : partial) {
        for (const auto &[key, count] : h) {
            total[key] += count;
        }
    }
    return total;
}

std::map<std::string, double> classical_distribution(std::span<const double> probabilities, const CircuitIR &ir) {
    auto start = terminal_measurement_start(ir);
    if (!start) {
        throw Error(ErrorCode::UnsupportedInstruction, "circuit is not measurement-terminal");
    }
    std::vector<MeasureOp> measures;
    for (std::size_t i = *start; i < ir.instructions.size(); ++i) {
        if (const auto *m = std::get_if<MeasureOp>(&ir.instructions[i])) {
            measures.push_back(*m);
        }
    }
    std::map<std::string, double> out;
    std::vector<std::uint8_t> bits(ir.num_clbits());
    for (std::size_t k = 0; k < probabilities.size(); ++k) {
        if (probabilities[k] == 0.0) {
            continue;
        }
        std::fill(bits.begin(), bits.end(), 0);
        for (const auto &m : measures) {
            bits.at(m.bit) = static_cast<std::uint8_t>((k >> m.qubit) & 1);
        }
        out[to_bitstring(bits)] += probabilities[k];
    }
    return out;
}

}  // namespace vqpu
