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

#include "vqpu/gates.h"

#include <cmath>
#include <numbers>
#include <string>

#include "vqpu/error.h"

namespace vqpu {

namespace {

constexpr std::array<GateDefinition, 16> kGates{{
    {"id", 0, 0, 1},
    {"x", 0, 0, 1},
    {"y", 0, 0, 1},
    {"z", 0, 0, 1},
    {"h", 0, 0, 1},
    {"s", 0, 0, 1},
    {"sdg", 0, 0, 1},
    {"t", 0, 0, 1},
    {"tdg", 0, 0, 1},
    {"rx", 1, 0, 1},
    {"ry", 1, 0, 1},
    {"rz", 1, 0, 1},
    {"u", 3, 0, 1},
    {"cx", 0, 1, 1},
    {"cz", 0, 1, 1},
    {"swap", 0, 0, 2},
}};

constexpr Amplitude I{0.0, 1.0};

GateMatrix one(Amplitude a, Amplitude b, Amplitude c, Amplitude d) {
    return GateMatrix(2, {a, b, c, d});
}

}  // namespace

std::span<const GateDefinition> standard_gates() noexcept {
    return kGates;
}

const GateDefinition *find_gate(std::string_view name) noexcept {
    for (const auto &g : kGates) {
        if (g.name == name) {
            return &g;
        }
    }
    return nullptr;
}

GateMatrix::GateMatrix(std::size_t dimension, std::vector<Amplitude> entries)
    : dimension_(dimension), entries_(std::move(entries)) {
    if ((dimension != 2 && dimension != 4) || entries_.size() != dimension * dimension) {
        throw Error(ErrorCode::InvalidArgument, "gate matrix must be 2x2 or 4x4");
    }
}

double GateMatrix::unitarity_error() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < dimension_; ++i) {
        for (std::size_t j = 0; j < dimension_; ++j) {
            Amplitude sum = 0.0;
            for (std::size_t k = 0; k < dimension_; ++k) {
                sum += std::conj((*this)(k, i)) * (*this)(k, j);
            }
            if (i == j) {
                sum -= 1.0;
            }
            worst = std::max(worst, std::abs(sum));
        }
    }
    return worst;
}

GateMatrix gate_matrix(std::string_view name, std::span<const double> params) {
    const GateDefinition *def = find_gate(name);
    if (def == nullptr) {
        throw Error(ErrorCode::UnknownGate, "unknown gate '" + std::string(name) + "'");
    }
    if (params.size() != def->num_params) {
        throw Error(ErrorCode::ArityMismatch, "gate '" + std::string(name) + "' takes " +
                                                  std::to_string(def->num_params) + " parameters, got " +
                                                  std::to_string(params.size()));
    }
    const double r = std::numbers::sqrt2 / 2.0;
    if (name == "id") {
        return one(1, 0, 0, 1);
    }
    if (name == "x") {
        return one(0, 1, 1, 0);
    }
    if (name == "y") {
        return one(0, -I, I, 0);
    }
    if (name == "z") {
        return one(1, 0, 0, -1);
    }
    if (name == "h") {
        return one(r, r, r, -r);
    }
    if (name == "s") {
        return one(1, 0, 0, I);
    }
    if (name == "sdg") {
        return one(1, 0, 0, -I);
    }
    if (name == "t") {
        return one(1, 0, 0, Amplitude{r, r});
    }
    if (name == "tdg") {
        return one(1, 0, 0, Amplitude{r, -r});
    }
    if (name == "rx") {
        double c = std::cos(params[0] / 2), s = std::sin(params[0] / 2);
        return one(c, -I * s, -I * s, c);
    }
    if (name == "ry") {
        double c = std::cos(params[0] / 2), s = std::sin(params[0] / 2);
        return one(c, -s, s, c);
    }
    if (name == "rz") {
        return one(std::polar(1.0, -params[0] / 2), 0, 0, std::polar(1.0, params[0] / 2));
    }
    if (name == "u") {
        double theta = params[0], phi = params[1], lambda = params[2];
        double c = std::cos(theta / 2), s = std::sin(theta / 2);
        return one(c, -std::polar(s, lambda), std::polar(s, phi), std::polar(c, phi + lambda));
    }
    if (name == "cx") {
        return GateMatrix(4, {1, 0, 0, 0,  //
                              0, 1, 0, 0,  //
                              0, 0, 0, 1,  //
                              0, 0, 1, 0});
    }
    if (name == "cz") {
        return GateMatrix(4, {1, 0, 0, 0,  //
                              0, 1, 0, 0,  //
                              0, 0, 1, 0,  //
                              0, 0, 0, -1});
    }
    // swap
    return GateMatrix(4, {1, 0, 0, 0,  //
                          0, 0, 1, 0,  //
                          0, 1, 0, 0,  //
                          0, 0, 0, 1});
}

}  // namespace vqpu
