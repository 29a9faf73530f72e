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

#include "vqpu/bloch.h"

#include <bit>
#include <charconv>
#include <cmath>
#include <numbers>

#include "vqpu/error.h"

namespace vqpu {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool all_finite(std::span<const Amplitude> amplitudes) {
    for (const auto &a : amplitudes) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            return false;
        }
    }
    return true;
}

void check_bits(int bits) {
    if (bits < 4 || bits > 32) {
        throw Error(ErrorCode::InvalidArgument, "fixed precision bits must be in [4, 32], got " + std::to_string(bits));
    }
}

}  // namespace

BlochAngles::BlochAngles(double theta, double phi) {
    if (!std::isfinite(theta) || !std::isfinite(phi)) {
        throw Error(ErrorCode::InvalidAngles, "angles must be finite");
    }
    if (theta < 0.0 || theta > std::numbers::pi) {
        throw Error(ErrorCode::InvalidAngles, "theta must lie in [0, pi], got " + std::to_string(theta));
    }
    phi = std::fmod(phi, kTwoPi);
    if (phi < 0.0) {
        phi += kTwoPi;
    }
    // fmod of a value just below a multiple of 2*pi can land on 2*pi after the shift.
    if (phi >= kTwoPi) {
        phi = 0.0;
    }
    theta_ = theta;
    phi_ = phi;
}

StateVector::StateVector(std::size_t num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits == 0 || num_qubits >= 64) {
        throw Error(ErrorCode::InvalidArgument, "state vector needs between 1 and 63 qubits");
    }
    amplitudes_.assign(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0});
    amplitudes_[0] = 1.0;
}

StateVector::StateVector(std::vector<Amplitude> amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() < 2 || !std::has_single_bit(amplitudes_.size())) {
        throw Error(ErrorCode::InvalidArgument,
                    "state vector length must be a power of two >= 2, got " + std::to_string(amplitudes_.size()));
    }
    if (!all_finite(amplitudes_)) {
        throw Error(ErrorCode::InvalidArgument, "state vector amplitudes must be finite");
    }
    num_qubits_ = static_cast<std::size_t>(std::countr_zero(amplitudes_.size()));
}

double StateVector::norm_squared() const noexcept {
    double total = 0.0;
    for (const auto &a : amplitudes_) {
        total += std::norm(a);
    }
    return total;
}

bool StateVector::is_normalized(double tolerance) const noexcept {
    return std::abs(norm_squared() - 1.0) <= tolerance;
}

PrecisionMode PrecisionMode::fixed(int bits) {
    check_bits(bits);
    return PrecisionMode(bits);
}

PrecisionMode PrecisionMode::parse(std::string_view text) {
    if (text == "full") {
        return full();
    }
    constexpr std::string_view prefix = "fixed:";
    if (text.starts_with(prefix)) {
        auto digits = text.substr(prefix.size());
        int bits = 0;
        auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), bits);
        if (ec == std::errc() && end == digits.data() + digits.size() && !digits.empty()) {
            return fixed(bits);
        }
    }
    throw Error(ErrorCode::InvalidArgument, "precision must be 'full' or 'fixed:B', got '" + std::string(text) + "'");
}

std::string PrecisionMode::to_string() const {
    return is_full() ? "full" : "fixed:" + std::to_string(bits_);
}

StateVector angles_to_state(const BlochAngles &angles) {
    double half = angles.theta() / 2.0;
    return StateVector({Amplitude{std::cos(half), 0.0}, std::polar(std::sin(half), angles.phi())});
}

BlochAngles state_to_angles(const StateVector &state) {
    if (state.num_qubits() != 1) {
        throw Error(ErrorCode::InvalidArgument, "state_to_angles needs a single-qubit state");
    }
    double m0 = std::abs(state[0]);
    double m1 = std::abs(state[1]);
    double theta = 2.0 * std::atan2(m1, m0);
    if (theta <= kPoleTolerance || theta >= std::numbers::pi - kPoleTolerance) {
        return BlochAngles(std::min(theta, std::numbers::pi), 0.0);
    }
    // Strip the global phase carried by the |0> amplitude.
    double phi = std::arg(state[1]) - std::arg(state[0]);
    return BlochAngles(theta, phi);
}

double p_zero(const BlochAngles &angles) noexcept {
    return (1.0 + std::cos(angles.theta())) / 2.0;
}

void normalize_in_place(StateVector &state) {
    double norm = std::sqrt(state.norm_squared());
    if (!(norm >= kZeroNormThreshold)) {
        throw Error(ErrorCode::ZeroNorm, "cannot normalize a state with norm below 1e-30");
    }
    double scale = 1.0 / norm;
    for (auto &a : state.amplitudes()) {
        a *= scale;
    }
}

StateVector normalize(const StateVector &state) {
    StateVector result = state;
    normalize_in_place(result);
    return result;
}

void quantize_in_place(StateVector &state, int bits) {
    check_bits(bits);
    // Multiplying by a power of two is exact, so rint sees the true scaled value.
    const double scale = std::ldexp(1.0, bits - 1);
    const double inverse = std::ldexp(1.0, -(bits - 1));
    bool any_nonzero = false;
    for (auto &a : state.amplitudes()) {
        double re = std::rint(a.real() * scale) * inverse;
        double im = std::rint(a.imag() * scale) * inverse;
        any_nonzero = any_nonzero || re != 0.0 || im != 0.0;
        a = Amplitude{re, im};
    }
    if (!any_nonzero) {
        throw Error(ErrorCode::QuantizationCollapse,
                    "every amplitude rounded to zero at " + std::to_string(bits) + " bits");
    }
    normalize_in_place(state);
}

StateVector quantize_state(const StateVector &state, int bits) {
    StateVector result = state;
    quantize_in_place(result, bits);
    return result;
}

long double fidelity(const StateVector &a, const StateVector &b) {
    if (a.size() != b.size()) {
        throw Error(ErrorCode::InvalidArgument, "fidelity needs states of equal size");
    }
    long double re = 0, im = 0, na = 0, nb = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        long double ar = a[k].real(), ai = a[k].imag();
        long double br = b[k].real(), bi = b[k].imag();
        // conj(a) * b
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
        na += ar * ar + ai * ai;
        nb += br * br + bi * bi;
    }
    return (re * re + im * im) / (na * nb);
}

StateVector tensor_product(const StateVector &high, const StateVector &low) {
    std::vector<Amplitude> out(high.size() * low.size());
    for (std::size_t h = 0; h < high.size(); ++h) {
        for (std::size_t l = 0; l < low.size(); ++l) {
            out[h * low.size() + l] = high[h] * low[l];
        }
    }
    return StateVector(std::move(out));
}

}  // namespace vqpu
