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

#ifndef VQPU_BLOCH_H_
#define VQPU_BLOCH_H_

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vqpu {

using Amplitude = std::complex<double>;

/// Tolerance on |norm² - 1| for a state to count as normalized.
inline constexpr double kNormTolerance = 1e-10;
/// Norms below this are treated as a corrupted (all-zero) state.
inline constexpr double kZeroNormThreshold = 1e-30;
/// Angles this close to a pole are reported with phi = 0.
inline constexpr double kPoleTolerance = 1e-12;

/// A point on the Bloch sphere. theta is the polar angle in [0, pi]; phi is
/// the azimuth, normalized into [0, 2*pi) on construction.
class BlochAngles {
   public:
    BlochAngles() = default;
    /// Throws Error(InvalidAngles) for non-finite input or theta outside [0, pi].
    BlochAngles(double theta, double phi);

    double theta() const noexcept {
        return theta_;
    }
    double phi() const noexcept {
        return phi_;
    }

    bool operator==(const BlochAngles &) const = default;

   private:
    double theta_ = 0.0;
    double phi_ = 0.0;
};

/// Amplitudes of an n-qubit pure state, indexed by basis label. Qubit q is
/// bit q of the index (little-endian).
///
/// Construction enforces the length (a power of two, at least 2) and
/// finiteness. Normalization is the responsibility of the producer; use
/// is_normalized() or normalize() when the source is untrusted.
class StateVector {
   public:
    /// |0...0> on num_qubits qubits.
    explicit StateVector(std::size_t num_qubits = 1);
    explicit StateVector(std::vector<Amplitude> amplitudes);

    std::size_t num_qubits() const noexcept {
        return num_qubits_;
    }
    std::size_t size() const noexcept {
        return amplitudes_.size();
    }
    std::span<const Amplitude> amplitudes() const noexcept {
        return amplitudes_;
    }
    std::span<Amplitude> amplitudes() noexcept {
        return amplitudes_;
    }
    const Amplitude &operator[](std::size_t k) const {
        return amplitudes_[k];
    }
    Amplitude &operator[](std::size_t k) {
        return amplitudes_[k];
    }

    double norm_squared() const noexcept;
    bool is_normalized(double tolerance = kNormTolerance) const noexcept;

    /// Identity of the underlying amplitude buffer. Stable for the lifetime of
    /// this object; a copy gets a new token.
    const void *buffer_token() const noexcept {
        return amplitudes_.data();
    }

    bool operator==(const StateVector &) const = default;

   private:
    std::size_t num_qubits_;
    std::vector<Amplitude> amplitudes_;
};

/// Storage resolution of amplitude components: binary64, or a signed
/// fixed-point fraction with (bits - 1) fractional bits per real/imag part.
class PrecisionMode {
   public:
    static PrecisionMode full() noexcept {
        return PrecisionMode(0);
    }
    /// Throws Error(InvalidArgument) unless bits is in [4, 32].
    static PrecisionMode fixed(int bits);
    /// Accepts "full" or "fixed:B".
    static PrecisionMode parse(std::string_view text);

    bool is_full() const noexcept {
        return bits_ == 0;
    }
    bool is_fixed() const noexcept {
        return bits_ != 0;
    }
    /// Fixed-point width; 0 for full precision.
    int bits() const noexcept {
        return bits_;
    }
    /// Bits of resolution per amplitude component (64 for binary64).
    int resolution_bits() const noexcept {
        return is_full() ? 64 : bits_;
    }
    std::string to_string() const;

    auto operator<=>(const PrecisionMode &) const = default;

   private:
    explicit PrecisionMode(int bits) noexcept : bits_(bits) {
    }
    int bits_;
};

/// (cos(theta/2), e^{i phi} sin(theta/2)). The |0> amplitude is real and >= 0.
StateVector angles_to_state(const BlochAngles &angles);

/// Inverse of angles_to_state up to global phase. Poles report phi = 0.
/// Throws Error(InvalidArgument) for anything but a single-qubit state.
BlochAngles state_to_angles(const StateVector &state);

/// Probability of measuring 0: (1 + cos theta) / 2.
double p_zero(const BlochAngles &angles) noexcept;

/// Scales every amplitude by the same positive real so the norm is 1.
/// Throws Error(ZeroNorm) when the norm is below kZeroNormThreshold.
StateVector normalize(const StateVector &state);
void normalize_in_place(StateVector &state);

/// Rounds each component to the nearest multiple of 2^-(bits-1) (ties to even)
/// and renormalizes. Throws Error(QuantizationCollapse) if everything rounds to
/// zero, Error(InvalidArgument) if bits is outside [4, 32].
StateVector quantize_state(const StateVector &state, int bits);
void quantize_in_place(StateVector &state, int bits);

/// |<a|b>|^2 / (<a|a><b|b>), accumulated in extended precision.
long double fidelity(const StateVector &a, const StateVector &b);

/// Kronecker product with `low` occupying the low-order qubits of the result.
StateVector tensor_product(const StateVector &high, const StateVector &low);

}  // namespace vqpu

#endif  // VQPU_BLOCH_H_
