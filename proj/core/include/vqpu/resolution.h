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

#ifndef VQPU_RESOLUTION_H_
#define VQPU_RESOLUTION_H_

#include <optional>

namespace vqpu {

/// Planck constant, J*s (exact SI value).
inline constexpr double kPlanck = 6.62607015e-34;
/// Default Hubble constant in 1/s, roughly 70 km/s/Mpc.
inline constexpr double kDefaultHubble = 2.27e-18;

/// Qubit energy gap, given either directly or as a transition frequency.
/// Exactly one of delta_e_joules / frequency_hz must be set.
struct ResolutionQuery {
    std::optional<double> delta_e_joules;
    std::optional<double> frequency_hz;
    double hubble_per_second = kDefaultHubble;
};

struct ResolutionReport {
    /// Number of distinguishable quanta I = dE / (h * H).
    double quanta_count;
    /// ceil(log2 I): classical bits needed to address every quantum.
    int min_bits;
    double delta_e_joules;
    std::optional<double> frequency_hz;
    double hubble_per_second;
    double planck_joule_seconds;
};

/// Counts the distinguishable states of a two-level system whose levels are
/// dE apart, when the smallest admissible energy quantum is h * H.
///
/// Throws Error(NonPositiveInput) for missing, conflicting, non-finite or
/// non-positive inputs, and Error(BelowGroundState) when I < 1.
ResolutionReport third_quantization(const ResolutionQuery &query);

}  // namespace vqpu

#endif  // VQPU_RESOLUTION_H_
