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

#include "vqpu/resolution.h"

#include <cmath>
#include <string>

#include "vqpu/error.h"

namespace vqpu {

namespace {

void require_positive(double value, const char *name) {
    if (!std::isfinite(value) || value <= 0.0) {
        throw Error(ErrorCode::NonPositiveInput, std::string(name) + " must be finite and > 0");
    }
}

}  // namespace

ResolutionReport third_quantization(const ResolutionQuery &query) {
    if (query.delta_e_joules.has_value() == query.frequency_hz.has_value()) {
        throw Error(ErrorCode::NonPositiveInput, "exactly one of delta_e or frequency must be given");
    }
    require_positive(query.hubble_per_second, "hubble");

    ResolutionReport report{};
    report.hubble_per_second = query.hubble_per_second;
    report.planck_joule_seconds = kPlanck;
    report.frequency_hz = query.frequency_hz;
    if (query.frequency_hz) {
        require_positive(*query.frequency_hz, "frequency");
        report.delta_e_joules = kPlanck * *query.frequency_hz;
        // h cancels; dividing the frequencies directly avoids two roundings.
        report.quanta_count = *query.frequency_hz / query.hubble_per_second;
    } else {
        require_positive(*query.delta_e_joules, "delta_e");
        report.delta_e_joules = *query.delta_e_joules;
        report.quanta_count = *query.delta_e_joules / (kPlanck * query.hubble_per_second);
    }
    if (!std::isfinite(report.quanta_count)) {
        throw Error(ErrorCode::NonPositiveInput, "quanta count overflowed");
    }
    if (report.quanta_count < 1.0) {
        throw Error(ErrorCode::BelowGroundState,
                    "energy gap is below a single quantum (I = " + std::to_string(report.quanta_count) + ")");
    }
    report.min_bits = static_cast<int>(std::ceil(std::log2(report.quanta_count)));
    return report;
}

}  // namespace vqpu
