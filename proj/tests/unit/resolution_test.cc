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

#include <gtest/gtest.h>

#include <cmath>

#include "vqpu/error.h"
#include "vqpu/resolution.h"

namespace vqpu {
namespace {

// Smallest b with 2^b >= I, by repeated doubling.
int bits_by_doubling(long double quanta) {
    int bits = 0;
    long double capacity = 1;
    while (capacity < quanta) {
        capacity *= 2;
        ++bits;
    }
    return bits;
}

ErrorCode code_of(const ResolutionQuery &q) {
    try {
        third_quantization(q);
    } catch (const Error &e) {
        return e.code();
    }
    return ErrorCode::InvalidArgument;
}

TEST(ThirdQuantization, GigahertzQubitNeedsAboutNinetyBits) {
    ResolutionReport r = third_quantization({std::nullopt, 1e9, kDefaultHubble});
    EXPECT_NEAR(r.quanta_count, 1e9 / 2.27e-18, 1e12);
    EXPECT_GE(r.min_bits, 88);
    EXPECT_LE(r.min_bits, 91);
    EXPECT_EQ(r.min_bits, bits_by_doubling(1e9L / 2.27e-18L));
    EXPECT_NEAR(r.delta_e_joules, kPlanck * 1e9, 1e-36);
}

TEST(ThirdQuantization, GroundState) {
    ResolutionReport r = third_quantization({kPlanck * kDefaultHubble, std::nullopt, kDefaultHubble});
    EXPECT_NEAR(r.quanta_count, 1.0, 1e-12);
    EXPECT_EQ(r.min_bits, 0);
}

TEST(ThirdQuantization, TwoHertzUnitHubble) {
    ResolutionReport r = third_quantization({std::nullopt, 2.0, 1.0});
    EXPECT_DOUBLE_EQ(r.quanta_count, 2.0);
    EXPECT_EQ(r.min_bits, 1);
}

TEST(ThirdQuantization, LinearInDeltaE) {
    for (double e : {1e-30, 3.3e-27, 7.1e-25, 1e-20}) {
        double single = third_quantization({e, std::nullopt, kDefaultHubble}).quanta_count;
        double twice = third_quantization({2 * e, std::nullopt, kDefaultHubble}).quanta_count;
        EXPECT_EQ(twice, 2 * single);
    }
}

TEST(ThirdQuantization, MinBitsMatchesDoublingOracle) {
    for (double f = 1e-17; f < 1e15; f *= 3.7) {
        ResolutionReport r = third_quantization({std::nullopt, f, kDefaultHubble});
        EXPECT_EQ(r.min_bits, bits_by_doubling(static_cast<long double>(r.quanta_count))) << f;
    }
}

TEST(ThirdQuantization, Errors) {
    EXPECT_EQ(code_of({std::nullopt, std::nullopt, kDefaultHubble}), ErrorCode::NonPositiveInput);
    EXPECT_EQ(code_of({1.0, 1.0, kDefaultHubble}), ErrorCode::NonPositiveInput);
    EXPECT_EQ(code_of({std::nullopt, -1.0, kDefaultHubble}), ErrorCode::NonPositiveInput);
    EXPECT_EQ(code_of({std::nullopt, 1.0, 0.0}), ErrorCode::NonPositiveInput);
    EXPECT_EQ(code_of({std::nullopt, NAN, kDefaultHubble}), ErrorCode::NonPositiveInput);
    EXPECT_EQ(code_of({std::nullopt, 1e-19, kDefaultHubble}), ErrorCode::BelowGroundState);
}

}  // namespace
}  // namespace vqpu
