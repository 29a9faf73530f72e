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

#include "vqpu/entropy.h"

#include <random>

namespace vqpu {

namespace {

// SplitMix64 finalizer.
constexpr std::uint64_t mix(std::uint64_t x) noexcept {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

}  // namespace

std::uint64_t keyed_draw(std::uint64_t key, std::uint64_t label, std::uint64_t k) noexcept {
    std::uint64_t stream_key = mix(mix(key ^ 0x243F6A8885A308D3ULL) + (label + 1) * 0x9E3779B97F4A7C15ULL);
    return mix(stream_key + (k + 1) * 0xD1B54A32D192ED03ULL);
}

std::uint64_t EntropyStream::next_u64() noexcept {
    return keyed_draw(key_, label_, counter_++);
}

double EntropyStream::next_uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

EntropyStream EntropySource::stream(std::uint64_t label) const {
    if (seed_) {
        return EntropyStream(*seed_, label);
    }
    return EntropyStream(system_random_u64(), label);
}

std::uint64_t system_random_u64() {
    thread_local std::random_device device;
    std::uint64_t high = device();
    return (high << 32) | device();
}

}  // namespace vqpu
