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

#ifndef VQPU_ENTROPY_H_
#define VQPU_ENTROPY_H_

#include <cstdint>
#include <optional>

namespace vqpu {

/// Keyed counter-based generator: the k-th 64-bit draw of stream `label` under
/// `key` is a pure function of (key, label, k).
std::uint64_t keyed_draw(std::uint64_t key, std::uint64_t label, std::uint64_t k) noexcept;

/// One independent sequence of uniform draws.
class EntropyStream {
   public:
    EntropyStream(std::uint64_t key, std::uint64_t label) noexcept : key_(key), label_(label) {
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_uniform() noexcept;
    std::uint64_t next_u64() noexcept;

    /// Index the next draw will use.
    std::uint64_t draw_index() const noexcept {
        return counter_;
    }
    std::uint64_t label() const noexcept {
        return label_;
    }

   private:
    std::uint64_t key_;
    std::uint64_t label_;
    std::uint64_t counter_ = 0;
};

/// Where measurement randomness comes from. SeededCounter streams are
/// reproducible and independent of thread scheduling; SystemEntropy keys each
/// stream from the operating system's entropy device.
class EntropySource {
   public:
    static EntropySource seeded(std::uint64_t master_seed) noexcept {
        return EntropySource(master_seed);
    }
    static EntropySource system() noexcept {
        return EntropySource(std::nullopt);
    }

    bool is_seeded() const noexcept {
        return seed_.has_value();
    }
    std::optional<std::uint64_t> seed() const noexcept {
        return seed_;
    }

    EntropyStream stream(std::uint64_t label) const;

   private:
    explicit EntropySource(std::optional<std::uint64_t> seed) noexcept : seed_(seed) {
    }
    std::optional<std::uint64_t> seed_;
};

/// 64 bits from the operating system's entropy device.
std::uint64_t system_random_u64();

}  // namespace vqpu

#endif  // VQPU_ENTROPY_H_
