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

#ifndef VQPU_BACKEND_H_
#define VQPU_BACKEND_H_

#include <atomic>
#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "vqpu/bloch.h"
#include "vqpu/circuit.h"
#include "vqpu/engine.h"
#include "vqpu/entropy.h"

namespace vqpu {

enum class BackendKind { VirtualStatevector, ReferenceOracle, StubNative };

std::string_view to_string(BackendKind kind);

struct PrecisionSupport {
    bool full = true;
    bool fixed = false;

    bool accepts(PrecisionMode mode) const noexcept {
        return mode.is_full() ? full : fixed;
    }
    bool operator==(const PrecisionSupport &) const = default;
};

struct BackendDescriptor {
    std::string id;
    BackendKind kind = BackendKind::VirtualStatevector;
    std::size_t max_qubits = kDefaultMaxQubits;
    bool supports_aqic = true;
    bool supports_conditionals = true;
    /// Resets and measurements followed by further operations.
    bool supports_mid_circuit_measurement = true;
    PrecisionSupport precision_modes;

    bool operator==(const BackendDescriptor &) const = default;
};

enum class ExecutionMode { Sampled, Aqic, Dual };

std::string_view to_string(ExecutionMode mode);
/// "sampled" | "aqic" | "dual"; throws Error(InvalidConfig) otherwise.
ExecutionMode parse_execution_mode(std::string_view text);

/// Meta information passed down from the application for one job.
struct JobConfig {
    std::uint64_t shots = 1024;
    /// Explicit seed. Without one a sampling job gets a drawn seed (and
    /// reports it), unless system_entropy is set.
    std::optional<std::uint64_t> seed;
    bool system_entropy = false;
    PrecisionMode precision = PrecisionMode::full();
    ExecutionMode mode = ExecutionMode::Sampled;
    std::string backend_id = "vqpu0";
    std::optional<std::vector<BlochAngles>> initial_angles;

    bool samples() const noexcept {
        return mode != ExecutionMode::Aqic;
    }
    bool reads_exact() const noexcept {
        return mode != ExecutionMode::Sampled;
    }
};

enum class JobStatus { Completed, Failed };

struct JobResult {
    std::uint64_t job_id = 0;
    std::string backend_id;
    ExecutionMode mode = ExecutionMode::Sampled;
    std::uint64_t shots = 0;
    std::optional<Histogram> histogram;
    /// |amplitude|^2 over qubit basis states, read before terminal measurement.
    std::optional<std::vector<double>> exact_distribution;
    /// <Z> per qubit.
    std::optional<std::vector<double>> expectation_values;
    /// Total-variation distance between the exact and sampled classical outcomes.
    std::optional<double> divergence;
    std::optional<std::uint64_t> seed_used;
    std::chrono::nanoseconds wall_time{0};
    JobStatus status = JobStatus::Completed;
    std::string failure_reason;
    bool from_cache = false;
    /// Amplitude-buffer identity of the readout register at allocation and at
    /// readout. Equal tokens mean the state never moved between stages.
    std::optional<std::pair<const void *, const void *>> buffer_tokens;

    double wall_time_ms() const noexcept {
        return static_cast<double>(wall_time.count()) / 1e6;
    }
};

struct ExecutionContext {
    EntropySource entropy = EntropySource::seeded(0);
    std::size_t shot_workers = 1;
};

/// Backend contract: given a circuit and its meta information, produce a
/// result. Callers guarantee the job passed capability_gap() first.
class Executor {
   public:
    virtual ~Executor() = default;
    virtual JobResult execute(const CircuitIR &ir, const JobConfig &config, const ExecutionContext &context) = 0;
};

struct BackendEntry {
    BackendDescriptor descriptor;
    std::shared_ptr<Executor> executor;
};

/// Why `descriptor` cannot run this job, or nullopt if it can.
std::optional<std::string> capability_gap(const BackendDescriptor &descriptor, const CircuitIR &ir,
                                          const JobConfig &config);

/// 1/2 sum_k |p_k - q_k| over the union of keys, clamped to [0, 1].
double total_variation(const std::map<std::string, double> &p, const std::map<std::string, double> &q);
double total_variation(std::span<const double> p, std::span<const double> q);

std::map<std::string, double> empirical_distribution(const Histogram &histogram);

// ---- Virtual processor instance ----

struct ExactReadout {
    std::vector<double> probabilities;
    std::vector<double> expectation_z;
    std::optional<std::pair<const void *, const void *>> buffer_tokens;
};

/// Arithmetic and logic unit: the matrix engine behind a processor instance.
class ArithmeticLogicUnit {
   public:
    virtual ~ArithmeticLogicUnit() = default;
    /// Exact distribution of the state right before the terminal measurements.
    virtual ExactReadout readout(const CircuitIR &ir, const JobConfig &config) = 0;
    virtual Histogram sample(const CircuitIR &ir, const JobConfig &config, const ExecutionContext &context) = 0;
};

/// Meta protocol controller: the intermediate representation and meta
/// information a job carries through the instance.
struct MetaProtocolController {
    CircuitIR ir;
    JobConfig meta;
};

/// Multi protocol driver: adapts jobs to the ALU and caches results keyed by
/// (circuit, configuration). Exact results are always cacheable; sampled
/// results only when the caller supplied a seed.
class MultiProtocolDriver {
   public:
    static std::optional<std::string> cache_key(const CircuitIR &ir, const JobConfig &config);

    std::optional<JobResult> lookup(const std::string &key);
    void store(const std::string &key, const JobResult &result);

    std::uint64_t hits() const noexcept {
        return hits_.load();
    }

   private:
    std::mutex mutex_;
    std::unordered_map<std::string, JobResult> cache_;
    std::atomic<std::uint64_t> hits_{0};
};

class VirtualProcessorInstance : public Executor {
   public:
    VirtualProcessorInstance(std::string id, std::unique_ptr<ArithmeticLogicUnit> alu);

    JobResult execute(const CircuitIR &ir, const JobConfig &config, const ExecutionContext &context) override;

    MultiProtocolDriver &driver() noexcept {
        return driver_;
    }

   private:
    std::string id_;
    MultiProtocolDriver driver_;
    std::unique_ptr<ArithmeticLogicUnit> alu_;
};

/// State-vector engine; full and fixed precision, conditionals, AQIC readout.
BackendEntry make_statevector_backend(std::string id = "vqpu0", std::size_t max_qubits = kDefaultMaxQubits);
/// Dense full-unitary oracle; gate-only prefixes, full precision, <= 8 qubits.
BackendEntry make_reference_oracle_backend(std::string id = "reference-oracle");
/// Stands in for a native QPU: the same engine, but shots only. No AQIC
/// readout and no state copies leave the device.
BackendEntry make_stub_native_backend(std::string id = "stub-native", std::size_t max_qubits = kDefaultMaxQubits);

}  // namespace vqpu

#endif  // VQPU_BACKEND_H_
