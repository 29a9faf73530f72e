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

#ifndef VQPU_RUNTIME_H_
#define VQPU_RUNTIME_H_

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <future>
#include <map>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "vqpu/backend.h"
#include "vqpu/error.h"
#include "vqpu/registry.h"

namespace vqpu {

/// Submission rejected because the circuit failed validation.
class ValidationError : public Error {
   public:
    explicit ValidationError(std::vector<Diagnostic> diagnostics);

    const std::vector<Diagnostic> &diagnostics() const noexcept {
        return diagnostics_;
    }

   private:
    std::vector<Diagnostic> diagnostics_;
};

using JobId = std::uint64_t;

struct RuntimeOptions {
    /// Jobs running at once.
    std::size_t job_workers = 2;
    /// Threads one sampled job may fan its shots out to.
    std::size_t shot_workers = 1;
    std::size_t max_qubits = kDefaultMaxQubits;
    bool register_defaults = true;
};

struct DualResult {
    JobResult first;
    JobResult second;
    double divergence = 0.0;
    /// max_k |p_k - q_k| when both sides produced exact distributions.
    std::optional<double> max_probability_difference;
};

/// Kernel scheduler: validates and capability-checks jobs, dispatches them to
/// a bounded worker pool and hands results back through futures.
class Runtime {
   public:
    explicit Runtime(RuntimeOptions options = {});
    ~Runtime();

    Runtime(const Runtime &) = delete;
    Runtime &operator=(const Runtime &) = delete;

    BackendRegistry &registry() noexcept {
        return registry_;
    }
    const RuntimeOptions &options() const noexcept {
        return options_;
    }

    void register_backend(BackendDescriptor descriptor, std::shared_ptr<Executor> executor) {
        registry_.register_backend(std::move(descriptor), std::move(executor));
    }
    void register_backend(BackendEntry entry) {
        registry_.register_backend(std::move(entry));
    }
    std::vector<BackendDescriptor> list_backends() const {
        return registry_.list_backends();
    }

    /// Throws Error(UnknownBackend), ValidationError, Error(InvalidConfig) or
    /// Error(CapabilityMismatch) before anything is dispatched. Executor
    /// failures come back as JobStatus::Failed.
    JobId submit(CircuitIR ir, JobConfig config);
    /// Blocks until the job finishes. Each id can be awaited once.
    JobResult await(JobId id);
    /// Non-blocking variant of await.
    std::optional<JobResult> poll(JobId id);

    /// submit + await.
    JobResult run(CircuitIR ir, JobConfig config);

    /// Runs the same circuit under two configurations concurrently and compares
    /// the outcomes: exact vs exact, exact vs sampled, or sampled vs sampled.
    DualResult dual_execute(const CircuitIR &ir, const JobConfig &first, const JobConfig &second);
    DualResult dual_execute(const CircuitIR &ir, const JobConfig &config, const std::string &backend_a,
                            const std::string &backend_b);

   private:
    void worker_loop(std::stop_token stop);
    std::future<JobResult> take(JobId id);

    RuntimeOptions options_;
    BackendRegistry registry_;

    std::mutex queue_mutex_;
    std::condition_variable_any queue_cv_;
    std::deque<std::packaged_task<void()>> queue_;

    std::mutex jobs_mutex_;
    std::map<JobId, std::future<JobResult>> jobs_;
    JobId next_id_ = 1;

    std::vector<std::jthread> workers_;
};

}  // namespace vqpu

#endif  // VQPU_RUNTIME_H_
