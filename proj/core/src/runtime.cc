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

#include "vqpu/runtime.h"

#include <algorithm>
#include <cmath>

namespace vqpu {

namespace {

std::string summarize(const std::vector<Diagnostic> &diagnostics) {
    std::string out = std::to_string(diagnostics.size()) + " diagnostic(s)";
    if (!diagnostics.empty()) {
        out += "; first: " + diagnostics.front().message;
    }
    return out;
}

void check_config(const CircuitIR &ir, const JobConfig &config) {
    if (config.samples() && config.shots == 0) {
        throw Error(ErrorCode::InvalidConfig, "shots must be >= 1 when sampling");
    }
    if (config.initial_angles && config.initial_angles->size() != ir.num_qubits()) {
        throw Error(ErrorCode::InvalidConfig, "initial angles cover " + std::to_string(config.initial_angles->size()) +
                                                  " qubits; circuit has " + std::to_string(ir.num_qubits()));
    }
}

}  // namespace

ValidationError::ValidationError(std::vector<Diagnostic> diagnostics)
    : Error(ErrorCode::ValidationFailed, summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {
}

Runtime::Runtime(RuntimeOptions options) : options_(options) {
    options_.job_workers = std::max<std::size_t>(1, options_.job_workers);
    options_.shot_workers = std::max<std::size_t>(1, options_.shot_workers);
    if (options_.register_defaults) {
        register_default_backends(registry_, options_.max_qubits);
    }
    for (std::size_t i = 0; i < options_.job_workers; ++i) {
        workers_.emplace_back([this](std::stop_token stop) { worker_loop(stop); });
    }
}

Runtime::~Runtime() {
    for (auto &w : workers_) {
        w.request_stop();
    }
    queue_cv_.notify_all();
    workers_.clear();
}

void Runtime::worker_loop(std::stop_token stop) {
    while (true) {
        std::packaged_task<void()> task;
        {
            std::unique_lock lock(queue_mutex_);
            if (!queue_cv_.wait(lock, stop, [this] { return !queue_.empty(); })) {
                return;
            }
            task = std::move(queue_.front());
            queue_.pop_front();
        }
        task();
    }
}

JobId Runtime::submit(CircuitIR ir, JobConfig config) {
    auto entry = registry_.find(config.backend_id);
    if (!entry) {
        throw Error(ErrorCode::UnknownBackend, "no backend named '" + config.backend_id + "'");
    }
    auto diagnostics = validate(ir, options_.max_qubits);
    if (has_errors(diagnostics)) {
        throw ValidationError(std::move(diagnostics));
    }
    check_config(ir, config);
    if (auto gap = capability_gap(entry->descriptor, ir, config)) {
        throw Error(ErrorCode::CapabilityMismatch, *gap);
    }

    ExecutionContext context;
    context.shot_workers = options_.shot_workers;
    std::optional<std::uint64_t> seed_used;
    if (config.seed) {
        seed_used = config.seed;
    } else if (config.samples() && !config.system_entropy) {
        seed_used = system_random_u64();
    }
    context.entropy = seed_used ? EntropySource::seeded(*seed_used) : EntropySource::system();

    JobId id;
    {
        std::lock_guard lock(jobs_mutex_);
        id = next_id_++;
    }
    auto promise = std::make_shared<std::promise<JobResult>>();
    std::future<JobResult> future = promise->get_future();
    auto executor = entry->executor;
    std::packaged_task<void()> task([=, ir = std::move(ir), config = std::move(config)]() {
        JobResult result;
        auto start = std::chrono::steady_clock::now();
        try {
            result = executor->execute(ir, config, context);
            result.status = JobStatus::Completed;
        } catch (const std::exception &e) {
            result = JobResult{};
            result.status = JobStatus::Failed;
            result.failure_reason = e.what();
        }
        result.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start);
        result.job_id = id;
        result.backend_id = config.backend_id;
        result.mode = config.mode;
        result.shots = config.samples() ? config.shots : 0;
        result.seed_used = seed_used;
        promise->set_value(std::move(result));
    });
    {
        std::lock_guard lock(jobs_mutex_);
        jobs_.emplace(id, std::move(future));
    }
    {
        std::lock_guard lock(queue_mutex_);
        queue_.push_back(std::move(task));
    }
    queue_cv_.notify_one();
    return id;
}

std::future<JobResult> Runtime::take(JobId id) {
    std::lock_guard lock(jobs_mutex_);
    auto it = jobs_.find(id);
    if (it == jobs_.end()) {
        throw Error(ErrorCode::UnknownJob, "no pending job " + std::to_string(id));
    }
    auto future = std::move(it->second);
    jobs_.erase(it);
    return future;
}

JobResult Runtime::await(JobId id) {
    return take(id).get();
}

std::optional<JobResult> Runtime::poll(JobId id) {
    std::lock_guard lock(jobs_mutex_);
    auto it = jobs_.find(id);
    if (it == jobs_.end()) {
        throw Error(ErrorCode::UnknownJob, "no pending job " + std::to_string(id));
    }
    if (it->second.wait_for(std::chrono::seconds(0)) != std::future_status::ready) {
        return std::nullopt;
    }
    auto result = it->second.get();
    jobs_.erase(it);
    return result;
}

JobResult Runtime::run(CircuitIR ir, JobConfig config) {
    return await(submit(std::move(ir), std::move(config)));
}

DualResult Runtime::dual_execute(const CircuitIR &ir, const JobConfig &first, const JobConfig &second) {
    JobConfig a = first;
    JobConfig b = second;
    // Both sides see the same randomness when both sample.
    if (a.samples() && b.samples() && !a.seed && !b.seed) {
        a.seed = b.seed = system_random_u64();
    }
    JobId ida = submit(ir, a);
    JobId idb;
    try {
        idb = submit(ir, b);
    } catch (...) {
        await(ida);
        throw;
    }
    DualResult out{await(ida), await(idb), 0.0, std::nullopt};
    const JobResult &ra = out.first;
    const JobResult &rb = out.second;
    if (ra.status != JobStatus::Completed || rb.status != JobStatus::Completed) {
        out.divergence = 1.0;
        return out;
    }
    if (ra.exact_distribution && rb.exact_distribution) {
        out.divergence = total_variation(*ra.exact_distribution, *rb.exact_distribution);
        double worst = 0.0;
        for (std::size_t k = 0; k < ra.exact_distribution->size(); ++k) {
            worst = std::max(worst, std::abs((*ra.exact_distribution)[k] - (*rb.exact_distribution)[k]));
        }
        out.max_probability_difference = worst;
    } else if (ra.exact_distribution && rb.histogram) {
        out.divergence =
            total_variation(classical_distribution(*ra.exact_distribution, ir), empirical_distribution(*rb.histogram));
    } else if (rb.exact_distribution && ra.histogram) {
        out.divergence =
            total_variation(classical_distribution(*rb.exact_distribution, ir), empirical_distribution(*ra.histogram));
    } else {
        out.divergence = total_variation(empirical_distribution(*ra.histogram), empirical_distribution(*rb.histogram));
    }
    return out;
}

DualResult Runtime::dual_execute(const CircuitIR &ir, const JobConfig &config, const std::string &backend_a,
                                 const std::string &backend_b) {
    JobConfig a = config;
    JobConfig b = config;
    a.backend_id = backend_a;
    b.backend_id = backend_b;
    return dual_execute(ir, a, b);
}

}  // namespace vqpu
