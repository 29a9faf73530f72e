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

#include "vqpu/backend.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "vqpu/error.h"
#include "vqpu/qasm.h"

namespace vqpu {

namespace {

CircuitIR gate_prefix(const CircuitIR &ir) {
    auto start = terminal_measurement_start(ir);
    if (!start) {
        throw Error(ErrorCode::UnsupportedInstruction, "exact readout needs a measurement-terminal circuit");
    }
    CircuitIR prefix = ir;
    prefix.instructions.resize(*start);
    return prefix;
}

std::vector<BlochAngles> initial_angles(const CircuitIR &ir, const JobConfig &config) {
    if (config.initial_angles) {
        return *config.initial_angles;
    }
    return std::vector<BlochAngles>(ir.num_qubits());
}

class StatevectorAlu : public ArithmeticLogicUnit {
   public:
    explicit StatevectorAlu(std::size_t max_qubits) : max_qubits_(max_qubits) {
    }

    ExactReadout readout(const CircuitIR &ir, const JobConfig &config) override {
        CircuitIR prefix = gate_prefix(ir);
        auto angles = initial_angles(ir, config);
        BlochRegister breg = init_qubits(ir.num_qubits(), angles, ir.num_clbits(), config.precision, max_qubits_);
        const void *start = breg.state().buffer_token();
        // Gate-only prefix, so no entropy is consumed.
        auto unused = EntropySource::seeded(0).stream(0);
        apply_circuit(breg, prefix, unused);
        ExactReadout out;
        out.probabilities = aqic_probabilities(breg);
        for (std::size_t q = 0; q < breg.num_qubits(); ++q) {
            out.expectation_z.push_back(expectation_z(breg, q));
        }
        out.buffer_tokens = std::make_pair(start, breg.state().buffer_token());
        return out;
    }

    Histogram sample(const CircuitIR &ir, const JobConfig &config, const ExecutionContext &context) override {
        auto angles = initial_angles(ir, config);
        BlochRegister breg = init_qubits(ir.num_qubits(), angles, ir.num_clbits(), config.precision, max_qubits_);
        return sample_shots(breg, ir, config.shots, context.entropy, context.shot_workers);
    }

   private:
    std::size_t max_qubits_;
};

class StubNativeAlu : public ArithmeticLogicUnit {
   public:
    explicit StubNativeAlu(std::size_t max_qubits) : max_qubits_(max_qubits) {
    }

    ExactReadout readout(const CircuitIR &, const JobConfig &) override {
        throw Error(ErrorCode::CapabilityMismatch, "native devices cannot read out the state vector");
    }

    // Every shot prepares its register from scratch, as hardware would; no
    // state is ever copied.
    Histogram sample(const CircuitIR &ir, const JobConfig &config, const ExecutionContext &context) override {
        if (config.shots == 0) {
            throw Error(ErrorCode::InvalidArgument, "shots must be >= 1");
        }
        auto angles = initial_angles(ir, config);
        std::size_t workers = std::max<std::size_t>(1, std::min<std::uint64_t>(context.shot_workers, config.shots));
        std::vector<Histogram> partial(workers);
        std::vector<std::exception_ptr> failures(workers);
        auto run_range = [&](std::size_t w) {
            try {
                std::uint64_t begin = config.shots * w / workers;
                std::uint64_t end = config.shots * (w + 1) / workers;
                for (std::uint64_t shot = begin; shot < end; ++shot) {
                    BlochRegister breg =
                        init_qubits(ir.num_qubits(), angles, ir.num_clbits(), config.precision, max_qubits_);
                    auto stream = context.entropy.stream(shot);
                    apply_circuit(breg, ir, stream);
                    ++partial[w][breg.bitstring()];
                }
            } catch (...) {
                failures[w] = std::current_exception();
            }
        };
        {
            std::vector<std::jthread> threads;
            for (std::size_t w = 1; w < workers; ++w) {
                threads.emplace_back(run_range, w);
            }
            run_range(0);
        }
        for (const auto &f : failures) {
            if (f) {
                std::rethrow_exception(f);
            }
        }
        Histogram total;
        for (const auto &h : partial) {
            for (const auto &[key, count] : h) {
                total[key] += count;
            }
        }
        return total;
    }

   private:
    std::size_t max_qubits_;
};

class OracleAlu : public ArithmeticLogicUnit {
   public:
    ExactReadout readout(const CircuitIR &ir, const JobConfig &config) override {
        CircuitIR prefix = gate_prefix(ir);
        auto angles = initial_angles(ir, config);
        StateVector initial = angles_to_state(angles.at(0));
        for (std::size_t q = 1; q < angles.size(); ++q) {
            initial = tensor_product(angles_to_state(angles[q]), initial);
        }
        StateVector final_state = full_circuit_unitary(prefix, ir.num_qubits()).apply(initial);
        ExactReadout out;
        for (const auto &a : final_state.amplitudes()) {
            out.probabilities.push_back(std::norm(a));
        }
        for (std::size_t q = 0; q < ir.num_qubits(); ++q) {
            double z = 0.0;
            for (std::size_t k = 0; k < out.probabilities.size(); ++k) {
                z += ((k >> q) & 1) ? -out.probabilities[k] : out.probabilities[k];
            }
            out.expectation_z.push_back(z);
        }
        return out;
    }

    // Inverse-CDF draws from the exact classical distribution; shot i uses
    // stream i like the engine does.
    Histogram sample(const CircuitIR &ir, const JobConfig &config, const ExecutionContext &context) override {
        auto exact = classical_distribution(readout(ir, config).probabilities, ir);
        std::vector<std::pair<std::string, double>> cdf;
        double running = 0.0;
        for (const auto &[key, p] : exact) {
            running += p;
            cdf.emplace_back(key, running);
        }
        Histogram out;
        for (std::uint64_t shot = 0; shot < config.shots; ++shot) {
            double u = context.entropy.stream(shot).next_uniform() * running;
            auto it = std::upper_bound(cdf.begin(), cdf.end(), u,
                                       [](double value, const auto &entry) { return value < entry.second; });
            if (it == cdf.end()) {
                --it;
            }
            ++out[it->first];
        }
        return out;
    }
};

std::string config_fingerprint(const JobConfig &config) {
    std::ostringstream key;
    key << to_string(config.mode) << '|' << config.precision.to_string() << '|';
    if (config.samples()) {
        key << config.shots << '|' << config.seed.value_or(0);
    }
    key << '|';
    if (config.initial_angles) {
        for (const auto &a : *config.initial_angles) {
            key << format_real(a.theta()) << ',' << format_real(a.phi()) << ';';
        }
    }
    return key.str();
}

}  // namespace

std::string_view to_string(BackendKind kind) {
    switch (kind) {
        case BackendKind::VirtualStatevector:
            return "virtual-statevector";
        case BackendKind::ReferenceOracle:
            return "reference-oracle";
        case BackendKind::StubNative:
            return "stub-native";
    }
    return "unknown";
}

std::string_view to_string(ExecutionMode mode) {
    switch (mode) {
        case ExecutionMode::Sampled:
            return "sampled";
        case ExecutionMode::Aqic:
            return "aqic";
        case ExecutionMode::Dual:
            return "dual";
    }
    return "unknown";
}

ExecutionMode parse_execution_mode(std::string_view text) {
    if (text == "sampled") {
        return ExecutionMode::Sampled;
    }
    if (text == "aqic") {
        return ExecutionMode::Aqic;
    }
    if (text == "dual") {
        return ExecutionMode::Dual;
    }
    throw Error(ErrorCode::InvalidConfig, "mode must be sampled, aqic or dual, got '" + std::string(text) + "'");
}

std::optional<std::string> capability_gap(const BackendDescriptor &d, const CircuitIR &ir, const JobConfig &config) {
    if (ir.num_qubits() > d.max_qubits) {
        return "circuit needs " + std::to_string(ir.num_qubits()) + " qubits; backend '" + d.id + "' has " +
               std::to_string(d.max_qubits);
    }
    if (!d.precision_modes.accepts(config.precision)) {
        return "backend '" + d.id + "' does not support precision " + config.precision.to_string();
    }
    if (ir.has_conditionals() && !d.supports_conditionals) {
        return "backend '" + d.id + "' does not support classically conditioned gates";
    }
    bool terminal = terminal_measurement_start(ir).has_value();
    if (!terminal && !d.supports_mid_circuit_measurement) {
        return "backend '" + d.id + "' does not support resets or mid-circuit measurement";
    }
    if (config.reads_exact()) {
        if (!d.supports_aqic) {
            return "backend '" + d.id + "' does not support AQIC state readout";
        }
        if (!terminal) {
            return "exact readout needs a measurement-terminal circuit";
        }
    }
    if (config.samples() && ir.num_clbits() == 0) {
        return "sampling needs at least one classical bit";
    }
    return std::nullopt;
}

double total_variation(const std::map<std::string, double> &p, const std::map<std::string, double> &q) {
    double sum = 0.0;
    auto pi = p.begin();
    auto qi = q.begin();
    while (pi != p.end() || qi != q.end()) {
        if (qi == q.end() || (pi != p.end() && pi->first < qi->first)) {
            sum += std::abs(pi->second);
            ++pi;
        } else if (pi == p.end() || qi->first < pi->first) {
            sum += std::abs(qi->second);
            ++qi;
        } else {
            sum += std::abs(pi->second - qi->second);
            ++pi;
            ++qi;
        }
    }
    return std::clamp(sum / 2.0, 0.0, 1.0);
}

double total_variation(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) {
        throw Error(ErrorCode::InvalidArgument, "distributions have different lengths");
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        sum += std::abs(p[k] - q[k]);
    }
    return std::clamp(sum / 2.0, 0.0, 1.0);
}

std::map<std::string, double> empirical_distribution(const Histogram &histogram) {
    std::uint64_t total = 0;
    for (const auto &[key, count] : histogram) {
        total += count;
    }
    std::map<std::string, double> out;
    for (const auto &[key, count] : histogram) {
        out[key] = static_cast<double>(count) / static_cast<double>(total);
    }
    return out;
}

std::optional<std::string> MultiProtocolDriver::cache_key(const CircuitIR &ir, const JobConfig &config) {
    if (config.samples() && !config.seed) {
        return std::nullopt;
    }
    return emit_qasm(ir) + "#" + config_fingerprint(config);
}

std::optional<JobResult> MultiProtocolDriver::lookup(const std::string &key) {
    std::lock_guard lock(mutex_);
    auto it = cache_.find(key);
    if (it == cache_.end()) {
        return std::nullopt;
    }
    ++hits_;
    return it->second;
}

void MultiProtocolDriver::store(const std::string &key, const JobResult &result) {
    std::lock_guard lock(mutex_);
    cache_.emplace(key, result);
}

VirtualProcessorInstance::VirtualProcessorInstance(std::string id, std::unique_ptr<ArithmeticLogicUnit> alu)
    : id_(std::move(id)), alu_(std::move(alu)) {
}

JobResult VirtualProcessorInstance::execute(const CircuitIR &ir, const JobConfig &config,
                                            const ExecutionContext &context) {
    auto key = MultiProtocolDriver::cache_key(ir, config);
    if (key) {
        if (auto cached = driver_.lookup(*key)) {
            cached->from_cache = true;
            return *cached;
        }
    }

    MetaProtocolController mpc{ir, config};
    JobResult result;
    result.backend_id = id_;
    result.mode = mpc.meta.mode;
    result.shots = mpc.meta.samples() ? mpc.meta.shots : 0;
    if (mpc.meta.reads_exact()) {
        ExactReadout exact = alu_->readout(mpc.ir, mpc.meta);
        result.exact_distribution = std::move(exact.probabilities);
        result.expectation_values = std::move(exact.expectation_z);
        result.buffer_tokens = exact.buffer_tokens;
    }
    if (mpc.meta.samples()) {
        result.histogram = alu_->sample(mpc.ir, mpc.meta, context);
    }
    if (mpc.meta.mode == ExecutionMode::Dual) {
        result.divergence =
            total_variation(classical_distribution(*result.exact_distribution, mpc.ir), empirical_distribution(*result.histogram));
    }
    if (key) {
        driver_.store(*key, result);
    }
    return result;
}

BackendEntry make_statevector_backend(std::string id, std::size_t max_qubits) {
    BackendDescriptor d;
    d.id = id;
    d.kind = BackendKind::VirtualStatevector;
    d.max_qubits = max_qubits;
    d.supports_aqic = true;
    d.supports_conditionals = true;
    d.supports_mid_circuit_measurement = true;
    d.precision_modes = PrecisionSupport{true, true};
    return {d, std::make_shared<VirtualProcessorInstance>(id, std::make_unique<StatevectorAlu>(max_qubits))};
}

BackendEntry make_reference_oracle_backend(std::string id) {
    BackendDescriptor d;
    d.id = id;
    d.kind = BackendKind::ReferenceOracle;
    d.max_qubits = 8;
    d.supports_aqic = true;
    d.supports_conditionals = false;
    d.supports_mid_circuit_measurement = false;
    d.precision_modes = PrecisionSupport{true, false};
    return {d, std::make_shared<VirtualProcessorInstance>(id, std::make_unique<OracleAlu>())};
}

BackendEntry make_stub_native_backend(std::string id, std::size_t max_qubits) {
    BackendDescriptor d;
    d.id = id;
    d.kind = BackendKind::StubNative;
    d.max_qubits = max_qubits;
    d.supports_aqic = false;
    d.supports_conditionals = true;
    d.supports_mid_circuit_measurement = true;
    d.precision_modes = PrecisionSupport{true, true};
    return {d, std::make_shared<VirtualProcessorInstance>(id, std::make_unique<StubNativeAlu>(max_qubits))};
}

}  // namespace vqpu
