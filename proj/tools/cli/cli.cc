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

#include "cli/cli.h"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "cli/json_writer.h"
#include "json.hpp"
#include "vqpu/backend.h"
#include "vqpu/error.h"
#include "vqpu/qasm.h"
#include "vqpu/resolution.h"
#include "vqpu/runtime.h"

namespace vqpu::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class Format { Json, Text };

// Raised inside a command to end it with a specific exit code.
struct CommandFailure {
    int exit_code;
    std::string code;
    std::string message;
    std::vector<Diagnostic> diagnostics;
};

struct RunFlags {
    std::string file;
    std::optional<std::string> backend;
    std::uint64_t shots = 1024;
    std::optional<std::uint64_t> seed;
    std::string precision = "full";
    std::string mode = "sampled";
    std::string format = "json";
    std::optional<std::string> init;
    std::size_t workers = 0;
    bool reproducible = false;
};

struct ValidateFlags {
    std::string file;
    std::string format = "json";
};

struct ResolveFlags {
    std::optional<double> frequency;
    std::optional<double> delta_e;
    double hubble = kDefaultHubble;
    std::string format = "json";
    bool reproducible = false;
};

Format parse_format(const std::string &text) {
    return text == "text" ? Format::Text : Format::Json;
}

std::string format_number(double value) {
    return format_real(value);
}

Json diagnostics_json(const std::vector<Diagnostic> &diagnostics) {
    Json out = Json::array();
    for (const auto &d : diagnostics) {
        out.push_back(Json{{"code", d.code},
                           {"severity", std::string(to_string(d.severity))},
                           {"line", d.line},
                           {"column", d.column},
                           {"message", d.message}});
    }
    return out;
}

void print_diagnostics_text(const std::string &file, const std::vector<Diagnostic> &diagnostics, std::ostream &err) {
    for (const auto &d : diagnostics) {
        err << file << ":" << d.line << ":" << d.column << ": " << to_string(d.severity) << ": " << d.message << " ["
            << d.code << "]\n";
    }
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw CommandFailure{kExitIo, "io-error", "cannot open '" + path + "'", {}};
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw CommandFailure{kExitIo, "io-error", "failed reading '" + path + "'", {}};
    }
    return buffer.str();
}

double parse_double(std::string_view text) {
    // Trim spaces so "0.5, 1" parses.
    while (!text.empty() && text.front() == ' ') {
        text.remove_prefix(1);
    }
    while (!text.empty() && text.back() == ' ') {
        text.remove_suffix(1);
    }
    double value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
        throw CommandFailure{kExitInvalid, "invalid-argument", "'" + std::string(text) + "' is not a number", {}};
    }
    return value;
}

std::vector<BlochAngles> parse_init(const std::string &text) {
    std::vector<BlochAngles> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(';', start);
        std::string_view pair(text.data() + start, (end == std::string::npos ? text.size() : end) - start);
        std::size_t comma = pair.find(',');
        if (comma == std::string_view::npos) {
            throw CommandFailure{kExitInvalid, "invalid-argument",
                                 "--init expects 'theta,phi' pairs separated by ';', got '" + std::string(pair) + "'",
                                 {}};
        }
        double theta = parse_double(pair.substr(0, comma));
        double phi = parse_double(pair.substr(comma + 1));
        try {
            out.emplace_back(theta, phi);
        } catch (const Error &e) {
            throw CommandFailure{kExitInvalid, std::string(to_string(e.code())), e.what(), {}};
        }
        if (end == std::string::npos) {
            break;
        }
        start = end + 1;
    }
    return out;
}

Json document(const std::string &command, Json inputs) {
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = command;
    doc["inputs"] = std::move(inputs);
    doc["result"] = nullptr;
    doc["seed_used"] = nullptr;
    doc["backend_id"] = nullptr;
    doc["wall_time_ms"] = 0.0;
    return doc;
}

Json failure_result(const CommandFailure &failure) {
    Json result;
    result["status"] = "failed";
    result["error"] = Json{{"code", failure.code}, {"message", failure.message}};
    result["diagnostics"] = diagnostics_json(failure.diagnostics);
    return result;
}

// Histogram entries by descending count, ties broken by key.
Json histogram_json(const Histogram &histogram) {
    std::vector<std::pair<std::string, std::uint64_t>> entries(histogram.begin(), histogram.end());
    std::stable_sort(entries.begin(), entries.end(), [](const auto &a, const auto &b) {
        if (a.second != b.second) {
            return a.second > b.second;
        }
        return a.first < b.first;
    });
    Json out = Json::object();
    for (const auto &[key, count] : entries) {
        out[key] = count;
    }
    return out;
}

void render_text(const Json &node, const std::string &indent, std::ostream &out) {
    for (auto it = node.begin(); it != node.end(); ++it) {
        const Json &value = it.value();
        std::string label = node.is_array() ? "[" + std::to_string(std::distance(node.begin(), it)) + "]" : it.key();
        if (value.is_object() || value.is_array()) {
            out << indent << label << ":";
            if (value.empty()) {
                out << (value.is_object() ? " {}" : " []") << "\n";
                continue;
            }
            out << "\n";
            render_text(value, indent + "  ", out);
        } else if (value.is_number_float()) {
            out << indent << label << ": " << format_number(value.get<double>()) << "\n";
        } else if (value.is_string()) {
            out << indent << label << ": " << value.get<std::string>() << "\n";
        } else {
            out << indent << label << ": " << value.dump() << "\n";
        }
    }
}

void emit(const Json &doc, Format format, std::ostream &out) {
    if (format == Format::Json) {
        out << dump_json(doc);
    } else {
        render_text(doc, "", out);
    }
}

int finish_failure(Json doc, const CommandFailure &failure, Format format, const std::string &file,
                   std::ostream &out, std::ostream &err) {
    if (format == Format::Json) {
        doc["result"] = failure_result(failure);
        out << dump_json(doc);
    } else {
        err << "error: " << failure.message << "\n";
        print_diagnostics_text(file, failure.diagnostics, err);
    }
    return failure.exit_code;
}

Json echo_init(const std::optional<std::vector<BlochAngles>> &angles) {
    if (!angles) {
        return nullptr;
    }
    Json out = Json::array();
    for (const auto &a : *angles) {
        out.push_back(Json::array({a.theta(), a.phi()}));
    }
    return out;
}

int cmd_run(const RunFlags &flags, const Environment &env, std::ostream &out, std::ostream &err) {
    Format format = parse_format(flags.format);
    JobConfig config;
    config.backend_id = flags.backend.value_or(env.default_backend.value_or("vqpu0"));
    config.shots = flags.shots;
    config.seed = flags.seed;
    config.system_entropy = !flags.seed && env.force_system_entropy;

    Json inputs;
    inputs["file"] = flags.file;
    inputs["backend"] = config.backend_id;
    inputs["mode"] = flags.mode;
    inputs["shots"] = flags.shots;
    inputs["seed"] = flags.seed ? Json(*flags.seed) : Json(nullptr);
    inputs["precision"] = flags.precision;
    inputs["init"] = nullptr;
    Json doc = document("run", inputs);

    try {
        try {
            config.precision = PrecisionMode::parse(flags.precision);
            config.mode = parse_execution_mode(flags.mode);
        } catch (const Error &e) {
            throw CommandFailure{kExitInvalid, std::string(to_string(e.code())), e.what(), {}};
        }
        if (flags.init) {
            config.initial_angles = parse_init(*flags.init);
            doc["inputs"]["init"] = echo_init(config.initial_angles);
        }
        if (config.samples() && config.shots == 0) {
            throw CommandFailure{kExitInvalid, "invalid-config", "--shots must be >= 1", {}};
        }

        std::string source = read_file(flags.file);
        ParseResult parsed = parse_qasm(source);
        if (!parsed.ok()) {
            throw CommandFailure{kExitInvalid, "validation-failed", "circuit failed to parse or validate",
                                 parsed.diagnostics};
        }

        RuntimeOptions options;
        options.job_workers = 1;
        options.shot_workers = flags.workers != 0 ? flags.workers : std::max(1u, std::thread::hardware_concurrency());
        Runtime runtime(options);
        runtime.register_backend(make_stub_native_backend());

        JobId id;
        try {
            id = runtime.submit(*parsed.ir, config);
        } catch (const ValidationError &e) {
            throw CommandFailure{kExitInvalid, "validation-failed", e.what(), e.diagnostics()};
        } catch (const Error &e) {
            throw CommandFailure{kExitInvalid, std::string(to_string(e.code())), e.what(), {}};
        }
        JobResult result = runtime.await(id);
        doc["seed_used"] = result.seed_used ? Json(*result.seed_used) : Json(nullptr);
        doc["backend_id"] = result.backend_id;
        doc["wall_time_ms"] = flags.reproducible ? 0.0 : result.wall_time_ms();
        if (result.status != JobStatus::Completed) {
            throw CommandFailure{kExitInternal, "execution-failed", result.failure_reason, {}};
        }

        Json payload;
        payload["status"] = "completed";
        payload["mode"] = std::string(to_string(result.mode));
        payload["shots"] = result.histogram ? Json(result.shots) : Json(nullptr);
        payload["histogram"] = result.histogram ? histogram_json(*result.histogram) : Json(nullptr);
        payload["distribution"] = result.exact_distribution ? Json(*result.exact_distribution) : Json(nullptr);
        payload["expectation_z"] = result.expectation_values ? Json(*result.expectation_values) : Json(nullptr);
        payload["divergence"] = result.divergence ? Json(*result.divergence) : Json(nullptr);
        if (!parsed.diagnostics.empty()) {
            payload["diagnostics"] = diagnostics_json(parsed.diagnostics);
        }
        doc["result"] = std::move(payload);
        emit(doc, format, out);
        if (format == Format::Text) {
            print_diagnostics_text(flags.file, parsed.diagnostics, err);
        }
        return kExitOk;
    } catch (const CommandFailure &failure) {
        return finish_failure(std::move(doc), failure, format, flags.file, out, err);
    }
}

int cmd_validate(const ValidateFlags &flags, std::ostream &out, std::ostream &err) {
    Format format = parse_format(flags.format);
    Json inputs;
    inputs["file"] = flags.file;
    Json doc = document("validate", inputs);
    std::string source;
    try {
        source = read_file(flags.file);
    } catch (const CommandFailure &failure) {
        return finish_failure(std::move(doc), failure, format, flags.file, out, err);
    }
    ParseResult parsed = parse_qasm(source);
    Json result;
    result["status"] = "completed";
    result["valid"] = parsed.ok();
    result["diagnostics"] = diagnostics_json(parsed.diagnostics);
    doc["result"] = std::move(result);
    if (format == Format::Json) {
        out << dump_json(doc);
    } else {
        print_diagnostics_text(flags.file, parsed.diagnostics, err);
        out << (parsed.ok() ? "valid" : "invalid") << "\n";
    }
    return parsed.ok() ? kExitOk : kExitInvalid;
}

int cmd_resolve(const ResolveFlags &flags, std::ostream &out, std::ostream &err) {
    Format format = parse_format(flags.format);
    Json inputs;
    inputs["frequency_hz"] = flags.frequency ? Json(*flags.frequency) : Json(nullptr);
    inputs["delta_e_joules"] = flags.delta_e ? Json(*flags.delta_e) : Json(nullptr);
    inputs["hubble_per_second"] = flags.hubble;
    Json doc = document("resolve", inputs);

    auto start = std::chrono::steady_clock::now();
    try {
        ResolutionReport report;
        try {
            report = third_quantization(ResolutionQuery{flags.delta_e, flags.frequency, flags.hubble});
        } catch (const Error &e) {
            throw CommandFailure{kExitInvalid, std::string(to_string(e.code())), e.what(), {}};
        }
        Json result;
        result["status"] = "completed";
        result["quanta_count"] = report.quanta_count;
        result["min_bits"] = report.min_bits;
        result["delta_e_joules"] = report.delta_e_joules;
        result["frequency_hz"] = report.frequency_hz ? Json(*report.frequency_hz) : Json(nullptr);
        result["hubble_per_second"] = report.hubble_per_second;
        result["planck_joule_seconds"] = report.planck_joule_seconds;
        doc["result"] = std::move(result);
        auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
        doc["wall_time_ms"] = flags.reproducible ? 0.0 : elapsed.count();
        emit(doc, format, out);
        return kExitOk;
    } catch (const CommandFailure &failure) {
        return finish_failure(std::move(doc), failure, format, "", out, err);
    }
}

bool truthy(const char *value) {
    if (value == nullptr) {
        return false;
    }
    std::string v(value);
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    return v == "1" || v == "true" || v == "yes" || v == "on";
}

}  // namespace

Environment Environment::from_process() {
    Environment env;
    if (const char *backend = std::getenv(kBackendEnv); backend != nullptr && *backend != '\0') {
        env.default_backend = backend;
    }
    env.force_system_entropy = truthy(std::getenv(kSystemEntropyEnv));
    return env;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err, const Environment &env) {
    CLI::App app{"vqpu: run QASM circuits on virtual quantum processors"};
    app.name(args.empty() ? "vqpu" : args[0]);
    app.require_subcommand(1);
    const std::vector<std::string> formats{"json", "text"};

    RunFlags run_flags;
    auto *run_cmd = app.add_subcommand("run", "Execute a QASM circuit");
    run_cmd->add_option("file", run_flags.file, "QASM source file")->required();
    run_cmd->add_option("--backend", run_flags.backend, "Backend id (default vqpu0, or $VQPU_BACKEND)");
    run_cmd->add_option("--shots", run_flags.shots, "Number of shots")->capture_default_str();
    run_cmd->add_option("--seed", run_flags.seed, "Master seed for measurement randomness");
    run_cmd->add_option("--precision", run_flags.precision, "full | fixed:B")->capture_default_str();
    run_cmd->add_option("--mode", run_flags.mode, "sampled | aqic | dual")
        ->check(CLI::IsMember({"sampled", "aqic", "dual"}))
        ->capture_default_str();
    run_cmd->add_option("--format", run_flags.format, "json | text")
        ->check(CLI::IsMember(formats))
        ->capture_default_str();
    run_cmd->add_option("--init", run_flags.init, "Per-qubit Bloch angles 'theta,phi;theta,phi;...' in radians");
    run_cmd->add_option("--workers", run_flags.workers, "Shot worker threads (0 = hardware concurrency)");
    run_cmd->add_flag("--reproducible", run_flags.reproducible, "Report wall_time_ms as 0 for byte-stable output");

    ValidateFlags validate_flags;
    auto *validate_cmd = app.add_subcommand("validate", "Check a QASM file and report diagnostics");
    validate_cmd->add_option("file", validate_flags.file, "QASM source file")->required();
    validate_cmd->add_option("--format", validate_flags.format, "json | text")
        ->check(CLI::IsMember(formats))
        ->capture_default_str();

    ResolveFlags resolve_flags;
    auto *resolve_cmd = app.add_subcommand("resolve", "Distinguishable-state count and bit width of a qubit");
    auto *frequency = resolve_cmd->add_option("--frequency", resolve_flags.frequency, "Transition frequency in Hz");
    auto *delta_e = resolve_cmd->add_option("--delta-e", resolve_flags.delta_e, "Energy gap in joules");
    frequency->excludes(delta_e);
    resolve_cmd->add_option("--hubble", resolve_flags.hubble, "Hubble constant in 1/s")->capture_default_str();
    resolve_cmd->add_option("--format", resolve_flags.format, "json | text")
        ->check(CLI::IsMember(formats))
        ->capture_default_str();
    resolve_cmd->add_flag("--reproducible", resolve_flags.reproducible, "Report wall_time_ms as 0");

    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (run_cmd->parsed()) {
            return cmd_run(run_flags, env, out, err);
        }
        if (validate_cmd->parsed()) {
            return cmd_validate(validate_flags, out, err);
        }
        if (!resolve_flags.frequency && !resolve_flags.delta_e) {
            err << "resolve: one of --frequency or --delta-e is required\n";
            return kExitInvalid;
        }
        return cmd_resolve(resolve_flags, out, err);
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

}  // namespace vqpu::cli
