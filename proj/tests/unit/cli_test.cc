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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/cli.h"
#include "json.hpp"
#include "support/test_support.h"

namespace vqpu::cli {
namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

std::string slurp(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Runs inside tests/golden so echoed file names are relative.
class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        saved_ = std::filesystem::current_path();
        std::filesystem::current_path(testing::data_path("golden"));
    }
    void TearDown() override {
        std::filesystem::current_path(saved_);
    }

    Outcome invoke(std::vector<std::string> args, const Environment &env = {}) {
        args.insert(args.begin(), "vqpu");
        std::ostringstream out, err;
        int code = run(args, out, err, env);
        return {code, out.str(), err.str()};
    }

    void write(const std::string &name, const std::string &text) {
        std::ofstream(scratch(name)) << text;
    }
    std::string scratch(const std::string &name) {
        return (std::filesystem::temp_directory_path() / ("vqpu_cli_" + name)).string();
    }

   private:
    std::filesystem::path saved_;
};

TEST_F(CliTest, GoldenDocuments) {
    struct Case {
        std::vector<std::string> args;
        const char *golden;
        int code;
    };
    const std::vector<Case> cases = {
        {{"run", "bell.qasm", "--mode", "aqic", "--reproducible"}, "run_bell_aqic.json", 0},
        {{"run", "bell.qasm", "--seed", "42", "--shots", "1000", "--reproducible"}, "run_bell_seed42.json", 0},
        {{"run", "bell.qasm", "--seed", "42", "--shots", "1000", "--mode", "dual", "--reproducible", "--format",
          "text"},
         "run_bell_dual.txt", 0},
        {{"resolve", "--frequency", "1e9", "--reproducible"}, "resolve_1ghz.json", 0},
        {{"validate", "bad_index.qasm"}, "validate_bad_index.json", 2},
    };
    for (const auto &c : cases) {
        Outcome o = invoke(c.args);
        EXPECT_EQ(o.code, c.code) << c.golden << "\n" << o.err;
        EXPECT_EQ(o.out, slurp(c.golden)) << c.golden;
    }
}

TEST_F(CliTest, AqicBellDistribution) {
    auto doc = nlohmann::json::parse(invoke({"run", "bell.qasm", "--mode", "aqic"}).out);
    auto dist = doc["result"]["distribution"].get<std::vector<double>>();
    ASSERT_EQ(dist.size(), 4u);
    EXPECT_NEAR(dist[0], 0.5, 1e-15);
    EXPECT_EQ(dist[1], 0.0);
    EXPECT_EQ(dist[2], 0.0);
    EXPECT_NEAR(dist[3], 0.5, 1e-15);
}

TEST_F(CliTest, DualDivergenceAtHundredThousandShots) {
    Outcome o = invoke({"run", "bell.qasm", "--shots", "100000", "--seed", "42", "--mode", "dual"});
    ASSERT_EQ(o.code, 0) << o.err;
    auto doc = nlohmann::json::parse(o.out);
    EXPECT_LE(doc["result"]["divergence"].get<double>(), 0.01);
}

TEST_F(CliTest, DocumentKeyOrder) {
    auto doc = nlohmann::ordered_json::parse(invoke({"run", "bell.qasm", "--seed", "1"}).out);
    std::vector<std::string> keys;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        keys.push_back(it.key());
    }
    EXPECT_EQ(keys, (std::vector<std::string>{"schema_version", "command", "inputs", "result", "seed_used",
                                              "backend_id", "wall_time_ms"}));
}

TEST_F(CliTest, HistogramOrderedByCountThenKey) {
    write("uniform.qasm",
          "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[3];\ncreg c[3];\nh q;\nmeasure q -> c;\n");
    auto doc = nlohmann::ordered_json::parse(invoke({"run", scratch("uniform.qasm"), "--seed", "3"}).out);
    std::vector<std::pair<std::string, std::uint64_t>> entries;
    for (auto it = doc["result"]["histogram"].begin(); it != doc["result"]["histogram"].end(); ++it) {
        entries.emplace_back(it.key(), it.value().get<std::uint64_t>());
    }
    ASSERT_EQ(entries.size(), 8u);
    for (std::size_t i = 1; i < entries.size(); ++i) {
        const auto &a = entries[i - 1];
        const auto &b = entries[i];
        EXPECT_TRUE(a.second > b.second || (a.second == b.second && a.first < b.first));
    }
}

TEST_F(CliTest, ByteIdenticalAcrossRunsAndWorkers) {
    std::optional<std::string> baseline;
    for (const char *workers : {"1", "4", "16", "1"}) {
        Outcome o = invoke({"run", "../corpus/allgates.qasm", "--seed", "77", "--shots", "5000", "--mode", "sampled",
                            "--workers", workers, "--reproducible"});
        ASSERT_EQ(o.code, 0) << o.err;
        if (!baseline) {
            baseline = o.out;
        }
        EXPECT_EQ(o.out, *baseline) << workers;
    }
}

// Every leaf value of the JSON document shows up, in order and with the same
// digits, in the text rendering.
TEST_F(CliTest, TextAndJsonPresentSameNumbers) {
    for (const char *mode : {"sampled", "aqic", "dual"}) {
        std::vector<std::string> common = {"run", "../corpus/ghz3.qasm", "--seed", "5", "--mode", mode,
                                           "--reproducible"};
        Outcome json = invoke(common);
        auto text_args = common;
        text_args.insert(text_args.end(), {"--format", "text"});
        Outcome text = invoke(text_args);
        ASSERT_EQ(json.code, 0);
        ASSERT_EQ(text.code, 0);

        std::vector<std::string> leaves;
        std::function<void(const nlohmann::ordered_json &)> walk = [&](const nlohmann::ordered_json &node) {
            if (node.is_structured()) {
                for (const auto &child : node) {
                    walk(child);
                }
                return;
            }
            if (node.is_number_float()) {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.17g", node.get<double>());
                leaves.emplace_back(buf);
            } else if (node.is_string()) {
                leaves.push_back(node.get<std::string>());
            } else {
                leaves.push_back(node.dump());
            }
        };
        walk(nlohmann::ordered_json::parse(json.out));

        std::vector<std::string> rendered;
        std::istringstream lines(text.out);
        for (std::string line; std::getline(lines, line);) {
            auto colon = line.find(": ");
            if (colon != std::string::npos) {
                rendered.push_back(line.substr(colon + 2));
            }
        }
        EXPECT_EQ(rendered, leaves) << mode;
    }
}

TEST_F(CliTest, ExitCodeMatrix) {
    write("syntax.qasm", "OPENQASM 2.0;\nqreg q[1]\nh q[0];\n");
    write("collapse.qasm", "OPENQASM 2.0;\nqreg q[8];\ncreg c[8];\nh q;\nmeasure q -> c;\n");
    write("midmeasure.qasm", "OPENQASM 2.0;\nqreg q[1];\ncreg c[1];\nmeasure q[0] -> c[0];\nh q[0];\n");
    struct Case {
        std::vector<std::string> args;
        int code;
    };
    const std::vector<Case> cases = {
        {{"--help"}, 0},
        {{"run", "--help"}, 0},
        {{}, 2},
        {{"frobnicate"}, 2},
        {{"run", "missing.qasm"}, 1},
        {{"validate", "missing.qasm"}, 1},
        {{"run", "bad_index.qasm"}, 2},
        {{"run", scratch("syntax.qasm")}, 2},
        {{"run", "bell.qasm", "--backend", "nowhere"}, 2},
        {{"run", "bell.qasm", "--backend", "stub-native", "--mode", "aqic"}, 2},
        {{"run", "bell.qasm", "--backend", "reference-oracle", "--precision", "fixed:16"}, 2},
        {{"run", scratch("midmeasure.qasm"), "--mode", "aqic"}, 2},
        {{"run", "bell.qasm", "--precision", "fixed:99"}, 2},
        {{"run", "bell.qasm", "--precision", "double"}, 2},
        {{"run", "bell.qasm", "--mode", "quantum"}, 2},
        {{"run", "bell.qasm", "--format", "yaml"}, 2},
        {{"run", "bell.qasm", "--shots", "0"}, 2},
        {{"run", "bell.qasm", "--shots", "-5"}, 2},
        {{"run", "bell.qasm", "--init", "0,0"}, 2},
        {{"run", "bell.qasm", "--init", "0,0;4,0"}, 2},
        {{"run", "bell.qasm", "--init", "zero"}, 2},
        {{"run", "bell.qasm", "--unknown-flag"}, 2},
        {{"run", scratch("collapse.qasm"), "--precision", "fixed:4", "--seed", "1"}, 3},
        {{"resolve"}, 2},
        {{"resolve", "--frequency", "1e9", "--delta-e", "1"}, 2},
        {{"resolve", "--frequency", "-1"}, 2},
        {{"resolve", "--frequency", "0"}, 2},
        {{"resolve", "--frequency", "1e9", "--hubble", "0"}, 2},
        {{"resolve", "--delta-e", "abc"}, 2},
        {{"validate", "bell.qasm"}, 0},
        {{"run", "bell.qasm", "--init", "1.5707963267948966,0;0,3.14"}, 0},
    };
    for (const auto &c : cases) {
        for (const char *format : {"json", "text"}) {
            auto args = c.args;
            bool has_format = std::find(args.begin(), args.end(), "--format") != args.end();
            if (!args.empty() && args[0] != "--help" && args[0] != "frobnicate" && !has_format &&
                std::find(args.begin(), args.end(), "--help") == args.end()) {
                args.insert(args.end(), {"--format", format});
            }
            Outcome o = invoke(args);
            std::string joined;
            for (const auto &a : args) {
                joined += a + " ";
            }
            EXPECT_EQ(o.code, c.code) << joined << "\nstdout: " << o.out << "\nstderr: " << o.err;
        }
    }
}

TEST_F(CliTest, FailureDocumentsCarryDiagnostics) {
    Outcome o = invoke({"run", "bad_index.qasm"});
    ASSERT_EQ(o.code, 2);
    auto doc = nlohmann::json::parse(o.out);
    EXPECT_EQ(doc["result"]["status"], "failed");
    ASSERT_EQ(doc["result"]["diagnostics"].size(), 1u);
    EXPECT_EQ(doc["result"]["diagnostics"][0]["line"], 3);
    EXPECT_EQ(doc["result"]["diagnostics"][0]["column"], 3);

    Outcome text = invoke({"run", "bad_index.qasm", "--format", "text"});
    EXPECT_TRUE(text.out.empty());
    EXPECT_NE(text.err.find("bad_index.qasm:3:3: error"), std::string::npos) << text.err;
}

TEST_F(CliTest, ValidateReportsBothErrorsInOrder) {
    write("two.qasm", "OPENQASM 2.0;\nqreg q[2];\nh q[5];\ncx q[0],q[0];\n");
    auto doc = nlohmann::json::parse(invoke({"validate", scratch("two.qasm")}).out);
    auto diags = doc["result"]["diagnostics"];
    ASSERT_EQ(diags.size(), 2u);
    EXPECT_EQ(diags[0]["line"], 3);
    EXPECT_EQ(diags[1]["line"], 4);

    auto ok = nlohmann::json::parse(invoke({"validate", "bell.qasm"}).out);
    EXPECT_TRUE(ok["result"]["diagnostics"].empty());
}

TEST_F(CliTest, ResolveGroundState) {
    char delta[64];
    std::snprintf(delta, sizeof delta, "%.17g", 6.62607015e-34 * 2.27e-18);
    Outcome o = invoke({"resolve", "--delta-e", delta});
    ASSERT_EQ(o.code, 0) << o.err;
    auto doc = nlohmann::json::parse(o.out);
    EXPECT_NEAR(doc["result"]["quanta_count"].get<double>(), 1.0, 1e-12);
    EXPECT_EQ(doc["result"]["min_bits"], 0);
}

TEST_F(CliTest, EnvironmentDefaultsAndPrecedence) {
    Environment env;
    env.default_backend = "reference-oracle";
    auto from_env = nlohmann::json::parse(invoke({"run", "bell.qasm", "--seed", "1"}, env).out);
    EXPECT_EQ(from_env["backend_id"], "reference-oracle");
    auto from_flag = nlohmann::json::parse(invoke({"run", "bell.qasm", "--seed", "1", "--backend", "vqpu0"}, env).out);
    EXPECT_EQ(from_flag["backend_id"], "vqpu0");

    Environment entropy;
    entropy.force_system_entropy = true;
    auto sys = nlohmann::json::parse(invoke({"run", "bell.qasm"}, entropy).out);
    EXPECT_TRUE(sys["seed_used"].is_null());
    auto seeded = nlohmann::json::parse(invoke({"run", "bell.qasm", "--seed", "9"}, entropy).out);
    EXPECT_EQ(seeded["seed_used"], 9);

    auto drawn = nlohmann::json::parse(invoke({"run", "bell.qasm"}).out);
    EXPECT_TRUE(drawn["seed_used"].is_number_unsigned());
}

TEST_F(CliTest, InitAnglesEchoedAndApplied) {
    write("one.qasm", "OPENQASM 2.0;\nqreg q[1];\ncreg c[1];\nmeasure q[0] -> c[0];\n");
    auto doc = nlohmann::json::parse(
        invoke({"run", scratch("one.qasm"), "--mode", "aqic", "--init", "2.0943951023931953, 0"}).out);
    EXPECT_NEAR(doc["result"]["distribution"][0].get<double>(), 0.25, 1e-15);
    EXPECT_EQ(doc["inputs"]["init"][0][0].get<double>(), 2.0943951023931953);
}

}  // namespace
}  // namespace vqpu::cli
