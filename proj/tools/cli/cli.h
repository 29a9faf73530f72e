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

#ifndef VQPU_TOOLS_CLI_CLI_H_
#define VQPU_TOOLS_CLI_CLI_H_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace vqpu::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitIo = 1,
    kExitInvalid = 2,
    kExitInternal = 3,
};

inline constexpr const char *kSchemaVersion = "1";
inline constexpr const char *kBackendEnv = "VQPU_BACKEND";
inline constexpr const char *kSystemEntropyEnv = "VQPU_SYSTEM_ENTROPY";

/// Environment overrides; flags take precedence over these, these over the
/// built-in defaults.
struct Environment {
    std::optional<std::string> default_backend;
    bool force_system_entropy = false;

    static Environment from_process();
};

/// Runs one command line (args[0] is the program name). Everything the tool
/// prints goes to `out` / `err`; the return value is the process exit code.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err,
        const Environment &env = Environment{});

}  // namespace vqpu::cli

#endif  // VQPU_TOOLS_CLI_CLI_H_
