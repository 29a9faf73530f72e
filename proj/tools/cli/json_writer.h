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

#ifndef VQPU_TOOLS_CLI_JSON_WRITER_H_
#define VQPU_TOOLS_CLI_JSON_WRITER_H_

#include <string>

#include "json.hpp"

namespace vqpu::cli {

/// Pretty-prints with two-space indentation, keys in insertion order and
/// every floating-point number at 17 significant digits.
std::string dump_json(const nlohmann::ordered_json &doc);

}  // namespace vqpu::cli

#endif  // VQPU_TOOLS_CLI_JSON_WRITER_H_
