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

#include "cli/json_writer.h"

#include <cmath>
#include <cstdio>

namespace vqpu::cli {

namespace {

void write(const nlohmann::ordered_json &node, int depth, std::string &out) {
    const std::string indent(2 * (depth + 1), ' ');
    const std::string closing(2 * depth, ' ');
    switch (node.type()) {
        case nlohmann::ordered_json::value_t::object: {
            if (node.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = node.begin(); it != node.end(); ++it) {
                if (!first) {
                    out += ",\n";
                }
                first = false;
                out += indent + nlohmann::ordered_json(it.key()).dump() + ": ";
                write(it.value(), depth + 1, out);
            }
            out += "\n" + closing + "}";
            return;
        }
        case nlohmann::ordered_json::value_t::array: {
            if (node.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < node.size(); ++i) {
                if (i) {
                    out += ",\n";
                }
                out += indent;
                write(node[i], depth + 1, out);
            }
            out += "\n" + closing + "]";
            return;
        }
        case nlohmann::ordered_json::value_t::number_float: {
            double value = node.get<double>();
            if (!std::isfinite(value)) {
                out += "null";
                return;
            }
            char buffer[32];
            std::snprintf(buffer, sizeof(buffer), "%.17g", value);
            out += buffer;
            return;
        }
        default:
            out += node.dump();
            return;
    }
}

}  // namespace

std::string dump_json(const nlohmann::ordered_json &doc) {
    std::string out;
    write(doc, 0, out);
    out += "\n";
    return out;
}

}  // namespace vqpu::cli
