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

#include "vqpu/registry.h"

#include <mutex>

#include "vqpu/error.h"

namespace vqpu {

void BackendRegistry::register_backend(BackendDescriptor descriptor, std::shared_ptr<Executor> executor) {
    if (descriptor.id.empty() || descriptor.max_qubits == 0 || executor == nullptr) {
        throw Error(ErrorCode::InvalidConfig, "backend needs an id, max_qubits >= 1 and an executor");
    }
    std::unique_lock lock(mutex_);
    std::string id = descriptor.id;
    if (entries_.count(id) != 0) {
        throw Error(ErrorCode::DuplicateBackend, "backend '" + id + "' is already registered");
    }
    entries_.emplace(id, BackendEntry{std::move(descriptor), std::move(executor)});
}

std::vector<BackendDescriptor> BackendRegistry::list_backends() const {
    std::shared_lock lock(mutex_);
    std::vector<BackendDescriptor> out;
    out.reserve(entries_.size());
    for (const auto &[id, entry] : entries_) {
        out.push_back(entry.descriptor);
    }
    return out;
}

std::optional<BackendEntry> BackendRegistry::find(const std::string &id) const {
    std::shared_lock lock(mutex_);
    auto it = entries_.find(id);
    if (it == entries_.end()) {
        return std::nullopt;
    }
    return it->second;
}

void register_default_backends(BackendRegistry &registry, std::size_t max_qubits) {
    registry.register_backend(make_statevector_backend("vqpu0", max_qubits));
    registry.register_backend(make_reference_oracle_backend("reference-oracle"));
}

}  // namespace vqpu
