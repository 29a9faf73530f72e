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

#ifndef VQPU_REGISTRY_H_
#define VQPU_REGISTRY_H_

#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "vqpu/backend.h"

namespace vqpu {

/// Backends by id. Lookups may run concurrently; registration takes an
/// exclusive lock.
class BackendRegistry {
   public:
    /// Throws Error(DuplicateBackend) if the id is taken, Error(InvalidConfig)
    /// for an empty id, max_qubits == 0 or a null executor.
    void register_backend(BackendDescriptor descriptor, std::shared_ptr<Executor> executor);
    void register_backend(BackendEntry entry) {
        register_backend(std::move(entry.descriptor), std::move(entry.executor));
    }

    /// Sorted by id.
    std::vector<BackendDescriptor> list_backends() const;

    std::optional<BackendEntry> find(const std::string &id) const;

   private:
    mutable std::shared_mutex mutex_;
    std::map<std::string, BackendEntry> entries_;
};

/// Adds "vqpu0" (state vector) and "reference-oracle".
void register_default_backends(BackendRegistry &registry, std::size_t max_qubits = kDefaultMaxQubits);

}  // namespace vqpu

#endif  // VQPU_REGISTRY_H_
