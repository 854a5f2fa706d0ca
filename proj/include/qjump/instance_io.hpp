// Copyright 2026 The Qjump Authors
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

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "qjump/ising.hpp"

namespace qjump {

// Instance files are JSON:
//   {"format": "qjump-instance", "version": 1, "n": N,
//    "edges": [[j, k, J], ...], "h": [...], "metadata": {...}}
// Doubles are written with shortest round-trip precision.

std::string serialize_instance(const IsingInstance& inst);
/// Throws ParseError naming the offending field (or byte offset for syntax errors).
IsingInstance parse_instance(std::string_view text);

void save_instance(const IsingInstance& inst, const std::filesystem::path& path);
IsingInstance load_instance(const std::filesystem::path& path);

}  // namespace qjump
