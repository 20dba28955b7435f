// Copyright 2026 The sicsched Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// INI-style configuration:
//
//   [system]
//   K = 3
//   Nt = 1
//   Nr = 2
//   L = 10
//   S = 1
//   I0 = 1
//   snr_db = 20        ; or N0 = 0.01 (linear), not both
//   encoding = complex ; real | mixed(2)
//   trials = 1000
//   seed = 1
//
//   [sweep]
//   axis = snr         ; snr | L | K | encoding
//   grid = 0, 5, 10
//   encodings = complex, real
//   metric = mean_sum_capacity
//   target_top = 0.1
//   beta_db = 10
//   mode = lb          ; lb | true
//
// Unknown keys are rejected.

#pragma once

#include <filesystem>
#include <string>

#include "sicsched/experiments.hpp"

namespace sicsched {

/// Throws ConfigError (with the path) on unreadable files, unknown keys or
/// invalid values.
SweepSpec load_sweep_spec(const std::filesystem::path& path);
SweepSpec parse_sweep_spec(const std::string& text);

/// Same file format, [system] section only.
SystemConfig load_system_config(const std::filesystem::path& path);

}  // namespace sicsched
