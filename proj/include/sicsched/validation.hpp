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

// Randomized invariant checks run by `sicsched validate`.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sicsched/experiments.hpp"

namespace sicsched {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationOptions {
    std::uint64_t seed = 1;
    /// Multiplies the default sample counts; 1 is the full suite.
    double scale = 1.0;
    RunOptions run;
};

std::vector<CheckResult> run_validation_suite(const ValidationOptions& opts = {});

}  // namespace sicsched
