// Copyright 2026 The collide1d Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The acceptance suite shared by `collide1d check` and the acceptance test.

#pragma once

#include <string>
#include <vector>

namespace collide1d {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double seconds = 0.0;
  double budget_seconds = 0.0;  // runtime limit, 0 when none
  std::vector<std::string> details;  // measured values against thresholds
};

/// Number of criteria, ids 1..count.
int acceptance_count() noexcept;

/// Runs one criterion. Exceptions inside a criterion count as failure.
CriterionResult run_criterion(int id);

/// Runs the selected ids (all when empty), in order.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids = {});

/// `PASS [3] coherent-three-way (12.3 s / 30 s): ...` on one line.
std::string summary_line(const CriterionResult& r);

}  // namespace collide1d
