// Copyright 2026 The Authors.
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

#ifndef OCRS_ACCEPTANCE_H_
#define OCRS_ACCEPTANCE_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace ocrs {

struct AcceptanceOptions {
  std::uint64_t seed = 0;
  int workers = 0;
  // Runs only criteria whose tags contain this substring (empty = all).
  std::string filter;
  // Overrides every Monte Carlo trial count when > 0.
  std::int64_t trials = 0;
  double sigma = 3.0;
  // Directory of instance files also covered by the oracle checks.
  std::string corpus_dir;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  std::string tags;
  bool pass = false;
  double seconds = 0.0;
  double limit_seconds = 0.0;
  std::string summary;
  nlohmann::json details;
};

// Runs the acceptance criteria, printing one PASS/FAIL line per criterion
// to `out` as each finishes.
std::vector<CriterionResult> RunAcceptance(const AcceptanceOptions& options,
                                           std::ostream& out);

nlohmann::json AcceptanceToJson(const std::vector<CriterionResult>& results);

}  // namespace ocrs

#endif  // OCRS_ACCEPTANCE_H_
