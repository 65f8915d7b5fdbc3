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

// Runs every acceptance criterion at its stated tolerance and prints one
// PASS/FAIL line per criterion. Exit status is nonzero if any fails.

#include <fstream>
#include <iostream>
#include <string>

#include "ocrs/acceptance.h"

int main(int argc, char** argv) {
  ocrs::AcceptanceOptions options;
  std::string json_path;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--corpus") options.corpus_dir = argv[i + 1];
    if (flag == "--filter") options.filter = argv[i + 1];
    if (flag == "--seed") options.seed = std::stoull(argv[i + 1]);
    if (flag == "--json") json_path = argv[i + 1];
  }
  const auto results = ocrs::RunAcceptance(options, std::cout);
  if (!json_path.empty()) {
    std::ofstream(json_path) << ocrs::AcceptanceToJson(results).dump(2) << "\n";
  }
  int failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
