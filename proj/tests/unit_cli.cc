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

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

const std::string kCli = OCRS_CLI_PATH;
const std::string kCorpus = OCRS_CORPUS_DIR;

int Run(const std::string& args) {
  const int status = std::system((kCli + " " + args + " >/dev/null 2>&1").c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

fs::path Scratch() {
  const fs::path dir = fs::temp_directory_path() / "ocrs_cli_test";
  fs::create_directories(dir);
  return dir;
}

fs::path WriteFile(const std::string& name, const std::string& body) {
  const fs::path p = Scratch() / name;
  std::ofstream(p) << body;
  return p;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("usage errors exit with 2") {
    CHECK(Run("--help") == 0);
    CHECK(Run("") == 2);
    CHECK(Run("run --bogus") == 2);
    CHECK(Run("run --instance " + kCorpus + "/rank1_pair.json --scheme nope") == 2);
    CHECK(Run("run --instance /no/such/file.json") == 2);
    CHECK(Run("solve-exante --instance " + WriteFile("bad.json", "{not json").string()) == 2);
    CHECK(Run("run --instance " + kCorpus + "/hat2.json --scheme adversarial --order 0,0,1,2,3") == 2);
  }

  TEST_CASE("infeasible point exits with 3") {
    const fs::path p = WriteFile(
        "outside.json",
        R"({"v":1,"matroid":{"kind":"uniform","n":2,"rank":1},"model":"bernoulli",)"
        R"("p":[1,1],"y":[1,1],"x":[0.7,0.7]})");
    CHECK(Run("solve-exante --instance " + p.string()) == 3);
  }

  TEST_CASE("rank-1 scheme on a rank-2 point exits with 4") {
    CHECK(Run("run --instance " + kCorpus + "/uniform3_rank2.json --scheme rank1-ocrs") == 4);
  }

  TEST_CASE("successful commands") {
    const fs::path out = Scratch() / "sel.csv";
    CHECK(Run("run --instance " + kCorpus + "/rank1_pair.json --scheme rank1-ocrs --format csv --out " +
              out.string()) == 0);
    const std::string csv = Slurp(out);
    CHECK(csv.rfind("element,x_i,p_select,mode,se,trials", 0) == 0);

    const fs::path cache = Scratch() / "cache";
    fs::remove_all(cache);
    CHECK(Run("solve-exante --instance " + kCorpus + "/hat2.json --cache-dir " + cache.string()) == 0);
    CHECK(std::distance(fs::directory_iterator(cache), fs::directory_iterator()) == 1);
    CHECK(Run("solve-exante --instance " + kCorpus + "/hat2.json --cache-dir " + cache.string()) == 0);

    CHECK(Run("run --instance " + kCorpus + "/hat2.json --scheme adversarial --trials 20000 --seed 3") == 0);
    CHECK(Run("build-lp-ocrs --instance " + kCorpus + "/rank1_pair.json --mode fixed") == 0);
    CHECK(Run("build-lp-ocrs --instance " + kCorpus + "/uniform_inv_n5.json --mode random") == 0);
  }

  TEST_CASE("traces are written one per line") {
    const fs::path traces = Scratch() / "traces.jsonl";
    CHECK(Run("run --instance " + kCorpus + "/rank1_pair.json --scheme adversarial --trials 50 --dump-traces " +
              traces.string()) == 0);
    const std::string body = Slurp(traces);
    CHECK(std::count(body.begin(), body.end(), '\n') == 50);
  }

  TEST_CASE("same seed gives identical reports") {
    const fs::path a = Scratch() / "a.json", b = Scratch() / "b.json";
    const std::string cmd = "run --instance " + kCorpus +
                            "/graphic_seed1.json --scheme random-order --trials 5000 --seed 4 --out ";
    CHECK(Run(cmd + a.string()) == 0);
    CHECK(Run(cmd + b.string() + " --workers 1") == 0);
    CHECK(Slurp(a) == Slurp(b));
  }
}
