// Copyright 2026 The textaug Authors
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
//
// End-to-end checks of the installed command line, driven as a subprocess.
// The binary path arrives via the TEXTAUG_CLI_BIN environment variable.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "support/fixtures.hpp"
#include "textaug/corpus.hpp"
#include "textaug/datagen.hpp"

using namespace textaug;
using testing::TempDir;
using testing::read_file;
using testing::write_file;

namespace {

namespace fs = std::filesystem;

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

const char* cli_bin() {
  const char* bin = std::getenv("TEXTAUG_CLI_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "TEXTAUG_CLI_BIN must point at the binary");
  return bin;
}

CliResult run_cli(const std::string& args, const fs::path& workdir) {
  const std::string out_file = (workdir / ".stdout").string();
  const std::string err_file = (workdir / ".stderr").string();
  const std::string command = "cd '" + workdir.string() + "' && '" +
                              std::string(cli_bin()) + "' " + args + " > '" +
                              out_file + "' 2> '" + err_file + "'";
  const int status = std::system(command.c_str());
  CliResult result;
  result.exit_code = WEXITSTATUS(status);
  result.out = read_file(out_file);
  result.err = read_file(err_file);
  return result;
}

// One hundred documents plus matching resources, shared across cases.
struct CliWorld {
  TempDir tmp{"cli"};

  CliWorld() {
    DemoSpec spec = news_demo_spec();
    spec.docs = 100;
    spec.clusters_per_class = 8;
    spec.shared_clusters = 10;
    const DemoWorld world = make_demo_world(spec);
    write_dataset_csv(world.dataset, tmp.file("data.csv"));
    write_wndb(world.clusters, (tmp.path() / "wordnet").string());
    write_embeddings_text(world, tmp.file("vectors.txt"));
    write_mock_dict(world.clusters, tmp.file("dict.json"));
    write_jsonl_file(tmp.file("data.jsonl"), world.dataset);
  }
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("augment synonym --n 5 yields six lines per input record") {
  CliWorld world;
  const CliResult result = run_cli(
      "augment --input data.csv --method synonym --n 5 --wordnet wordnet "
      "--output aug.jsonl",
      world.tmp.path());
  CHECK(result.exit_code == 0);
  CHECK(result.err.find("seed: 42") != std::string::npos);
  CHECK(result.err.find("originals: 100 augmented: 500") != std::string::npos);

  const std::string output = read_file(world.tmp.file("aug.jsonl"));
  std::size_t lines = 0;
  for (const char c : output) lines += c == '\n' ? 1 : 0;
  CHECK(lines == 600);
}

TEST_CASE("augment identity --n 0 reproduces the input byte for byte") {
  CliWorld world;
  const CliResult result = run_cli(
      "augment --input data.jsonl --method identity --n 0 --output copy.jsonl",
      world.tmp.path());
  CHECK(result.exit_code == 0);
  CHECK(read_file(world.tmp.file("copy.jsonl")) ==
        read_file(world.tmp.file("data.jsonl")));
}

TEST_CASE("augment reruns are byte-identical for a fixed seed") {
  CliWorld world;
  const std::string args =
      "augment --input data.csv --method embedding --n 3 --runs 2 "
      "--embeddings vectors.txt --seed 7 --output ";
  CHECK(run_cli(args + "a.jsonl", world.tmp.path()).exit_code == 0);
  CHECK(run_cli(args + "b.jsonl", world.tmp.path()).exit_code == 0);
  const std::string a = read_file(world.tmp.file("a.jsonl"));
  CHECK_FALSE(a.empty());
  CHECK(a == read_file(world.tmp.file("b.jsonl")));
}

TEST_CASE("augment failure paths use the documented exit codes") {
  CliWorld world;
  // Missing resource: runtime error, exit 2, message names the path.
  const CliResult missing = run_cli(
      "augment --input data.csv --method embedding --embeddings nope.txt "
      "--output x.jsonl",
      world.tmp.path());
  CHECK(missing.exit_code == 2);
  CHECK(missing.err.find("nope.txt") != std::string::npos);
  CHECK_FALSE(fs::exists(world.tmp.file("x.jsonl")));

  // Unknown method: usage error, exit 1, names the valid choices.
  const CliResult method = run_cli(
      "augment --input data.csv --method sorcery --output x.jsonl",
      world.tmp.path());
  CHECK(method.exit_code == 1);
  CHECK(method.err.find("synonym") != std::string::npos);

  // Unknown flag: usage error from the parser.
  const CliResult flag = run_cli(
      "augment --input data.csv --method identity --output x.jsonl --frobnicate",
      world.tmp.path());
  CHECK(flag.exit_code == 1);

  // Bad seed string.
  const CliResult seed = run_cli(
      "augment --input data.csv --method identity --output x.jsonl --seed soon",
      world.tmp.path());
  CHECK(seed.exit_code == 1);
}

TEST_CASE("train then evaluate round-trips a model bundle") {
  CliWorld world;
  const CliResult trained = run_cli(
      "train --input data.csv --model softmax_tfidf --epochs 5 --val-size 20 "
      "--model-out model.json --log-out log.csv",
      world.tmp.path());
  CHECK(trained.exit_code == 0);
  CHECK(trained.out.find("train_error=") != std::string::npos);
  CHECK(fs::exists(world.tmp.file("model.json")));
  CHECK(fs::exists(world.tmp.file("model.json.repr.json")));
  CHECK(fs::exists(world.tmp.file("log.csv")));
  const std::string log = read_file(world.tmp.file("log.csv"));
  CHECK(log.find("epoch,train_loss,train_error,val_loss,val_error") == 0);

  const CliResult eval = run_cli(
      "evaluate --input data.csv --model model.json", world.tmp.path());
  CHECK(eval.exit_code == 0);
  CHECK(eval.out.find("n=100") != std::string::npos);
  CHECK(eval.out.find("error=") != std::string::npos);

  // Determinism: retraining under the same seed gives identical bytes.
  const CliResult again = run_cli(
      "train --input data.csv --model softmax_tfidf --epochs 5 --val-size 20 "
      "--model-out model2.json --log-out log2.csv",
      world.tmp.path());
  CHECK(again.exit_code == 0);
  CHECK(read_file(world.tmp.file("model.json")) ==
        read_file(world.tmp.file("model2.json")));
  CHECK(read_file(world.tmp.file("log.csv")) ==
        read_file(world.tmp.file("log2.csv")));
}

TEST_CASE("train and evaluate work over averaged embeddings") {
  CliWorld world;
  const CliResult trained = run_cli(
      "train --input data.csv --model mlp_embedavg --embeddings vectors.txt "
      "--epochs 4 --hidden 8 --val-size 20 --model-out mlp.json",
      world.tmp.path());
  CHECK(trained.exit_code == 0);
  const CliResult eval =
      run_cli("evaluate --input data.csv --model mlp.json", world.tmp.path());
  CHECK(eval.exit_code == 0);
  CHECK(eval.out.find("loss=") != std::string::npos);
}

TEST_CASE("augment rtt with the mock backend round-trips the corpus") {
  CliWorld world;
  const CliResult result = run_cli(
      "augment --input data.csv --method rtt --n 2 --backend mock "
      "--mock-dict dict.json --pivot fr --output rtt.jsonl",
      world.tmp.path());
  CHECK(result.exit_code == 0);
  const std::string output = read_file(world.tmp.file("rtt.jsonl"));
  std::size_t lines = 0;
  for (const char c : output) lines += c == '\n' ? 1 : 0;
  CHECK(lines == 300);
  CHECK(output.find("\"method\":\"rtt\"") != std::string::npos);
}

TEST_CASE("experiment runs a config and resumes over its output directory") {
  CliWorld world;
  write_file(world.tmp.file("exp.json"), R"({
  "schema_version": 1,
  "dataset": {"path": "data.csv"},
  "method": "rtt",
  "model": "softmax_tfidf",
  "train_sizes": [40],
  "val_size": 40,
  "n_aug": 2,
  "seeds": [1],
  "epochs": 2,
  "resources": {"mock_dict": "dict.json", "backend": "mock", "pivots": ["fr"]}
})");
  const CliResult first =
      run_cli("experiment --config exp.json --out run1", world.tmp.path());
  CHECK(first.exit_code == 0);
  CHECK(first.err.find("[cell rtt_40_s1]") != std::string::npos);
  CHECK(fs::exists(world.tmp.file("run1/results.csv")));

  const CliResult resumed =
      run_cli("experiment --config exp.json --out run1", world.tmp.path());
  CHECK(resumed.exit_code == 0);
  CHECK(resumed.err.find("cached") != std::string::npos);

  // Unknown method in the config file is a usage error naming the choices.
  write_file(world.tmp.file("bad.json"),
             R"({"schema_version": 1, "dataset": {"path": "data.csv"},
                 "method": "warp", "train_sizes": [10], "val_size": 10})");
  const CliResult bad =
      run_cli("experiment --config bad.json --out run2", world.tmp.path());
  CHECK(bad.exit_code == 1);
  CHECK(bad.err.find("embedding+mixup") != std::string::npos);
}

TEST_CASE("inspect summarizes resources consistently") {
  CliWorld world;
  const CliResult wndb = run_cli("inspect wordnet", world.tmp.path());
  CHECK(wndb.exit_code == 0);
  const SynonymLexicon lexicon =
      parse_wndb((world.tmp.path() / "wordnet").string());
  CHECK(wndb.out.find("noun lemmas: " +
                      std::to_string(lexicon.lemma_count(Pos::kNoun))) !=
        std::string::npos);

  const CliResult emb = run_cli("inspect vectors.txt", world.tmp.path());
  CHECK(emb.exit_code == 0);
  // Header line of the generated file declares the same counts.
  std::ifstream header_in(world.tmp.file("vectors.txt"));
  std::size_t vocab = 0, dim = 0;
  header_in >> vocab >> dim;
  CHECK(emb.out.find("vocab: " + std::to_string(vocab)) != std::string::npos);
  CHECK(emb.out.find("dim: " + std::to_string(dim)) != std::string::npos);

  const CliResult data = run_cli("inspect data.csv", world.tmp.path());
  CHECK(data.exit_code == 0);
  CHECK(data.out.find("records: 100") != std::string::npos);

  const CliResult missing = run_cli("inspect ghost.bin", world.tmp.path());
  CHECK(missing.exit_code == 2);
}

TEST_CASE("inspect reports the best method over a results file") {
  CliWorld world;
  write_file(world.tmp.file("results.csv"),
             "method,train_size,n_aug,seed,final_val_error,best_val_error,"
             "epochs,status,error\n"
             "none,100,5,1,0.4,0.4,3,ok,\n"
             "none,100,5,2,0.5,0.5,3,ok,\n"
             "synonym,100,5,1,0.3,0.3,3,ok,\n"
             "synonym,100,5,2,0.2,0.2,3,ok,\n"
             "rtt,100,5,1,0.9,0.9,3,failed,boom\n");
  const CliResult result = run_cli("inspect results.csv", world.tmp.path());
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("cells: 5 (failed: 1)") != std::string::npos);
  CHECK(result.out.find("best method: synonym (0.25)") != std::string::npos);
}

}  // TEST_SUITE
