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

#include "textaug/augment.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace textaug;
using testing::TempDir;

TEST_SUITE("augmenters") {

TEST_CASE("sample_geometric at p=1 is always one") {
  RngStream rng(1);
  for (int i = 0; i < 1000; ++i) REQUIRE(sample_geometric(1.0, rng) == 1);
}

TEST_CASE("sample_geometric rejects bad probabilities") {
  RngStream rng(1);
  CHECK_THROWS_AS(sample_geometric(0.0, rng), InvalidConfig);
  CHECK_THROWS_AS(sample_geometric(1.5, rng), InvalidConfig);
  CHECK_THROWS_AS(sample_geometric(-0.1, rng), InvalidConfig);
}

TEST_CASE("sample_geometric matches the first-success law at p=0.5") {
  RngStream rng(20260501);
  const std::size_t draws = 100000;
  std::map<std::size_t, std::size_t> histogram;
  double sum = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    const std::size_t r = sample_geometric(0.5, rng);
    REQUIRE(r >= 1);
    histogram[r] += 1;
    sum += static_cast<double>(r);
  }
  const double p1 = static_cast<double>(histogram[1]) / draws;
  const double p2 = static_cast<double>(histogram[2]) / draws;
  CHECK(p1 > 0.49);
  CHECK(p1 < 0.51);
  CHECK(p2 > 0.24);
  CHECK(p2 < 0.26);
  const double mean = sum / draws;
  CHECK(mean > 1.97);
  CHECK(mean < 2.03);
}

TEST_CASE("sample_geometric passes a chi-square goodness-of-fit test") {
  RngStream rng(7);
  const std::size_t draws = 100000;
  const double p = 0.5;
  // Bins n = 1..8 plus a tail bin.
  std::vector<double> observed(9, 0.0);
  for (std::size_t i = 0; i < draws; ++i) {
    const std::size_t r = sample_geometric(p, rng);
    observed[std::min<std::size_t>(r, 9) - 1] += 1.0;
  }
  std::vector<double> expected;
  double tail = 1.0;
  for (int n = 1; n <= 8; ++n) {
    const double mass = std::pow(1.0 - p, n - 1) * p;
    expected.push_back(mass * draws);
    tail -= mass;
  }
  expected.push_back(tail * draws);
  double chi2 = 0.0;
  for (std::size_t b = 0; b < observed.size(); ++b) {
    chi2 += (observed[b] - expected[b]) * (observed[b] - expected[b]) /
            expected[b];
  }
  const double p_value = testing::chi_square_p_value(chi2, observed.size() - 1);
  CAPTURE(chi2);
  CHECK(p_value > 0.001);
}

namespace {

struct MiniWorld {
  TempDir tmp{"aug"};
  SynonymLexicon lexicon;
  testing::RefWordnet ref;

  MiniWorld() {
    testing::write_mini_wndb(tmp.path().string());
    lexicon = parse_wndb(tmp.path().string());
    ref = testing::reference_read_wndb(tmp.path().string());
  }
};

}  // namespace

TEST_CASE("synonym_augment leaves text without replaceable words unchanged") {
  MiniWorld world;
  AugmentConfig cfg;
  RngStream rng(5);
  const std::string text = "  Nothing   HERE is known!! ";
  CHECK(synonym_augment(world.lexicon, text, cfg, rng) == text);
}

TEST_CASE("synonym_augment substitutes the first-sense synonym at p=1") {
  MiniWorld world;
  AugmentConfig cfg;
  cfg.p = 1.0;  // forces r = 1 and s = 1
  cfg.pos_filter = {true, false};
  RngStream rng(5);
  // "dog" is the only replaceable token, so position choice is forced too.
  const std::string out =
      synonym_augment(world.lexicon, "the dog barked", cfg, rng);
  const auto expected = world.ref.synonyms("dog", "n");
  REQUIRE_FALSE(expected.empty());
  std::string first = expected.front();
  for (char& c : first) {
    if (c == '_') c = ' ';
  }
  CHECK(out == "the " + first + " barked");
  CHECK(out == "the domestic dog barked");
}

TEST_CASE("synonym_augment preserves token count for single-word lemmas") {
  MiniWorld world;
  AugmentConfig cfg;
  cfg.p = 1.0;
  cfg.pos_filter = {true, false};
  RngStream rng(5);
  const std::string out =
      synonym_augment(world.lexicon, "my car broke", cfg, rng);
  CHECK(out == "my auto broke");  // first-sense synonym of car
  CHECK(tokenize(out).tokens.size() == 3);
}

TEST_CASE("synonym_augment is deterministic for a fixed stream") {
  MiniWorld world;
  AugmentConfig cfg;
  cfg.p = 0.5;
  const std::string text = "the dog can run and bark near the car";
  RngStream a(123), b(123);
  CHECK(synonym_augment(world.lexicon, text, cfg, a) ==
        synonym_augment(world.lexicon, text, cfg, b));
}

TEST_CASE("synonym_augment draws r and s from clamped geometrics") {
  MiniWorld world;
  AugmentConfig cfg;
  cfg.p = 0.5;
  // With many draws, both dog-sense-1 and dog-sense-2 synonyms appear, and
  // substitutions never leave the synonym lists.
  std::set<std::string> seen;
  RngStream rng(9);
  const auto valid = [&] {
    std::set<std::string> v{"dog"};
    for (const auto& s : world.ref.synonyms("dog", "n")) {
      std::string surface = s;
      for (char& c : surface) {
        if (c == '_') c = ' ';
      }
      v.insert(surface);
    }
    return v;
  }();
  for (int i = 0; i < 300; ++i) {
    const std::string out =
        synonym_augment(world.lexicon, "dog", cfg, rng);
    seen.insert(out);
    REQUIRE(valid.count(out) == 1);
  }
  CHECK(seen.size() >= 3);  // replacement variety across draws
}

TEST_CASE("embedding_augment leaves all-OOV text unchanged") {
  const EmbeddingModel model({"alpha", "beta"}, {1, 0, 0, 1}, 2);
  AugmentConfig cfg;
  RngStream rng(3);
  const std::string text = "Totally   unknown WORDS?";
  CHECK(embedding_augment(model, text, cfg, rng) == text);
}

TEST_CASE("embedding_augment samples neighbors by clamped similarity") {
  // Vectors chosen so "query" has three neighbors with distinct positive
  // similarities and one negative-similarity word that must never appear.
  const std::vector<std::string> vocab{"query", "near", "mid", "far", "anti"};
  const std::vector<float> matrix{
      1.0f, 0.0f,    // query
      0.97f, 0.24f,  // near
      0.71f, 0.71f,  // mid
      0.26f, 0.97f,  // far
      -1.0f, 0.1f,   // anti
  };
  const EmbeddingModel model(vocab, matrix, 2);
  AugmentConfig cfg;
  cfg.top_k = 4;
  cfg.runs = 1;

  // Expected distribution from the independent brute-force ranking.
  const auto ranked =
      testing::brute_force_neighbors(vocab, matrix, 2, "query", 4);
  double total = 0.0;
  std::map<std::string, double> expected;
  for (const auto& [word, sim] : ranked) total += std::max(sim, 0.0);
  for (const auto& [word, sim] : ranked) {
    expected[word] = std::max(sim, 0.0) / total;
  }

  RngStream rng(31);
  std::map<std::string, double> observed;
  const int trials = 100000;
  for (int i = 0; i < trials; ++i) {
    observed[embedding_augment(model, "query", cfg, rng)] += 1.0;
  }
  for (auto& [word, count] : observed) count /= trials;
  CHECK(observed["anti"] == 0.0);
  for (const auto& [word, share] : expected) {
    CAPTURE(word);
    CHECK(std::abs(observed[word] - share) < 0.01);
  }
}

TEST_CASE("embedding_augment applies runs replacements sequentially") {
  // Chain geometry: nearest(a)=b, nearest(b)=c, nearest(c)=d.
  constexpr double kPi = 3.14159265358979323846;
  auto at = [&](double degrees) {
    return std::pair<float, float>{
        static_cast<float>(std::cos(degrees * kPi / 180.0)),
        static_cast<float>(std::sin(degrees * kPi / 180.0))};
  };
  std::vector<std::string> vocab{"a", "b", "c", "d"};
  std::vector<float> matrix;
  for (const double deg : {0.0, 40.0, 75.0, 105.0}) {
    const auto [x, y] = at(deg);
    matrix.push_back(x);
    matrix.push_back(y);
  }
  const EmbeddingModel model(vocab, matrix, 2);
  AugmentConfig cfg;
  cfg.top_k = 1;
  cfg.runs = 3;
  RngStream rng(1);
  CHECK(embedding_augment(model, "a", cfg, rng) == "d");
}

TEST_CASE("embedding_augment only introduces vocabulary words") {
  const std::vector<std::string> vocab{"one", "two", "three", "four"};
  const std::vector<float> matrix{1, 0, 0.9f, 0.1f, 0, 1, 0.5f, 0.5f};
  const EmbeddingModel model(vocab, matrix, 2);
  AugmentConfig cfg;
  cfg.runs = 4;
  cfg.top_k = 3;
  RngStream rng(17);
  const std::set<std::string> allowed{"one", "two",  "three", "four",
                                      "oov1", "oov2"};
  for (int i = 0; i < 200; ++i) {
    const std::string out =
        embedding_augment(model, "one oov1 two oov2", cfg, rng);
    for (const auto& token : tokenize(out).tokens) {
      REQUIRE(allowed.count(token) == 1);
    }
  }
}

TEST_CASE("augmenter wrappers are pure functions of the stream state") {
  MiniWorld world;
  const EmbeddingModel model({"a", "b", "c"}, {1, 0, 0.9f, 0.1f, 0, 1}, 2);
  AugmentConfig cfg;
  const auto synonym = make_synonym_augmenter(world.lexicon, cfg);
  const auto embedding = make_embedding_augmenter(model, cfg);
  const auto identity = make_identity_augmenter();
  const std::string text = "the dog can run a b c";
  for (const Augmenter* augmenter :
       {synonym.get(), embedding.get(), identity.get()}) {
    RngStream s1(42), s2(42);
    CHECK(augmenter->augment(text, s1) == augmenter->augment(text, s2));
  }
  RngStream rng(0);
  CHECK(identity->augment("abc", rng) == "abc");
  CHECK(identity->augment("", rng).empty());
}

namespace {

class SecondLegEmpty final : public TranslationBackend {
 public:
  std::string translate(const std::string& text, const std::string& source,
                        const std::string&) override {
    return source == "en" ? text : "";
  }
  std::string name() const override { return "second-leg-empty"; }
};

class FlakyBackend final : public TranslationBackend {
 public:
  explicit FlakyBackend(int failures) : remaining_(failures) {}
  std::string translate(const std::string& text, const std::string&,
                        const std::string&) override {
    if (remaining_ > 0) {
      --remaining_;
      throw RateLimited("throttled");
    }
    return text;
  }
  std::string name() const override { return "flaky"; }

 private:
  int remaining_;
};

class BrokenBackend final : public TranslationBackend {
 public:
  std::string translate(const std::string& text, const std::string& source,
                        const std::string&) override {
    if (source != "en") throw Error("pivot service down");
    return text;
  }
  std::string name() const override { return "broken"; }
};

}  // namespace

TEST_CASE("rtt_augment round-trips through the backend") {
  IdentityTranslationBackend identity;
  RttAudit audit;
  CHECK(rtt_augment(identity, "hello there", "fr", &audit) == "hello there");
  CHECK(audit.forward_raw == "hello there");
  CHECK(audit.back_raw == "hello there");
}

TEST_CASE("rtt_augment canonicalizes through a dictionary mock") {
  const std::map<std::string, std::string> dict{
      {"good", "bon"}, {"fine", "bon"}, {"morning", "matin"}};
  MockTranslationBackend mock(dict);

  // Oracle: forward via dict, backward via the lexicographically smallest
  // English word per pivot word, built independently here.
  std::map<std::string, std::string> reverse;
  for (const auto& [en, pivot] : dict) {
    if (reverse.find(pivot) == reverse.end()) reverse[pivot] = en;
  }
  auto map_words = [](const std::string& text,
                      const std::map<std::string, std::string>& table) {
    std::istringstream in(text);
    std::string word, out;
    while (in >> word) {
      if (!out.empty()) out += " ";
      const auto it = table.find(word);
      out += it == table.end() ? word : it->second;
    }
    return out;
  };
  const std::string expected =
      map_words(map_words("good morning", dict), reverse);
  CHECK(expected == "fine morning");

  RttAudit audit;
  CHECK(rtt_augment(mock, "good morning", "fr", &audit) == expected);
  CHECK(audit.forward_raw == "bon matin");
}

TEST_CASE("rtt_augment surfaces empty translations with the leg number") {
  SecondLegEmpty backend;
  CHECK_THROWS_AS(rtt_augment(backend, "hello", "fr"), EmptyTranslation);
  try {
    rtt_augment(backend, "hello", "fr");
  } catch (const EmptyTranslation& e) {
    CHECK(e.leg == 2);
  }
}

TEST_CASE("rtt_augment retries rate-limited legs up to the cap") {
  {
    FlakyBackend backend(2);
    CHECK(rtt_augment(backend, "hi", "fr", nullptr, 2) == "hi");
  }
  {
    FlakyBackend backend(3);
    CHECK_THROWS_AS(rtt_augment(backend, "hi", "fr", nullptr, 2), RateLimited);
  }
}

TEST_CASE("rtt_augment wraps backend faults with the failing leg") {
  BrokenBackend backend;
  CHECK_THROWS_AS(rtt_augment(backend, "hi", "fr"), BackendError);
  try {
    rtt_augment(backend, "hi", "fr");
  } catch (const BackendError& e) {
    CHECK(e.leg == 2);
  }
}

TEST_CASE("config validation") {
  AugmentConfig cfg;
  cfg.p = 0.0;
  CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
  cfg.p = 0.5;
  cfg.runs = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
  cfg.runs = 1;
  cfg.top_k = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
  IdentityTranslationBackend backend;
  CHECK_THROWS_AS(make_rtt_augmenter(backend, {}), InvalidConfig);
}

}  // TEST_SUITE
