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
// Translation backends for round-trip augmentation: a deterministic offline
// dictionary mock and an HTTP client. Live services cost money, so every
// test and the default experiment path run against the mock.

#ifndef TEXTAUG_TRANSLATE_HPP_
#define TEXTAUG_TRANSLATE_HPP_

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "textaug/errors.hpp"

namespace textaug {

class TranslationBackend {
 public:
  virtual ~TranslationBackend() = default;
  // Returns the translated text, never silently empty.
  // May throw RateLimited (retryable) or any Error.
  virtual std::string translate(const std::string& text,
                                const std::string& source_lang,
                                const std::string& target_lang) = 0;
  virtual std::string name() const = 0;
};

// Word-level dictionary backend. Loaded from a JSON object
// {"en_word": "pivot_word", ...}. The reverse direction inverts the map; if
// several English words share one pivot word, the lexicographically
// smallest English word is the canonical rendering, which gives the mock a
// paraphrase-like effect on round trips.
class MockTranslationBackend : public TranslationBackend {
 public:
  static MockTranslationBackend from_file(const std::string& dict_path);
  explicit MockTranslationBackend(std::map<std::string, std::string> en_to_pivot);

  std::string translate(const std::string& text, const std::string& source_lang,
                        const std::string& target_lang) override;
  std::string name() const override { return "mock"; }

 private:
  std::map<std::string, std::string> forward_;   // en -> pivot
  std::map<std::string, std::string> backward_;  // pivot -> canonical en
};

// Identity backend: every leg returns its input unchanged.
class IdentityTranslationBackend : public TranslationBackend {
 public:
  std::string translate(const std::string& text, const std::string&,
                        const std::string&) override {
    return text;
  }
  std::string name() const override { return "identity"; }
};

struct HttpBackendConfig {
  std::string url;          // e.g. http://host:port/translate
  std::string api_key;      // empty means unauthenticated
  int timeout_seconds = 10;
  double requests_per_second = 2.0;  // simple client-side rate limit
};

// POSTs {"q": text, "source": ..., "target": ...} as JSON and expects
// {"translatedText": "..."} back. Requests are serialized through the rate
// limiter. HTTP 429 is surfaced as RateLimited.
class HttpTranslationBackend : public TranslationBackend {
 public:
  explicit HttpTranslationBackend(HttpBackendConfig config);

  std::string translate(const std::string& text, const std::string& source_lang,
                        const std::string& target_lang) override;
  std::string name() const override { return "http"; }

 private:
  void wait_for_slot();

  HttpBackendConfig config_;
  std::mutex mutex_;
  std::chrono::steady_clock::time_point next_allowed_;
};

}  // namespace textaug

#endif  // TEXTAUG_TRANSLATE_HPP_
