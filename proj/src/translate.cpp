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

#include "textaug/translate.hpp"

#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

namespace textaug {
namespace {

using nlohmann::json;

// Word-by-word mapping over whitespace-separated tokens; words missing from
// the dictionary pass through unchanged.
std::string map_words(const std::string& text,
                      const std::map<std::string, std::string>& dict) {
  std::istringstream in(text);
  std::string word, out;
  while (in >> word) {
    const auto it = dict.find(word);
    if (!out.empty()) out.push_back(' ');
    out += it == dict.end() ? word : it->second;
  }
  return out;
}

}  // namespace

MockTranslationBackend MockTranslationBackend::from_file(
    const std::string& dict_path) {
  std::ifstream in(dict_path, std::ios::binary);
  if (!in) throw IoError("cannot open mock dictionary " + dict_path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw IoError("bad mock dictionary " + dict_path + ": " + e.what());
  }
  std::map<std::string, std::string> dict;
  for (const auto& [key, value] : j.items()) {
    dict[key] = value.get<std::string>();
  }
  return MockTranslationBackend(std::move(dict));
}

MockTranslationBackend::MockTranslationBackend(
    std::map<std::string, std::string> en_to_pivot)
    : forward_(std::move(en_to_pivot)) {
  // std::map iterates keys in sorted order, so the first insertion per pivot
  // word is the lexicographically smallest English source.
  for (const auto& [en, pivot] : forward_) {
    backward_.emplace(pivot, en);
  }
}

std::string MockTranslationBackend::translate(const std::string& text,
                                              const std::string& source_lang,
                                              const std::string& target_lang) {
  if (source_lang == target_lang) return text;
  if (source_lang == "en") return map_words(text, forward_);
  if (target_lang == "en") return map_words(text, backward_);
  throw BackendError(0, "mock backend only translates to or from 'en' (got " +
                            source_lang + "->" + target_lang + ")");
}

HttpTranslationBackend::HttpTranslationBackend(HttpBackendConfig config)
    : config_(std::move(config)), next_allowed_(std::chrono::steady_clock::now()) {
  if (config_.url.empty()) {
    throw InvalidConfig("http translation backend needs a URL");
  }
}

void HttpTranslationBackend::wait_for_slot() {
  std::chrono::steady_clock::time_point wake;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto now = std::chrono::steady_clock::now();
    wake = std::max(now, next_allowed_);
    const auto interval = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::duration<double>(1.0 / std::max(0.01, config_.requests_per_second)));
    next_allowed_ = wake + interval;
  }
  std::this_thread::sleep_until(wake);
}

std::string HttpTranslationBackend::translate(const std::string& text,
                                              const std::string& source_lang,
                                              const std::string& target_lang) {
  wait_for_slot();

  // Split "http://host:port/path" into client target and path.
  std::string url = config_.url;
  std::string path = "/";
  const auto scheme_end = url.find("://");
  const auto path_start =
      url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
  if (path_start != std::string::npos) {
    path = url.substr(path_start);
    url = url.substr(0, path_start);
  }

  httplib::Client client(url);
  client.set_connection_timeout(config_.timeout_seconds);
  client.set_read_timeout(config_.timeout_seconds);

  json body{{"q", text}, {"source", source_lang}, {"target", target_lang}};
  if (!config_.api_key.empty()) body["api_key"] = config_.api_key;

  const auto res = client.Post(path, body.dump(), "application/json");
  if (!res) {
    throw BackendError(0, "request to " + config_.url + " failed: " +
                              httplib::to_string(res.error()));
  }
  if (res->status == 429) throw RateLimited("HTTP 429 from " + config_.url);
  if (res->status != 200) {
    throw BackendError(0, "HTTP " + std::to_string(res->status) + " from " +
                              config_.url);
  }
  try {
    const json reply = json::parse(res->body);
    return reply.at("translatedText").get<std::string>();
  } catch (const json::exception& e) {
    throw BackendError(0, std::string("unparseable response: ") + e.what());
  }
}

}  // namespace textaug
