// Copyright 2026 The uprprc Authors
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

#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "uprprc/error.hpp"

namespace uprprc {

struct TranslationRequest {
  std::string lang;
  std::vector<std::string> paragraphs;
};

struct TranslationResponse {
  std::vector<std::string> paragraphs;
};

// Paragraph-preserving translation into English. translate() validates the
// request and rejects any response whose paragraph count differs.
class Translator {
 public:
  virtual ~Translator() = default;

  TranslationResponse translate(const TranslationRequest& request);

 protected:
  virtual TranslationResponse do_translate(const TranslationRequest& request) = 0;
};

class IdentityTranslator final : public Translator {
 protected:
  TranslationResponse do_translate(const TranslationRequest& request) override;
};

// Word-for-word lookup; unknown words pass through unchanged.
class DictionaryTranslator final : public Translator {
 public:
  explicit DictionaryTranslator(std::unordered_map<std::string, std::string> entries);

  // One "source<TAB>target" entry per line.
  static DictionaryTranslator load(const std::filesystem::path& path);

 protected:
  TranslationResponse do_translate(const TranslationRequest& request) override;

 private:
  std::unordered_map<std::string, std::string> entries_;
};

// --- external process protocol -------------------------------------------
//
// Each record is a 4-digit zero-padded decimal byte count, the JSON payload,
// and a newline. Requests are {"lang": ..., "paragraphs": [...]}, responses
// {"paragraphs": [...]}, exchanged one record at a time and in order.

inline constexpr std::size_t kFrameDigits = 4;
inline constexpr std::size_t kMaxFramePayload = 9999;

std::string encode_frame(std::string_view payload);

// Decodes the frame starting at `pos` and advances past it. Returns nullopt
// when `buffer` ends exactly at `pos`; throws ProtocolError on a malformed or
// truncated frame.
std::optional<std::string> decode_frame(std::string_view buffer, std::size_t& pos);

std::string encode_request(std::string_view lang, const std::vector<std::string>& paragraphs);
std::vector<std::string> decode_response(std::string_view payload);

struct ExternalProcessConfig {
  std::string command;                // run through /bin/sh -c
  std::filesystem::path cache_dir;    // empty disables the cache
  std::size_t max_frame_payload = kMaxFramePayload;
};

// Cache layout: <cache_dir>/<lang>/<first two hex digits>/<16 hex digits>.json
// holding {"src": ..., "dst": ...}; the key is the FNV-1a 64 hash of the
// source paragraph.
class TranslationCache {
 public:
  explicit TranslationCache(std::filesystem::path root) : root_(std::move(root)) {}

  std::optional<std::string> get(std::string_view lang, std::string_view paragraph) const;
  void put(std::string_view lang, std::string_view paragraph, std::string_view translation) const;
  std::filesystem::path path_for(std::string_view lang, std::string_view paragraph) const;

 private:
  std::filesystem::path root_;
};

class ExternalProcessTranslator final : public Translator {
 public:
  explicit ExternalProcessTranslator(ExternalProcessConfig config);
  ~ExternalProcessTranslator() override;

  ExternalProcessTranslator(const ExternalProcessTranslator&) = delete;
  ExternalProcessTranslator& operator=(const ExternalProcessTranslator&) = delete;

  // Number of frames exchanged with the child so far.
  std::size_t frames_sent() const { return frames_sent_; }

 protected:
  TranslationResponse do_translate(const TranslationRequest& request) override;

 private:
  class Child;

  std::vector<std::string> exchange(std::string_view lang, const std::vector<std::string>& units);

  ExternalProcessConfig config_;
  std::optional<TranslationCache> cache_;
  std::unique_ptr<Child> child_;
  std::size_t frames_sent_ = 0;
};

std::unique_ptr<Translator> external_process_adapter(ExternalProcessConfig config);

struct TranslatorOptions {
  std::filesystem::path dictionary;  // for "dict"
  std::filesystem::path cache_dir;   // for "external:<cmd>"
};

// Builds a translator from "identity", "dict" or "external:<command>".
std::unique_ptr<Translator> make_translator(std::string_view spec,
                                            const TranslatorOptions& options);

std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace uprprc
