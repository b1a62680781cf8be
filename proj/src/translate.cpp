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

#include "uprprc/translate.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "uprprc/unicode.hpp"

namespace uprprc {

using nlohmann::json;

namespace {

std::string dump(const json& j) {
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

}  // namespace

TranslationResponse Translator::translate(const TranslationRequest& request) {
  if (request.paragraphs.empty()) throw InvalidRequest("translation request has no paragraphs");
  for (const auto& p : request.paragraphs)
    if (p.empty()) throw InvalidRequest("translation request contains an empty paragraph");
  auto response = do_translate(request);
  if (response.paragraphs.size() != request.paragraphs.size()) {
    throw LengthMismatch("translator returned " + std::to_string(response.paragraphs.size()) +
                         " paragraphs for " + std::to_string(request.paragraphs.size()));
  }
  return response;
}

TranslationResponse IdentityTranslator::do_translate(const TranslationRequest& request) {
  return TranslationResponse{request.paragraphs};
}

DictionaryTranslator::DictionaryTranslator(std::unordered_map<std::string, std::string> entries)
    : entries_(std::move(entries)) {}

DictionaryTranslator DictionaryTranslator::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw AdapterUnavailable("cannot open dictionary " + path.string());
  std::unordered_map<std::string, std::string> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto tab = line.find('\t');
    if (tab == std::string::npos) continue;
    entries.insert_or_assign(line.substr(0, tab), line.substr(tab + 1));
  }
  return DictionaryTranslator(std::move(entries));
}

TranslationResponse DictionaryTranslator::do_translate(const TranslationRequest& request) {
  TranslationResponse response;
  for (const auto& para : request.paragraphs) {
    std::string out;
    std::istringstream words(para);
    std::string word;
    while (words >> word) {
      if (!out.empty()) out += ' ';
      auto it = entries_.find(word);
      if (it == entries_.end()) it = entries_.find(unicode::fold_case(word));
      out += it == entries_.end() ? word : it->second;
    }
    response.paragraphs.push_back(std::move(out));
  }
  return response;
}

std::string encode_frame(std::string_view payload) {
  if (payload.size() > kMaxFramePayload)
    throw ProtocolError("frame payload of " + std::to_string(payload.size()) + " bytes exceeds limit");
  char prefix[kFrameDigits + 1];
  std::snprintf(prefix, sizeof prefix, "%04zu", payload.size());
  std::string out(prefix, kFrameDigits);
  out.append(payload);
  out += '\n';
  return out;
}

std::optional<std::string> decode_frame(std::string_view buffer, std::size_t& pos) {
  if (pos == buffer.size()) return std::nullopt;
  if (buffer.size() - pos < kFrameDigits) throw ProtocolError("truncated frame prefix");
  std::size_t length = 0;
  for (std::size_t i = 0; i < kFrameDigits; ++i) {
    const char c = buffer[pos + i];
    if (c < '0' || c > '9') throw ProtocolError("frame prefix is not decimal");
    length = length * 10 + static_cast<std::size_t>(c - '0');
  }
  const std::size_t start = pos + kFrameDigits;
  if (buffer.size() - start < length + 1) throw ProtocolError("truncated frame payload");
  if (buffer[start + length] != '\n') throw ProtocolError("frame not terminated by newline");
  pos = start + length + 1;
  return std::string(buffer.substr(start, length));
}

std::string encode_request(std::string_view lang, const std::vector<std::string>& paragraphs) {
  json j;
  j["lang"] = lang;
  j["paragraphs"] = paragraphs;
  return dump(j);
}

std::vector<std::string> decode_response(std::string_view payload) {
  json j = json::parse(payload, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("paragraphs") ||
      !j["paragraphs"].is_array()) {
    throw ProtocolError("response payload is not {\"paragraphs\": [...]}");
  }
  std::vector<std::string> out;
  for (const auto& p : j["paragraphs"]) {
    if (!p.is_string()) throw ProtocolError("response paragraph is not a string");
    out.push_back(p.get<std::string>());
  }
  return out;
}

std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::filesystem::path TranslationCache::path_for(std::string_view lang,
                                                 std::string_view paragraph) const {
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(fnv1a64(paragraph)));
  return root_ / std::string(lang) / std::string(hex, 2) / (std::string(hex) + ".json");
}

std::optional<std::string> TranslationCache::get(std::string_view lang,
                                                  std::string_view paragraph) const {
  std::ifstream in(path_for(lang, paragraph), std::ios::binary);
  if (!in) return std::nullopt;
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  const auto src = j.find("src");
  const auto dst = j.find("dst");
  if (src == j.end() || dst == j.end() || !src->is_string() || !dst->is_string())
    return std::nullopt;
  if (src->get_ref<const std::string&>() != paragraph) return std::nullopt;
  return dst->get<std::string>();
}

void TranslationCache::put(std::string_view lang, std::string_view paragraph,
                           std::string_view translation) const {
  const auto path = path_for(lang, paragraph);
  std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp" + std::to_string(::getpid()) + "." +
         std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    json j;
    j["src"] = paragraph;
    j["dst"] = translation;
    out << dump(j) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

// A /bin/sh -c child with pipes on its standard input and output.
class ExternalProcessTranslator::Child {
 public:
  explicit Child(const std::string& command) {
    ::signal(SIGPIPE, SIG_IGN);
    int to_child[2];
    int from_child[2];
    if (::pipe2(to_child, O_CLOEXEC) != 0) throw AdapterUnavailable("pipe failed");
    if (::pipe2(from_child, O_CLOEXEC) != 0) {
      ::close(to_child[0]);
      ::close(to_child[1]);
      throw AdapterUnavailable("pipe failed");
    }
    pid_ = ::fork();
    if (pid_ < 0) {
      for (int fd : {to_child[0], to_child[1], from_child[0], from_child[1]}) ::close(fd);
      throw AdapterUnavailable("fork failed");
    }
    if (pid_ == 0) {
      ::dup2(to_child[0], STDIN_FILENO);
      ::dup2(from_child[1], STDOUT_FILENO);
      ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
      ::_exit(127);
    }
    ::close(to_child[0]);
    ::close(from_child[1]);
    in_ = to_child[1];
    out_ = from_child[0];
  }

  ~Child() { finish(); }

  // Closes the child's input and reaps it; returns its exit status.
  int finish() {
    if (in_ >= 0) ::close(std::exchange(in_, -1));
    if (out_ >= 0) ::close(std::exchange(out_, -1));
    if (pid_ > 0) {
      int status = 0;
      while (::waitpid(pid_, &status, 0) < 0 && errno == EINTR) {
      }
      pid_ = -1;
      status_ = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
    }
    return status_;
  }

  bool write_all(std::string_view data) {
    while (!data.empty()) {
      const ssize_t n = ::write(in_, data.data(), data.size());
      if (n < 0) {
        if (errno == EINTR) continue;
        return false;
      }
      data.remove_prefix(static_cast<std::size_t>(n));
    }
    return true;
  }

  // Reads exactly `count` bytes; false on end of stream.
  bool read_exact(std::string& out, std::size_t count) {
    out.resize(count);
    std::size_t got = 0;
    while (got < count) {
      const ssize_t n = ::read(out_, out.data() + got, count - got);
      if (n < 0) {
        if (errno == EINTR) continue;
        return false;
      }
      if (n == 0) return false;
      got += static_cast<std::size_t>(n);
    }
    return true;
  }

 private:
  pid_t pid_ = -1;
  int in_ = -1;
  int out_ = -1;
  int status_ = 0;
};

ExternalProcessTranslator::ExternalProcessTranslator(ExternalProcessConfig config)
    : config_(std::move(config)) {
  if (config_.command.empty()) throw AdapterUnavailable("no translator command configured");
  config_.max_frame_payload = std::min(config_.max_frame_payload, kMaxFramePayload);
  if (!config_.cache_dir.empty()) cache_.emplace(config_.cache_dir);
}

ExternalProcessTranslator::~ExternalProcessTranslator() = default;

namespace {

std::size_t encoded_size(std::string_view s) { return dump(json(std::string(s))).size(); }

// Splits `text` into pieces whose JSON string encoding is at most `budget`
// bytes, preferring whitespace boundaries.
std::vector<std::string> split_to_fit(std::string_view text, std::size_t budget) {
  std::vector<std::string> pieces;
  std::string current;
  auto push_word = [&](std::string_view word) {
    std::string candidate = current.empty() ? std::string(word) : current + " " + std::string(word);
    if (encoded_size(candidate) <= budget) {
      current = std::move(candidate);
      return;
    }
    if (!current.empty()) pieces.push_back(std::move(current));
    current.clear();
    if (encoded_size(word) <= budget) {
      current = std::string(word);
      return;
    }
    // A single over-long word: cut on code point boundaries.
    std::size_t pos = 0;
    while (pos < word.size()) {
      std::size_t end = pos;
      std::string piece;
      while (end < word.size()) {
        std::size_t next = end;
        unicode::next(word, next);
        std::string trial = piece + std::string(word.substr(end, next - end));
        if (!piece.empty() && encoded_size(trial) > budget) break;
        piece = std::move(trial);
        end = next;
      }
      pieces.push_back(std::move(piece));
      pos = end;
    }
  };
  std::istringstream words{std::string(text)};
  std::string word;
  while (words >> word) push_word(word);
  if (!current.empty()) pieces.push_back(std::move(current));
  if (pieces.empty()) pieces.emplace_back(text);
  return pieces;
}

}  // namespace

std::vector<std::string> ExternalProcessTranslator::exchange(
    std::string_view lang, const std::vector<std::string>& units) {
  if (!child_) child_ = std::make_unique<Child>(config_.command);

  auto fail_from_child = [&](const std::string& what) {
    const int status = child_->finish();
    child_.reset();
    if (status != 0) {
      throw AdapterUnavailable("translator process exited with status " +
                               std::to_string(status) + " (" + what + ")");
    }
    throw ProtocolError("translator process " + what);
  };

  const std::string frame = encode_frame(encode_request(lang, units));
  if (!child_->write_all(frame)) fail_from_child("closed its input");
  ++frames_sent_;

  std::string prefix;
  if (!child_->read_exact(prefix, kFrameDigits)) fail_from_child("closed its output");
  std::size_t length = 0;
  for (char c : prefix) {
    if (c < '0' || c > '9') throw ProtocolError("frame prefix is not decimal");
    length = length * 10 + static_cast<std::size_t>(c - '0');
  }
  std::string rest;
  if (!child_->read_exact(rest, length + 1)) fail_from_child("truncated a frame");
  std::string buffer = prefix + rest;
  std::size_t pos = 0;
  auto payload = decode_frame(buffer, pos);
  auto out = decode_response(*payload);
  if (out.size() != units.size()) {
    throw LengthMismatch("translator returned " + std::to_string(out.size()) +
                         " paragraphs for a frame of " + std::to_string(units.size()));
  }
  return out;
}

TranslationResponse ExternalProcessTranslator::do_translate(const TranslationRequest& request) {
  TranslationResponse response;
  response.paragraphs.resize(request.paragraphs.size());

  // Work units: uncached paragraphs, or pieces of paragraphs too large for
  // a frame on their own.
  struct Unit {
    std::size_t owner;
    std::string text;
  };
  std::vector<Unit> units;
  const std::size_t overhead = encode_request(request.lang, {""}).size();
  const std::size_t budget =
      config_.max_frame_payload > overhead ? config_.max_frame_payload - overhead + 2 : 0;
  if (budget < 8) throw ProtocolError("frame payload limit too small for the request envelope");
  for (std::size_t i = 0; i < request.paragraphs.size(); ++i) {
    const auto& para = request.paragraphs[i];
    if (cache_) {
      if (auto hit = cache_->get(request.lang, para)) {
        response.paragraphs[i] = std::move(*hit);
        continue;
      }
    }
    if (encoded_size(para) <= budget) {
      units.push_back(Unit{i, para});
    } else {
      for (auto& piece : split_to_fit(para, budget)) units.push_back(Unit{i, std::move(piece)});
    }
  }

  // Pack units into frames under the payload limit.
  std::vector<std::string> translated(units.size());
  std::size_t begin = 0;
  while (begin < units.size()) {
    std::size_t size = overhead - 2 + encoded_size(units[begin].text);
    std::size_t end = begin + 1;
    while (end < units.size()) {
      const std::size_t extra = encoded_size(units[end].text) + 1;
      if (size + extra > config_.max_frame_payload) break;
      size += extra;
      ++end;
    }
    std::vector<std::string> batch;
    for (std::size_t k = begin; k < end; ++k) batch.push_back(units[k].text);
    auto out = exchange(request.lang, batch);
    for (std::size_t k = begin; k < end; ++k) translated[k] = std::move(out[k - begin]);
    begin = end;
  }

  std::vector<bool> touched(request.paragraphs.size(), false);
  for (std::size_t k = 0; k < units.size(); ++k) {
    auto& dst = response.paragraphs[units[k].owner];
    if (touched[units[k].owner] && !translated[k].empty()) dst += ' ';
    dst += translated[k];
    touched[units[k].owner] = true;
  }
  if (cache_) {
    for (std::size_t i = 0; i < request.paragraphs.size(); ++i)
      if (touched[i]) cache_->put(request.lang, request.paragraphs[i], response.paragraphs[i]);
  }
  return response;
}

std::unique_ptr<Translator> external_process_adapter(ExternalProcessConfig config) {
  return std::make_unique<ExternalProcessTranslator>(std::move(config));
}

std::unique_ptr<Translator> make_translator(std::string_view spec,
                                            const TranslatorOptions& options) {
  if (spec == "identity") return std::make_unique<IdentityTranslator>();
  if (spec == "dict") {
    if (options.dictionary.empty()) throw AdapterUnavailable("dict translator needs a dictionary file");
    return std::make_unique<DictionaryTranslator>(DictionaryTranslator::load(options.dictionary));
  }
  constexpr std::string_view kExternal = "external:";
  if (spec.starts_with(kExternal)) {
    return external_process_adapter(
        ExternalProcessConfig{std::string(spec.substr(kExternal.size())), options.cache_dir});
  }
  throw AdapterUnavailable("unknown translator '" + std::string(spec) + "'");
}

}  // namespace uprprc
