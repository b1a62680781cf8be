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

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uprprc/error.hpp"
#include "uprprc/gapa.hpp"
#include "uprprc/text_normalize.hpp"

// Line-delimited UTF-8 record files, one JSON object per line. Paths ending
// in ".gz" are read and written gzip-compressed.
namespace uprprc {

// --- line I/O ------------------------------------------------------------

class LineReader {
 public:
  explicit LineReader(const std::filesystem::path& path);
  ~LineReader();
  LineReader(const LineReader&) = delete;
  LineReader& operator=(const LineReader&) = delete;

  // Next line without its terminator; false at end of file.
  bool next(std::string& line);
  std::size_t line_number() const { return line_number_; }

 private:
  void* file_;
  std::size_t line_number_ = 0;
};

class LineWriter {
 public:
  explicit LineWriter(const std::filesystem::path& path);
  ~LineWriter();
  LineWriter(const LineWriter&) = delete;
  LineWriter& operator=(const LineWriter&) = delete;

  void write_line(std::string_view line);
  void close();

 private:
  void* file_;
  std::filesystem::path path_;
};

struct ReadOptions {
  // Skip malformed lines (recording them in `diagnostics`) instead of
  // throwing RecordError.
  bool skip_malformed = false;
  Diagnostics* diagnostics = nullptr;
};

// Streams records of one type from a file.
template <class Record>
class RecordReader {
 public:
  using Parser = std::function<Record(std::string_view)>;

  RecordReader(const std::filesystem::path& path, Parser parse, ReadOptions options = {})
      : lines_(path), parse_(std::move(parse)), options_(options) {}

  std::optional<Record> next() {
    std::string line;
    while (lines_.next(line)) {
      if (line.empty()) continue;
      try {
        return parse_(line);
      } catch (const std::exception& e) {
        RecordError err(lines_.line_number(), e.what());
        if (!options_.skip_malformed) throw err;
        if (options_.diagnostics != nullptr) options_.diagnostics->push_back(err.what());
      }
    }
    return std::nullopt;
  }

  std::vector<Record> read_all() {
    std::vector<Record> out;
    while (auto r = next()) out.push_back(std::move(*r));
    return out;
  }

 private:
  LineReader lines_;
  Parser parse_;
  ReadOptions options_;
};

template <class Record>
void write_records(std::span<const Record> records, const std::filesystem::path& path,
                   std::string (*encode)(const Record&)) {
  LineWriter out(path);
  for (const auto& r : records) out.write_line(encode(r));
  out.close();
}

// --- file level ----------------------------------------------------------

// The six official languages plus German, in output order.
inline constexpr std::array<std::string_view, 7> kFileLevelLanguages = {
    "ar", "zh", "en", "fr", "ru", "es", "de"};

struct FileLevelRecord {
  std::string symbol;
  // Always holds every kFileLevelLanguages key; missing texts are "".
  std::map<std::string, std::string> texts;

  explicit FileLevelRecord(std::string symbol = {});
  const std::string& text(std::string_view lang) const;
  bool operator==(const FileLevelRecord&) const = default;
};

std::string encode_file_level(const FileLevelRecord& record);
FileLevelRecord decode_file_level(std::string_view line);

std::vector<FileLevelRecord> read_file_level(const std::filesystem::path& path,
                                             ReadOptions options = {});
void write_file_level(std::span<const FileLevelRecord> records,
                      const std::filesystem::path& path);

// --- bilingual paragraph level -------------------------------------------

struct BilingualPairRecord {
  std::string symbol;
  std::string src_lang;
  std::string src_text;
  std::string en_text;
  double hit_rate_src = 0.0;  // minimum over the group's source paragraphs
  double hit_rate_en = 0.0;   // minimum over the group's English paragraphs
  IndexRange src_range;       // original source paragraph indices
  IndexRange en_range;        // English paragraph indices

  bool operator==(const BilingualPairRecord&) const = default;
};

std::string encode_bilingual(const BilingualPairRecord& record);
BilingualPairRecord decode_bilingual(std::string_view line);

std::vector<BilingualPairRecord> read_bilingual(const std::filesystem::path& path,
                                                ReadOptions options = {});
void write_bilingual_file(std::span<const BilingualPairRecord> records,
                          const std::filesystem::path& path);

struct BilingualMeta {
  std::string symbol;
  std::string src_lang;
  // Untranslated source paragraphs, indexed by Paragraph::original_index of
  // the translated document.
  std::span<const std::string> source_paragraphs;
  const Document* translated = nullptr;
};

// One record per alignment group. Dropped paragraphs produce nothing.
std::vector<BilingualPairRecord> write_bilingual(const AlignmentResult& alignment,
                                                 const BilingualMeta& meta);

// --- all-language blocks -------------------------------------------------

struct BlockRecord {
  std::string symbol;
  IndexRange en_range;
  std::map<std::string, std::string> texts;  // includes "en"

  bool operator==(const BlockRecord&) const = default;
};

std::string encode_block(const BlockRecord& record);
BlockRecord decode_block(std::string_view line);

std::vector<BlockRecord> read_blocks(const std::filesystem::path& path, ReadOptions options = {});
void write_blocks(std::span<const BlockRecord> records, const std::filesystem::path& path);

// Unions overlapping English intervals of every language's groups into
// blocks. A block is emitted only if every participating language has a
// group inside it. Languages without groups are left out with a diagnostic.
std::vector<BlockRecord> aggregate_blocks(
    std::string_view symbol,
    const std::map<std::string, std::vector<BilingualPairRecord>>& by_lang,
    Diagnostics* diagnostics = nullptr);

// --- alignment result ----------------------------------------------------

// Canonical single-line JSON of a full alignment result.
std::string encode_alignment_result(const AlignmentResult& result);

// --- statistics ----------------------------------------------------------

struct LanguageStats {
  std::uint64_t files = 0;   // records with non-empty text
  std::uint64_t tokens = 0;

  bool operator==(const LanguageStats&) const = default;
};

using CorpusStats = std::map<std::string, LanguageStats>;

// Whitespace-separated tokens. For "zh" every Han character counts as a
// token, and so does every maximal non-Han run inside a whitespace piece.
std::uint64_t count_tokens(std::string_view text, std::string_view lang);

CorpusStats empty_stats();
void accumulate(CorpusStats& stats, const FileLevelRecord& record);
CorpusStats corpus_stats(std::span<const FileLevelRecord> records);

}  // namespace uprprc
