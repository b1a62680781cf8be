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

#include "uprprc/corpus_io.hpp"

#include <zlib.h>

#include <algorithm>
#include <stdexcept>

#include "json.hpp"
#include "uprprc/unicode.hpp"

namespace uprprc {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

bool is_gzip_path(const std::filesystem::path& path) { return path.extension() == ".gz"; }

gzFile as_gz(void* f) { return static_cast<gzFile>(f); }

template <class J>
std::string dump(const J& j) {
  return j.dump(-1, ' ', false, J::error_handler_t::replace);
}

}  // namespace

LineReader::LineReader(const std::filesystem::path& path)
    : file_(gzopen(path.c_str(), "rb")) {
  if (file_ == nullptr) throw Error("cannot open " + path.string() + " for reading");
}

LineReader::~LineReader() {
  if (file_ != nullptr) gzclose(as_gz(file_));
}

bool LineReader::next(std::string& line) {
  line.clear();
  char buf[1 << 16];
  bool any = false;
  while (gzgets(as_gz(file_), buf, sizeof buf) != nullptr) {
    any = true;
    line.append(buf);
    if (!line.empty() && line.back() == '\n') {
      line.pop_back();
      break;
    }
  }
  if (!any) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  ++line_number_;
  return true;
}

LineWriter::LineWriter(const std::filesystem::path& path)
    : file_(gzopen(path.c_str(), is_gzip_path(path) ? "wb" : "wbT")), path_(path) {
  if (file_ == nullptr) throw Error("cannot open " + path.string() + " for writing");
}

LineWriter::~LineWriter() {
  if (file_ != nullptr) gzclose(as_gz(file_));
}

void LineWriter::write_line(std::string_view line) {
  const auto len = static_cast<unsigned>(line.size());
  if ((len > 0 && gzwrite(as_gz(file_), line.data(), len) != static_cast<int>(len)) ||
      gzputc(as_gz(file_), '\n') != '\n') {
    throw Error("write failed on " + path_.string());
  }
}

void LineWriter::close() {
  if (file_ == nullptr) return;
  const int rc = gzclose(as_gz(std::exchange(file_, nullptr)));
  if (rc != Z_OK) throw Error("close failed on " + path_.string());
}

namespace {

json parse_object(std::string_view line) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded()) throw std::invalid_argument("not valid JSON");
  if (!j.is_object()) throw std::invalid_argument("not a JSON object");
  return j;
}

std::string get_string(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string())
    throw std::invalid_argument(std::string("missing string field '") + key + "'");
  return it->get<std::string>();
}

double get_fraction(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number())
    throw std::invalid_argument(std::string("missing number field '") + key + "'");
  const double v = it->get<double>();
  if (!(v >= 0.0 && v <= 1.0))
    throw std::invalid_argument(std::string("field '") + key + "' outside [0, 1]");
  return v;
}

IndexRange get_range(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_array() || it->size() != 2 || !(*it)[0].is_number_unsigned() ||
      !(*it)[1].is_number_unsigned()) {
    throw std::invalid_argument(std::string("field '") + key + "' is not [first, last]");
  }
  IndexRange r{(*it)[0].get<std::size_t>(), (*it)[1].get<std::size_t>()};
  if (r.first > r.last) throw std::invalid_argument(std::string("field '") + key + "' is reversed");
  return r;
}

ordered_json range_json(IndexRange r) { return ordered_json::array({r.first, r.last}); }

}  // namespace

// --- file level ----------------------------------------------------------

FileLevelRecord::FileLevelRecord(std::string symbol) : symbol(std::move(symbol)) {
  for (auto lang : kFileLevelLanguages) texts.emplace(lang, std::string());
}

const std::string& FileLevelRecord::text(std::string_view lang) const {
  static const std::string kEmpty;
  auto it = texts.find(std::string(lang));
  return it == texts.end() ? kEmpty : it->second;
}

std::string encode_file_level(const FileLevelRecord& record) {
  ordered_json j;
  j["symbol"] = record.symbol;
  for (auto lang : kFileLevelLanguages) j[std::string(lang)] = record.text(lang);
  for (const auto& [lang, text] : record.texts) {
    if (std::find(kFileLevelLanguages.begin(), kFileLevelLanguages.end(), lang) ==
        kFileLevelLanguages.end()) {
      j[lang] = text;
    }
  }
  return dump(j);
}

FileLevelRecord decode_file_level(std::string_view line) {
  const json j = parse_object(line);
  FileLevelRecord record(get_string(j, "symbol"));
  for (const auto& [key, value] : j.items()) {
    if (key == "symbol") continue;
    if (!value.is_string()) throw std::invalid_argument("language field '" + key + "' is not a string");
    record.texts[key] = value.get<std::string>();
  }
  return record;
}

std::vector<FileLevelRecord> read_file_level(const std::filesystem::path& path,
                                             ReadOptions options) {
  return RecordReader<FileLevelRecord>(path, decode_file_level, options).read_all();
}

void write_file_level(std::span<const FileLevelRecord> records,
                      const std::filesystem::path& path) {
  write_records(records, path, encode_file_level);
}

// --- bilingual -----------------------------------------------------------

std::string encode_bilingual(const BilingualPairRecord& r) {
  ordered_json j;
  j["symbol"] = r.symbol;
  j["src_lang"] = r.src_lang;
  j["src_text"] = r.src_text;
  j["en_text"] = r.en_text;
  j["hit_rate_src"] = r.hit_rate_src;
  j["hit_rate_en"] = r.hit_rate_en;
  j["src_range"] = range_json(r.src_range);
  j["en_range"] = range_json(r.en_range);
  return dump(j);
}

BilingualPairRecord decode_bilingual(std::string_view line) {
  const json j = parse_object(line);
  BilingualPairRecord r;
  r.symbol = get_string(j, "symbol");
  r.src_lang = get_string(j, "src_lang");
  r.src_text = get_string(j, "src_text");
  r.en_text = get_string(j, "en_text");
  r.hit_rate_src = get_fraction(j, "hit_rate_src");
  r.hit_rate_en = get_fraction(j, "hit_rate_en");
  r.src_range = get_range(j, "src_range");
  r.en_range = get_range(j, "en_range");
  return r;
}

std::vector<BilingualPairRecord> read_bilingual(const std::filesystem::path& path,
                                                ReadOptions options) {
  return RecordReader<BilingualPairRecord>(path, decode_bilingual, options).read_all();
}

void write_bilingual_file(std::span<const BilingualPairRecord> records,
                          const std::filesystem::path& path) {
  write_records(records, path, encode_bilingual);
}

std::vector<BilingualPairRecord> write_bilingual(const AlignmentResult& alignment,
                                                 const BilingualMeta& meta) {
  std::vector<BilingualPairRecord> out;
  out.reserve(alignment.groups.size());
  for (const auto& g : alignment.groups) {
    BilingualPairRecord r;
    r.symbol = meta.symbol;
    r.src_lang = meta.src_lang;
    r.en_text = g.merged_tgt_text;
    r.hit_rate_src = g.min_src_hit_rate;
    r.hit_rate_en = g.min_tgt_hit_rate;
    r.en_range = g.tgt;
    if (meta.translated != nullptr && !meta.source_paragraphs.empty()) {
      const auto& paras = meta.translated->paragraphs;
      for (std::size_t i = g.src.first; i <= g.src.last; ++i) {
        if (i > g.src.first) r.src_text += kParagraphJoiner;
        r.src_text += meta.source_paragraphs[paras.at(i).original_index];
      }
      r.src_range = {paras.at(g.src.first).original_index, paras.at(g.src.last).original_index};
    } else {
      r.src_text = g.merged_src_text;
      r.src_range = g.src;
    }
    out.push_back(std::move(r));
  }
  return out;
}

// --- blocks --------------------------------------------------------------

std::string encode_block(const BlockRecord& r) {
  ordered_json j;
  j["symbol"] = r.symbol;
  j["en_range"] = range_json(r.en_range);
  ordered_json texts = ordered_json::object();
  for (const auto& [lang, text] : r.texts) texts[lang] = text;
  j["texts"] = std::move(texts);
  return dump(j);
}

BlockRecord decode_block(std::string_view line) {
  const json j = parse_object(line);
  BlockRecord r;
  r.symbol = get_string(j, "symbol");
  r.en_range = get_range(j, "en_range");
  auto it = j.find("texts");
  if (it == j.end() || !it->is_object()) throw std::invalid_argument("missing object field 'texts'");
  for (const auto& [lang, text] : it->items()) {
    if (!text.is_string()) throw std::invalid_argument("block text for '" + lang + "' is not a string");
    r.texts[lang] = text.get<std::string>();
  }
  return r;
}

std::vector<BlockRecord> read_blocks(const std::filesystem::path& path, ReadOptions options) {
  return RecordReader<BlockRecord>(path, decode_block, options).read_all();
}

void write_blocks(std::span<const BlockRecord> records, const std::filesystem::path& path) {
  write_records(records, path, encode_block);
}

namespace {

std::vector<std::string> split_joined(std::string_view text) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  while (true) {
    const std::size_t at = text.find(kParagraphJoiner, begin);
    if (at == std::string_view::npos) {
      out.emplace_back(text.substr(begin));
      return out;
    }
    out.emplace_back(text.substr(begin, at - begin));
    begin = at + kParagraphJoiner.size();
  }
}

}  // namespace

std::vector<BlockRecord> aggregate_blocks(
    std::string_view symbol,
    const std::map<std::string, std::vector<BilingualPairRecord>>& by_lang,
    Diagnostics* diagnostics) {
  struct Interval {
    IndexRange en;
    const std::string* lang;
    const BilingualPairRecord* record;
  };
  std::vector<Interval> intervals;
  std::vector<std::string> langs;
  for (const auto& [lang, records] : by_lang) {
    if (records.empty()) {
      if (diagnostics != nullptr)
        diagnostics->push_back(std::string(symbol) + ": " + lang +
                               " has no aligned groups, left out of blocks");
      continue;
    }
    langs.push_back(lang);
    for (const auto& r : records) intervals.push_back(Interval{r.en_range, &lang, &r});
  }
  std::stable_sort(intervals.begin(), intervals.end(), [](const Interval& a, const Interval& b) {
    return a.en.first < b.en.first;
  });

  std::vector<BlockRecord> blocks;
  std::size_t i = 0;
  while (i < intervals.size()) {
    IndexRange span = intervals[i].en;
    std::size_t j = i + 1;
    while (j < intervals.size() && intervals[j].en.first <= span.last) {
      span.last = std::max(span.last, intervals[j].en.last);
      ++j;
    }

    BlockRecord block;
    block.symbol = std::string(symbol);
    block.en_range = span;
    std::map<std::size_t, std::string> en_paragraphs;
    std::map<std::string, std::vector<const BilingualPairRecord*>> members;
    for (std::size_t k = i; k < j; ++k) {
      members[*intervals[k].lang].push_back(intervals[k].record);
      const auto pieces = split_joined(intervals[k].record->en_text);
      if (pieces.size() == intervals[k].en.size()) {
        for (std::size_t p = 0; p < pieces.size(); ++p)
          en_paragraphs.try_emplace(intervals[k].en.first + p, pieces[p]);
      }
    }

    bool complete = en_paragraphs.size() == span.size();
    std::string missing;
    for (const auto& lang : langs) {
      if (!members.contains(lang)) {
        complete = false;
        missing += " " + lang;
      }
    }
    if (!complete) {
      if (diagnostics != nullptr) {
        diagnostics->push_back(std::string(symbol) + ": block en[" + std::to_string(span.first) +
                               "-" + std::to_string(span.last) + "] not emitted" +
                               (missing.empty() ? " (English text incomplete)"
                                                : " (missing" + missing + ")"));
      }
      i = j;
      continue;
    }
    for (const auto& [lang, records] : members) {
      std::vector<const BilingualPairRecord*> ordered = records;
      std::sort(ordered.begin(), ordered.end(), [](auto* a, auto* b) {
        return a->src_range.first < b->src_range.first;
      });
      std::string text;
      for (const auto* r : ordered) {
        if (!text.empty()) text += kParagraphJoiner;
        text += r->src_text;
      }
      block.texts[lang] = std::move(text);
    }
    std::string en;
    for (const auto& [idx, para] : en_paragraphs) {
      if (!en.empty()) en += kParagraphJoiner;
      en += para;
    }
    block.texts["en"] = std::move(en);
    blocks.push_back(std::move(block));
    i = j;
  }
  return blocks;
}

// --- alignment result ----------------------------------------------------

std::string encode_alignment_result(const AlignmentResult& result) {
  ordered_json j;
  j["h_c"] = result.h_c;
  ordered_json groups = ordered_json::array();
  for (const auto& g : result.groups) {
    ordered_json gj;
    gj["src_range"] = range_json(g.src);
    gj["tgt_range"] = range_json(g.tgt);
    gj["min_hit_rate"] = g.min_hit_rate;
    gj["min_src_hit_rate"] = g.min_src_hit_rate;
    gj["min_tgt_hit_rate"] = g.min_tgt_hit_rate;
    gj["src_text"] = g.merged_src_text;
    gj["tgt_text"] = g.merged_tgt_text;
    groups.push_back(std::move(gj));
  }
  j["groups"] = std::move(groups);
  j["dropped_src"] = result.dropped_src;
  j["dropped_tgt"] = result.dropped_tgt;
  j["hit_rates_src"] = result.hit_rates.src;
  j["hit_rates_tgt"] = result.hit_rates.tgt;
  j["diagnostics"] = result.diagnostics;
  return dump(j);
}

// --- statistics ----------------------------------------------------------

std::uint64_t count_tokens(std::string_view text, std::string_view lang) {
  const bool han_split = lang == "zh";
  std::uint64_t tokens = 0;
  bool in_piece = false;      // inside a whitespace-delimited piece
  bool in_non_han = false;    // inside a non-Han run of that piece
  for (std::size_t pos = 0; pos < text.size();) {
    const char32_t cp = unicode::next(text, pos);
    if (unicode::is_whitespace(cp)) {
      in_piece = false;
      in_non_han = false;
      continue;
    }
    if (!han_split) {
      if (!in_piece) ++tokens;
      in_piece = true;
      continue;
    }
    if (unicode::is_han(cp)) {
      ++tokens;
      in_non_han = false;
    } else {
      if (!in_non_han) ++tokens;
      in_non_han = true;
    }
    in_piece = true;
  }
  return tokens;
}

CorpusStats empty_stats() {
  CorpusStats stats;
  for (auto lang : kFileLevelLanguages) stats.emplace(lang, LanguageStats{});
  return stats;
}

void accumulate(CorpusStats& stats, const FileLevelRecord& record) {
  for (const auto& [lang, text] : record.texts) {
    auto& s = stats[lang];
    if (text.empty()) continue;
    ++s.files;
    s.tokens += count_tokens(text, lang);
  }
}

CorpusStats corpus_stats(std::span<const FileLevelRecord> records) {
  CorpusStats stats = empty_stats();
  for (const auto& r : records) accumulate(stats, r);
  return stats;
}

}  // namespace uprprc
