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

#include "uprprc/text_normalize.hpp"

#include "uprprc/unicode.hpp"

namespace uprprc {

std::uint64_t Paragraph::letter_count() const {
  std::uint64_t total = 0;
  for (const auto& t : tokens) total += t.letters;
  return total;
}

bool is_format_control(char32_t cp) {
  switch (cp) {
    case 0x00AD:  // soft hyphen
    case 0x061C:  // arabic letter mark
    case 0x180E:  // mongolian vowel separator
    case 0xFEFF:  // byte-order mark / zero-width no-break space
      return true;
    default:
      break;
  }
  return (cp >= 0x200B && cp <= 0x200F) ||  // ZWSP, ZWNJ, ZWJ, LRM, RLM
         (cp >= 0x202A && cp <= 0x202E) ||  // embeddings and overrides
         (cp >= 0x2060 && cp <= 0x2064) ||  // word joiner, invisible operators
         (cp >= 0x2066 && cp <= 0x2069);    // isolates
}

std::string strip_format_controls(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  std::size_t pos = 0;
  while (pos < raw.size()) {
    const std::size_t start = pos;
    const char32_t cp = unicode::next(raw, pos);
    if (!is_format_control(cp)) out.append(raw.substr(start, pos - start));
  }
  return out;
}

namespace {

bool is_blank(std::string_view line) { return unicode::trim(line).empty(); }

}  // namespace

std::vector<std::string> split_paragraphs(std::string_view text) {
  std::vector<std::string> out;
  std::size_t para_begin = std::string_view::npos;
  std::size_t para_end = 0;
  auto flush = [&] {
    if (para_begin == std::string_view::npos) return;
    auto piece = unicode::trim(text.substr(para_begin, para_end - para_begin));
    if (!piece.empty()) out.emplace_back(piece);
    para_begin = std::string_view::npos;
  };

  std::size_t line_begin = 0;
  while (line_begin <= text.size()) {
    std::size_t nl = text.find('\n', line_begin);
    const std::size_t line_end = nl == std::string_view::npos ? text.size() : nl;
    const auto line = text.substr(line_begin, line_end - line_begin);
    if (is_blank(line)) {
      flush();
    } else {
      if (para_begin == std::string_view::npos) para_begin = line_begin;
      para_end = line_end;
    }
    if (nl == std::string_view::npos) break;
    line_begin = nl + 1;
  }
  flush();
  return out;
}

std::uint32_t count_letters(std::string_view s) {
  std::uint32_t n = 0;
  for (std::size_t pos = 0; pos < s.size();) {
    if (unicode::is_letter(unicode::next(s, pos))) ++n;
  }
  return n;
}

namespace {

std::string_view trim_punctuation(std::string_view s) {
  std::size_t begin = 0;
  while (begin < s.size()) {
    std::size_t pos = begin;
    if (!unicode::is_punctuation(unicode::next(s, pos))) break;
    begin = pos;
  }
  std::size_t end = s.size();
  while (end > begin) {
    std::size_t start = end - 1;
    while (start > begin && (static_cast<unsigned char>(s[start]) & 0xC0) == 0x80)
      --start;
    std::size_t pos = start;
    if (!unicode::is_punctuation(unicode::next(s, pos)) || pos != end) break;
    end = start;
  }
  return s.substr(begin, end - begin);
}

void emit_token(std::string_view piece, std::vector<Token>& out) {
  if (piece.empty()) return;
  const std::string folded = unicode::fold_case(piece);
  const auto surface = trim_punctuation(folded);
  const std::uint32_t letters = count_letters(surface);
  if (letters == 0) return;
  out.push_back(Token{std::string(surface), letters});
}

}  // namespace

std::vector<Token> tokenize(std::string_view paragraph_text) {
  std::vector<Token> out;
  std::size_t piece_begin = 0;
  std::size_t pos = 0;
  while (pos < paragraph_text.size()) {
    const std::size_t start = pos;
    if (unicode::is_whitespace(unicode::next(paragraph_text, pos))) {
      emit_token(paragraph_text.substr(piece_begin, start - piece_begin), out);
      piece_begin = pos;
    }
  }
  emit_token(paragraph_text.substr(piece_begin), out);
  return out;
}

Document Document::from_text(std::string symbol, std::string lang,
                             std::string_view raw) {
  const auto pieces = split_paragraphs(strip_format_controls(raw));
  return from_paragraphs(std::move(symbol), std::move(lang), pieces);
}

Document Document::from_paragraphs(std::string symbol, std::string lang,
                                   std::span<const std::string> paragraphs) {
  Document doc;
  doc.symbol = std::move(symbol);
  doc.lang = std::move(lang);
  for (std::size_t i = 0; i < paragraphs.size(); ++i) {
    const std::string stripped = strip_format_controls(paragraphs[i]);
    const auto text = unicode::trim(stripped);
    if (text.empty()) continue;
    Paragraph p;
    p.index = doc.paragraphs.size();
    p.original_index = i;
    p.text = std::string(text);
    p.tokens = tokenize(p.text);
    doc.paragraphs.push_back(std::move(p));
  }
  return doc;
}

}  // namespace uprprc
