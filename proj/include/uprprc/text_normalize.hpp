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
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace uprprc {

struct Token {
  std::string surface;    // case-folded, punctuation-trimmed
  std::uint32_t letters;  // letter-category code points in `surface`

  bool operator==(const Token&) const = default;
};

struct Paragraph {
  std::size_t index = 0;           // dense position in the document
  std::size_t original_index = 0;  // position before empty paragraphs were dropped
  std::string text;
  std::vector<Token> tokens;

  std::uint64_t letter_count() const;
};

// One language version of one record, split into paragraphs.
struct Document {
  std::string symbol;
  std::string lang;
  std::vector<Paragraph> paragraphs;

  std::size_t size() const { return paragraphs.size(); }
  bool empty() const { return paragraphs.empty(); }

  // Strips format controls and splits on blank lines.
  static Document from_text(std::string symbol, std::string lang,
                            std::string_view raw);

  // Builds a document from already-segmented paragraphs. Each paragraph is
  // stripped and trimmed; those left empty are dropped and the survivors are
  // re-indexed densely, keeping their input position in `original_index`.
  static Document from_paragraphs(std::string symbol, std::string lang,
                                  std::span<const std::string> paragraphs);
};

bool is_format_control(char32_t cp);

// Removes zero-width characters, directional marks, soft hyphens and the
// byte-order mark. Everything else is copied byte for byte.
std::string strip_format_controls(std::string_view raw);

// Splits on runs of blank lines (two or more newlines, whitespace-only lines
// count as blank). Pieces are trimmed; empty pieces are dropped.
std::vector<std::string> split_paragraphs(std::string_view text);

// Whitespace split, case fold, strip leading/trailing punctuation, drop
// pieces without letters.
std::vector<Token> tokenize(std::string_view paragraph_text);

std::uint32_t count_letters(std::string_view s);

}  // namespace uprprc
