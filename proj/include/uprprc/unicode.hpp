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
#include <string>
#include <string_view>

// Thin layer over ICU for the handful of code point properties the pipeline
// needs. All strings are UTF-8.
namespace uprprc::unicode {

inline constexpr char32_t kReplacement = 0xFFFD;

// Decodes the code point at `pos` and advances `pos` past it. Ill-formed
// input yields U+FFFD and advances by at least one byte.
char32_t next(std::string_view s, std::size_t& pos);

void append(std::string& out, char32_t cp);

bool is_letter(char32_t cp);
bool is_whitespace(char32_t cp);
bool is_punctuation(char32_t cp);
bool is_han(char32_t cp);
// Non-spacing and enclosing marks.
bool is_combining_mark(char32_t cp);
// East Asian Width property Wide or Fullwidth.
bool is_east_asian_wide(char32_t cp);

// Full Unicode case folding.
std::string fold_case(std::string_view s);

std::size_t code_point_count(std::string_view s);

std::string_view trim(std::string_view s);

}  // namespace uprprc::unicode
