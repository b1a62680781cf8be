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

#include "support/synthetic.hpp"

#include <algorithm>

namespace uprprc::testing {

namespace {

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool chance(std::mt19937_64& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

const std::vector<std::string>& function_words() {
  static const std::vector<std::string> words = {"the", "of", "and", "to", "a",  "in", "is",
                                                 "for", "on", "that", "by", "with", "as", "at"};
  return words;
}

// Rough English frequency ranks of the words above.
std::string function_word(std::mt19937_64& rng) {
  static std::discrete_distribution<std::size_t> dist(
      {30, 15, 14, 12, 10, 9, 4, 4, 3, 3, 3, 3, 2, 2});
  return function_words()[dist(rng)];
}

// Content words use letters that gibberish never uses, and vice versa.
std::string random_word(std::mt19937_64& rng, std::string_view letters, std::size_t lo,
                        std::size_t hi) {
  std::string w;
  const std::size_t len = uniform(rng, lo, hi);
  for (std::size_t i = 0; i < len; ++i) w += letters[uniform(rng, 0, letters.size() - 1)];
  return w;
}

const std::vector<std::string>& content_words() {
  static const std::vector<std::string> words = [] {
    std::mt19937_64 rng(0xC0FFEE);
    std::vector<std::string> out;
    while (out.size() < 1500) {
      auto w = random_word(rng, "abcdefghiklmnoprstuw", 4, 9);
      if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(std::move(w));
    }
    return out;
  }();
  return words;
}

std::string base_word(std::mt19937_64& rng) {
  if (chance(rng, 0.35)) return function_word(rng);
  return content_words()[uniform(rng, 0, content_words().size() - 1)];
}

std::string make_paragraph(const std::vector<std::string>& words) {
  std::string text;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i > 0) text += ' ';
    std::string w = words[i];
    if (i == 0 && !w.empty() && w[0] >= 'a' && w[0] <= 'z') w[0] = static_cast<char>(w[0] - 'a' + 'A');
    text += w;
  }
  text += '.';
  return text;
}

std::string gibberish_paragraph(std::mt19937_64& rng) {
  std::vector<std::string> words;
  const std::size_t nonsense = uniform(rng, 12, 20);
  for (std::size_t i = 0; i < nonsense; ++i) words.push_back(random_word(rng, "jqvxz", 4, 8));
  const std::size_t common = uniform(rng, 3, 6);
  for (std::size_t i = 0; i < common; ++i) {
    words.insert(words.begin() + static_cast<std::ptrdiff_t>(uniform(rng, 0, words.size())),
                 function_word(rng));
  }
  return make_paragraph(words);
}

}  // namespace

std::string symbol_word(std::size_t k) {
  // Bijective base 26.
  std::string out;
  ++k;
  while (k > 0) {
    --k;
    out.insert(out.begin(), static_cast<char>('a' + k % 26));
    k /= 26;
  }
  return out;
}

std::vector<FlatToken> random_stream(std::mt19937_64& rng, std::size_t length,
                                     std::size_t alphabet) {
  std::vector<FlatToken> out;
  out.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    auto s = symbol_word(uniform(rng, 0, alphabet - 1));
    const auto letters = static_cast<std::uint32_t>(s.size());
    out.push_back(FlatToken{std::move(s), letters, i / 16, i});
  }
  return out;
}

SyntheticPair make_synthetic_pair(std::mt19937_64& rng, const SyntheticPairOptions& options) {
  struct Group {
    std::vector<std::string> src;
    std::vector<std::string> tgt;
  };
  std::vector<Group> groups;
  for (std::size_t g = 0; g < options.groups; ++g) {
    std::size_t m = 1;
    std::size_t n = 1;
    if (chance(rng, 0.5)) {
      m = uniform(rng, 1, options.max_shape);
      n = uniform(rng, 1, options.max_shape);
    }
    const std::size_t cuts = m + n - 2;
    std::vector<std::size_t> seg(cuts + 1);
    for (auto& s : seg) s = uniform(rng, 3, 12);
    std::vector<std::string> words;
    if (chance(rng, 0.5)) words.push_back("the");
    std::vector<std::size_t> cut_at;
    for (std::size_t s = 0; s < seg.size(); ++s) {
      for (std::size_t k = 0; k < seg[s]; ++k) words.push_back(base_word(rng));
      if (s + 1 < seg.size()) cut_at.push_back(words.size());
    }
    std::shuffle(cut_at.begin(), cut_at.end(), rng);
    std::vector<std::size_t> src_cuts(cut_at.begin(), cut_at.begin() + static_cast<std::ptrdiff_t>(m - 1));
    std::vector<std::size_t> tgt_cuts(cut_at.begin() + static_cast<std::ptrdiff_t>(m - 1), cut_at.end());
    std::sort(src_cuts.begin(), src_cuts.end());
    std::sort(tgt_cuts.begin(), tgt_cuts.end());
    auto cut = [&](const std::vector<std::size_t>& at) {
      std::vector<std::string> paras;
      std::size_t begin = 0;
      for (std::size_t i = 0; i <= at.size(); ++i) {
        const std::size_t end = i < at.size() ? at[i] : words.size();
        paras.push_back(make_paragraph({words.begin() + static_cast<std::ptrdiff_t>(begin),
                                        words.begin() + static_cast<std::ptrdiff_t>(end)}));
        begin = end;
      }
      return paras;
    };
    groups.push_back(Group{cut(src_cuts), cut(tgt_cuts)});
  }

  std::size_t total_src = 0;
  for (const auto& g : groups) total_src += g.src.size();
  std::vector<std::size_t> gibberish_before(groups.size() + 1, 0);
  if (options.gibberish_ratio > 0.0) {
    const auto count = std::max<std::size_t>(
        1, static_cast<std::size_t>(options.gibberish_ratio * static_cast<double>(total_src) + 0.5));
    for (std::size_t k = 0; k < count; ++k) ++gibberish_before[uniform(rng, 0, groups.size())];
  }

  SyntheticPair pair;
  auto inject = [&](std::size_t boundary) {
    for (std::size_t k = 0; k < gibberish_before[boundary]; ++k) {
      pair.gibberish_src.push_back(pair.src_paragraphs.size());
      pair.src_paragraphs.push_back(gibberish_paragraph(rng));
    }
  };
  for (std::size_t g = 0; g < groups.size(); ++g) {
    inject(g);
    const IndexRange src{pair.src_paragraphs.size(), pair.src_paragraphs.size() + groups[g].src.size() - 1};
    const IndexRange tgt{pair.tgt_paragraphs.size(), pair.tgt_paragraphs.size() + groups[g].tgt.size() - 1};
    pair.src_paragraphs.insert(pair.src_paragraphs.end(), groups[g].src.begin(), groups[g].src.end());
    pair.tgt_paragraphs.insert(pair.tgt_paragraphs.end(), groups[g].tgt.begin(), groups[g].tgt.end());
    pair.truth.emplace_back(src, tgt);
  }
  inject(groups.size());
  return pair;
}

namespace {

const std::vector<std::string>& cell_words() {
  static const std::vector<std::string> words = {
      "UNDP", "budget", "total", "council", "2023", "report", "member", "states",
      "annex", "item", "联合国", "大会", "决议", "报告", "秘书长", "发展", "预算", "成员国"};
  return words;
}

std::string pad(const std::string& s, std::size_t width) {
  const std::size_t w = display_width(s);
  return s + std::string(width > w ? width - w : 0, ' ');
}

std::string rstrip(std::string s) {
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

using CellLines = std::vector<std::string>;

std::vector<std::vector<CellLines>> random_cells(std::mt19937_64& rng, std::size_t rows,
                                                 std::size_t cols, bool allow_wrap) {
  std::vector<std::vector<CellLines>> cells(rows, std::vector<CellLines>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      CellLines lines;
      if (c > 0 && chance(rng, 0.1)) {
        lines.push_back("");
      } else {
        const std::size_t nlines = allow_wrap && chance(rng, 0.25) ? uniform(rng, 2, 3) : 1;
        for (std::size_t l = 0; l < nlines; ++l) {
          std::string line;
          const std::size_t nwords = uniform(rng, 1, 2);
          for (std::size_t w = 0; w < nwords; ++w) {
            if (w > 0) line += ' ';
            line += cell_words()[uniform(rng, 0, cell_words().size() - 1)];
          }
          lines.push_back(std::move(line));
        }
      }
      cells[r][c] = std::move(lines);
    }
  }
  return cells;
}

std::string logical_text(const CellLines& lines) {
  std::string out;
  for (const auto& l : lines) {
    if (l.empty()) continue;
    if (!out.empty()) out += ' ';
    out += l;
  }
  return out;
}

std::size_t height(const std::vector<CellLines>& row) {
  std::size_t h = 1;
  for (const auto& c : row) h = std::max(h, c.size());
  return h;
}

}  // namespace

std::vector<std::string> render_table(std::mt19937_64& rng, TableKind kind,
                                      std::vector<std::vector<std::string>>& cells_out) {
  const std::size_t cols = uniform(rng, 2, 5);
  const std::size_t rows = uniform(rng, 2, 6);
  const bool wrap = chance(rng, 0.5);
  auto cells = random_cells(rng, rows, cols, wrap);
  const std::string indent(uniform(rng, 0, 2), ' ');
  // A lone wrapped body row would read as several rows, since nothing
  // separates it from a one-line-per-row body.
  const std::size_t body_rows = kind == TableKind::DashRuled ? rows - 1 : rows;
  if (kind != TableKind::Grid && body_rows == 1) {
    for (auto& cell : cells.back()) cell = {logical_text(cell)};
  }

  std::vector<std::size_t> widths(cols, 3);
  for (const auto& row : cells)
    for (std::size_t c = 0; c < cols; ++c)
      for (const auto& l : row[c]) widths[c] = std::max(widths[c], display_width(l));

  cells_out.clear();
  for (const auto& row : cells) {
    std::vector<std::string> texts;
    for (const auto& c : row) texts.push_back(logical_text(c));
    cells_out.push_back(std::move(texts));
  }

  std::vector<std::string> lines;
  if (kind == TableKind::Grid) {
    auto border = [&](char fill) {
      std::string b = indent + "+";
      for (auto w : widths) b += std::string(w + 2, fill) + "+";
      return b;
    };
    lines.push_back(border('-'));
    for (std::size_t r = 0; r < rows; ++r) {
      const std::size_t h = height(cells[r]);
      for (std::size_t l = 0; l < h; ++l) {
        std::string line = indent + "|";
        for (std::size_t c = 0; c < cols; ++c) {
          const std::string text = l < cells[r][c].size() ? cells[r][c][l] : "";
          line += " " + pad(text, widths[c] + 1) + "|";
        }
        lines.push_back(std::move(line));
      }
      lines.push_back(border(r == 0 && chance(rng, 0.5) ? '=' : '-'));
    }
    return lines;
  }

  auto segmented = [&] {
    std::string rule = indent;
    for (std::size_t c = 0; c < cols; ++c) {
      if (c > 0) rule += ' ';
      rule += std::string(widths[c], '-');
    }
    return rule;
  };
  auto render_row = [&](const std::vector<CellLines>& row) {
    std::vector<std::string> out;
    const std::size_t h = height(row);
    for (std::size_t l = 0; l < h; ++l) {
      std::string line = indent;
      for (std::size_t c = 0; c < cols; ++c) {
        const std::string text = l < row[c].size() ? row[c][l] : "";
        line += pad(text, widths[c]);
        if (c + 1 < cols) line += ' ';
      }
      out.push_back(rstrip(std::move(line)));
    }
    return out;
  };

  const std::size_t first_body = kind == TableKind::DashRuled ? 1 : 0;
  bool multiline_body = false;
  for (std::size_t r = first_body; r < rows; ++r) multiline_body = multiline_body || height(cells[r]) > 1;

  if (kind == TableKind::DashRuled) {
    std::size_t total = 0;
    for (auto w : widths) total += w;
    total += cols - 1;
    const std::string full = chance(rng, 0.5) ? indent + std::string(total, '-') : segmented();
    lines.push_back(full);
    for (auto& l : render_row(cells[0])) lines.push_back(std::move(l));
    lines.push_back(segmented());
    for (std::size_t r = 1; r < rows; ++r) {
      if (r > 1 && multiline_body) lines.push_back("");
      for (auto& l : render_row(cells[r])) lines.push_back(std::move(l));
    }
    lines.push_back(full);
  } else {
    lines.push_back(segmented());
    for (std::size_t r = 0; r < rows; ++r) {
      if (r > 0 && multiline_body) lines.push_back("");
      for (auto& l : render_row(cells[r])) lines.push_back(std::move(l));
    }
    lines.push_back(segmented());
  }
  return lines;
}

TableDocument make_table_document(std::mt19937_64& rng) {
  TableDocument doc;
  std::vector<std::string> lines;
  auto prose = [&] {
    const std::size_t n = uniform(rng, 1, 3);
    for (std::size_t l = 0; l < n; ++l) {
      std::vector<std::string> words;
      const std::size_t nwords = uniform(rng, 4, 12);
      for (std::size_t w = 0; w < nwords; ++w) words.push_back(base_word(rng));
      lines.push_back(make_paragraph(words));
    }
  };
  prose();
  const std::size_t ntables = uniform(rng, 1, 3);
  for (std::size_t t = 0; t < ntables; ++t) {
    lines.push_back("");
    PlantedTable planted;
    planted.kind = static_cast<TableKind>(uniform(rng, 0, 2));
    auto rendered = render_table(rng, planted.kind, planted.cells);
    planted.span = {lines.size(), lines.size() + rendered.size()};
    lines.insert(lines.end(), rendered.begin(), rendered.end());
    doc.tables.push_back(std::move(planted));
    lines.push_back("");
    prose();
  }
  doc.text = join_lines(lines) + "\n";
  return doc;
}

}  // namespace uprprc::testing
