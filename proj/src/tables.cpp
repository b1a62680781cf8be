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

#include "uprprc/tables.hpp"

#include <algorithm>
#include <optional>

#include "uprprc/unicode.hpp"

namespace uprprc {

const char* to_string(TableKind kind) {
  switch (kind) {
    case TableKind::DashRuled:
      return "dash-ruled";
    case TableKind::TopBottomDelimited:
      return "top-bottom";
    case TableKind::Grid:
      return "grid";
  }
  return "?";
}

int char_width(char32_t cp) {
  if (unicode::is_combining_mark(cp)) return 0;
  if (unicode::is_east_asian_wide(cp)) return 2;
  return 1;
}

std::size_t display_width(std::string_view s) {
  std::size_t w = 0;
  for (std::size_t pos = 0; pos < s.size();) w += char_width(unicode::next(s, pos));
  return w;
}

namespace {

constexpr std::size_t kOpenEnd = static_cast<std::size_t>(-1);

// One code point of a line with its display column and byte range.
struct Glyph {
  char32_t cp;
  std::size_t col;
  int width;
  std::size_t byte_begin;
  std::size_t byte_end;
};

std::vector<Glyph> glyphs(std::string_view line) {
  std::vector<Glyph> out;
  std::size_t col = 0;
  for (std::size_t pos = 0; pos < line.size();) {
    const std::size_t start = pos;
    const char32_t cp = unicode::next(line, pos);
    const int w = char_width(cp);
    out.push_back(Glyph{cp, col, w, start, pos});
    col += static_cast<std::size_t>(w);
  }
  return out;
}

struct Run {
  std::size_t begin;  // display column of first glyph
  std::size_t end;    // display column just past the last glyph
  bool operator==(const Run&) const = default;
};

// Maximal runs of non-whitespace glyphs.
std::vector<Run> rule_runs(std::string_view line) {
  std::vector<Run> runs;
  bool in_run = false;
  for (const auto& g : glyphs(line)) {
    if (unicode::is_whitespace(g.cp)) {
      in_run = false;
      continue;
    }
    if (!in_run) runs.push_back(Run{g.col, g.col});
    runs.back().end = g.col + static_cast<std::size_t>(g.width);
    in_run = true;
  }
  return runs;
}

bool is_blank(std::string_view line) { return unicode::trim(line).empty(); }

// '+' columns of a grid border line such as "+----+====+", or nullopt.
std::optional<std::vector<std::size_t>> grid_corners(std::string_view line) {
  const auto g = glyphs(line);
  std::size_t first = 0;
  while (first < g.size() && unicode::is_whitespace(g[first].cp)) ++first;
  std::size_t last = g.size();
  while (last > first && unicode::is_whitespace(g[last - 1].cp)) --last;
  if (last - first < 3 || g[first].cp != U'+' || g[last - 1].cp != U'+')
    return std::nullopt;
  std::vector<std::size_t> corners;
  bool prev_corner = false;
  for (std::size_t i = first; i < last; ++i) {
    const char32_t cp = g[i].cp;
    if (cp == U'+') {
      if (prev_corner) return std::nullopt;  // "++" has no cell between
      corners.push_back(g[i].col);
      prev_corner = true;
    } else if (cp == U'-' || cp == U'=' || cp == U':') {
      prev_corner = false;
    } else {
      return std::nullopt;
    }
  }
  return corners;
}

// First and last non-whitespace glyph of a grid content line, both '|'.
std::optional<Run> grid_content_extent(std::string_view line) {
  const auto g = glyphs(line);
  std::size_t first = 0;
  while (first < g.size() && unicode::is_whitespace(g[first].cp)) ++first;
  std::size_t last = g.size();
  while (last > first && unicode::is_whitespace(g[last - 1].cp)) --last;
  if (last - first < 2 || g[first].cp != U'|' || g[last - 1].cp != U'|')
    return std::nullopt;
  return Run{g[first].col, g[last - 1].col};
}

}  // namespace

bool is_dash_rule(std::string_view line) {
  std::size_t non_space = 0;
  std::size_t dashes = 0;
  for (std::size_t pos = 0; pos < line.size();) {
    const char32_t cp = unicode::next(line, pos);
    if (unicode::is_whitespace(cp)) continue;
    ++non_space;
    if (cp == U'-') ++dashes;
  }
  return dashes >= 3 && dashes * 5 >= non_space * 4;
}

std::vector<std::size_t> parse_columns(std::string_view rule_line) {
  const auto trimmed = unicode::trim(rule_line);
  std::vector<std::size_t> bounds;
  if (!trimmed.empty() && trimmed.front() == '+') {
    auto corners = grid_corners(rule_line);
    if (!corners) throw NotATable("not a grid border line");
    corners->pop_back();
    bounds = std::move(*corners);
  } else {
    if (!is_dash_rule(rule_line)) throw NotATable("not a dash rule line");
    for (const auto& run : rule_runs(rule_line)) bounds.push_back(run.begin);
  }
  if (bounds.size() < 2) throw NotATable("fewer than two columns");
  return bounds;
}

namespace {

// Cell index owning display column `col`.
std::size_t cell_of(const std::vector<std::size_t>& bounds, std::size_t col) {
  auto it = std::upper_bound(bounds.begin(), bounds.end(), col);
  return it == bounds.begin() ? 0 : static_cast<std::size_t>(it - bounds.begin()) - 1;
}

// Splits one physical line into untrimmed cell slices.
std::vector<std::string> slice_cells(std::string_view line, const TableBlock& block,
                                     bool* separator_mismatch) {
  const bool grid = block.kind == TableKind::Grid;
  const auto& bounds = block.col_bounds;
  std::vector<std::string> cells(bounds.size());
  std::vector<bool> separator_seen(bounds.size(), false);
  for (const auto& g : glyphs(line)) {
    if (grid) {
      if (g.col >= block.right_edge) continue;  // closing '|' and beyond
      if (g.cp == U'|' && std::binary_search(bounds.begin(), bounds.end(), g.col)) {
        separator_seen[cell_of(bounds, g.col)] = true;
        continue;
      }
    }
    cells[cell_of(bounds, g.col)].append(line.substr(g.byte_begin, g.byte_end - g.byte_begin));
  }
  if (grid && separator_mismatch != nullptr) {
    for (bool seen : separator_seen)
      if (!seen) *separator_mismatch = true;
  }
  return cells;
}

void fill_rows(TableBlock& block, std::span<const std::string> lines,
               const std::vector<std::vector<std::size_t>>& row_lines,
               Diagnostics* diagnostics) {
  for (const auto& physical : row_lines) {
    std::vector<std::string> row(block.col_bounds.size());
    bool mismatch = false;
    for (std::size_t li : physical) {
      auto cells = slice_cells(lines[li], block, &mismatch);
      for (std::size_t c = 0; c < cells.size(); ++c) {
        const auto piece = unicode::trim(cells[c]);
        if (piece.empty()) continue;
        if (!row[c].empty()) row[c] += ' ';
        row[c] += piece;
      }
    }
    if (mismatch && diagnostics != nullptr) {
      diagnostics->push_back("grid table at line " + std::to_string(physical.front() + 1) +
                             ": row does not follow the header column separators");
    }
    block.rows.push_back(std::move(row));
    block.row_lines.push_back(physical);
  }
}

// Body rows of a dash-ruled table: blank-line separated groups when the body
// has blank lines, otherwise one row per line.
std::vector<std::vector<std::size_t>> body_rows(std::span<const std::string> lines,
                                                std::size_t begin, std::size_t end) {
  bool has_blank = false;
  for (std::size_t i = begin; i < end; ++i) has_blank = has_blank || is_blank(lines[i]);
  std::vector<std::vector<std::size_t>> rows;
  if (!has_blank) {
    for (std::size_t i = begin; i < end; ++i) rows.push_back({i});
    return rows;
  }
  std::vector<std::size_t> current;
  for (std::size_t i = begin; i < end; ++i) {
    if (is_blank(lines[i])) {
      if (!current.empty()) rows.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(i);
    }
  }
  if (!current.empty()) rows.push_back(std::move(current));
  return rows;
}

// A rule agrees with a reference segmented rule when it has the same runs or
// is a single run spanning the same extent.
bool rule_consistent(const std::vector<Run>& rule, const std::vector<Run>& ref) {
  if (rule == ref) return true;
  return rule.size() == 1 && rule.front().begin == ref.front().begin &&
         rule.front().end == ref.back().end;
}

std::string at_line(std::size_t i) { return "line " + std::to_string(i + 1); }

void detect_grids(std::span<const std::string> lines, std::vector<bool>& claimed,
                  std::vector<TableBlock>& out, Diagnostics* diagnostics) {
  const std::size_t n = lines.size();
  std::size_t i = 0;
  while (i < n) {
    auto corners = grid_corners(lines[i]);
    if (!corners) {
      ++i;
      continue;
    }
    std::size_t last_border = i;
    std::size_t j = i;
    while (j + 1 < n && (grid_corners(lines[j + 1]) || grid_content_extent(lines[j + 1]))) {
      ++j;
      if (grid_corners(lines[j])) last_border = j;
    }
    if (last_border == i) {
      ++i;
      continue;
    }
    bool valid = corners->size() >= 3;
    bool has_content = false;
    std::string why = corners->size() < 3 ? "single column" : "";
    for (std::size_t k = i + 1; valid && k <= last_border; ++k) {
      if (auto c = grid_corners(lines[k])) {
        if (*c != *corners) {
          valid = false;
          why = "inconsistent border widths at " + at_line(k);
        }
      } else {
        has_content = true;
        auto extent = grid_content_extent(lines[k]);
        if (extent->begin != corners->front() || extent->end != corners->back()) {
          valid = false;
          why = "content line out of the border frame at " + at_line(k);
        }
      }
    }
    if (valid && !has_content) {
      valid = false;
      why = "no content lines";
    }
    if (!valid) {
      if (diagnostics != nullptr)
        diagnostics->push_back("skipped grid candidate at " + at_line(i) + ": " + why);
      i = last_border + 1;
      continue;
    }

    TableBlock block;
    block.kind = TableKind::Grid;
    block.line_span = {i, last_border + 1};
    block.right_edge = corners->back();
    block.col_bounds.assign(corners->begin(), corners->end() - 1);
    std::vector<std::vector<std::size_t>> rows;
    std::vector<std::size_t> current;
    for (std::size_t k = i + 1; k <= last_border; ++k) {
      if (grid_corners(lines[k])) {
        if (!current.empty()) rows.push_back(std::move(current));
        current.clear();
      } else {
        current.push_back(k);
      }
    }
    fill_rows(block, lines, rows, diagnostics);
    for (std::size_t k = i; k <= last_border; ++k) claimed[k] = true;
    out.push_back(std::move(block));
    i = last_border + 1;
  }
}

std::vector<std::size_t> unclaimed_rules(std::span<const std::string> lines,
                                         const std::vector<bool>& claimed) {
  std::vector<std::size_t> rules;
  for (std::size_t i = 0; i < lines.size(); ++i)
    if (!claimed[i] && is_dash_rule(lines[i])) rules.push_back(i);
  return rules;
}

bool any_claimed(const std::vector<bool>& claimed, std::size_t begin, std::size_t end) {
  for (std::size_t i = begin; i < end; ++i)
    if (claimed[i]) return true;
  return false;
}

void detect_dash_ruled(std::span<const std::string> lines, std::vector<bool>& claimed,
                       std::vector<TableBlock>& out, Diagnostics* diagnostics) {
  const auto rules = unclaimed_rules(lines, claimed);
  std::size_t k = 0;
  while (k + 2 < rules.size()) {
    const std::size_t top = rules[k];
    const std::size_t split = rules[k + 1];
    const std::size_t bottom = rules[k + 2];
    bool shape = split - top >= 2 && bottom - split >= 2 &&
                 !is_blank(lines[split + 1]) && !is_blank(lines[bottom - 1]) &&
                 !any_claimed(claimed, top, bottom + 1);
    for (std::size_t i = top + 1; shape && i < split; ++i) shape = !is_blank(lines[i]);
    const auto split_runs = rule_runs(lines[split]);
    if (!shape || split_runs.size() < 2) {
      ++k;
      continue;
    }
    if (!rule_consistent(rule_runs(lines[top]), split_runs) ||
        !rule_consistent(rule_runs(lines[bottom]), split_runs)) {
      if (diagnostics != nullptr)
        diagnostics->push_back("skipped dash-ruled candidate at " + at_line(top) +
                               ": inconsistent rule widths");
      ++k;
      continue;
    }
    TableBlock block;
    block.kind = TableKind::DashRuled;
    block.line_span = {top, bottom + 1};
    for (const auto& run : split_runs) block.col_bounds.push_back(run.begin);
    std::vector<std::vector<std::size_t>> rows;
    std::vector<std::size_t> header;
    for (std::size_t i = top + 1; i < split; ++i) header.push_back(i);
    rows.push_back(std::move(header));
    for (auto& r : body_rows(lines, split + 1, bottom)) rows.push_back(std::move(r));
    fill_rows(block, lines, rows, diagnostics);
    for (std::size_t i = top; i <= bottom; ++i) claimed[i] = true;
    out.push_back(std::move(block));
    k += 3;
  }
}

void detect_top_bottom(std::span<const std::string> lines, std::vector<bool>& claimed,
                       std::vector<TableBlock>& out, Diagnostics* diagnostics) {
  const auto rules = unclaimed_rules(lines, claimed);
  std::size_t k = 0;
  while (k + 1 < rules.size()) {
    const std::size_t top = rules[k];
    const std::size_t bottom = rules[k + 1];
    const auto top_runs = rule_runs(lines[top]);
    const bool shape = top_runs.size() >= 2 && bottom - top >= 2 &&
                       !is_blank(lines[top + 1]) && !is_blank(lines[bottom - 1]) &&
                       !any_claimed(claimed, top, bottom + 1);
    if (!shape) {
      ++k;
      continue;
    }
    if (!rule_consistent(rule_runs(lines[bottom]), top_runs)) {
      if (diagnostics != nullptr)
        diagnostics->push_back("skipped top/bottom candidate at " + at_line(top) +
                               ": inconsistent rule widths");
      ++k;
      continue;
    }
    TableBlock block;
    block.kind = TableKind::TopBottomDelimited;
    block.line_span = {top, bottom + 1};
    for (const auto& run : top_runs) block.col_bounds.push_back(run.begin);
    fill_rows(block, lines, body_rows(lines, top + 1, bottom), diagnostics);
    for (std::size_t i = top; i <= bottom; ++i) claimed[i] = true;
    out.push_back(std::move(block));
    k += 2;
  }
}

}  // namespace

std::vector<TableBlock> detect_tables(std::span<const std::string> lines,
                                      Diagnostics* diagnostics) {
  std::vector<bool> claimed(lines.size(), false);
  std::vector<TableBlock> blocks;
  detect_grids(lines, claimed, blocks, diagnostics);
  detect_dash_ruled(lines, claimed, blocks, diagnostics);
  detect_top_bottom(lines, claimed, blocks, diagnostics);
  std::sort(blocks.begin(), blocks.end(), [](const TableBlock& a, const TableBlock& b) {
    return a.line_span.begin < b.line_span.begin;
  });
  return blocks;
}

std::vector<std::string> flatten_table(const TableBlock& block) {
  std::vector<std::string> out;
  for (const auto& row : block.rows) {
    std::string line;
    for (const auto& cell : row) {
      if (cell.empty()) continue;
      if (!line.empty()) line += ' ';
      line += cell;
    }
    if (!line.empty()) out.push_back(std::move(line));
  }
  return out;
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t begin = 0;
  while (true) {
    const std::size_t nl = text.find('\n', begin);
    if (nl == std::string_view::npos) {
      lines.emplace_back(text.substr(begin));
      return lines;
    }
    lines.emplace_back(text.substr(begin, nl - begin));
    begin = nl + 1;
  }
}

std::string join_lines(std::span<const std::string> lines) {
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i > 0) out += '\n';
    out += lines[i];
  }
  return out;
}

namespace {

// Glyphs of `line` in display columns [begin, end).
std::string column_slice(std::string_view line, std::size_t begin, std::size_t end) {
  std::string out;
  for (const auto& g : glyphs(line))
    if (g.col >= begin && g.col < end)
      out.append(line.substr(g.byte_begin, g.byte_end - g.byte_begin));
  return out;
}

// Replaces display columns [begin, end) of `line` with `content` padded to
// the column width. `end == kOpenEnd` replaces the rest of the line.
std::string column_replace(std::string_view line, std::size_t begin, std::size_t end,
                           std::string_view content) {
  std::string out;
  std::size_t col = 0;
  const auto g = glyphs(line);
  for (const auto& glyph : g) {
    if (glyph.col >= begin) break;
    out.append(line.substr(glyph.byte_begin, glyph.byte_end - glyph.byte_begin));
    col = glyph.col + static_cast<std::size_t>(glyph.width);
  }
  out.append(begin > col ? begin - col : 0, ' ');
  out.append(content);
  if (end == kOpenEnd) return out;
  const std::size_t used = display_width(content);
  out.append(end - begin > used ? end - begin - used : 0, ' ');
  for (const auto& glyph : g)
    if (glyph.col >= end) out.append(line.substr(glyph.byte_begin, glyph.byte_end - glyph.byte_begin));
  return out;
}

std::vector<std::string> flatten_pass(std::span<const std::string> lines,
                                      Diagnostics* diagnostics);

// Inlines tables nested inside the cells of `block`, keeping the block's own
// layout intact. Returns nullopt if no cell holds a table (or the inlined rows
// would not fit the cell).
std::optional<std::vector<std::string>> rewrite_nested(const TableBlock& block,
                                                       std::span<const std::string> lines,
                                                       Diagnostics* diagnostics) {
  const bool grid = block.kind == TableKind::Grid;
  const auto& bounds = block.col_bounds;
  std::vector<std::string> region(lines.begin() + static_cast<std::ptrdiff_t>(block.line_span.begin),
                                  lines.begin() + static_cast<std::ptrdiff_t>(block.line_span.end));
  bool changed = false;
  for (const auto& physical : block.row_lines) {
    for (std::size_t c = 0; c < bounds.size(); ++c) {
      const std::size_t begin = grid ? bounds[c] + 1 : (c == 0 ? 0 : bounds[c]);
      const std::size_t end =
          c + 1 < bounds.size() ? bounds[c + 1] : (grid ? block.right_edge : kOpenEnd);
      std::vector<std::string> slices;
      for (std::size_t li : physical)
        slices.push_back(column_slice(region[li - block.line_span.begin], begin, end));
      if (detect_tables(slices).empty()) continue;
      const auto inner = flatten_pass(slices, diagnostics);
      if (inner.size() > slices.size()) return std::nullopt;
      if (end != kOpenEnd) {
        for (const auto& l : inner)
          if (display_width(l) > end - begin) return std::nullopt;
      }
      for (std::size_t t = 0; t < physical.size(); ++t) {
        auto& target = region[physical[t] - block.line_span.begin];
        target = column_replace(target, begin, end, t < inner.size() ? inner[t] : "");
      }
      changed = true;
    }
  }
  if (!changed) return std::nullopt;
  return region;
}

std::vector<std::string> flatten_pass(std::span<const std::string> lines,
                                      Diagnostics* diagnostics) {
  const auto blocks = detect_tables(lines, diagnostics);
  std::vector<std::string> out;
  std::size_t cursor = 0;
  for (const auto& block : blocks) {
    out.insert(out.end(), lines.begin() + static_cast<std::ptrdiff_t>(cursor),
               lines.begin() + static_cast<std::ptrdiff_t>(block.line_span.begin));
    if (auto nested = rewrite_nested(block, lines, diagnostics)) {
      out.insert(out.end(), nested->begin(), nested->end());
    } else {
      for (auto& row : flatten_table(block)) out.push_back(std::move(row));
    }
    cursor = block.line_span.end;
  }
  out.insert(out.end(), lines.begin() + static_cast<std::ptrdiff_t>(cursor), lines.end());
  return out;
}

}  // namespace

std::string flatten_recursive(std::string_view text, int max_passes,
                              Diagnostics* diagnostics, int* passes_used) {
  auto lines = split_lines(text);
  for (int pass = 0;; ++pass) {
    if (detect_tables(lines).empty()) {
      if (passes_used != nullptr) *passes_used = pass;
      return join_lines(lines);
    }
    if (pass == max_passes) {
      throw FlattenDiverged("tables remain after " + std::to_string(max_passes) +
                            " flattening passes");
    }
    lines = flatten_pass(lines, diagnostics);
  }
}

}  // namespace uprprc
