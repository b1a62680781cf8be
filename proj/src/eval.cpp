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

#include "uprprc/eval.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "uprprc/unicode.hpp"

namespace uprprc {

using nlohmann::json;
using nlohmann::ordered_json;

const char* to_string(Stratum s) {
  switch (s) {
    case Stratum::Longest:
      return "longest";
    case Stratum::Shortest:
      return "shortest";
    case Stratum::Uniform:
      return "uniform";
  }
  return "?";
}

Stratum stratum_from_string(std::string_view s) {
  if (s == "longest") return Stratum::Longest;
  if (s == "shortest") return Stratum::Shortest;
  if (s == "uniform") return Stratum::Uniform;
  throw std::invalid_argument("unknown stratum '" + std::string(s) + "'");
}

std::string pair_id(const BilingualPairRecord& r) {
  return r.symbol + "/" + r.src_lang + "/" + std::to_string(r.src_range.first) + "-" +
         std::to_string(r.src_range.last) + "/" + std::to_string(r.en_range.first) + "-" +
         std::to_string(r.en_range.last);
}

namespace {

std::size_t word_count(std::string_view text) {
  std::size_t words = 0;
  bool in_word = false;
  for (std::size_t pos = 0; pos < text.size();) {
    const bool space = unicode::is_whitespace(unicode::next(text, pos));
    if (!space && !in_word) ++words;
    in_word = !space;
  }
  return words;
}

}  // namespace

bool passes_length_filter(const BilingualPairRecord& record, const SampleSpec& spec) {
  const bool few_chars = unicode::code_point_count(record.en_text) < spec.min_chars;
  const bool few_words = word_count(record.en_text) < spec.min_words;
  return !(few_chars && few_words);
}

std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("bounded_draw with empty range");
  // Reject the tail that would make the modulo uneven.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

std::vector<SampledPair> sample_pairs(std::span<const BilingualPairRecord> pool,
                                      const SampleSpec& spec) {
  struct Candidate {
    std::string id;
    std::size_t chars;
    const BilingualPairRecord* record;
  };
  std::vector<Candidate> survivors;
  for (const auto& r : pool) {
    if (!passes_length_filter(r, spec)) continue;
    survivors.push_back(Candidate{pair_id(r), unicode::code_point_count(r.en_text), &r});
  }
  if (survivors.size() < spec.total()) {
    throw PoolTooSmall(std::to_string(survivors.size()) + " pairs survive the length filter, " +
                       std::to_string(spec.total()) + " needed");
  }

  // Ascending by length, ties by id; the longest stratum reads from the end.
  std::sort(survivors.begin(), survivors.end(), [](const Candidate& a, const Candidate& b) {
    return a.chars != b.chars ? a.chars < b.chars : a.id < b.id;
  });

  std::vector<SampledPair> out;
  out.reserve(spec.total());
  std::vector<bool> taken(survivors.size(), false);
  auto take = [&](std::size_t i, Stratum s) {
    taken[i] = true;
    out.push_back(SampledPair{survivors[i].id, s, *survivors[i].record});
  };

  // Longest: descending length, ties by ascending id.
  std::vector<std::size_t> by_longest(survivors.size());
  std::iota(by_longest.begin(), by_longest.end(), std::size_t{0});
  std::stable_sort(by_longest.begin(), by_longest.end(), [&](std::size_t a, std::size_t b) {
    return survivors[a].chars > survivors[b].chars;
  });
  for (std::size_t k = 0; k < spec.n_longest; ++k) take(by_longest[k], Stratum::Longest);
  for (std::size_t i = 0, n = 0; n < spec.n_shortest; ++i) {
    if (taken[i]) continue;
    take(i, Stratum::Shortest);
    ++n;
  }

  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < survivors.size(); ++i)
    if (!taken[i]) rest.push_back(i);
  std::mt19937_64 rng(spec.seed);
  for (std::size_t k = 0; k < spec.n_uniform; ++k) {
    const std::size_t pick = k + bounded_draw(rng, rest.size() - k);
    std::swap(rest[k], rest[pick]);
    take(rest[k], Stratum::Uniform);
  }
  return out;
}

double document_accuracy(std::span<const LabeledPair> labels, std::string_view model) {
  std::map<std::string, bool> good;
  for (const auto& l : labels) {
    if (l.model != model) continue;
    auto [it, inserted] = good.try_emplace(l.symbol, true);
    it->second = it->second && l.verdict;
  }
  if (good.empty()) throw NoLabels("no labels for model '" + std::string(model) + "'");
  const auto n_good = std::count_if(good.begin(), good.end(), [](const auto& kv) { return kv.second; });
  return static_cast<double>(n_good) / static_cast<double>(good.size());
}

ConfusionCounts confusion_counts(std::span<const LabeledPair> labels, const GroundTruth& truth) {
  ConfusionCounts counts;
  for (const auto& l : labels) {
    auto it = truth.find(l.pair_id);
    if (it == truth.end()) throw MissingGroundTruth("no human verdict for pair " + l.pair_id);
    if (l.verdict && !it->second) ++counts.false_pos;
    if (!l.verdict && it->second) ++counts.false_neg;
  }
  return counts;
}

ConfusionCounts confusion_counts(std::span<const LabeledPair> labels, const GroundTruth& truth,
                                 std::string_view model) {
  std::vector<LabeledPair> mine;
  for (const auto& l : labels)
    if (l.model == model) mine.push_back(l);
  return confusion_counts(mine, truth);
}

namespace {

template <class J>
std::string dump(const J& j) {
  return j.dump(-1, ' ', false, J::error_handler_t::replace);
}

json parse_object(std::string_view line) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw std::invalid_argument("not a JSON object");
  return j;
}

std::string get_string(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string())
    throw std::invalid_argument(std::string("missing string field '") + key + "'");
  return it->get<std::string>();
}

}  // namespace

std::string encode_sampled(const SampledPair& pair) {
  ordered_json j;
  j["pair_id"] = pair.pair_id;
  j["stratum"] = to_string(pair.stratum);
  j["record"] = ordered_json::parse(encode_bilingual(pair.record));
  return dump(j);
}

SampledPair decode_sampled(std::string_view line) {
  const json j = parse_object(line);
  SampledPair p;
  p.pair_id = get_string(j, "pair_id");
  p.stratum = stratum_from_string(get_string(j, "stratum"));
  auto it = j.find("record");
  if (it == j.end() || !it->is_object()) throw std::invalid_argument("missing object field 'record'");
  p.record = decode_bilingual(it->dump());
  return p;
}

std::string encode_label(const LabeledPair& label) {
  ordered_json j;
  j["symbol"] = label.symbol;
  j["pair_id"] = label.pair_id;
  j["model"] = label.model;
  j["verdict"] = label.verdict;
  return dump(j);
}

LabeledPair decode_label(std::string_view line) {
  const json j = parse_object(line);
  LabeledPair l;
  l.symbol = get_string(j, "symbol");
  l.pair_id = get_string(j, "pair_id");
  l.model = get_string(j, "model");
  auto it = j.find("verdict");
  if (it == j.end() || !it->is_boolean()) throw std::invalid_argument("'verdict' must be true or false");
  l.verdict = it->get<bool>();
  return l;
}

std::vector<LabeledPair> read_labels(const std::filesystem::path& path, ReadOptions options) {
  return RecordReader<LabeledPair>(path, decode_label, options).read_all();
}

void write_labels(std::span<const LabeledPair> labels, const std::filesystem::path& path) {
  write_records(labels, path, encode_label);
}

std::vector<SampledPair> read_samples(const std::filesystem::path& path, ReadOptions options) {
  return RecordReader<SampledPair>(path, decode_sampled, options).read_all();
}

void write_samples(std::span<const SampledPair> samples, const std::filesystem::path& path) {
  write_records(samples, path, encode_sampled);
}

}  // namespace uprprc
