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
#include <filesystem>
#include <map>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uprprc/corpus_io.hpp"
#include "uprprc/error.hpp"

namespace uprprc {

// Per-language sampling protocol for judge evaluation. The defaults draw
// 100 + 100 + 1800 = 2000 pairs.
struct SampleSpec {
  std::size_t min_chars = 32;
  std::size_t min_words = 5;
  std::size_t n_longest = 100;
  std::size_t n_shortest = 100;
  std::size_t n_uniform = 1800;
  std::uint64_t seed = 0;

  std::size_t total() const { return n_longest + n_shortest + n_uniform; }
};

enum class Stratum { Longest, Shortest, Uniform };

const char* to_string(Stratum s);
Stratum stratum_from_string(std::string_view s);

struct SampledPair {
  std::string pair_id;
  Stratum stratum = Stratum::Uniform;
  BilingualPairRecord record;

  bool operator==(const SampledPair&) const = default;
};

// "<symbol>/<src_lang>/<src first>-<src last>/<en first>-<en last>"
std::string pair_id(const BilingualPairRecord& record);

// False only when the English side is short in characters AND in words.
bool passes_length_filter(const BilingualPairRecord& record, const SampleSpec& spec);

// Filters the pool, then takes the longest and shortest English sides (by
// character count, ties by pair id) and a seeded uniform draw without
// replacement from the rest. Throws PoolTooSmall if fewer than spec.total()
// pairs survive the filter.
std::vector<SampledPair> sample_pairs(std::span<const BilingualPairRecord> pool,
                                      const SampleSpec& spec);

// Uniform integer in [0, bound) from a 64-bit engine, without modulo bias.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound);

struct LabeledPair {
  std::string symbol;
  std::string pair_id;
  std::string model;
  bool verdict = false;

  bool operator==(const LabeledPair&) const = default;
};

// Fraction of documents whose sampled pairs are all labeled true by
// `model`. Throws NoLabels when the model has no labels.
double document_accuracy(std::span<const LabeledPair> labels, std::string_view model);

struct ConfusionCounts {
  std::uint64_t false_pos = 0;  // model true, human false
  std::uint64_t false_neg = 0;  // model false, human true

  bool operator==(const ConfusionCounts&) const = default;
};

// Human verdict per pair id.
using GroundTruth = std::map<std::string, bool>;

// Throws MissingGroundTruth when a labeled pair has no human verdict.
ConfusionCounts confusion_counts(std::span<const LabeledPair> labels, const GroundTruth& truth);
ConfusionCounts confusion_counts(std::span<const LabeledPair> labels, const GroundTruth& truth,
                                 std::string_view model);

std::string encode_sampled(const SampledPair& pair);
SampledPair decode_sampled(std::string_view line);
std::string encode_label(const LabeledPair& label);
LabeledPair decode_label(std::string_view line);

std::vector<LabeledPair> read_labels(const std::filesystem::path& path, ReadOptions options = {});
void write_labels(std::span<const LabeledPair> labels, const std::filesystem::path& path);
std::vector<SampledPair> read_samples(const std::filesystem::path& path, ReadOptions options = {});
void write_samples(std::span<const SampledPair> samples, const std::filesystem::path& path);

}  // namespace uprprc
