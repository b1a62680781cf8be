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

#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "uprprc/eval.hpp"
#include "uprprc/gapa.hpp"
#include "uprprc/tables.hpp"
#include "uprprc/text_normalize.hpp"

namespace uprprc::cli {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, std::string_view data) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error("cannot write " + path.string());
}

fs::path temp_path(const fs::path& target) {
  auto tmp = target;
  tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  return tmp;
}

std::string env_name(const std::string& setting) {
  std::string out = "UPRPRC_";
  for (char c : setting) out += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

template <class T>
T parse_number(const std::string& name, const std::string& value) {
  T out{};
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end)
    throw UsageError("invalid value '" + value + "' for " + name);
  return out;
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  while (begin <= s.size()) {
    auto end = s.find(',', begin);
    if (end == std::string_view::npos) end = s.size();
    auto item = std::string(s.substr(begin, end - begin));
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    if (!item.empty()) out.push_back(item);
    begin = end + 1;
  }
  return out;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

// Regular files under `root`, sorted by path.
std::vector<fs::path> files_under(const fs::path& root) {
  std::vector<fs::path> out;
  for (const auto& entry : fs::recursive_directory_iterator(root))
    if (entry.is_regular_file()) out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

bool is_record_file(const fs::path& p) {
  const auto name = p.filename().string();
  return name.ends_with(".jsonl") || name.ends_with(".jsonl.gz");
}

std::string symbol_from_key(std::string key) {
  std::replace(key.begin(), key.end(), '_', '/');
  return key;
}

// --- flatten -------------------------------------------------------------

int cmd_flatten(const fs::path& in, const fs::path& out) {
  if (!fs::exists(in)) throw UsageError("no such file or directory: " + in.string());
  std::vector<std::pair<fs::path, fs::path>> jobs;
  if (fs::is_directory(in)) {
    for (const auto& p : files_under(in)) jobs.emplace_back(p, out / fs::relative(p, in));
  } else {
    jobs.emplace_back(in, out);
  }
  int failures = 0;
  for (const auto& [src, dst] : jobs) {
    try {
      Diagnostics diag;
      const auto text = flatten_recursive(read_file(src), kDefaultMaxFlattenPasses, &diag);
      for (const auto& d : diag) std::cerr << src.string() << ": " << d << "\n";
      write_file(dst, text);
    } catch (const std::exception& e) {
      std::cerr << src.string() << ": " << e.what() << "\n";
      ++failures;
    }
  }
  return failures == 0 ? 0 : 1;
}

// --- align ---------------------------------------------------------------

std::unique_ptr<Translator> translator_for(const Settings& s) {
  return make_translator(s.translator, TranslatorOptions{s.dictionary, s.cache_dir});
}

int cmd_align(const fs::path& src, const fs::path& tgt, const std::string& lang,
              std::string symbol, const fs::path& out, const Settings& settings) {
  if (symbol.empty()) symbol = src.stem().string();
  auto translator = translator_for(settings);
  const auto result = align_texts(symbol, lang, read_file(src), read_file(tgt), *translator,
                                  settings.drop_threshold);
  for (const auto& d : result.alignment.diagnostics) std::cerr << symbol << ": " << d << "\n";

  std::ostringstream summary;
  summary << "groups: " << result.alignment.groups.size() << "\n"
          << "dropped_src: " << result.alignment.dropped_src.size() << "\n"
          << "dropped_en: " << result.alignment.dropped_tgt.size() << "\n"
          << "mean_hit_rate_src: " << fixed(mean(result.alignment.hit_rates.src)) << "\n"
          << "mean_hit_rate_en: " << fixed(mean(result.alignment.hit_rates.tgt)) << "\n";
  if (out.empty()) {
    for (const auto& r : result.records) std::cout << encode_bilingual(r) << "\n";
    std::cerr << summary.str();
  } else {
    if (out.has_parent_path()) fs::create_directories(out.parent_path());
    write_bilingual_file(result.records, out);
    std::cout << summary.str();
  }
  return 0;
}

// --- batch-align -----------------------------------------------------------

struct BatchTask {
  std::string key;
  std::string lang;
  fs::path src;
  fs::path en;
  fs::path out;
};

int cmd_batch_align(const fs::path& corpus, const fs::path& out_dir, const Settings& settings) {
  if (!fs::is_directory(corpus)) throw UsageError("not a directory: " + corpus.string());
  const auto langs = split_list(settings.langs);
  if (langs.empty()) throw UsageError("empty language list");
  translator_for(settings);  // fail early on a bad translator spec

  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(corpus))
    if (entry.is_directory()) dirs.push_back(entry.path());
  std::sort(dirs.begin(), dirs.end());

  std::vector<BatchTask> tasks;
  for (const auto& dir : dirs) {
    const auto en = dir / "en.txt";
    if (!fs::exists(en)) {
      std::cerr << dir.filename().string() << ": no en.txt, skipped\n";
      continue;
    }
    for (const auto& lang : langs) {
      const auto src = dir / (lang + ".txt");
      if (!fs::exists(src)) continue;
      const auto key = dir.filename().string();
      tasks.push_back({key, lang, src, en, out_dir / key / (lang + "2en.jsonl")});
    }
  }

  std::string settings_key = "drop_threshold=" + fixed(settings.drop_threshold, 6) +
                             "\ntranslator=" + settings.translator + "\n";
  if (!settings.dictionary.empty())
    settings_key += "dictionary=" + hex64(fnv1a64(read_file(settings.dictionary))) + "\n";

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> aligned{0};
  std::atomic<std::size_t> skipped{0};
  std::atomic<std::size_t> failed{0};
  std::mutex log_mutex;

  auto worker = [&] {
    std::unique_ptr<Translator> translator;
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const auto& t = tasks[i];
      try {
        const auto src_text = read_file(t.src);
        const auto en_text = read_file(t.en);
        std::uint64_t h = fnv1a64(settings_key);
        h = fnv1a64("lang=" + t.lang + "\n", h);
        h = fnv1a64(hex64(fnv1a64(src_text)), h);
        h = fnv1a64(hex64(fnv1a64(en_text)), h);
        const auto digest = hex64(h);
        auto sidecar = t.out;
        sidecar += ".hash";
        if (fs::exists(t.out) && fs::exists(sidecar) && read_file(sidecar) == digest + "\n") {
          ++skipped;
          continue;
        }
        if (!translator) translator = translator_for(settings);
        const auto result = align_texts(symbol_from_key(t.key), t.lang, src_text, en_text,
                                        *translator, settings.drop_threshold);
        fs::create_directories(t.out.parent_path());
        const auto tmp = temp_path(t.out);
        write_bilingual_file(result.records, tmp);
        fs::rename(tmp, t.out);
        const auto tmp_hash = temp_path(sidecar);
        write_file(tmp_hash, digest + "\n");
        fs::rename(tmp_hash, sidecar);
        ++aligned;
        if (!result.alignment.diagnostics.empty()) {
          std::lock_guard lock(log_mutex);
          for (const auto& d : result.alignment.diagnostics)
            std::cerr << t.key << "/" << t.lang << ": " << d << "\n";
        }
      } catch (const std::exception& e) {
        ++failed;
        std::lock_guard lock(log_mutex);
        std::cerr << t.key << "/" << t.lang << ": " << e.what() << "\n";
      }
    }
  };

  const std::size_t n_workers = std::max<std::size_t>(1, std::min<std::size_t>(settings.jobs, tasks.size()));
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  std::cout << "tasks: " << tasks.size() << "\naligned: " << aligned << "\nskipped: " << skipped
            << "\nfailed: " << failed << "\n";
  return failed == 0 ? 0 : 1;
}

// --- blocks ----------------------------------------------------------------

std::vector<fs::path> record_files(const fs::path& path) {
  if (!fs::exists(path)) throw UsageError("no such file or directory: " + path.string());
  if (!fs::is_directory(path)) return {path};
  std::vector<fs::path> out;
  for (const auto& p : files_under(path))
    if (is_record_file(p)) out.push_back(p);
  return out;
}

int cmd_blocks(const fs::path& in, const fs::path& out) {
  std::map<std::string, std::map<std::string, std::vector<BilingualPairRecord>>> by_symbol;
  for (const auto& file : record_files(in)) {
    for (auto& r : read_bilingual(file)) {
      auto& list = by_symbol[r.symbol][r.src_lang];
      list.push_back(std::move(r));
    }
  }
  std::vector<BlockRecord> blocks;
  Diagnostics diag;
  for (auto& [symbol, by_lang] : by_symbol) {
    for (auto& [lang, records] : by_lang) {
      std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
        return a.en_range.first < b.en_range.first;
      });
    }
    auto found = aggregate_blocks(symbol, by_lang, &diag);
    blocks.insert(blocks.end(), std::make_move_iterator(found.begin()),
                  std::make_move_iterator(found.end()));
  }
  for (const auto& d : diag) std::cerr << d << "\n";
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  write_blocks(blocks, out);
  std::cout << "symbols: " << by_symbol.size() << "\nblocks: " << blocks.size() << "\n";
  return 0;
}

// --- stats -----------------------------------------------------------------

int cmd_stats(const fs::path& corpus, const fs::path& out) {
  CorpusStats stats = empty_stats();
  RecordReader<FileLevelRecord> reader(corpus, decode_file_level);
  while (auto r = reader.next()) accumulate(stats, *r);

  std::vector<std::string> order(kFileLevelLanguages.begin(), kFileLevelLanguages.end());
  for (const auto& [lang, s] : stats)
    if (std::find(order.begin(), order.end(), lang) == order.end()) order.push_back(lang);

  std::printf("%-6s %10s %14s\n", "lang", "files", "tokens");
  ordered_json j = ordered_json::object();
  for (const auto& lang : order) {
    const auto& s = stats.at(lang);
    std::printf("%-6s %10llu %14llu\n", lang.c_str(), static_cast<unsigned long long>(s.files),
                static_cast<unsigned long long>(s.tokens));
    j[lang] = {{"files", s.files}, {"tokens", s.tokens}};
  }
  if (!out.empty()) write_file(out, j.dump() + "\n");
  return 0;
}

// --- sample ----------------------------------------------------------------

int cmd_sample(const fs::path& in, const std::string& lang, const fs::path& out,
               const Settings& settings) {
  std::vector<BilingualPairRecord> pool;
  for (const auto& file : record_files(in)) {
    for (auto& r : read_bilingual(file))
      if (r.src_lang == lang) pool.push_back(std::move(r));
  }
  SampleSpec spec;
  spec.seed = settings.seed;
  const auto samples = sample_pairs(pool, spec);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  write_samples(samples, out);
  std::map<Stratum, std::size_t> counts;
  for (const auto& s : samples) ++counts[s.stratum];
  std::cout << "pool: " << pool.size() << "\n";
  for (auto s : {Stratum::Longest, Stratum::Shortest, Stratum::Uniform})
    std::cout << to_string(s) << ": " << counts[s] << "\n";
  return 0;
}

// --- score -----------------------------------------------------------------

int cmd_score(const fs::path& labels_path, const fs::path& truth_path, const fs::path& out) {
  const auto labels = read_labels(labels_path);
  std::optional<GroundTruth> truth;
  if (!truth_path.empty()) {
    truth.emplace();
    for (const auto& l : read_labels(truth_path)) (*truth)[l.pair_id] = l.verdict;
  }
  std::set<std::string> models;
  for (const auto& l : labels) models.insert(l.model);
  if (models.empty()) throw NoLabels("label file is empty");

  std::printf("%-20s %10s", "model", "accuracy");
  if (truth) std::printf(" %6s %6s", "fp", "fn");
  std::printf("\n");
  std::string lines;
  for (const auto& model : models) {
    ordered_json j;
    j["model"] = model;
    const double acc = document_accuracy(labels, model);
    j["document_accuracy"] = acc;
    std::printf("%-20s %10s", model.c_str(), fixed(acc).c_str());
    if (truth) {
      const auto c = confusion_counts(labels, *truth, model);
      j["false_pos"] = c.false_pos;
      j["false_neg"] = c.false_neg;
      std::printf(" %6llu %6llu", static_cast<unsigned long long>(c.false_pos),
                  static_cast<unsigned long long>(c.false_neg));
    }
    std::printf("\n");
    lines += j.dump() + "\n";
  }
  if (!out.empty()) write_file(out, lines);
  return 0;
}

}  // namespace

std::optional<std::string> process_env(const std::string& name) {
  const char* v = std::getenv(name.c_str());
  if (v == nullptr) return std::nullopt;
  return std::string(v);
}

Settings resolve_settings(const std::map<std::string, std::string>& flags, const EnvLookup& env,
                          const fs::path& config_file) {
  nlohmann::json file = nlohmann::json::object();
  if (!config_file.empty()) {
    file = nlohmann::json::parse(read_file(config_file), nullptr, false);
    if (file.is_discarded() || !file.is_object())
      throw UsageError("config file " + config_file.string() + " is not a JSON object");
    for (const auto& [key, value] : file.items()) {
      if (std::find(kSettingNames.begin(), kSettingNames.end(), key) == kSettingNames.end())
        throw UsageError("unknown setting '" + key + "' in " + config_file.string());
    }
  }
  auto lookup = [&](const std::string& name) -> std::optional<std::string> {
    if (auto it = flags.find(name); it != flags.end()) return it->second;
    if (auto v = env(env_name(name))) return v;
    if (auto it = file.find(name); it != file.end())
      return it->is_string() ? it->get<std::string>() : it->dump();
    return std::nullopt;
  };

  Settings s;
  if (auto v = lookup("drop_threshold")) {
    s.drop_threshold = parse_number<double>("drop_threshold", *v);
    if (!(s.drop_threshold >= 0.0 && s.drop_threshold <= 1.0))
      throw UsageError("drop_threshold must be within [0, 1]");
  }
  if (auto v = lookup("translator")) s.translator = *v;
  if (auto v = lookup("dictionary")) s.dictionary = *v;
  if (auto v = lookup("cache_dir")) s.cache_dir = *v;
  if (auto v = lookup("jobs")) {
    s.jobs = parse_number<unsigned>("jobs", *v);
    if (s.jobs == 0) throw UsageError("jobs must be at least 1");
  }
  if (auto v = lookup("seed")) s.seed = parse_number<std::uint64_t>("seed", *v);
  if (auto v = lookup("langs")) s.langs = *v;
  return s;
}

AlignOutput align_texts(const std::string& symbol, const std::string& lang,
                        std::string_view src_raw, std::string_view en_raw, Translator& translator,
                        double drop_threshold) {
  const auto source = split_paragraphs(flatten_recursive(strip_format_controls(src_raw)));
  std::vector<std::string> translated;
  if (!source.empty()) translated = translator.translate({lang, source}).paragraphs;
  const auto src_doc = Document::from_paragraphs(symbol, lang, translated);
  const auto en_doc =
      Document::from_text(symbol, "en", flatten_recursive(strip_format_controls(en_raw)));

  AlignOutput out;
  out.alignment = align_documents(src_doc, en_doc, drop_threshold);
  out.records = write_bilingual(out.alignment, BilingualMeta{symbol, lang, source, &src_doc});
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Table flattening, paragraph alignment and evaluation for multilingual documents"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (also UPRPRC_CONFIG)");

  std::map<std::string, std::string> flags;
  auto setting = [&flags](CLI::App* sub, const std::string& flag, const std::string& name,
                          const std::string& help) {
    sub->add_option_function<std::string>(
        flag, [&flags, name](const std::string& v) { flags[name] = v; }, help);
  };
  auto translation_settings = [&](CLI::App* sub) {
    setting(sub, "--drop-threshold", "drop_threshold", "hit-rate threshold h_c (default 0.3)");
    setting(sub, "--translator", "translator", "identity | dict | external:<command>");
    setting(sub, "--dict", "dictionary", "word list for the dict translator");
    setting(sub, "--cache-dir", "cache_dir", "translation cache for external translators");
  };

  std::string in_path, out_path, tgt_path, lang, symbol, truth_path;

  auto* flatten = app.add_subcommand("flatten", "Inline plain-text tables");
  flatten->add_option("input", in_path, "file or directory")->required();
  flatten->add_option("output", out_path, "file or directory")->required();

  auto* align = app.add_subcommand("align", "Align one document with its English version");
  align->add_option("source", in_path)->required();
  align->add_option("english", tgt_path)->required();
  align->add_option("--lang", lang, "source language code")->required();
  align->add_option("--symbol", symbol, "record symbol (default: source file stem)");
  align->add_option("--out", out_path, "bilingual record file (default: stdout)");
  translation_settings(align);

  auto* batch = app.add_subcommand("batch-align", "Align every document of a corpus tree");
  batch->add_option("corpus", in_path, "directory of <symbol>/<lang>.txt")->required();
  batch->add_option("--out", out_path, "output directory")->required();
  setting(batch, "--langs", "langs", "comma-separated source languages");
  setting(batch, "--jobs", "jobs", "concurrent workers");
  translation_settings(batch);

  auto* blocks = app.add_subcommand("blocks", "Build all-language paragraph blocks");
  blocks->add_option("bilingual", in_path, "bilingual record file or directory")->required();
  blocks->add_option("--out", out_path, "block record file")->required();

  auto* stats = app.add_subcommand("stats", "Per-language file and token counts");
  stats->add_option("corpus", in_path, "file-level record file")->required();
  stats->add_option("--out", out_path, "JSON summary file");

  auto* sample = app.add_subcommand("sample", "Draw the evaluation sample for one language");
  sample->add_option("bilingual", in_path, "bilingual record file or directory")->required();
  sample->add_option("--lang", lang, "source language code")->required();
  sample->add_option("--out", out_path, "sampled pair file")->required();
  setting(sample, "--seed", "seed", "sampler seed");

  auto* score = app.add_subcommand("score", "Document accuracy and judge error counts");
  score->add_option("--labels", in_path, "label file")->required();
  score->add_option("--ground-truth", truth_path, "human label file");
  score->add_option("--out", out_path, "per-model JSON lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (config_path.empty()) config_path = process_env("UPRPRC_CONFIG").value_or("");
    const Settings settings = resolve_settings(flags, process_env, config_path);
    if (*flatten) return cmd_flatten(in_path, out_path);
    if (*align) return cmd_align(in_path, tgt_path, lang, symbol, out_path, settings);
    if (*batch) return cmd_batch_align(in_path, out_path, settings);
    if (*blocks) return cmd_blocks(in_path, out_path);
    if (*stats) return cmd_stats(in_path, out_path);
    if (*sample) return cmd_sample(in_path, lang, out_path, settings);
    if (*score) return cmd_score(in_path, truth_path, out_path);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace uprprc::cli
