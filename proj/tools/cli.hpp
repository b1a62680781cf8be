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

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uprprc/corpus_io.hpp"
#include "uprprc/translate.hpp"

namespace uprprc::cli {

// Settings shared by the subcommands. Each can come from a flag, an
// UPRPRC_<NAME> environment variable or a JSON config file, in that order.
struct Settings {
  double drop_threshold = 0.3;
  std::string translator = "identity";
  std::string dictionary;
  std::string cache_dir;
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  std::string langs = "ar,zh,fr,ru,es,de";
};

// Setting names as used in the config file; the environment variable is the
// upper-cased name with the UPRPRC_ prefix.
inline const std::vector<std::string> kSettingNames = {
    "drop_threshold", "translator", "dictionary", "cache_dir", "jobs", "seed", "langs"};

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

std::optional<std::string> process_env(const std::string& name);

// `flags` holds only the settings given on the command line.
Settings resolve_settings(const std::map<std::string, std::string>& flags, const EnvLookup& env,
                          const std::filesystem::path& config_file);

// Full single-document pipeline: strip, flatten tables, split, translate,
// align against the English text.
struct AlignOutput {
  std::vector<BilingualPairRecord> records;
  AlignmentResult alignment;
};
AlignOutput align_texts(const std::string& symbol, const std::string& lang,
                        std::string_view src_raw, std::string_view en_raw, Translator& translator,
                        double drop_threshold);

int run(int argc, char** argv);

}  // namespace uprprc::cli
