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

// Stand-in for an external translation process, speaking the framed JSON
// protocol on stdin/stdout.
//
//   fake_translator echo     returns the paragraphs unchanged
//   fake_translator upper    upper-cases ASCII letters
//   fake_translator short    drops the last paragraph of every response
//   fake_translator garbage  writes an unframed reply
//   fake_translator fail     exits with status 3 before reading anything
//   fake_translator dict     maps "hola"->"hello", "mundo"->"world"

#include <cctype>
#include <cstdio>
#include <iostream>
#include <string>

#include "json.hpp"

namespace {

bool read_frame(std::string& payload) {
  char digits[5] = {};
  if (std::fread(digits, 1, 4, stdin) != 4) return false;
  const std::size_t len = std::stoul(digits);
  payload.resize(len);
  if (len > 0 && std::fread(payload.data(), 1, len, stdin) != len) return false;
  return std::fgetc(stdin) == '\n';
}

void write_frame(const std::string& payload) {
  std::printf("%04zu%s\n", payload.size(), payload.c_str());
  std::fflush(stdout);
}

std::string translate(const std::string& mode, std::string text) {
  if (mode == "upper") {
    for (auto& c : text) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  } else if (mode == "dict") {
    std::string out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      auto end = text.find(' ', pos);
      if (end == std::string::npos) end = text.size();
      std::string w = text.substr(pos, end - pos);
      if (w == "hola") w = "hello";
      if (w == "mundo") w = "world";
      if (!out.empty()) out += ' ';
      out += w;
      pos = end + 1;
    }
    text = out;
  }
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string mode = argc > 1 ? argv[1] : "echo";
  if (mode == "fail") return 3;
  std::string payload;
  while (read_frame(payload)) {
    if (mode == "garbage") {
      std::printf("not a frame\n");
      std::fflush(stdout);
      continue;
    }
    auto request = nlohmann::json::parse(payload);
    nlohmann::json paragraphs = nlohmann::json::array();
    for (const auto& p : request.at("paragraphs"))
      paragraphs.push_back(translate(mode, p.get<std::string>()));
    if (mode == "short" && !paragraphs.empty()) paragraphs.erase(paragraphs.size() - 1);
    write_frame(nlohmann::json{{"paragraphs", paragraphs}}.dump());
  }
  return 0;
}
