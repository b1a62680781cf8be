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

#include <stdexcept>
#include <string>
#include <vector>

namespace uprprc {

// Free-form, human-readable notes collected by stages that skip or repair
// input rather than fail.
using Diagnostics = std::vector<std::string>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define UPRPRC_DEFINE_ERROR(Name)          \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  }

// tables
UPRPRC_DEFINE_ERROR(NotATable);
UPRPRC_DEFINE_ERROR(FlattenDiverged);
// lcs
UPRPRC_DEFINE_ERROR(OracleTooLarge);
// gapa
UPRPRC_DEFINE_ERROR(EmptyDocument);
// translate
UPRPRC_DEFINE_ERROR(AdapterUnavailable);
UPRPRC_DEFINE_ERROR(LengthMismatch);
UPRPRC_DEFINE_ERROR(ProtocolError);
UPRPRC_DEFINE_ERROR(InvalidRequest);
// eval
UPRPRC_DEFINE_ERROR(PoolTooSmall);
UPRPRC_DEFINE_ERROR(NoLabels);
UPRPRC_DEFINE_ERROR(MissingGroundTruth);

#undef UPRPRC_DEFINE_ERROR

// Malformed line in a record file. Carries the 1-based line number.
class RecordError : public Error {
 public:
  RecordError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace uprprc
