// Copyright 2026 The lindlearn Authors
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

namespace lindlearn {

// Malformed configuration (bad key, bad value, inconsistent settings).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable or malformed input data; messages name the file and line.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A candidate model that cannot produce the requested observable, e.g. a
// steady state with no monitored emission. Callers map this to a zero
// likelihood.
class UnphysicalModel : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lindlearn
