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

// Small text helpers shared by the file formats.

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lindlearn::text {

// Shortest representation that parses back to the identical double.
std::string format_double(double x);

// Whole-token parse; throws std::invalid_argument on trailing garbage.
double parse_double(std::string_view s);
long long parse_int(std::string_view s);
bool parse_bool(std::string_view s);

std::string_view trim(std::string_view s);

// Splits on any run of the given delimiter characters, dropping empties.
std::vector<std::string_view> split(std::string_view s, std::string_view delims = " \t");

}  // namespace lindlearn::text
