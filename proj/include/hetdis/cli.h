// Copyright (c) 2026 The hetdis Authors
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

#ifndef HETDIS_CLI_H_
#define HETDIS_CLI_H_

#include <iostream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hetdis::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

struct Threshold {
  std::string label;  // as typed, e.g. "0.01%"
  double ratio = 0.0;
};

// "0.01%" -> 0.0001. Digits with an optional fractional part followed by
// '%', between 0% and 200%. Computed as an exact decimal integer divided by
// a power of ten, so the result is the correctly rounded ratio.
std::optional<double> ParsePercent(std::string_view text);

// Entry point behind the hetdis binary. Data goes to files and out, logs
// to err.
int Run(int argc, const char* const* argv, std::ostream& out = std::cout,
        std::ostream& err = std::cerr);
int Run(const std::vector<std::string>& args, std::ostream& out = std::cout,
        std::ostream& err = std::cerr);

}  // namespace hetdis::cli

#endif  // HETDIS_CLI_H_
