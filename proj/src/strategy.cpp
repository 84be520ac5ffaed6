// Copyright 2026 The guiltnet Authors
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

#include "guiltnet/strategy.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace guiltnet {

namespace {

constexpr std::array<std::string_view, kNumStrategies> kNames = {
    "C", "D", "DGDN", "DGCN", "DGDS", "DGCS"};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::toupper(static_cast<unsigned char>(x)) ==
                  std::toupper(static_cast<unsigned char>(y));
         });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

std::string_view name(Strategy s) { return kNames[index(s)]; }

std::optional<Strategy> parse_strategy(std::string_view text) {
  text = trim(text);
  for (Strategy s : kAllStrategies) {
    if (iequals(text, name(s))) return s;
  }
  return std::nullopt;
}

std::vector<Strategy> parse_strategy_list(std::string_view text) {
  std::vector<Strategy> out;
  while (true) {
    const auto comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    if (!item.empty()) {
      const auto s = parse_strategy(item);
      if (!s) {
        throw std::invalid_argument("unknown strategy '" + std::string(item) +
                                    "'");
      }
      if (std::find(out.begin(), out.end(), *s) != out.end()) {
        throw std::invalid_argument("duplicate strategy '" +
                                    std::string(item) + "'");
      }
      out.push_back(*s);
    }
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string format_strategy_list(const std::vector<Strategy>& list) {
  std::string out;
  for (Strategy s : list) {
    if (!out.empty()) out += ',';
    out += name(s);
  }
  return out;
}

}  // namespace guiltnet
