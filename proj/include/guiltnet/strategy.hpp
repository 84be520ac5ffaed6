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

#ifndef GUILTNET_STRATEGY_HPP_
#define GUILTNET_STRATEGY_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace guiltnet {

// The six strategies, in payoff-matrix row/column order.
enum class Strategy : std::uint8_t { C = 0, D, DGDN, DGCN, DGDS, DGCS };

inline constexpr std::size_t kNumStrategies = 6;

inline constexpr std::array<Strategy, kNumStrategies> kAllStrategies = {
    Strategy::C,    Strategy::D,    Strategy::DGDN,
    Strategy::DGCN, Strategy::DGDS, Strategy::DGCS};

enum class Action : std::uint8_t { Cooperate, Defect };

constexpr std::size_t index(Strategy s) { return static_cast<std::size_t>(s); }

// Guilt threshold is either 0 (guilt-prone) or infinite (unemotional).
constexpr bool guilt_prone(Strategy s) {
  return s != Strategy::C && s != Strategy::D;
}

// Switches from D to C after the first guilt episode.
constexpr bool adaptive(Strategy s) {
  return s == Strategy::DGCN || s == Strategy::DGCS;
}

// Feels guilty only when the co-player is not an unemotional defector.
constexpr bool social(Strategy s) {
  return s == Strategy::DGDS || s == Strategy::DGCS;
}

constexpr Action initial_action(Strategy s) {
  return s == Strategy::C ? Action::Cooperate : Action::Defect;
}

std::string_view name(Strategy s);

// Accepts the canonical names, case-insensitively.
std::optional<Strategy> parse_strategy(std::string_view text);

// Parses a comma-separated list such as "C,D,DGCS". Throws
// std::invalid_argument on an unknown or duplicated name.
std::vector<Strategy> parse_strategy_list(std::string_view text);

std::string format_strategy_list(const std::vector<Strategy>& list);

}  // namespace guiltnet

#endif  // GUILTNET_STRATEGY_HPP_
