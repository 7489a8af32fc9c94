// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>
#include <unordered_map>
#include <vector>

#include <frontscan/displacement.hpp>

namespace frontscan {

// Code prefix marking a generated prize contract; the remaining code bytes are its secret.
inline constexpr std::string_view kPrizeCodeMarker = "PRIZE:";

// Instruction counts reported by the replay oracle.
inline constexpr std::uint64_t kReplayBaseSteps = 100;
inline constexpr std::uint64_t kReplayClaimSteps = 1'000;
inline constexpr std::uint64_t kReplayLateClaimSteps = 200;

// Execution oracle for generated fixtures. Instead of interpreting bytecode it replays the prize
// logic: the first transaction of an ordering whose input carries an unclaimed secret claims it,
// later carriers of the same secret fail, and every other transaction runs the same fixed path.
class ReplayOracle final : public ExecutionOracle {
  public:
    explicit ReplayOracle(const std::unordered_map<Address, Bytes>& code);

    std::vector<std::uint64_t> run(std::span<const Transaction> ordering, const OracleContext& context) override;

    [[nodiscard]] std::size_t secret_count() const noexcept { return secrets_.size(); }

  private:
    std::vector<Bytes> secrets_;  // sorted, so runs do not depend on map iteration order
};

[[nodiscard]] Bytes prize_code(ByteView secret);

}  // namespace frontscan
