// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <frontscan/replay_oracle.hpp>

#include <algorithm>
#include <functional>
#include <set>

namespace frontscan {

ReplayOracle::ReplayOracle(const std::unordered_map<Address, Bytes>& code) {
    for (const auto& [address, bytes] : code) {
        if (bytes.size() <= kPrizeCodeMarker.size()) continue;
        if (!std::equal(kPrizeCodeMarker.begin(), kPrizeCodeMarker.end(), bytes.begin())) continue;
        secrets_.emplace_back(bytes.begin() + static_cast<std::ptrdiff_t>(kPrizeCodeMarker.size()), bytes.end());
    }
    std::sort(secrets_.begin(), secrets_.end());
    secrets_.erase(std::unique(secrets_.begin(), secrets_.end()), secrets_.end());
}

std::vector<std::uint64_t> ReplayOracle::run(std::span<const Transaction> ordering, const OracleContext& context) {
    if (context.miner.is_zero()) throw OracleError{"no pre-state for a block without a miner"};
    std::set<std::size_t> claimed;
    std::vector<std::uint64_t> steps;
    steps.reserve(ordering.size());
    for (const auto& tx : ordering) {
        std::uint64_t n = kReplayBaseSteps + tx.input.size();
        for (std::size_t s = 0; s < secrets_.size(); ++s) {
            const auto& secret = secrets_[s];
            const auto it = std::search(tx.input.begin(), tx.input.end(),
                                        std::boyer_moore_searcher(secret.begin(), secret.end()));
            if (it == tx.input.end()) continue;
            n += claimed.insert(s).second ? kReplayClaimSteps : kReplayLateClaimSteps;
        }
        steps.push_back(n);
    }
    return steps;
}

Bytes prize_code(ByteView secret) {
    Bytes code;
    code.reserve(kPrizeCodeMarker.size() + secret.size());
    code.insert(code.end(), kPrizeCodeMarker.begin(), kPrizeCodeMarker.end());
    code.insert(code.end(), secret.begin(), secret.end());
    return code;
}

}  // namespace frontscan
