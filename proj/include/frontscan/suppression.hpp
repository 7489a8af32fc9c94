// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <frontscan/chain_model.hpp>
#include <frontscan/config.hpp>
#include <frontscan/snapshot.hpp>

namespace frontscan {

// Transactions of one block sent to the same receiver, all consuming more than the base gas
// and more than the configured share of their own gas limit.
struct StuffingCluster {
    std::uint64_t block_number{0};
    Address receiver;
    std::vector<Transaction> txs;
};

enum class SuppressionStrategy {
    kControlledGasLoop,    // [GAS, GT, ISZERO, JUMPI] loop, no exception
    kUncontrolledGasLoop,  // [SLOAD, TIMESTAMP, ADD, SSTORE] loop, ends in revert
    kAssert,               // assert failure burns the whole limit
    kUnknown,
};

enum class AttackStatus {
    kSuccess,
    kFailure,
};

struct SuppressionRound {
    Transaction investment_tx;
    std::vector<Transaction> stuffing_txs;
    AttackStatus status{AttackStatus::kFailure};
    Wei prize_claimed{0};
    std::optional<Hash32> claim_tx;
    std::optional<Hash32> interrupted_by;
};

struct SuppressionAttack {
    Address victim_contract;
    std::vector<Address> bot_contracts;
    std::vector<Address> attacker_accounts;
    std::vector<std::pair<Address, Address>> account_bot_pairs;  // (stuffing sender, bot)
    std::vector<SuppressionRound> rounds;
    SuppressionStrategy strategy{SuppressionStrategy::kUnknown};
    AttackStatus status{AttackStatus::kFailure};
    std::uint64_t first_block{0};
    std::uint64_t last_block{0};
    std::uint64_t timestamp{0};
    std::size_t blocks_stuffed{0};
    std::size_t tx_count{0};
    Wei investments{0};
    Wei fees{0};
    Wei cost{0};
    Wei prize{0};
    Wei profit{0};
    std::optional<Rational> cost_usd;
    std::optional<Rational> profit_usd;
};

struct SuppressionScan {
    std::vector<SuppressionAttack> attacks;
    std::size_t unclassified{0};            // attacks whose first stuffing trace matched no strategy
    std::size_t rejected_no_investment{0};  // stuffing sequences without an attacker investment
};

[[nodiscard]] std::vector<StuffingCluster> find_stuffing_clusters(const Block& block,
                                                                  const SuppressionSettings& settings = {});

// True when block b-1 or b+1 holds a qualifying cluster with the same receiver.
[[nodiscard]] bool confirm_neighbors(const ChainSnapshot& snapshot, const StuffingCluster& cluster,
                                     const SuppressionSettings& settings = {});

[[nodiscard]] std::size_t count_sequence(std::span<const std::string> opcodes, std::span<const std::string_view> pattern);

// kUnknown when the trace matches none of the three strategies.
[[nodiscard]] SuppressionStrategy classify_strategy(const ExecutionTrace& trace, std::size_t loop_count = 10);

// Orders attacker investments, outsider investments, prize claims and stuffing transactions by
// (block, index) and splits them into rounds. Empty when no attacker investment exists.
[[nodiscard]] std::vector<SuppressionRound> segment_rounds(const ChainSnapshot& snapshot, const Address& victim_contract,
                                                           std::span<const Transaction> stuffing_txs,
                                                           std::span<const Address> attacker_accounts,
                                                           std::uint64_t from_block, std::uint64_t to_block);

// Fills cost, profit and counters from the rounds; identity fields must already be set on `attack`.
void compute_suppression_result(SuppressionAttack& attack, const ChainSnapshot& snapshot);

[[nodiscard]] SuppressionScan scan_suppression(const ChainSnapshot& snapshot, const SuppressionSettings& settings = {});
[[nodiscard]] SuppressionScan scan_suppression_serial(const ChainSnapshot& snapshot,
                                                      const SuppressionSettings& settings = {});

[[nodiscard]] std::string to_string(SuppressionStrategy strategy);
[[nodiscard]] SuppressionStrategy suppression_strategy_from_string(std::string_view text);
[[nodiscard]] std::string to_string(AttackStatus status);
[[nodiscard]] AttackStatus attack_status_from_string(std::string_view text);

}  // namespace frontscan
