// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include <frontscan/chain_model.hpp>
#include <frontscan/config.hpp>
#include <frontscan/snapshot.hpp>

namespace frontscan {

enum class GasTokenUsage {
    kNone,
    kFirstOnly,
    kSecondOnly,
    kBoth,
};

enum class GasTokenKind {
    kGst2,
    kChi,
    kCustom,
};

struct GasTokenTag {
    GasTokenUsage usage{GasTokenUsage::kNone};
    std::optional<GasTokenKind> kind;

    friend bool operator==(const GasTokenTag&, const GasTokenTag&) = default;
};

// Attacker buy, victim buy, attacker sell, all within one block.
struct SandwichTriple {
    TransferEvent buy;
    TransferEvent victim;
    TransferEvent sell;

    friend bool operator==(const SandwichTriple&, const SandwichTriple&) = default;
};

struct InsertionAttack {
    SandwichTriple events;
    Transaction buy_tx;
    Transaction victim_tx;
    Transaction sell_tx;
    Address exchange;
    Address token;
    std::vector<Address> attacker_accounts;  // sorted, distinct
    std::optional<Address> bot_contract;     // absent when the accounts call the exchange directly
    std::uint64_t timestamp{0};
    Wei value_spent{0};
    Wei gain{0};
    Wei cost{0};
    Wei profit{0};
    std::optional<Rational> cost_usd;
    std::optional<Rational> profit_usd;
    Wei gas_price_delta1{0};  // g(buy) - g(victim)
    Wei gas_price_delta2{0};  // g(victim) - g(sell)
    GasTokenTag gas_tokens;
};

// All six sandwich heuristics. The amount check is |a_buy - a_sell| / max(a_buy, a_sell) <= tolerance.
[[nodiscard]] bool check_insertion_heuristics(const TransferEvent& buy, const TransferEvent& victim,
                                              const TransferEvent& sell,
                                              const Fraction& amount_tolerance = Fraction{1, 100});

// Every triple of one block's Transfer events satisfying the heuristics, ordered by
// (i(buy), i(victim), i(sell)) and then log index. Independent of the input list order.
[[nodiscard]] std::vector<SandwichTriple> find_block_sandwiches(std::span<const TransferEvent> events,
                                                                const Fraction& amount_tolerance);

[[nodiscard]] GasTokenTag tag_gas_token_usage(const ExecutionTrace* buy_trace, const ExecutionTrace* sell_trace,
                                              const GasTokenSettings& known_tokens);

[[nodiscard]] InsertionAttack compute_insertion_result(const SandwichTriple& triple, const ChainSnapshot& snapshot,
                                                       const GasTokenSettings& known_tokens = {});

// Blocks are scanned in parallel and merged in block order.
[[nodiscard]] std::vector<InsertionAttack> scan_insertion(const ChainSnapshot& snapshot,
                                                          const InsertionSettings& settings,
                                                          const GasTokenSettings& known_tokens = {});
[[nodiscard]] std::vector<InsertionAttack> scan_insertion_serial(const ChainSnapshot& snapshot,
                                                                 const InsertionSettings& settings,
                                                                 const GasTokenSettings& known_tokens = {});

struct CompetitionGroup {
    std::uint64_t block_number{0};
    Hash32 victim_tx;
    Address token;
    std::vector<std::size_t> attacks;  // indices into the input list
    bool self_interference{false};     // two or more members share an attacker cluster
};

// Cluster of an attack: its bot contract's cluster, else the cluster of its first attacker account.
[[nodiscard]] std::vector<CompetitionGroup> detect_competition(
    std::span<const InsertionAttack> attacks, const std::unordered_map<Address, std::uint64_t>& cluster_of);

[[nodiscard]] std::string to_string(GasTokenUsage usage);
[[nodiscard]] std::string to_string(GasTokenKind kind);

}  // namespace frontscan
