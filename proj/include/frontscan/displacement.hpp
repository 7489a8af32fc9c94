// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <frontscan/chain_model.hpp>
#include <frontscan/config.hpp>
#include <frontscan/snapshot.hpp>

namespace frontscan {

// Pre-state identifier for a simulated run: the state before `block_number`, mined by `miner`.
struct OracleContext {
    std::uint64_t block_number{0};
    Address miner;
};

class OracleError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Executes an ordering of transactions from a block pre-state and reports the number of
// instructions each transaction executed. Must be deterministic for equal inputs and safe to
// call from several window workers at once.
class ExecutionOracle {
  public:
    virtual ~ExecutionOracle() = default;
    virtual std::vector<std::uint64_t> run(std::span<const Transaction> ordering, const OracleContext& context) = 0;
};

struct DisplacementAttack {
    Transaction attacker_tx;
    Transaction victim_tx;
    Address attacker_account;
    Address bot_contract;
    std::uint64_t timestamp{0};  // block timestamp of the attacker transaction
    Wei gain{0};
    Wei cost{0};
    Wei profit{0};
    std::optional<Rational> cost_usd;
    std::optional<Rational> profit_usd;
    Wei gas_price_delta{0};
    std::uint64_t block_delta{0};
};

struct DisplacementDiagnostics {
    std::size_t windows{0};
    std::size_t prescreen_hits{0};
    std::size_t input_matches{0};
    std::size_t heuristic_passes{0};
    std::size_t simulation_rejects{0};
    std::size_t oracle_failures{0};

    DisplacementDiagnostics& operator+=(const DisplacementDiagnostics& o) noexcept;
    friend bool operator==(const DisplacementDiagnostics&, const DisplacementDiagnostics&) = default;
};

struct DisplacementScan {
    std::vector<DisplacementAttack> attacks;
    DisplacementDiagnostics diagnostics;
};

struct BlockWindow {
    std::uint64_t first{0};
    std::uint64_t last{0};

    friend bool operator==(const BlockWindow&, const BlockWindow&) = default;
};

// Windows of `length` blocks starting every `stride` blocks, until one reaches `last_block`.
[[nodiscard]] std::vector<BlockWindow> displacement_windows(std::uint64_t first_block, std::uint64_t last_block,
                                                            std::uint64_t length, std::uint64_t stride);

// Distinct senders, distinct receivers, strictly higher attacker gas price, and the victim's
// non-overlapping 4-byte chunk count at least `size_ratio` of the attacker's.
[[nodiscard]] bool check_displacement_heuristics(const Transaction& attacker, const Transaction& victim,
                                                 const Fraction& size_ratio = Fraction{25, 100});

// True when either transaction executes a different number of instructions depending on order.
// Throws OracleError when the oracle cannot run.
[[nodiscard]] bool validate_by_simulation(const Transaction& attacker, const Transaction& victim,
                                          ExecutionOracle& oracle, const OracleContext& context);

[[nodiscard]] DisplacementAttack compute_displacement_result(const Transaction& attacker, const Transaction& victim,
                                                             const ChainSnapshot& snapshot);

// Windows run in parallel; the merge is a sorted de-duplication, so output is independent of scheduling.
[[nodiscard]] DisplacementScan scan_displacement(const ChainSnapshot& snapshot, const DisplacementSettings& settings,
                                                 ExecutionOracle& oracle);

// Reference driver: same window kernel, one window at a time.
[[nodiscard]] DisplacementScan scan_displacement_serial(const ChainSnapshot& snapshot,
                                                        const DisplacementSettings& settings, ExecutionOracle& oracle);

}  // namespace frontscan
