// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include <frontscan/chain_model.hpp>
#include <frontscan/config.hpp>
#include <frontscan/cpmm.hpp>
#include <frontscan/ingestion.hpp>
#include <frontscan/snapshot.hpp>
#include <frontscan/suppression.hpp>

namespace frontscan {

enum class AttackKind {
    kDisplacement,
    kInsertion,
    kSuppression,
};

[[nodiscard]] std::string to_string(AttackKind kind);
[[nodiscard]] AttackKind attack_kind_from_string(std::string_view text);

struct PlantedAttack {
    AttackKind kind{AttackKind::kInsertion};
    std::vector<Hash32> key_txs;  // identifies the attack when scoring
    std::vector<Hash32> txs;      // every transaction the scenario emitted
    Wei expected_gain{0};
    Wei expected_cost{0};
    Wei expected_profit{0};
    std::optional<Wei> pre_fee_profit;  // insertion only
    std::vector<AttackStatus> expected_rounds;
    std::optional<AttackStatus> expected_status;
    std::optional<SuppressionStrategy> strategy;
    std::optional<std::size_t> blocks_stuffed;
    std::optional<std::size_t> tx_count;
};

// A near miss the detectors must not report.
struct NegativeControl {
    AttackKind kind{AttackKind::kInsertion};
    std::string reason;
    std::vector<Hash32> txs;
};

struct Manifest {
    std::uint64_t seed{0};
    std::uint64_t first_block{0};
    std::uint64_t last_block{0};
    std::vector<PlantedAttack> planted;
    std::vector<NegativeControl> controls;

    [[nodiscard]] nlohmann::ordered_json to_json() const;
    static Manifest from_json(const nlohmann::json& j);
    static Manifest load(const std::filesystem::path& path);
};

struct InsertionPlan {
    CpmmPool pool;
    Wei attacker_dx{0};
    Wei victim_dx{0};
    Wei buy_gas_price{0};
    Wei victim_gas_price{0};
    Wei sell_gas_price{0};
    bool via_bot{true};
    Fraction swap_fee{0, 1};
    bool gas_token{false};
};

struct DisplacementPlan {
    Wei reward{0};
    Wei attacker_gas_price{0};
    Wei victim_gas_price{0};
    std::size_t padding{0};  // extra payload bytes after the copied input
    bool next_block{false};  // victim lands one block after the attacker
};

struct RoundPlan {
    std::vector<std::size_t> stuffing_per_block;  // at least two blocks, at least two transactions each
    bool interrupted{false};
};

struct SuppressionPlan {
    Wei prize{0};
    Wei investment{0};
    Wei gas_price{0};
    std::vector<RoundPlan> rounds;
    SuppressionStrategy strategy{SuppressionStrategy::kControlledGasLoop};
    std::size_t accounts{2};
};

// Blocks a suppression plan spans, from the first investment to the last outcome.
[[nodiscard]] std::uint64_t suppression_span(const SuppressionPlan& plan);

struct SynthOptions {
    std::uint64_t seed{1};
    std::uint64_t blocks{2'000};
    std::uint64_t first_block{10'000'000};
    std::uint64_t first_timestamp{1'600'000'000};
    std::size_t insertions{50};
    std::size_t displacements{20};
    std::size_t suppressions{5};
    bool controls{true};
    double background_per_block{4.0};
};

inline constexpr std::uint64_t kSyntheticBlockGasLimit = 12'500'000;

struct SyntheticChain {
    std::vector<Block> blocks;
    std::vector<RawLog> logs;
    std::map<Address, Bytes> code;
    std::vector<ExecutionTrace> traces;
    std::vector<InternalTransfer> internal;
    PriceTable prices;
    Manifest manifest;

    // Fixture records: code first, then per block its block, log, trace and internal records.
    [[nodiscard]] std::string fixture_ndjson() const;
    [[nodiscard]] ChainSnapshot snapshot() const;
    // Writes fixture.ndjson, manifest.json and prices.csv.
    void write(const std::filesystem::path& directory) const;
};

// Low-level builder. Scenarios reserve their own blocks; finish() orders transactions, assigns
// indices and log positions and returns the chain.
class ChainBuilder {
  public:
    ChainBuilder(std::uint64_t seed, std::uint64_t first_block, std::uint64_t blocks, std::uint64_t first_timestamp);

    [[nodiscard]] std::uint64_t first_block() const noexcept { return first_block_; }
    [[nodiscard]] std::uint64_t last_block() const noexcept { return first_block_ + blocks_.size() - 1; }

    // Throws a usage error when g(buy) > g(victim) >= g(sell) does not hold or attacker_dx is zero.
    PlantedAttack plant_insertion(std::uint64_t block, const InsertionPlan& plan);
    PlantedAttack plant_displacement(std::uint64_t block, const DisplacementPlan& plan);
    PlantedAttack plant_suppression(std::uint64_t first_block, const SuppressionPlan& plan);

    NegativeControl control_insertion_amount_mismatch(std::uint64_t block);
    NegativeControl control_insertion_split_blocks(std::uint64_t block);  // uses block and block + 1
    NegativeControl control_insertion_equal_gas(std::uint64_t block);
    NegativeControl control_displacement_same_sender(std::uint64_t block);
    NegativeControl control_displacement_lower_gas(std::uint64_t block);
    NegativeControl control_displacement_small_victim(std::uint64_t block);
    NegativeControl control_displacement_benign_copy(std::uint64_t block);
    NegativeControl control_displacement_victim_only(std::uint64_t block);
    NegativeControl control_suppression_isolated(std::uint64_t block);
    NegativeControl control_suppression_low_ratio(std::uint64_t block);    // two blocks, exclusive
    NegativeControl control_suppression_plain_transfers(std::uint64_t block);  // two blocks
    NegativeControl control_suppression_no_investment(std::uint64_t block);    // two blocks, exclusive

    void add_background(std::uint64_t block, std::size_t count);

    // Attacker identities share accounts and bot bytecode across scenarios.
    void use_identity(std::size_t identity);
    void set_identity_count(std::size_t count);

    [[nodiscard]] bool exclusive(std::uint64_t block) const;

    SyntheticChain finish(std::uint64_t seed);

  private:
    struct PendingTx {
        Transaction tx;
        double order{0};
        std::vector<TransferEvent> events;  // tx_index and log_index assigned on finish
        std::optional<ExecutionTrace> trace;
        std::vector<InternalTransfer> internal;
    };

    struct Identity {
        std::vector<Address> accounts;
        std::vector<Address> bots;
    };

    struct Pool {
        Address exchange;
        Address token;
        CpmmPool state;
    };

    std::uint64_t next_u64();
    std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);  // inclusive
    Address fresh_address();
    Hash32 fresh_hash();
    Bytes random_bytes(std::size_t n);
    Address deploy(Bytes code);
    Address deploy_tagged(std::string_view tag);
    Pool new_pool(const CpmmPool& state);
    Transaction make_tx(std::uint64_t block, const Address& from, const std::optional<Address>& to, const Wei& value,
                        std::uint64_t gas_used, std::uint64_t gas_limit, const Wei& gas_price, Bytes input);
    PendingTx& push(std::uint64_t block, Transaction tx, double order);
    double next_order(std::uint64_t block);
    std::size_t slot(std::uint64_t block) const;
    Identity& identity();

    PlantedAttack insertion_impl(std::uint64_t buy_block, std::uint64_t rest_block, const InsertionPlan& plan,
                                 const std::optional<TokenAmount>& sell_amount);
    PlantedAttack displacement_impl(std::uint64_t block, const DisplacementPlan& plan, bool same_sender,
                                    bool with_prize);
    void stuffing_block(std::uint64_t block, const Address& bot, const std::vector<Address>& senders, std::size_t count,
                        SuppressionStrategy strategy, const Wei& gas_price, std::uint64_t reserved_gas,
                        std::vector<Hash32>& out);

    std::mt19937_64 rng_;
    std::uint64_t first_block_;
    std::uint64_t first_timestamp_;
    std::vector<std::vector<PendingTx>> blocks_;
    std::vector<double> order_cursor_;
    std::vector<bool> exclusive_;
    std::vector<Address> miners_;
    std::map<Address, Bytes> code_;
    std::vector<Identity> identities_;
    std::size_t current_identity_{0};
    std::vector<Pool> background_pools_;
    std::vector<Address> background_tokens_;
};

// Seeded corpus: planted attacks of all three kinds, their negative controls, and background traffic.
[[nodiscard]] SyntheticChain generate_chain(const SynthOptions& options);

}  // namespace frontscan
