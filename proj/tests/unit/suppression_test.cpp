// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <frontscan/suppression.hpp>
#include <frontscan/synthetic_chain.hpp>

#include "support.hpp"

using namespace frontscan;
using namespace frontscan::testing;

namespace {

const Address kGame = addr(700);
const Address kBot = addr(701);
const Address kA1 = addr(11);
const Address kA2 = addr(12);
const Address kOutsider = addr(13);

std::vector<std::string> loop_trace(std::string_view a, std::string_view b, std::string_view c, std::string_view d,
                                    std::size_t n) {
    std::vector<std::string> ops{"PUSH1", "PUSH1", "MSTORE"};
    for (std::size_t i = 0; i < n; ++i) ops.insert(ops.end(), {std::string{a}, std::string{b}, std::string{c}, std::string{d}});
    return ops;
}

Transaction stuff(std::uint64_t id, const Address& from, std::uint64_t used = 995'000) {
    return tx(id, 0, 0, from, kBot, gwei(30), used, 1'000'000);
}

Transaction invest(std::uint64_t id, const Address& from, std::uint64_t eth_amount) {
    auto t = tx(id, 0, 0, from, kGame, gwei(20), 50'000, 100'000);
    t.value = eth(eth_amount);
    return t;
}

struct Scenario {
    std::vector<std::vector<Transaction>> blocks;
    std::map<Hash32, InternalTransfer> claims;
    std::vector<ExecutionTrace> traces;
};

ChainSnapshot build(const Scenario& s) {
    ChainSnapshot::Parts parts;
    parts.blocks = blocks_of(20, s.blocks);
    parts.code[kGame] = {0x01};
    parts.code[kBot] = {0x02};
    for (const auto& [h, t] : s.claims) parts.internal_transfers[h] = {t};
    for (const auto& t : s.traces) parts.traces[t.tx_hash] = t;
    return ChainSnapshot::build(std::move(parts));
}

// Invest in block 20, stuff blocks 21 and 22, claim 10 ETH in block 23.
Scenario single_round() {
    Scenario s;
    s.blocks = {{invest(1, kA1, 1)},
                {stuff(2, kA1), stuff(3, kA2), tx(4, 0, 0, addr(50), addr(51))},
                {stuff(5, kA1), stuff(6, kA2)},
                {tx(7, 0, 0, kA1, kGame)},
                {}};
    s.claims[hash(7)] = {hash(7), kGame, kA1, eth(10)};
    s.traces.push_back({hash(2), loop_trace("GAS", "GT", "ISZERO", "JUMPI", 11), TraceTerminal::kNormal, {}});
    return s;
}

}  // namespace

TEST_CASE("stuffing clusters need two qualifying transactions to one receiver") {
    const auto blocks = blocks_of(
        1, {{stuff(1, kA1), stuff(2, kA2), tx(3, 0, 0, kA1, addr(60)), tx(4, 0, 0, kA2, addr(60), gwei(20), 21'000, 21'000)},
            {stuff(5, kA1), stuff(6, kA2, 990'000)},
            {stuff(7, kA1)}});
    const auto c0 = find_stuffing_clusters(blocks[0]);
    REQUIRE(c0.size() == 1);
    CHECK(c0[0].receiver == kBot);
    CHECK(c0[0].txs.size() == 2);
    // 21,000 of 21,000 used is a full limit, but only the base cost.
    CHECK(find_stuffing_clusters(blocks_of(1, {{tx(8, 0, 0, kA1, kBot, gwei(1), 21'000, 21'000),
                                                tx(9, 0, 0, kA2, kBot, gwei(1), 21'000, 21'000)}})[0])
              .empty());
    // 990,000 of 1,000,000 is not above 99%.
    CHECK(find_stuffing_clusters(blocks[1]).empty());
    CHECK(find_stuffing_clusters(blocks[2]).empty());
}

TEST_CASE("non-overlapping sequence counting") {
    const std::array<std::string_view, 2> ab{"A", "B"};
    const std::vector<std::string> ops{"A", "B", "A", "B", "B", "A", "A", "B"};
    CHECK(count_sequence(ops, ab) == 3);
    const std::array<std::string_view, 2> aa{"A", "A"};
    const std::vector<std::string> triple{"A", "A", "A"};
    CHECK(count_sequence(triple, aa) == 1);
    CHECK(count_sequence(std::vector<std::string>{}, ab) == 0);
}

TEST_CASE("strategy classification") {
    ExecutionTrace controlled{hash(1), loop_trace("GAS", "GT", "ISZERO", "JUMPI", 11), TraceTerminal::kNormal, {}};
    CHECK(classify_strategy(controlled) == SuppressionStrategy::kControlledGasLoop);
    controlled.opcodes = loop_trace("GAS", "GT", "ISZERO", "JUMPI", 10);
    CHECK(classify_strategy(controlled) == SuppressionStrategy::kUnknown);  // needs more than ten

    ExecutionTrace uncontrolled{hash(2), loop_trace("SLOAD", "TIMESTAMP", "ADD", "SSTORE", 40), TraceTerminal::kRevert, {}};
    CHECK(classify_strategy(uncontrolled) == SuppressionStrategy::kUncontrolledGasLoop);
    uncontrolled.terminal = TraceTerminal::kNormal;
    CHECK(classify_strategy(uncontrolled) == SuppressionStrategy::kUnknown);

    ExecutionTrace assert_fail{hash(3), {"PUSH1", "INVALID"}, TraceTerminal::kAssert, {}};
    CHECK(classify_strategy(assert_fail) == SuppressionStrategy::kAssert);

    ExecutionTrace oog{hash(4), loop_trace("GAS", "GT", "ISZERO", "JUMPI", 50), TraceTerminal::kOutOfGas, {}};
    CHECK(classify_strategy(oog) == SuppressionStrategy::kUnknown);
}

TEST_CASE("a successful round") {
    const auto snap = build(single_round());
    const auto scan = scan_suppression(snap);
    REQUIRE(scan.attacks.size() == 1);
    const auto& a = scan.attacks[0];
    CHECK(a.victim_contract == kGame);
    CHECK(a.bot_contracts == std::vector<Address>{kBot});
    CHECK(a.attacker_accounts == std::vector<Address>{kA1, kA2});
    CHECK(a.first_block == 21);
    CHECK(a.last_block == 22);
    CHECK(a.strategy == SuppressionStrategy::kControlledGasLoop);
    REQUIRE(a.rounds.size() == 1);
    CHECK(a.rounds[0].status == AttackStatus::kSuccess);
    CHECK(a.rounds[0].claim_tx == hash(7));
    CHECK(a.rounds[0].stuffing_txs.size() == 4);
    CHECK(a.status == AttackStatus::kSuccess);
    CHECK(a.blocks_stuffed == 2);
    CHECK(a.tx_count == 5);
    // Investment 1 ETH; fees 50,000 x 20 gwei and 4 x 995,000 x 30 gwei. The claim fee is not counted.
    CHECK(a.investments == eth(1));
    CHECK(a.fees == Wei{"1000000000000000"} + Wei{"119400000000000000"});
    CHECK(a.cost == Wei{"1120400000000000000"});
    CHECK(a.prize == eth(10));
    CHECK(a.profit == Wei{"8879600000000000000"});
    CHECK(scan.unclassified == 0);
}

TEST_CASE("an outsider investment interrupts the round") {
    auto s = single_round();
    s.blocks[2].push_back(invest(8, kOutsider, 2));
    s.claims.clear();
    const auto scan = scan_suppression(build(s));
    REQUIRE(scan.attacks.size() == 1);
    const auto& a = scan.attacks[0];
    REQUIRE(a.rounds.size() == 1);
    CHECK(a.rounds[0].status == AttackStatus::kFailure);
    CHECK(a.rounds[0].interrupted_by == hash(8));
    CHECK(a.status == AttackStatus::kFailure);
    CHECK(a.prize == 0);
    CHECK(a.profit == -a.cost);
}

TEST_CASE("a second investment starts a new round") {
    Scenario s;
    s.blocks = {{invest(1, kA1, 1)},
                {stuff(2, kA1), stuff(3, kA2)},
                {stuff(4, kA1), stuff(5, kA2), invest(6, kA2, 1)},
                {stuff(7, kA1), stuff(8, kA2)},
                {tx(9, 0, 0, kA2, kGame)}};
    s.claims[hash(9)] = {hash(9), kGame, kA2, eth(5)};
    s.traces.push_back({hash(2), {"PUSH1", "INVALID"}, TraceTerminal::kAssert, {}});
    const auto scan = scan_suppression(build(s));
    REQUIRE(scan.attacks.size() == 1);
    const auto& a = scan.attacks[0];
    CHECK(a.strategy == SuppressionStrategy::kAssert);
    REQUIRE(a.rounds.size() == 2);
    CHECK(a.rounds[0].status == AttackStatus::kFailure);
    CHECK(a.rounds[0].stuffing_txs.size() == 4);
    CHECK(a.rounds[1].status == AttackStatus::kSuccess);
    CHECK(a.rounds[1].stuffing_txs.size() == 2);
    CHECK(a.investments == eth(2));
    CHECK(a.prize == eth(5));
}

TEST_CASE("stuffing without neighbors or investment is not an attack") {
    SUBCASE("single stuffed block") {
        Scenario s;
        s.blocks = {{invest(1, kA1, 1)}, {stuff(2, kA1), stuff(3, kA2)}, {}, {stuff(4, kA1), stuff(5, kA2)}, {}};
        const auto scan = scan_suppression(build(s));
        CHECK(scan.attacks.empty());
        CHECK(scan.rejected_no_investment == 0);
    }
    SUBCASE("no investment") {
        auto s = single_round();
        s.blocks[0].clear();
        const auto scan = scan_suppression(build(s));
        CHECK(scan.attacks.empty());
        CHECK(scan.rejected_no_investment == 1);
    }
}

TEST_CASE("neighbor confirmation") {
    const auto snap = build(single_round());
    const auto c21 = find_stuffing_clusters(*snap.block(21));
    REQUIRE(c21.size() == 1);
    CHECK(confirm_neighbors(snap, c21[0]));
    StuffingCluster lonely{21, addr(999), {}};
    CHECK_FALSE(confirm_neighbors(snap, lonely));
}

TEST_CASE("parallel and serial suppression scans agree") {
    SynthOptions opt;
    opt.seed = 5;
    opt.blocks = 400;
    opt.insertions = 2;
    opt.displacements = 2;
    opt.suppressions = 5;
    const auto chain = generate_chain(opt);
    const auto snap = chain.snapshot();
    const auto par = scan_suppression(snap);
    const auto ser = scan_suppression_serial(snap);
    CHECK(par.unclassified == ser.unclassified);
    CHECK(par.rejected_no_investment == ser.rejected_no_investment);
    REQUIRE(par.attacks.size() == ser.attacks.size());
    for (std::size_t i = 0; i < par.attacks.size(); ++i) {
        CHECK(par.attacks[i].first_block == ser.attacks[i].first_block);
        CHECK(par.attacks[i].profit == ser.attacks[i].profit);
        CHECK(par.attacks[i].rounds.size() == ser.attacks[i].rounds.size());
    }
    CHECK(par.attacks.size() == 5);
}

TEST_CASE("strategy and status names round-trip") {
    for (auto s : {SuppressionStrategy::kControlledGasLoop, SuppressionStrategy::kUncontrolledGasLoop,
                   SuppressionStrategy::kAssert, SuppressionStrategy::kUnknown}) {
        CHECK(suppression_strategy_from_string(to_string(s)) == s);
    }
    CHECK(attack_status_from_string("success") == AttackStatus::kSuccess);
    CHECK_THROWS_AS((void)attack_status_from_string("partial"), Error);
}
