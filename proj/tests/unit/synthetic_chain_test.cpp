// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <filesystem>

#include <frontscan/ingestion.hpp>
#include <frontscan/insertion.hpp>
#include <frontscan/suppression.hpp>
#include <frontscan/synthetic_chain.hpp>

#include "support.hpp"

using namespace frontscan;
using namespace frontscan::testing;

namespace {

SynthOptions small(std::uint64_t seed) {
    SynthOptions opt;
    opt.seed = seed;
    opt.blocks = 400;
    opt.insertions = 6;
    opt.displacements = 4;
    opt.suppressions = 3;
    return opt;
}

std::size_t count_kind(const Manifest& m, AttackKind kind) {
    return static_cast<std::size_t>(
        std::count_if(m.planted.begin(), m.planted.end(), [&](const PlantedAttack& p) { return p.kind == kind; }));
}

}  // namespace

TEST_CASE("same seed, same chain") {
    const auto a = generate_chain(small(8));
    const auto b = generate_chain(small(8));
    CHECK(a.fixture_ndjson() == b.fixture_ndjson());
    CHECK(a.manifest.to_json() == b.manifest.to_json());
    CHECK(a.prices == b.prices);
    CHECK(generate_chain(small(9)).fixture_ndjson() != a.fixture_ndjson());
}

TEST_CASE("manifest lists every requested plant and control") {
    const auto chain = generate_chain(small(8));
    const auto& m = chain.manifest;
    CHECK(m.seed == 8);
    CHECK(m.first_block == 10'000'000);
    CHECK(m.last_block == 10'000'399);
    CHECK(count_kind(m, AttackKind::kInsertion) == 6);
    CHECK(count_kind(m, AttackKind::kDisplacement) == 4);
    CHECK(count_kind(m, AttackKind::kSuppression) == 3);
    CHECK(m.controls.size() == 12);
    for (const auto& p : m.planted) {
        CHECK_FALSE(p.key_txs.empty());
        CHECK(p.expected_profit == p.expected_gain - p.expected_cost);
    }
    CHECK(generate_chain([] {
              auto o = small(8);
              o.controls = false;
              return o;
          }())
              .manifest.controls.empty());
}

TEST_CASE("the first insertion is the canonical pool") {
    const auto chain = generate_chain(small(8));
    const auto it = std::find_if(chain.manifest.planted.begin(), chain.manifest.planted.end(),
                                 [](const PlantedAttack& p) { return p.kind == AttackKind::kInsertion; });
    REQUIRE(it != chain.manifest.planted.end());
    REQUIRE(it->pre_fee_profit);
    CHECK(*it->pre_fee_profit == Wei{"1009210268469527728"});
}

TEST_CASE("manifest survives a json round trip") {
    const auto chain = generate_chain(small(8));
    const auto j = chain.manifest.to_json();
    CHECK(Manifest::from_json(nlohmann::json::parse(j.dump())).to_json() == j);
}

TEST_CASE("fixture text reloads to the same snapshot") {
    const auto chain = generate_chain(small(8));
    auto source = FixtureDataSource::from_string(chain.fixture_ndjson());
    const auto loaded = load_snapshot(source, chain.manifest.first_block, chain.manifest.last_block, chain.prices);
    CHECK(loaded.same_content(chain.snapshot()));
}

TEST_CASE("write produces the three corpus files") {
    const auto dir = std::filesystem::temp_directory_path() / "frontscan_synth_test";
    std::filesystem::remove_all(dir);
    generate_chain(small(8)).write(dir);
    CHECK(std::filesystem::exists(dir / "fixture.ndjson"));
    CHECK(std::filesystem::exists(dir / "manifest.json"));
    CHECK(std::filesystem::exists(dir / "prices.csv"));
    const auto m = Manifest::load(dir / "manifest.json");
    CHECK(m.seed == 8);
    std::filesystem::remove_all(dir);
}

TEST_CASE("generator refuses impossible requests") {
    auto tiny = small(1);
    tiny.blocks = 15;
    CHECK_THROWS_AS((void)generate_chain(tiny), Error);

    auto crowded = small(1);
    crowded.blocks = 40;
    crowded.suppressions = 20;
    CHECK_THROWS_AS((void)generate_chain(crowded), Error);

    ChainBuilder builder{1, 100, 20, 1'600'000'000};
    InsertionPlan bad_gas;
    bad_gas.pool = {eth(100), eth(100)};
    bad_gas.attacker_dx = eth(1);
    bad_gas.victim_dx = eth(1);
    bad_gas.buy_gas_price = gwei(10);
    bad_gas.victim_gas_price = gwei(20);
    bad_gas.sell_gas_price = gwei(5);
    CHECK_THROWS_AS((void)builder.plant_insertion(105, bad_gas), Error);

    SuppressionPlan one_block;
    one_block.prize = eth(10);
    one_block.investment = eth(1);
    one_block.gas_price = gwei(30);
    one_block.rounds = {{{5}, false}};
    CHECK_THROWS_AS((void)builder.plant_suppression(105, one_block), Error);
    one_block.rounds = {{{2, 1}, false}};
    CHECK_THROWS_AS((void)builder.plant_suppression(105, one_block), Error);
}

TEST_CASE("the minimum suppression shape is detected") {
    ChainBuilder builder{2, 100, 20, 1'600'000'000};
    SuppressionPlan plan;
    plan.prize = eth(100);
    plan.investment = eth(2);
    plan.gas_price = gwei(40);
    plan.rounds = {{{3, 2}, false}};
    plan.strategy = SuppressionStrategy::kControlledGasLoop;
    const auto planted = builder.plant_suppression(104, plan);
    const auto chain = builder.finish(2);
    const auto scan = scan_suppression(chain.snapshot());
    REQUIRE(scan.attacks.size() == 1);
    const auto& a = scan.attacks[0];
    CHECK(a.strategy == SuppressionStrategy::kControlledGasLoop);
    CHECK(a.status == AttackStatus::kSuccess);
    CHECK(a.blocks_stuffed == 2);
    CHECK(a.tx_count == 6);
    CHECK(a.prize == eth(100));
    CHECK(a.profit == planted.expected_profit);
    CHECK(planted.expected_rounds == std::vector<AttackStatus>{AttackStatus::kSuccess});
}

TEST_CASE("planted insertions are found with their expected profit") {
    const auto chain = generate_chain(small(8));
    const auto attacks = scan_insertion(chain.snapshot(), InsertionSettings{});
    std::size_t matched = 0;
    for (const auto& p : chain.manifest.planted) {
        if (p.kind != AttackKind::kInsertion) continue;
        for (const auto& a : attacks) {
            if (a.buy_tx.hash == p.key_txs.front()) {
                ++matched;
                CHECK(a.profit == p.expected_profit);
            }
        }
    }
    CHECK(matched == 6);
    CHECK(attacks.size() == 6);
}
