// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <sstream>

#include <frontscan/records.hpp>
#include <frontscan/report.hpp>
#include <frontscan/synthetic_chain.hpp>

#include "support.hpp"

using namespace frontscan;
using namespace frontscan::testing;

TEST_CASE("distribution summary") {
    const std::vector<double> v{1, 2, 3, 4};
    const auto s = summarize(v);
    CHECK(s.count == 4);
    CHECK(s.mean == doctest::Approx(2.5));
    CHECK(s.q50 == doctest::Approx(2.5));
    CHECK(s.q25 == doctest::Approx(1.75));
    CHECK(s.min == 1);
    CHECK(s.max == 4);

    const std::vector<double> skewed{0, 0, 0, 100};
    const auto k = summarize(skewed);
    CHECK(k.q75 == doctest::Approx(25.0));
    CHECK(k.std == doctest::Approx(43.30127).epsilon(1e-6));

    const std::vector<double> one{7};
    CHECK(summarize(one).std == 0);
    CHECK_THROWS_AS((void)summarize(std::vector<double>{}), Error);
}

TEST_CASE("amount formatting") {
    CHECK(format_amount(1234.5) == "1,234.50");
    CHECK(format_amount(-1234567.891) == "-1,234,567.89");
    CHECK(format_amount(12.0) == "12.00");
    CHECK(format_amount(999.999) == "1,000.00");
}

TEST_CASE("csv and table share the column order") {
    const std::vector<double> v{1, 2, 3, 4};
    const std::vector<SummaryRow> rows{{"insertion.profit_eth", summarize(v)}};
    CHECK(distribution_csv(rows) ==
          "metric,count,mean,std,min,25%,50%,75%,max\ninsertion.profit_eth,4,2.50,1.12,1.00,1.75,2.50,3.25,4.00\n");
    const auto table = render_table(rows);
    CHECK(table.find("metric") == 0);
    CHECK(table.find("insertion.profit_eth") != std::string::npos);
}

TEST_CASE("weekday and hour use UTC with Monday first") {
    // 1,600,000,000 is Sunday 2020-09-13 12:26:40 UTC; 1,600,041,600 is Monday 00:00:00.
    const std::vector<std::uint64_t> ts{1'600'000'000, 1'600'041'600, 1'600'041'600 + 3'599};
    const auto m = weekday_hour_matrix(ts);
    CHECK(m[6][12] == 1);
    CHECK(m[0][0] == 2);
    const auto csv = to_csv(m);
    CHECK(csv.rfind("weekday,0,1,", 0) == 0);
    CHECK(csv.find("\nMon,2,0,") != std::string::npos);
}

TEST_CASE("yearly shares") {
    const std::vector<std::uint64_t> ts{1'600'000'000, 1'600'000'001, 1'600'000'002, 1'609'459'200};
    const auto shares = yearly_shares(ts);
    REQUIRE(shares.size() == 2);
    CHECK(shares[0].year == 2020);
    CHECK(shares[0].count == 3);
    CHECK(shares[1].year == 2021);
    CHECK(to_csv(shares) == "year,count,percent\n2020,3,75.00\n2021,1,25.00\n");
}

TEST_CASE("attack distributions split by kind and currency") {
    std::vector<AttackRecord> attacks(3);
    attacks[0].kind = AttackKind::kInsertion;
    attacks[0].cost = eth(1);
    attacks[0].profit = eth(2);
    attacks[0].cost_usd = Rational{350};
    attacks[0].profit_usd = Rational{700};
    attacks[1] = attacks[0];
    attacks[2].kind = AttackKind::kSuppression;
    attacks[2].cost = eth(3);
    attacks[2].profit = -eth(3);
    const auto rows = attack_distributions(attacks);
    std::vector<std::string> names;
    for (const auto& [name, s] : rows) names.push_back(name);
    CHECK(names == std::vector<std::string>{"insertion.cost_eth", "insertion.profit_eth", "insertion.cost_usd",
                                            "insertion.profit_usd", "suppression.cost_eth",
                                            "suppression.profit_eth"});
    CHECK(rows[1].second.mean == doctest::Approx(2.0));
    CHECK(rows[5].second.mean == doctest::Approx(-3.0));
}

TEST_CASE("scoring against the manifest") {
    Manifest m;
    PlantedAttack p;
    p.kind = AttackKind::kInsertion;
    p.key_txs = {hash(1), hash(2), hash(3)};
    p.expected_profit = eth(1);
    m.planted = {p};
    p.key_txs = {hash(4), hash(5), hash(6)};
    m.planted.push_back(p);

    AttackRecord hit;
    hit.kind = AttackKind::kInsertion;
    hit.key_txs = {hash(1), hash(2), hash(3)};
    hit.profit = eth(1) + 10;
    AttackRecord stray = hit;
    stray.key_txs = {hash(7), hash(8), hash(9)};
    stray.id = "insertion-stray";

    const std::vector<AttackRecord> attacks{hit, stray};
    const auto report = score_against_manifest(attacks, m);
    REQUIRE(report.kinds.size() == 1);
    const auto& k = report.kinds[0];
    CHECK(k.planted == 2);
    CHECK(k.detected == 2);
    CHECK(k.matched == 1);
    CHECK(k.precision == doctest::Approx(0.5));
    CHECK(k.recall == doctest::Approx(0.5));
    CHECK(k.max_profit_error == 10);
    CHECK(k.missed == std::vector<std::string>{hash(4).hex()});
    CHECK(k.unexpected == std::vector<std::string>{"insertion-stray"});
    CHECK_FALSE(report.perfect());

    const auto empty = score_against_manifest(std::vector<AttackRecord>{}, Manifest{});
    CHECK(empty.perfect());

    AttackRecord other;
    other.kind = AttackKind::kDisplacement;
    other.key_txs = {hash(1)};
    const auto wrong_kind = score_against_manifest(std::vector<AttackRecord>{other}, Manifest{});
    CHECK(wrong_kind.unmatched_kinds == std::vector<std::string>{"displacement"});
    CHECK_FALSE(wrong_kind.perfect());
}

TEST_CASE("attack records round-trip through ndjson") {
    SynthOptions opt;
    opt.seed = 12;
    opt.blocks = 300;
    opt.insertions = 3;
    opt.displacements = 0;
    opt.suppressions = 1;
    const auto chain = generate_chain(opt);
    const auto snap = chain.snapshot();
    std::ostringstream out;
    std::vector<RecordJson> written;
    for (const auto& a : scan_insertion(snap, InsertionSettings{})) written.push_back(to_record(a));
    for (const auto& a : scan_suppression(snap).attacks) written.push_back(to_record(a));
    REQUIRE(written.size() == 4);
    for (const auto& j : written) out << j.dump() << '\n';

    std::istringstream in{out.str()};
    const auto records = read_attack_records(in, "<test>");
    REQUIRE(records.size() == 4);
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(records[i].id == written[i]["id"].get<std::string>());
        CHECK(records[i].profit.str() == written[i]["profit_wei"].get<std::string>());
        CHECK(records[i].id == attack_id(records[i].kind, records[i].key_txs));
        CHECK(records[i].cost_usd.has_value());
    }
    CHECK(records[0].victim_tx.has_value());
    CHECK(records[0].token.has_value());
    CHECK(records[3].kind == AttackKind::kSuppression);

    std::istringstream bad{"{\"kind\":\"insertion\"}\n"};
    CHECK_THROWS_AS((void)read_attack_records(bad, "<bad>"), Error);
}

TEST_CASE("usd strings round to cents") {
    CHECK(usd_string(Rational{12'345, 1'000}) == "12.35");
    CHECK_FALSE(usd_string(std::nullopt));
    CHECK(attack_id(AttackKind::kInsertion, {hash(1)}).rfind("insertion:", 0) == 0);
    CHECK(attack_id(AttackKind::kInsertion, {hash(1)}).size() == std::string{"insertion:"}.size() + 16);
}
