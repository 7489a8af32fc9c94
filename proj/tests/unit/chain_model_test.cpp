// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <frontscan/chain_model.hpp>
#include <frontscan/hex.hpp>

#include "support.hpp"

using namespace frontscan;
using namespace frontscan::testing;

TEST_CASE("fixed bytes parse and print hex") {
    const auto a = Address::from_hex("0x00000000000000000000000000000000000000ff");
    CHECK(a.bytes[19] == 0xff);
    CHECK(a.hex() == "0x00000000000000000000000000000000000000ff");
    CHECK(Address::from_hex("00000000000000000000000000000000000000FF") == a);
    CHECK_THROWS_AS((void)Address::from_hex("0x1234"), Error);
    CHECK_THROWS_AS((void)Address::from_hex("0xzz000000000000000000000000000000000000ff"), Error);
    CHECK(Address{}.is_zero());
    CHECK_FALSE(a.is_zero());
}

TEST_CASE("quantities round-trip through hex") {
    CHECK(quantity_to_hex(std::uint64_t{0}) == "0x0");
    CHECK(quantity_to_hex(std::uint64_t{255}) == "0xff");
    CHECK(quantity_from_hex("0x1bc16d674ec80000") == Wei{"2000000000000000000"});
    CHECK_THROWS_AS((void)quantity_from_hex("12"), Error);
    const Wei big{"115792089237316195423570985008687907853269984665640564039457584007913129639935"};
    CHECK(from_word(to_word(big).bytes) == big);
}

TEST_CASE("fee is gas used times gas price") {
    auto t = tx(1, 1, 0, addr(1), addr(2), gwei(50), 21'000, 21'000);
    CHECK(fee(t) == Wei{"1050000000000000"});
}

TEST_CASE("transaction order is block then index") {
    const auto a = tx(1, 5, 3, addr(1), addr(2));
    const auto b = tx(2, 5, 4, addr(1), addr(2));
    const auto c = tx(3, 6, 0, addr(1), addr(2));
    CHECK(precedes(a, b));
    CHECK(precedes(b, c));
    CHECK_FALSE(precedes(b, a));
    CHECK_FALSE(precedes(a, a));
}

TEST_CASE("decimal rendering rounds half away from zero") {
    CHECK(format_decimal(Rational{1, 8}, 2) == "0.13");
    CHECK(format_decimal(Rational{-1, 8}, 2) == "-0.13");
    CHECK(format_decimal(Rational{1, 3}, 2) == "0.33");
    CHECK(format_decimal(Rational{-1, 1000}, 2) == "0.00");
    CHECK(format_decimal(Rational{12345, 10}, 0) == "1235");
    CHECK(parse_decimal("123.46") == Rational{12346, 100});
    CHECK(parse_decimal("-0.5") == Rational{-1, 2});
    CHECK_THROWS_AS((void)parse_decimal("1.2.3"), Error);
}

TEST_CASE("civil dates") {
    CHECK(day_from_civil(1970, 1, 1) == 0);
    CHECK(day_from_civil(2020, 9, 13) == 18'518);
    CHECK(civil_from_day(18'518) == "2020-09-13");
    CHECK(day_of_timestamp(1'600'000'000) == 18'518);
}

TEST_CASE("price table picks the latest rate at or before the day") {
    const auto table = PriceTable::parse_csv("date,eth_usd\n2020-09-12,350.10\n2020-09-14,360.00\n");
    CHECK(table.rate_at(1'600'000'000) == Rational{35'010, 100});  // 2020-09-13 falls back to the 12th
    CHECK(table.rate_at(1'600'100'000) == Rational{360});
    CHECK_THROWS_AS((void)table.rate_at(1'599'000'000), Error);
    CHECK(PriceTable::parse_csv(table.to_csv()) == table);
}

TEST_CASE("wei to usd is exact") {
    const auto table = PriceTable::parse_csv("2020-09-13,123.46\n");
    const auto usd = wei_to_usd(Wei{"500000000000000000"}, 1'600'000'000, table);
    CHECK(usd == Rational{6'173, 100});
    CHECK(format_decimal(usd, 2) == "61.73");
}

TEST_CASE("enum names round-trip") {
    for (auto s : {TxStatus::kSuccess, TxStatus::kReverted, TxStatus::kAssertFailed, TxStatus::kOutOfGas}) {
        CHECK(tx_status_from_string(to_string(s)) == s);
    }
    for (auto t : {TraceTerminal::kNormal, TraceTerminal::kRevert, TraceTerminal::kAssert, TraceTerminal::kOutOfGas}) {
        CHECK(trace_terminal_from_string(to_string(t)) == t);
    }
}
