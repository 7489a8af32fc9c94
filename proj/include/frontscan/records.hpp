// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include <frontscan/displacement.hpp>
#include <frontscan/insertion.hpp>
#include <frontscan/suppression.hpp>
#include <frontscan/synthetic_chain.hpp>

namespace frontscan {

using RecordJson = nlohmann::ordered_json;

// One NDJSON line per attack. Wei amounts are decimal strings; USD amounts are decimal strings
// rounded to cents, or null without a price table.
[[nodiscard]] RecordJson to_record(const DisplacementAttack& attack);
[[nodiscard]] RecordJson to_record(const InsertionAttack& attack);
[[nodiscard]] RecordJson to_record(const SuppressionAttack& attack);

// The fields every stage after scanning relies on.
struct AttackRecord {
    AttackKind kind{AttackKind::kInsertion};
    std::string id;
    std::uint64_t block_number{0};
    std::uint64_t timestamp{0};
    std::vector<Hash32> key_txs;
    // (attacker account, bot contract); the bot is absent for direct attacks.
    std::vector<std::pair<Address, std::optional<Address>>> pairs;
    Wei gain{0};
    Wei cost{0};
    Wei profit{0};
    std::optional<Rational> cost_usd;
    std::optional<Rational> profit_usd;
    // Insertion only, used by competition analysis.
    std::optional<Hash32> victim_tx;
    std::optional<Address> token;
};

[[nodiscard]] AttackRecord parse_attack_record(const nlohmann::json& j);
[[nodiscard]] std::vector<AttackRecord> read_attack_records(std::istream& in, std::string_view origin);
[[nodiscard]] std::vector<AttackRecord> read_attack_records(const std::filesystem::path& path);

// Stable identifier derived from the kind and the key transactions.
[[nodiscard]] std::string attack_id(AttackKind kind, const std::vector<Hash32>& key_txs);

// Minimal insertion attack carrying what detect_competition reads.
[[nodiscard]] InsertionAttack competition_view(const AttackRecord& record);

[[nodiscard]] std::optional<std::string> usd_string(const std::optional<Rational>& value);

}  // namespace frontscan

namespace frontscan {

// Reads the code records of an NDJSON file and ignores every other record kind.
[[nodiscard]] std::unordered_map<Address, Bytes> read_code_map(const std::filesystem::path& path);

}  // namespace frontscan
