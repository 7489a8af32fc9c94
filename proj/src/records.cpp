// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <frontscan/records.hpp>

#include <fstream>
#include <istream>

#include <frontscan/fixture_io.hpp>
#include <frontscan/keccak.hpp>

namespace frontscan {

namespace {

    using fixture::field;
    using fixture::string_field;

    RecordJson usd(const std::optional<Rational>& value) {
        if (!value) return nullptr;
        return format_decimal(*value, 2);
    }

    RecordJson hashes(const std::vector<Hash32>& v) {
        RecordJson a = RecordJson::array();
        for (const auto& h : v) a.push_back(h.hex());
        return a;
    }

    RecordJson addresses(const std::vector<Address>& v) {
        RecordJson a = RecordJson::array();
        for (const auto& x : v) a.push_back(x.hex());
        return a;
    }

    RecordJson pair_json(const Address& account, const std::optional<Address>& bot) {
        return RecordJson::array({account.hex(), bot ? RecordJson(bot->hex()) : RecordJson(nullptr)});
    }

    void common(RecordJson& j, AttackKind kind, const std::vector<Hash32>& key_txs, std::uint64_t block,
                std::uint64_t timestamp) {
        j["kind"] = to_string(kind);
        j["id"] = attack_id(kind, key_txs);
        j["block_number"] = block;
        j["timestamp"] = timestamp;
        j["key_txs"] = hashes(key_txs);
    }

    void money(RecordJson& j, const Wei& gain, const Wei& cost, const Wei& profit, const std::optional<Rational>& cost_usd,
               const std::optional<Rational>& profit_usd) {
        j["gain_wei"] = gain.str();
        j["cost_wei"] = cost.str();
        j["profit_wei"] = profit.str();
        j["cost_usd"] = usd(cost_usd);
        j["profit_usd"] = usd(profit_usd);
    }

    std::optional<Rational> optional_usd(const nlohmann::json& j, const char* name) {
        const auto& v = field(j, name);
        if (v.is_null()) return std::nullopt;
        return parse_decimal(v.get<std::string>());
    }

}  // namespace

std::string attack_id(AttackKind kind, const std::vector<Hash32>& key_txs) {
    Bytes joined;
    for (const auto& h : key_txs) joined.insert(joined.end(), h.bytes.begin(), h.bytes.end());
    return to_string(kind) + ":" + keccak256(joined).hex().substr(2, 16);
}

std::optional<std::string> usd_string(const std::optional<Rational>& value) {
    if (!value) return std::nullopt;
    return format_decimal(*value, 2);
}

RecordJson to_record(const DisplacementAttack& a) {
    RecordJson j;
    common(j, AttackKind::kDisplacement, {a.attacker_tx.hash, a.victim_tx.hash}, a.attacker_tx.block_number, a.timestamp);
    j["pairs"] = RecordJson::array({pair_json(a.attacker_account, a.bot_contract)});
    money(j, a.gain, a.cost, a.profit, a.cost_usd, a.profit_usd);
    j["attacker_tx"] = a.attacker_tx.hash.hex();
    j["victim_tx"] = a.victim_tx.hash.hex();
    j["attacker_account"] = a.attacker_account.hex();
    j["bot_contract"] = a.bot_contract.hex();
    j["gas_price_delta_wei"] = a.gas_price_delta.str();
    j["block_delta"] = a.block_delta;
    return j;
}

RecordJson to_record(const InsertionAttack& a) {
    RecordJson j;
    common(j, AttackKind::kInsertion, {a.buy_tx.hash, a.victim_tx.hash, a.sell_tx.hash}, a.buy_tx.block_number,
           a.timestamp);
    RecordJson pairs = RecordJson::array();
    for (const auto& account : a.attacker_accounts) pairs.push_back(pair_json(account, a.bot_contract));
    j["pairs"] = std::move(pairs);
    money(j, a.gain, a.cost, a.profit, a.cost_usd, a.profit_usd);
    j["buy_tx"] = a.buy_tx.hash.hex();
    j["victim_tx"] = a.victim_tx.hash.hex();
    j["sell_tx"] = a.sell_tx.hash.hex();
    j["exchange"] = a.exchange.hex();
    j["token"] = a.token.hex();
    j["attacker_accounts"] = addresses(a.attacker_accounts);
    j["bot_contract"] = a.bot_contract ? RecordJson(a.bot_contract->hex()) : RecordJson(nullptr);
    j["buy_amount"] = a.events.buy.amount.str();
    j["sell_amount"] = a.events.sell.amount.str();
    j["value_spent_wei"] = a.value_spent.str();
    j["gas_price_delta1_wei"] = a.gas_price_delta1.str();
    j["gas_price_delta2_wei"] = a.gas_price_delta2.str();
    j["gas_token_usage"] = to_string(a.gas_tokens.usage);
    j["gas_token_kind"] = a.gas_tokens.kind ? RecordJson(to_string(*a.gas_tokens.kind)) : RecordJson(nullptr);
    return j;
}

RecordJson to_record(const SuppressionAttack& a) {
    std::vector<Hash32> key;
    for (const auto& r : a.rounds) key.push_back(r.investment_tx.hash);
    RecordJson j;
    common(j, AttackKind::kSuppression, key, a.first_block, a.timestamp);
    RecordJson pairs = RecordJson::array();
    for (const auto& [account, bot] : a.account_bot_pairs) pairs.push_back(pair_json(account, bot));
    j["pairs"] = std::move(pairs);
    money(j, a.prize, a.cost, a.profit, a.cost_usd, a.profit_usd);
    j["victim_contract"] = a.victim_contract.hex();
    j["bot_contracts"] = addresses(a.bot_contracts);
    j["attacker_accounts"] = addresses(a.attacker_accounts);
    j["strategy"] = to_string(a.strategy);
    j["status"] = to_string(a.status);
    j["first_block"] = a.first_block;
    j["last_block"] = a.last_block;
    j["blocks_stuffed"] = a.blocks_stuffed;
    j["tx_count"] = a.tx_count;
    j["investments_wei"] = a.investments.str();
    j["fees_wei"] = a.fees.str();
    RecordJson rounds = RecordJson::array();
    for (const auto& r : a.rounds) {
        RecordJson rj;
        rj["investment_tx"] = r.investment_tx.hash.hex();
        std::vector<Hash32> stuffing;
        for (const auto& t : r.stuffing_txs) stuffing.push_back(t.hash);
        rj["stuffing_txs"] = hashes(stuffing);
        rj["status"] = to_string(r.status);
        rj["prize_wei"] = r.prize_claimed.str();
        rj["claim_tx"] = r.claim_tx ? RecordJson(r.claim_tx->hex()) : RecordJson(nullptr);
        rj["interrupted_by"] = r.interrupted_by ? RecordJson(r.interrupted_by->hex()) : RecordJson(nullptr);
        rounds.push_back(std::move(rj));
    }
    j["rounds"] = std::move(rounds);
    return j;
}

AttackRecord parse_attack_record(const nlohmann::json& j) {
    AttackRecord r;
    r.kind = attack_kind_from_string(string_field(j, "kind"));
    r.id = string_field(j, "id");
    r.block_number = field(j, "block_number").get<std::uint64_t>();
    r.timestamp = field(j, "timestamp").get<std::uint64_t>();
    for (const auto& h : field(j, "key_txs")) r.key_txs.push_back(Hash32::from_hex(h.get<std::string>()));
    for (const auto& p : field(j, "pairs")) {
        if (!p.is_array() || p.size() != 2) throw_data_error("pair must be [account, bot]");
        std::optional<Address> bot;
        if (!p[1].is_null()) bot = Address::from_hex(p[1].get<std::string>());
        r.pairs.emplace_back(Address::from_hex(p[0].get<std::string>()), bot);
    }
    r.gain = Wei{string_field(j, "gain_wei")};
    r.cost = Wei{string_field(j, "cost_wei")};
    r.profit = Wei{string_field(j, "profit_wei")};
    r.cost_usd = optional_usd(j, "cost_usd");
    r.profit_usd = optional_usd(j, "profit_usd");
    if (r.kind == AttackKind::kInsertion) {
        r.victim_tx = Hash32::from_hex(string_field(j, "victim_tx"));
        r.token = Address::from_hex(string_field(j, "token"));
    }
    return r;
}

std::vector<AttackRecord> read_attack_records(std::istream& in, std::string_view origin) {
    std::vector<AttackRecord> out;
    std::string line;
    std::size_t n{0};
    while (std::getline(in, line)) {
        ++n;
        if (line.empty()) continue;
        try {
            out.push_back(parse_attack_record(nlohmann::json::parse(line)));
        } catch (const nlohmann::json::exception& e) {
            throw_data_error(std::string{origin} + ":" + std::to_string(n) + ": " + e.what());
        } catch (const Error& e) {
            throw_data_error(std::string{origin} + ":" + std::to_string(n) + ": " + e.what());
        } catch (const std::invalid_argument& e) {
            throw_data_error(std::string{origin} + ":" + std::to_string(n) + ": " + e.what());
        }
    }
    return out;
}

std::vector<AttackRecord> read_attack_records(const std::filesystem::path& path) {
    std::ifstream in{path};
    if (!in) throw_data_error("cannot open " + path.string());
    return read_attack_records(in, path.string());
}

InsertionAttack competition_view(const AttackRecord& record) {
    if (record.kind != AttackKind::kInsertion || !record.victim_tx || !record.token) {
        throw_data_error("competition analysis needs insertion records");
    }
    InsertionAttack a;
    a.events.victim.block_number = record.block_number;
    a.victim_tx.hash = *record.victim_tx;
    a.token = *record.token;
    for (const auto& [account, bot] : record.pairs) {
        a.attacker_accounts.push_back(account);
        if (bot) a.bot_contract = bot;
    }
    if (a.attacker_accounts.empty()) throw_data_error("insertion record without attacker accounts");
    a.cost = record.cost;
    a.profit = record.profit;
    return a;
}

}  // namespace frontscan

namespace frontscan {

std::unordered_map<Address, Bytes> read_code_map(const std::filesystem::path& path) {
    std::ifstream in{path};
    if (!in) throw_data_error("cannot open " + path.string());
    std::unordered_map<Address, Bytes> out;
    std::string line;
    std::size_t n{0};
    while (std::getline(in, line)) {
        ++n;
        if (line.empty()) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            if (string_field(j, "kind") != "code") continue;
            auto [address, bytes] = fixture::code_from_json(j);
            out[address] = std::move(bytes);
        } catch (const nlohmann::json::exception& e) {
            throw_data_error(path.string() + ":" + std::to_string(n) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace frontscan
