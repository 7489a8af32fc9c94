// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <frontscan/synthetic_chain.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

#include <frontscan/fixture_io.hpp>
#include <frontscan/hex.hpp>
#include <frontscan/replay_oracle.hpp>

namespace frontscan {

namespace {

    Wei ether(std::uint64_t n) { return Wei{n} * kWeiPerEther; }
    Wei gwei(std::uint64_t n) { return Wei{n} * kWeiPerGwei; }

    Bytes word_of(const Address& a) {
        Bytes out(12, 0);
        out.insert(out.end(), a.bytes.begin(), a.bytes.end());
        return out;
    }

    void append(Bytes& out, const Bytes& more) { out.insert(out.end(), more.begin(), more.end()); }

    std::vector<std::string> repeat(std::vector<std::string> prefix, std::initializer_list<const char*> body,
                                    std::size_t times, const char* tail) {
        for (std::size_t i = 0; i < times; ++i) prefix.insert(prefix.end(), body.begin(), body.end());
        prefix.emplace_back(tail);
        return prefix;
    }

    std::string hashes_hex(const Hash32& h) { return h.hex(); }

    constexpr std::uint64_t kStuffingSlack = 10'000;
    constexpr std::size_t kLoopRepeats = 16;

}  // namespace

std::string to_string(AttackKind kind) {
    switch (kind) {
        case AttackKind::kDisplacement:
            return "displacement";
        case AttackKind::kInsertion:
            return "insertion";
        case AttackKind::kSuppression:
            return "suppression";
    }
    return "insertion";
}

AttackKind attack_kind_from_string(std::string_view text) {
    if (text == "displacement") return AttackKind::kDisplacement;
    if (text == "insertion") return AttackKind::kInsertion;
    if (text == "suppression") return AttackKind::kSuppression;
    throw_data_error("unknown attack kind '" + std::string{text} + "'");
}

std::uint64_t suppression_span(const SuppressionPlan& plan) {
    std::uint64_t n{0};
    for (const auto& r : plan.rounds) n += r.stuffing_per_block.size() + 1;
    return n;
}

// ---------------------------------------------------------------------------------------------
// Manifest

nlohmann::ordered_json Manifest::to_json() const {
    using Json = nlohmann::ordered_json;
    auto hashes = [](const std::vector<Hash32>& v) {
        Json a = Json::array();
        for (const auto& h : v) a.push_back(hashes_hex(h));
        return a;
    };
    Json planted_json = Json::array();
    for (const auto& p : planted) {
        Json j;
        j["kind"] = to_string(p.kind);
        j["key_txs"] = hashes(p.key_txs);
        j["txs"] = hashes(p.txs);
        j["expected_gain_wei"] = p.expected_gain.str();
        j["expected_cost_wei"] = p.expected_cost.str();
        j["expected_profit_wei"] = p.expected_profit.str();
        if (p.pre_fee_profit) j["pre_fee_profit_wei"] = p.pre_fee_profit->str();
        if (p.kind == AttackKind::kSuppression) {
            Json rounds = Json::array();
            for (auto s : p.expected_rounds) rounds.push_back(to_string(s));
            j["expected_rounds"] = rounds;
            j["expected_status"] = to_string(p.expected_status.value_or(AttackStatus::kFailure));
            j["strategy"] = to_string(p.strategy.value_or(SuppressionStrategy::kUnknown));
            j["blocks_stuffed"] = p.blocks_stuffed.value_or(0);
            j["tx_count"] = p.tx_count.value_or(0);
        }
        planted_json.push_back(std::move(j));
    }
    Json controls_json = Json::array();
    for (const auto& c : controls) {
        Json j;
        j["kind"] = to_string(c.kind);
        j["reason"] = c.reason;
        j["txs"] = hashes(c.txs);
        controls_json.push_back(std::move(j));
    }
    Json out;
    out["seed"] = seed;
    out["first_block"] = first_block;
    out["last_block"] = last_block;
    out["planted"] = std::move(planted_json);
    out["controls"] = std::move(controls_json);
    return out;
}

Manifest Manifest::from_json(const nlohmann::json& j) {
    using fixture::field;
    using fixture::string_field;
    auto hashes = [](const nlohmann::json& a) {
        std::vector<Hash32> out;
        for (const auto& h : a) out.push_back(Hash32::from_hex(h.get<std::string>()));
        return out;
    };
    Manifest m;
    m.seed = field(j, "seed").get<std::uint64_t>();
    m.first_block = field(j, "first_block").get<std::uint64_t>();
    m.last_block = field(j, "last_block").get<std::uint64_t>();
    for (const auto& p : field(j, "planted")) {
        PlantedAttack a;
        a.kind = attack_kind_from_string(string_field(p, "kind"));
        a.key_txs = hashes(field(p, "key_txs"));
        a.txs = hashes(field(p, "txs"));
        a.expected_gain = Wei{string_field(p, "expected_gain_wei")};
        a.expected_cost = Wei{string_field(p, "expected_cost_wei")};
        a.expected_profit = Wei{string_field(p, "expected_profit_wei")};
        if (p.contains("pre_fee_profit_wei")) a.pre_fee_profit = Wei{string_field(p, "pre_fee_profit_wei")};
        if (a.kind == AttackKind::kSuppression) {
            for (const auto& s : field(p, "expected_rounds")) a.expected_rounds.push_back(attack_status_from_string(s.get<std::string>()));
            a.expected_status = attack_status_from_string(string_field(p, "expected_status"));
            a.strategy = suppression_strategy_from_string(string_field(p, "strategy"));
            a.blocks_stuffed = field(p, "blocks_stuffed").get<std::size_t>();
            a.tx_count = field(p, "tx_count").get<std::size_t>();
        }
        m.planted.push_back(std::move(a));
    }
    for (const auto& c : field(j, "controls")) {
        m.controls.push_back({attack_kind_from_string(string_field(c, "kind")), string_field(c, "reason"),
                              hashes(field(c, "txs"))});
    }
    return m;
}

Manifest Manifest::load(const std::filesystem::path& path) {
    std::ifstream in{path};
    if (!in) throw_data_error("cannot open manifest " + path.string());
    try {
        return from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
        throw_data_error(path.string() + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------------------------
// SyntheticChain

std::string SyntheticChain::fixture_ndjson() const {
    std::ostringstream out;
    for (const auto& [address, bytes] : code) fixture::write_line(out, fixture::code_to_json(address, bytes));

    std::map<Hash32, const ExecutionTrace*> trace_of;
    for (const auto& t : traces) trace_of[t.tx_hash] = &t;
    std::map<Hash32, std::vector<const InternalTransfer*>> internal_of;
    for (const auto& t : internal) internal_of[t.parent_tx].push_back(&t);

    std::size_t log_pos{0};
    for (const auto& block : blocks) {
        fixture::write_line(out, fixture::to_json(block));
        for (; log_pos < logs.size() && logs[log_pos].block_number == block.number; ++log_pos) {
            fixture::write_line(out, fixture::to_json(logs[log_pos]));
        }
        for (const auto& tx : block.transactions) {
            if (auto it = trace_of.find(tx.hash); it != trace_of.end()) fixture::write_line(out, fixture::to_json(*it->second));
        }
        for (const auto& tx : block.transactions) {
            if (auto it = internal_of.find(tx.hash); it != internal_of.end()) {
                for (const auto* t : it->second) fixture::write_line(out, fixture::to_json(*t));
            }
        }
    }
    return out.str();
}

ChainSnapshot SyntheticChain::snapshot() const {
    auto source = FixtureDataSource::from_string(fixture_ndjson(), "<synthetic>");
    return load_snapshot(source, blocks.front().number, blocks.back().number, prices);
}

void SyntheticChain::write(const std::filesystem::path& directory) const {
    std::filesystem::create_directories(directory);
    auto put = [&](const char* name, const std::string& text) {
        std::ofstream out{directory / name, std::ios::binary};
        if (!out) throw_data_error("cannot write " + (directory / name).string());
        out << text;
    };
    put("fixture.ndjson", fixture_ndjson());
    put("manifest.json", manifest.to_json().dump(2) + "\n");
    put("prices.csv", prices.to_csv());
}

// ---------------------------------------------------------------------------------------------
// ChainBuilder

ChainBuilder::ChainBuilder(std::uint64_t seed, std::uint64_t first_block, std::uint64_t blocks,
                           std::uint64_t first_timestamp)
    : rng_{seed},
      first_block_{first_block},
      first_timestamp_{first_timestamp},
      blocks_(blocks),
      order_cursor_(blocks, 0.0),
      exclusive_(blocks, false) {
    if (blocks == 0) throw_usage_error("block count must be positive");
    for (int i = 0; i < 6; ++i) miners_.push_back(fresh_address());
    for (int i = 0; i < 3; ++i) {
        background_pools_.push_back(new_pool({ether(uniform(500, 5'000)), ether(uniform(10'000, 500'000))}));
        background_tokens_.push_back(deploy_tagged("TOKEN:"));
    }
    set_identity_count(8);
}

std::uint64_t ChainBuilder::next_u64() { return rng_(); }

std::uint64_t ChainBuilder::uniform(std::uint64_t lo, std::uint64_t hi) { return lo + next_u64() % (hi - lo + 1); }

Bytes ChainBuilder::random_bytes(std::size_t n) {
    Bytes out(n);
    for (auto& b : out) b = static_cast<std::uint8_t>(next_u64() >> 56);
    return out;
}

Address ChainBuilder::fresh_address() {
    Address a;
    do {
        a = Address::from_span(random_bytes(20));
    } while (a.is_zero());
    return a;
}

Hash32 ChainBuilder::fresh_hash() { return Hash32::from_span(random_bytes(32)); }

Address ChainBuilder::deploy(Bytes code) {
    const auto a = fresh_address();
    code_[a] = std::move(code);
    return a;
}

Address ChainBuilder::deploy_tagged(std::string_view tag) {
    Bytes code(tag.begin(), tag.end());
    append(code, random_bytes(16));
    return deploy(std::move(code));
}

ChainBuilder::Pool ChainBuilder::new_pool(const CpmmPool& state) {
    return {deploy_tagged("EXCHANGE:"), deploy_tagged("TOKEN:"), state};
}

void ChainBuilder::set_identity_count(std::size_t count) {
    identities_.clear();
    for (std::size_t i = 0; i < count; ++i) {
        Identity id;
        const auto n_accounts = uniform(1, 3);
        for (std::uint64_t k = 0; k < n_accounts; ++k) id.accounts.push_back(fresh_address());
        Bytes bytecode{'B', 'O', 'T', ':'};
        append(bytecode, random_bytes(24));
        const auto n_bots = uniform(1, 2);
        for (std::uint64_t k = 0; k < n_bots; ++k) id.bots.push_back(deploy(bytecode));
        identities_.push_back(std::move(id));
    }
    current_identity_ = 0;
}

void ChainBuilder::use_identity(std::size_t identity) {
    if (identity >= identities_.size()) throw_usage_error("unknown attacker identity");
    current_identity_ = identity;
}

ChainBuilder::Identity& ChainBuilder::identity() { return identities_[current_identity_]; }

std::size_t ChainBuilder::slot(std::uint64_t block) const {
    if (block < first_block_ || block - first_block_ >= blocks_.size()) {
        throw_usage_error("block " + std::to_string(block) + " outside the generated range");
    }
    return block - first_block_;
}

bool ChainBuilder::exclusive(std::uint64_t block) const { return exclusive_[slot(block)]; }

double ChainBuilder::next_order(std::uint64_t block) {
    auto& c = order_cursor_[slot(block)];
    c += 1.0;
    return c;
}

Transaction ChainBuilder::make_tx(std::uint64_t block, const Address& from, const std::optional<Address>& to,
                                  const Wei& value, std::uint64_t gas_used, std::uint64_t gas_limit,
                                  const Wei& gas_price, Bytes input) {
    Transaction tx;
    tx.hash = fresh_hash();
    tx.block_number = block;
    tx.sender = from;
    tx.receiver = to;
    tx.value = value;
    tx.gas_used = gas_used;
    tx.gas_limit = gas_limit;
    tx.gas_price = gas_price;
    tx.input = std::move(input);
    return tx;
}

ChainBuilder::PendingTx& ChainBuilder::push(std::uint64_t block, Transaction tx, double order) {
    auto& list = blocks_[slot(block)];
    list.push_back(PendingTx{std::move(tx), order, {}, {}, {}});
    return list.back();
}

// ---------------------------------------------------------------------------------------------
// Insertion

PlantedAttack ChainBuilder::plant_insertion(std::uint64_t block, const InsertionPlan& plan) {
    if (plan.attacker_dx <= 0) throw_usage_error("attacker_dx must be positive");
    if (!(plan.buy_gas_price > plan.victim_gas_price && plan.victim_gas_price >= plan.sell_gas_price)) {
        throw_usage_error("insertion gas prices must satisfy g(buy) > g(victim) >= g(sell)");
    }
    return insertion_impl(block, block, plan, std::nullopt);
}

PlantedAttack ChainBuilder::insertion_impl(std::uint64_t buy_block, std::uint64_t rest_block,
                                           const InsertionPlan& plan, const std::optional<TokenAmount>& sell_amount) {
    const Pool pool = new_pool(plan.pool);
    auto& id = identity();
    const Address buyer = id.accounts[uniform(0, id.accounts.size() - 1)];
    const Address seller = plan.via_bot ? id.accounts[uniform(0, id.accounts.size() - 1)] : buyer;
    const Address bot = id.bots[uniform(0, id.bots.size() - 1)];
    const Address holder = plan.via_bot ? bot : buyer;  // receives and returns the tokens
    const Address victim = fresh_address();

    const auto buy = cpmm_swap_x_for_y(pool.state, plan.attacker_dx, plan.swap_fee);
    CpmmPool after_victim = buy.pool;
    TokenAmount victim_out{0};
    if (plan.victim_dx > 0) {
        const auto v = cpmm_swap_x_for_y(buy.pool, plan.victim_dx, plan.swap_fee);
        victim_out = v.out;
        after_victim = v.pool;
    }
    const TokenAmount sold = sell_amount.value_or(buy.out);
    const auto sell = cpmm_swap_y_for_x(after_victim, sold, plan.swap_fee);

    auto event = [&](const Address& from, const Address& to, const TokenAmount& amount) {
        TransferEvent e;
        e.sender = from;
        e.receiver = to;
        e.amount = amount;
        e.token = pool.token;
        return e;
    };
    auto swap_input = [&] {
        Bytes in = random_bytes(4);
        append(in, random_bytes(32));
        return in;
    };

    const double base = next_order(buy_block);
    if (rest_block != buy_block) next_order(rest_block);
    const auto rest_base = rest_block == buy_block ? base : order_cursor_[slot(rest_block)];

    // Attacker buy.
    const auto used1 = uniform(100'000, 180'000);
    auto t1 = make_tx(buy_block, buyer, plan.via_bot ? bot : pool.exchange, plan.via_bot ? Wei{0} : plan.attacker_dx,
                      used1, used1 * 13 / 10, plan.buy_gas_price, swap_input());
    auto& p1 = push(buy_block, t1, base);
    p1.events.push_back(event(pool.exchange, holder, buy.out));
    if (plan.via_bot) p1.internal.push_back({t1.hash, bot, pool.exchange, plan.attacker_dx});
    if (plan.gas_token) {
        p1.trace = ExecutionTrace{t1.hash, {"PUSH1", "CALL", "SELFDESTRUCT", "SELFDESTRUCT", "STOP"},
                                  TraceTerminal::kNormal, {Address::from_hex(kChiAddress)}};
    }

    // Victim buy.
    const auto usedv = uniform(90'000, 150'000);
    auto tv = make_tx(rest_block, victim, pool.exchange, plan.victim_dx, usedv, usedv * 3 / 2, plan.victim_gas_price,
                      swap_input());
    auto& pv = push(rest_block, tv, rest_base + 0.25);
    pv.events.push_back(event(pool.exchange, victim, victim_out));

    // Attacker sell.
    const auto used2 = uniform(100'000, 180'000);
    auto t2 = make_tx(rest_block, seller, plan.via_bot ? bot : pool.exchange, Wei{0}, used2, used2 * 13 / 10,
                      plan.sell_gas_price, swap_input());
    auto& p2 = push(rest_block, t2, rest_base + 0.5);
    p2.events.push_back(event(holder, pool.exchange, sold));
    p2.internal.push_back({t2.hash, pool.exchange, holder, sell.out});

    PlantedAttack a;
    a.kind = AttackKind::kInsertion;
    a.key_txs = {t1.hash, tv.hash, t2.hash};
    a.txs = a.key_txs;
    a.expected_gain = sell.out;
    a.expected_cost = plan.attacker_dx + fee(t1) + fee(t2);
    a.expected_profit = a.expected_gain - a.expected_cost;
    a.pre_fee_profit = sell.out - plan.attacker_dx;
    return a;
}

NegativeControl ChainBuilder::control_insertion_amount_mismatch(std::uint64_t block) {
    InsertionPlan plan{{ether(800), ether(400'000)}, ether(5), ether(8), gwei(60), gwei(40), gwei(40)};
    const auto bought = cpmm_swap_x_for_y(plan.pool, plan.attacker_dx).out;
    const auto a = insertion_impl(block, block, plan, TokenAmount{bought * 95 / 100});
    return {AttackKind::kInsertion, "sold amount differs by 5%", a.txs};
}

NegativeControl ChainBuilder::control_insertion_split_blocks(std::uint64_t block) {
    InsertionPlan plan{{ether(900), ether(90'000)}, ether(4), ether(12), gwei(70), gwei(50), gwei(45)};
    const auto a = insertion_impl(block, block + 1, plan, std::nullopt);
    return {AttackKind::kInsertion, "buy and sell in different blocks", a.txs};
}

NegativeControl ChainBuilder::control_insertion_equal_gas(std::uint64_t block) {
    InsertionPlan plan{{ether(1'200), ether(2'400'000)}, ether(6), ether(9), gwei(50), gwei(50), gwei(50)};
    const auto a = insertion_impl(block, block, plan, std::nullopt);
    return {AttackKind::kInsertion, "attacker buy does not outbid the victim", a.txs};
}

// ---------------------------------------------------------------------------------------------
// Displacement

PlantedAttack ChainBuilder::plant_displacement(std::uint64_t block, const DisplacementPlan& plan) {
    return displacement_impl(block, plan, false, true);
}

PlantedAttack ChainBuilder::displacement_impl(std::uint64_t block, const DisplacementPlan& plan, bool same_sender,
                                              bool with_prize) {
    const Bytes secret = random_bytes(32);
    const Address target = with_prize ? deploy(prize_code(secret)) : deploy_tagged("APP:");
    const Address victim = fresh_address();
    auto& id = identity();
    const Address attacker = same_sender ? victim : id.accounts[uniform(0, id.accounts.size() - 1)];
    const Address bot = id.bots[uniform(0, id.bots.size() - 1)];

    Bytes victim_input = random_bytes(4);
    append(victim_input, secret);
    Bytes attacker_input = random_bytes(4);
    append(attacker_input, word_of(target));
    append(attacker_input, victim_input);
    append(attacker_input, random_bytes(plan.padding));

    const auto victim_block = plan.next_block ? block + 1 : block;
    const auto used_a = uniform(60'000, 120'000);
    auto ta = make_tx(block, attacker, bot, Wei{0}, used_a, used_a * 3 / 2, plan.attacker_gas_price, attacker_input);
    auto& pa = push(block, ta, next_order(block));
    if (with_prize) {
        pa.internal.push_back({ta.hash, target, bot, plan.reward});
        pa.internal.push_back({ta.hash, bot, attacker, plan.reward});
    }

    const auto used_v = uniform(25'000, 40'000);
    auto tv = make_tx(victim_block, victim, target, Wei{0}, used_v, 100'000, plan.victim_gas_price, victim_input);
    if (with_prize) tv.status = TxStatus::kReverted;
    push(victim_block, tv, next_order(victim_block));

    PlantedAttack a;
    a.kind = AttackKind::kDisplacement;
    a.key_txs = {ta.hash, tv.hash};
    a.txs = a.key_txs;
    a.expected_gain = with_prize ? plan.reward : Wei{0};
    a.expected_cost = fee(ta);
    a.expected_profit = a.expected_gain - a.expected_cost;
    return a;
}

NegativeControl ChainBuilder::control_displacement_same_sender(std::uint64_t block) {
    const auto a = displacement_impl(block, {ether(1), gwei(90), gwei(30), 8, false}, true, true);
    return {AttackKind::kDisplacement, "copy sent by the victim's own account", a.txs};
}

NegativeControl ChainBuilder::control_displacement_lower_gas(std::uint64_t block) {
    const auto a = displacement_impl(block, {ether(1), gwei(20), gwei(30), 8, false}, false, true);
    return {AttackKind::kDisplacement, "copy bids a lower gas price", a.txs};
}

NegativeControl ChainBuilder::control_displacement_small_victim(std::uint64_t block) {
    const auto a = displacement_impl(block, {ether(1), gwei(90), gwei(30), 2'000, false}, false, true);
    return {AttackKind::kDisplacement, "victim input below the size ratio", a.txs};
}

NegativeControl ChainBuilder::control_displacement_benign_copy(std::uint64_t block) {
    const auto a = displacement_impl(block, {Wei{0}, gwei(90), gwei(30), 8, false}, false, false);
    return {AttackKind::kDisplacement, "copied input with order-independent execution", a.txs};
}

NegativeControl ChainBuilder::control_displacement_victim_only(std::uint64_t block) {
    const Bytes secret = random_bytes(32);
    const Address prize = deploy(prize_code(secret));
    const Address victim = fresh_address();
    Bytes input = random_bytes(4);
    append(input, secret);
    auto tv = make_tx(block, victim, prize, Wei{0}, 45'000, 100'000, gwei(40), input);
    auto& pv = push(block, tv, next_order(block));
    pv.internal.push_back({tv.hash, prize, victim, ether(1)});
    return {AttackKind::kDisplacement, "victim claims without competition", {tv.hash}};
}

// ---------------------------------------------------------------------------------------------
// Suppression

void ChainBuilder::stuffing_block(std::uint64_t block, const Address& bot, const std::vector<Address>& senders,
                                  std::size_t count, SuppressionStrategy strategy, const Wei& gas_price,
                                  std::uint64_t reserved_gas, std::vector<Hash32>& out) {
    exclusive_[slot(block)] = true;
    const std::uint64_t used = (kSyntheticBlockGasLimit - reserved_gas - kStuffingSlack) / count;
    const std::uint64_t limit = strategy == SuppressionStrategy::kAssert ? used : used + used / 250 + 1;
    for (std::size_t i = 0; i < count; ++i) {
        Bytes input = random_bytes(4);
        append(input, random_bytes(32));
        auto tx = make_tx(block, senders[i % senders.size()], bot, Wei{0}, used, limit, gas_price, std::move(input));
        ExecutionTrace trace{tx.hash, {}, TraceTerminal::kNormal, {}};
        switch (strategy) {
            case SuppressionStrategy::kControlledGasLoop:
                trace.opcodes = repeat({"PUSH1", "PUSH1", "MSTORE"}, {"GAS", "GT", "ISZERO", "JUMPI"}, kLoopRepeats, "STOP");
                break;
            case SuppressionStrategy::kUncontrolledGasLoop:
                trace.opcodes =
                    repeat({"PUSH1", "PUSH1", "MSTORE"}, {"SLOAD", "TIMESTAMP", "ADD", "SSTORE"}, kLoopRepeats, "REVERT");
                trace.terminal = TraceTerminal::kRevert;
                tx.status = TxStatus::kReverted;
                break;
            case SuppressionStrategy::kAssert:
            case SuppressionStrategy::kUnknown:
                trace.opcodes = {"PUSH1", "PUSH1", "MSTORE", "CALLVALUE", "ISZERO", "INVALID"};
                trace.terminal = TraceTerminal::kAssert;
                tx.status = TxStatus::kAssertFailed;
                break;
        }
        out.push_back(tx.hash);
        auto& p = push(block, std::move(tx), next_order(block));
        p.trace = std::move(trace);
    }
}

PlantedAttack ChainBuilder::plant_suppression(std::uint64_t first_block, const SuppressionPlan& plan) {
    if (plan.rounds.empty()) throw_usage_error("suppression plan needs at least one round");
    for (const auto& r : plan.rounds) {
        if (r.stuffing_per_block.size() < 2) throw_usage_error("each round must stuff at least two blocks");
        for (auto c : r.stuffing_per_block) {
            if (c < 2) throw_usage_error("each stuffed block needs at least two transactions");
        }
    }
    if (plan.accounts == 0) throw_usage_error("suppression plan needs an attacker account");

    const Address lottery = deploy_tagged("LOTTERY:");
    auto& id = identity();
    const Address bot = id.bots[uniform(0, id.bots.size() - 1)];
    std::vector<Address> accounts;
    for (std::size_t i = 0; i < plan.accounts; ++i) accounts.push_back(fresh_address());

    PlantedAttack a;
    a.kind = AttackKind::kSuppression;
    a.strategy = plan.strategy;
    std::size_t stuffed{0};
    std::size_t tx_count{0};
    Wei last_prize{0};

    auto b = first_block;
    for (std::size_t r = 0; r < plan.rounds.size(); ++r) {
        const auto& round = plan.rounds[r];
        constexpr std::uint64_t kInvestGas = 80'000;
        auto invest = make_tx(b, accounts[0], lottery, plan.investment, kInvestGas, 120'000, plan.gas_price,
                              random_bytes(4));
        push(b, invest, next_order(b));
        a.key_txs.push_back(invest.hash);
        a.txs.push_back(invest.hash);
        a.expected_cost += plan.investment + fee(invest);
        ++tx_count;

        for (std::size_t j = 0; j < round.stuffing_per_block.size(); ++j) {
            std::vector<Hash32> hashes;
            stuffing_block(b + j, bot, accounts, round.stuffing_per_block[j], plan.strategy, plan.gas_price,
                           j == 0 ? kInvestGas : 0, hashes);
            for (const auto& h : hashes) {
                const auto& list = blocks_[slot(b + j)];
                const auto it = std::find_if(list.begin(), list.end(), [&](const PendingTx& p) { return p.tx.hash == h; });
                a.expected_cost += fee(it->tx);
                a.txs.push_back(h);
            }
            tx_count += hashes.size();
            ++stuffed;
        }

        const auto outcome = b + round.stuffing_per_block.size();
        if (round.interrupted) {
            auto outsider = make_tx(outcome, fresh_address(), lottery, plan.investment, kInvestGas, 120'000,
                                    plan.gas_price + gwei(5), random_bytes(4));
            push(outcome, outsider, next_order(outcome));
            a.txs.push_back(outsider.hash);
            a.expected_rounds.push_back(AttackStatus::kFailure);
            last_prize = 0;
        } else {
            auto claim = make_tx(outcome, accounts[0], lottery, Wei{0}, 50'000, 90'000, plan.gas_price, random_bytes(4));
            auto& p = push(outcome, claim, next_order(outcome));
            p.internal.push_back({claim.hash, lottery, accounts[0], plan.prize});
            a.txs.push_back(claim.hash);
            a.expected_rounds.push_back(AttackStatus::kSuccess);
            last_prize = plan.prize;
        }
        b = outcome + 1;
    }

    a.expected_status = a.expected_rounds.back();
    a.expected_gain = a.expected_status == AttackStatus::kSuccess ? last_prize : Wei{0};
    a.expected_profit = a.expected_gain - a.expected_cost;
    a.blocks_stuffed = stuffed;
    a.tx_count = tx_count;
    return a;
}

NegativeControl ChainBuilder::control_suppression_isolated(std::uint64_t block) {
    const Address target = deploy_tagged("APP:");
    NegativeControl c{AttackKind::kSuppression, "stuffing-like cluster in a single block", {}};
    for (int i = 0; i < 3; ++i) {
        auto tx = make_tx(block, fresh_address(), target, Wei{0}, 200'000, 200'500, gwei(30), random_bytes(8));
        c.txs.push_back(tx.hash);
        push(block, std::move(tx), next_order(block));
    }
    return c;
}

NegativeControl ChainBuilder::control_suppression_low_ratio(std::uint64_t block) {
    const Address target = deploy_tagged("APP:");
    const Address lottery = deploy_tagged("LOTTERY:");
    const Address sender = fresh_address();
    NegativeControl c{AttackKind::kSuppression, "heavy transactions at 98% of their gas limit", {}};
    auto invest = make_tx(block, sender, lottery, ether(1), 80'000, 120'000, gwei(30), random_bytes(4));
    c.txs.push_back(invest.hash);
    push(block, invest, next_order(block));
    for (std::uint64_t b = block; b <= block + 1; ++b) {
        exclusive_[slot(b)] = true;
        for (int i = 0; i < 3; ++i) {
            auto tx = make_tx(b, sender, target, Wei{0}, 3'920'000, 4'000'000, gwei(30), random_bytes(8));
            c.txs.push_back(tx.hash);
            push(b, std::move(tx), next_order(b));
        }
    }
    return c;
}

NegativeControl ChainBuilder::control_suppression_plain_transfers(std::uint64_t block) {
    const Address target = fresh_address();
    NegativeControl c{AttackKind::kSuppression, "plain transfers that use exactly the base gas", {}};
    for (std::uint64_t b = block; b <= block + 1; ++b) {
        for (int i = 0; i < 3; ++i) {
            auto tx = make_tx(b, fresh_address(), target, ether(1), kBaseTxGas, kBaseTxGas, gwei(30), {});
            c.txs.push_back(tx.hash);
            push(b, std::move(tx), next_order(b));
        }
    }
    return c;
}

NegativeControl ChainBuilder::control_suppression_no_investment(std::uint64_t block) {
    const Address bot = deploy_tagged("BOT:");
    const std::vector<Address> senders{fresh_address(), fresh_address()};
    NegativeControl c{AttackKind::kSuppression, "stuffing without an investment", {}};
    stuffing_block(block, bot, senders, 3, SuppressionStrategy::kControlledGasLoop, gwei(30), 0, c.txs);
    stuffing_block(block + 1, bot, senders, 2, SuppressionStrategy::kControlledGasLoop, gwei(30), 0, c.txs);
    return c;
}

// ---------------------------------------------------------------------------------------------
// Background traffic

void ChainBuilder::add_background(std::uint64_t block, std::size_t count) {
    if (exclusive(block)) return;
    const double span = order_cursor_[slot(block)] + 1.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double order = span * static_cast<double>(next_u64() % 1'000'000) / 1'000'000.0;
        const Wei price = gwei(uniform(10, 120));
        switch (next_u64() % 4) {
            case 0: {
                auto tx = make_tx(block, fresh_address(), fresh_address(), Wei{uniform(1, 50'000)} * kWeiPerGwei * 1'000,
                                  kBaseTxGas, kBaseTxGas, price, {});
                push(block, std::move(tx), order);
                break;
            }
            case 1: {
                const auto& token = background_tokens_[uniform(0, background_tokens_.size() - 1)];
                const Address from = fresh_address();
                const Address to = fresh_address();
                const TokenAmount amount = Wei{uniform(1, 1'000'000)} * kWeiPerGwei * 1'000;
                Bytes input{0xa9, 0x05, 0x9c, 0xbb};
                append(input, word_of(to));
                const auto w = to_word(amount);
                input.insert(input.end(), w.bytes.begin(), w.bytes.end());
                const auto used = uniform(35'000, 60'000);
                auto tx = make_tx(block, from, token, Wei{0}, used, used * 2, price, std::move(input));
                auto& p = push(block, std::move(tx), order);
                TransferEvent e;
                e.sender = from;
                e.receiver = to;
                e.amount = amount;
                e.token = token;
                p.events.push_back(e);
                break;
            }
            default: {
                auto& pool = background_pools_[uniform(0, background_pools_.size() - 1)];
                const Address trader = fresh_address();
                Bytes input = random_bytes(4);
                append(input, random_bytes(32));
                const auto used = uniform(80'000, 160'000);
                TransferEvent e;
                e.token = pool.token;
                if (next_u64() % 2 == 0) {
                    const Wei dx = Wei{uniform(1, 20'000)} * kWeiPerGwei * 1'000'000;
                    const auto swap = cpmm_swap_x_for_y(pool.state, dx);
                    pool.state = swap.pool;
                    auto tx = make_tx(block, trader, pool.exchange, dx, used, used * 3 / 2, price, std::move(input));
                    auto& p = push(block, std::move(tx), order);
                    e.sender = pool.exchange;
                    e.receiver = trader;
                    e.amount = swap.out;
                    p.events.push_back(e);
                } else {
                    const TokenAmount dy = pool.state.reserve_y / uniform(200, 20'000);
                    const auto swap = cpmm_swap_y_for_x(pool.state, dy);
                    pool.state = swap.pool;
                    auto tx = make_tx(block, trader, pool.exchange, Wei{0}, used, used * 3 / 2, price, std::move(input));
                    auto& p = push(block, std::move(tx), order);
                    e.sender = trader;
                    e.receiver = pool.exchange;
                    e.amount = dy;
                    p.events.push_back(e);
                    p.internal.push_back({p.tx.hash, pool.exchange, trader, swap.out});
                }
                break;
            }
        }
    }
}

// ---------------------------------------------------------------------------------------------
// Assembly

SyntheticChain ChainBuilder::finish(std::uint64_t seed) {
    SyntheticChain chain;
    chain.code = code_;
    std::uint64_t timestamp = first_timestamp_;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        auto& pending = blocks_[i];
        std::stable_sort(pending.begin(), pending.end(),
                         [](const PendingTx& a, const PendingTx& b) { return a.order < b.order; });
        Block block;
        block.number = first_block_ + i;
        block.timestamp = timestamp;
        timestamp += 11 + next_u64() % 6;
        block.miner = miners_[next_u64() % miners_.size()];
        block.gas_limit = kSyntheticBlockGasLimit;
        std::uint32_t log_index{0};
        for (std::size_t k = 0; k < pending.size(); ++k) {
            auto& p = pending[k];
            p.tx.tx_index = static_cast<std::uint32_t>(k);
            block.gas_used += p.tx.gas_used;
            for (auto& e : p.events) {
                e.tx_hash = p.tx.hash;
                e.tx_index = p.tx.tx_index;
                e.gas_price = p.tx.gas_price;
                e.block_number = block.number;
                e.log_index = log_index++;
                chain.logs.push_back(encode_transfer_log(e));
            }
            if (p.trace) chain.traces.push_back(*p.trace);
            for (const auto& t : p.internal) chain.internal.push_back(t);
            block.transactions.push_back(p.tx);
        }
        if (block.gas_used > block.gas_limit) {
            throw Error{ErrorKind::kInternal, "generated block " + std::to_string(block.number) + " exceeds its gas limit"};
        }
        chain.blocks.push_back(std::move(block));
    }

    const auto first_day = day_of_timestamp(chain.blocks.front().timestamp) - 1;
    const auto last_day = day_of_timestamp(chain.blocks.back().timestamp) + 1;
    std::vector<PriceEntry> prices;
    for (auto d = first_day; d <= last_day; ++d) {
        prices.push_back({d, Rational{static_cast<std::int64_t>(15'000 + next_u64() % 30'000), 100}});
    }
    chain.prices = PriceTable{std::move(prices)};
    chain.manifest.seed = seed;
    chain.manifest.first_block = chain.blocks.front().number;
    chain.manifest.last_block = chain.blocks.back().number;
    return chain;
}

// ---------------------------------------------------------------------------------------------
// Corpus

namespace {

    SuppressionPlan suppression_template(std::size_t i, std::mt19937_64& rng) {
        auto pick = [&](std::uint64_t lo, std::uint64_t hi) { return lo + rng() % (hi - lo + 1); };
        SuppressionPlan p;
        p.prize = ether(pick(10, 200));
        p.investment = ether(pick(1, 5));
        p.gas_price = gwei(pick(20, 90));
        p.accounts = pick(1, 3);
        switch (i) {
            case 0:  // smallest observed shape: one round, two blocks, six transactions
                p.rounds = {{{3, 2}, false}};
                p.strategy = SuppressionStrategy::kControlledGasLoop;
                p.prize = ether(100);
                break;
            case 1:
                p.rounds = {{{3, 3}, false}, {{2, 2}, true}};
                p.strategy = SuppressionStrategy::kUncontrolledGasLoop;
                break;
            case 2:
                p.rounds = {{{4, 3, 3}, false}};
                p.strategy = SuppressionStrategy::kAssert;
                break;
            case 3:
                p.rounds = {{{2, 2}, true}, {{3, 3, 2}, false}};
                p.strategy = SuppressionStrategy::kControlledGasLoop;
                break;
            case 4:
                p.rounds = {{{2, 3}, true}, {{2, 2}, true}, {{3, 3}, false}};
                p.strategy = SuppressionStrategy::kUncontrolledGasLoop;
                break;
            default: {
                const auto rounds = pick(1, 3);
                for (std::uint64_t r = 0; r < rounds; ++r) {
                    RoundPlan round;
                    const auto n = pick(2, 4);
                    for (std::uint64_t b = 0; b < n; ++b) round.stuffing_per_block.push_back(pick(2, 5));
                    round.interrupted = pick(0, 1) == 1;
                    p.rounds.push_back(std::move(round));
                }
                p.strategy = static_cast<SuppressionStrategy>(i % 3);
                break;
            }
        }
        return p;
    }

}  // namespace

SyntheticChain generate_chain(const SynthOptions& options) {
    if (options.blocks < 16) throw_usage_error("a synthetic chain needs at least 16 blocks");
    ChainBuilder builder{options.seed, options.first_block, options.blocks, options.first_timestamp};
    std::mt19937_64 rng{options.seed ^ 0x5EEDF00DCAFEBABEull};
    auto pick = [&](std::uint64_t lo, std::uint64_t hi) { return lo + rng() % (hi - lo + 1); };

    const std::uint64_t lo = options.first_block + 3;
    const std::uint64_t hi = options.first_block + options.blocks - 4;
    std::vector<bool> zone(options.blocks, false);
    auto reserve_zone = [&](std::uint64_t length) -> std::uint64_t {
        // Padding of two blocks on either side keeps suppression-like patterns apart.
        for (int attempt = 0; attempt < 10'000; ++attempt) {
            const auto start = pick(lo, hi);
            if (start + length > hi + 1) continue;
            bool free = true;
            for (auto b = start - 2; b < start + length + 2 && free; ++b) {
                if (b - options.first_block < zone.size() && zone[b - options.first_block]) free = false;
            }
            if (!free) continue;
            for (auto b = start - 2; b < start + length + 2; ++b) {
                if (b - options.first_block < zone.size()) zone[b - options.first_block] = true;
            }
            return start;
        }
        throw_usage_error("not enough blocks to place all suppression scenarios");
    };
    auto open_block = [&](std::uint64_t extra) -> std::uint64_t {
        for (int attempt = 0; attempt < 10'000; ++attempt) {
            const auto b = pick(lo, hi - extra);
            bool ok = true;
            for (std::uint64_t k = 0; k <= extra; ++k) ok = ok && !builder.exclusive(b + k);
            if (ok) return b;
        }
        throw_usage_error("not enough free blocks for the requested scenarios");
    };
    auto use_random_identity = [&] { builder.use_identity(pick(0, 7)); };

    Manifest manifest;
    for (std::size_t i = 0; i < options.suppressions; ++i) {
        const auto plan = suppression_template(i, rng);
        const auto start = reserve_zone(suppression_span(plan));
        use_random_identity();
        manifest.planted.push_back(builder.plant_suppression(start, plan));
    }
    if (options.controls) {
        manifest.controls.push_back(builder.control_suppression_isolated(reserve_zone(1)));
        manifest.controls.push_back(builder.control_suppression_low_ratio(reserve_zone(2)));
        manifest.controls.push_back(builder.control_suppression_plain_transfers(reserve_zone(2)));
        manifest.controls.push_back(builder.control_suppression_no_investment(reserve_zone(2)));
    }

    for (std::size_t i = 0; i < options.insertions; ++i) {
        InsertionPlan plan;
        if (i == 0) {
            plan.pool = {ether(1'000), ether(1'000)};
            plan.attacker_dx = ether(10);
            plan.victim_dx = ether(50);
        } else {
            plan.pool = {ether(pick(200, 5'000)), ether(pick(1'000, 1'000'000))};
            plan.attacker_dx = ether(pick(1, 20));
            plan.victim_dx = ether(pick(1, 60));
        }
        plan.victim_gas_price = gwei(pick(20, 200));
        plan.buy_gas_price = plan.victim_gas_price + gwei(pick(1, 50));
        plan.sell_gas_price = pick(0, 3) == 0 ? plan.victim_gas_price : plan.victim_gas_price - gwei(pick(1, 19));
        plan.via_bot = pick(0, 9) < 7;
        plan.gas_token = pick(0, 4) == 0;
        use_random_identity();
        manifest.planted.push_back(builder.plant_insertion(open_block(0), plan));
    }
    if (options.controls) {
        use_random_identity();
        manifest.controls.push_back(builder.control_insertion_amount_mismatch(open_block(0)));
        manifest.controls.push_back(builder.control_insertion_split_blocks(open_block(1)));
        manifest.controls.push_back(builder.control_insertion_equal_gas(open_block(0)));
    }

    for (std::size_t i = 0; i < options.displacements; ++i) {
        DisplacementPlan plan;
        plan.reward = Wei{pick(100, 5'000)} * kWeiPerEther / 1'000;
        plan.victim_gas_price = gwei(pick(10, 150));
        plan.attacker_gas_price = plan.victim_gas_price + gwei(pick(1, 100));
        plan.padding = pick(0, 32);
        plan.next_block = pick(0, 4) == 0;
        use_random_identity();
        manifest.planted.push_back(builder.plant_displacement(open_block(plan.next_block ? 1 : 0), plan));
    }
    if (options.controls) {
        use_random_identity();
        manifest.controls.push_back(builder.control_displacement_same_sender(open_block(0)));
        manifest.controls.push_back(builder.control_displacement_lower_gas(open_block(0)));
        manifest.controls.push_back(builder.control_displacement_small_victim(open_block(0)));
        manifest.controls.push_back(builder.control_displacement_benign_copy(open_block(0)));
        manifest.controls.push_back(builder.control_displacement_victim_only(open_block(0)));
    }

    const auto max_background = static_cast<std::uint64_t>(2.0 * std::max(0.0, options.background_per_block));
    for (auto b = options.first_block; b < options.first_block + options.blocks; ++b) {
        builder.add_background(b, max_background == 0 ? 0 : pick(0, max_background));
    }

    auto chain = builder.finish(options.seed);
    chain.manifest.planted = std::move(manifest.planted);
    chain.manifest.controls = std::move(manifest.controls);
    return chain;
}

}  // namespace frontscan
