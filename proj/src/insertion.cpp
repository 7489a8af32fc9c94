// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <frontscan/insertion.hpp>

#include <algorithm>
#include <map>
#include <set>

#include <frontscan/parallel.hpp>

namespace frontscan {

bool check_insertion_heuristics(const TransferEvent& buy, const TransferEvent& victim, const TransferEvent& sell,
                                const Fraction& amount_tolerance) {
    // H1: the exchange pays the attacker and the victim, and the attacker returns what it bought.
    if (!(buy.sender == victim.sender && victim.sender == sell.receiver && buy.receiver == sell.sender)) return false;
    // H2: bought and sold amounts agree within the tolerance.
    const TokenAmount larger = std::max(buy.amount, sell.amount);
    if (larger == 0) return false;
    const TokenAmount diff = buy.amount > sell.amount ? TokenAmount{buy.amount - sell.amount}
                                                      : TokenAmount{sell.amount - buy.amount};
    if (diff * amount_tolerance.den > larger * amount_tolerance.num) return false;
    // H3: one token.
    if (!(buy.token == victim.token && victim.token == sell.token)) return false;
    // H4: three distinct transactions.
    if (buy.tx_hash == victim.tx_hash || victim.tx_hash == sell.tx_hash || buy.tx_hash == sell.tx_hash) return false;
    // H5: buy, victim, sell in block order.
    if (!(buy.tx_index < victim.tx_index && victim.tx_index < sell.tx_index)) return false;
    // H6: g(buy) > g(victim) >= g(sell).
    return buy.gas_price > victim.gas_price && victim.gas_price >= sell.gas_price;
}

std::vector<SandwichTriple> find_block_sandwiches(std::span<const TransferEvent> events,
                                                  const Fraction& amount_tolerance) {
    std::vector<const TransferEvent*> ordered;
    ordered.reserve(events.size());
    for (const auto& e : events) ordered.push_back(&e);
    std::sort(ordered.begin(), ordered.end(), [](const TransferEvent* a, const TransferEvent* b) {
        return std::tie(a->tx_index, a->log_index) < std::tie(b->tx_index, b->log_index);
    });

    std::map<Address, std::vector<const TransferEvent*>> by_token;
    for (const auto* e : ordered) by_token[e->token].push_back(e);

    std::vector<SandwichTriple> out;
    for (const auto& [token, list] : by_token) {
        for (std::size_t b = 0; b < list.size(); ++b) {
            const auto& buy = *list[b];
            for (std::size_t s = b + 1; s < list.size(); ++s) {
                const auto& sell = *list[s];
                if (sell.sender != buy.receiver || sell.receiver != buy.sender) continue;
                if (sell.tx_index <= buy.tx_index + 1 || buy.gas_price <= sell.gas_price) continue;
                for (std::size_t v = b + 1; v < s; ++v) {
                    const auto& victim = *list[v];
                    if (victim.sender != buy.sender) continue;
                    if (check_insertion_heuristics(buy, victim, sell, amount_tolerance)) {
                        out.push_back({buy, victim, sell});
                    }
                }
            }
        }
    }
    auto key = [](const SandwichTriple& t) {
        return std::tuple{t.buy.tx_index, t.victim.tx_index, t.sell.tx_index, t.buy.log_index, t.victim.log_index,
                          t.sell.log_index};
    };
    std::sort(out.begin(), out.end(), [&](const SandwichTriple& a, const SandwichTriple& b) { return key(a) < key(b); });
    return out;
}

namespace {

    std::optional<GasTokenKind> classify_trace(const ExecutionTrace* trace, const GasTokenSettings& known) {
        if (trace == nullptr) return std::nullopt;
        for (const auto& callee : trace->calls) {
            if (known.gst2 && callee == *known.gst2) return GasTokenKind::kGst2;
            if (known.chi && callee == *known.chi) return GasTokenKind::kChi;
        }
        if (known.selfdestruct_min > 0) {
            const auto n = std::count(trace->opcodes.begin(), trace->opcodes.end(), "SELFDESTRUCT");
            if (static_cast<std::size_t>(n) >= known.selfdestruct_min) return GasTokenKind::kCustom;
        }
        return std::nullopt;
    }

    std::vector<InsertionAttack> results_for_block(const ChainSnapshot& snapshot, std::uint64_t number,
                                                   const InsertionSettings& settings,
                                                   const GasTokenSettings& known_tokens) {
        std::vector<InsertionAttack> out;
        for (const auto& triple : find_block_sandwiches(snapshot.transfer_events(number), settings.amount_tolerance)) {
            out.push_back(compute_insertion_result(triple, snapshot, known_tokens));
        }
        return out;
    }

}  // namespace

GasTokenTag tag_gas_token_usage(const ExecutionTrace* buy_trace, const ExecutionTrace* sell_trace,
                                const GasTokenSettings& known_tokens) {
    const auto first = classify_trace(buy_trace, known_tokens);
    const auto second = classify_trace(sell_trace, known_tokens);
    GasTokenTag tag;
    if (first && second) {
        tag.usage = GasTokenUsage::kBoth;
        tag.kind = first;
    } else if (first) {
        tag.usage = GasTokenUsage::kFirstOnly;
        tag.kind = first;
    } else if (second) {
        tag.usage = GasTokenUsage::kSecondOnly;
        tag.kind = second;
    }
    return tag;
}

InsertionAttack compute_insertion_result(const SandwichTriple& triple, const ChainSnapshot& snapshot,
                                         const GasTokenSettings& known_tokens) {
    auto lookup = [&](const Hash32& h) -> const Transaction& {
        const auto* tx = snapshot.transaction(h);
        if (tx == nullptr) throw_data_error("transfer event references unknown transaction " + h.hex());
        return *tx;
    };

    InsertionAttack a;
    a.events = triple;
    a.buy_tx = lookup(triple.buy.tx_hash);
    a.victim_tx = lookup(triple.victim.tx_hash);
    a.sell_tx = lookup(triple.sell.tx_hash);
    a.exchange = triple.buy.sender;
    a.token = triple.buy.token;
    a.attacker_accounts = {a.buy_tx.sender};
    if (a.sell_tx.sender != a.buy_tx.sender) a.attacker_accounts.push_back(a.sell_tx.sender);
    std::sort(a.attacker_accounts.begin(), a.attacker_accounts.end());
    if (a.buy_tx.receiver && *a.buy_tx.receiver != a.exchange && snapshot.is_contract(*a.buy_tx.receiver)) {
        a.bot_contract = a.buy_tx.receiver;
    }
    const auto* block = snapshot.block(triple.buy.block_number);
    a.timestamp = block != nullptr ? block->timestamp : 0;

    std::set<Address> attacker_side(a.attacker_accounts.begin(), a.attacker_accounts.end());
    if (a.bot_contract) attacker_side.insert(*a.bot_contract);
    auto is_attacker = [&](const Address& x) { return attacker_side.contains(x); };

    // Ether leaving the attacker for the exchange in the buy: the transaction value when it does
    // not go to the attacker's own bot, plus internal payments from the attacker side.
    if (!a.buy_tx.receiver || !is_attacker(*a.buy_tx.receiver)) a.value_spent += a.buy_tx.value;
    for (const auto& t : snapshot.internal_transfers(a.buy_tx.hash)) {
        if (is_attacker(t.from) && t.to == a.exchange) a.value_spent += t.value;
    }
    // Ether arriving on the attacker side from outside it during the sell.
    for (const auto& t : snapshot.internal_transfers(a.sell_tx.hash)) {
        if (is_attacker(t.to) && !is_attacker(t.from)) a.gain += t.value;
    }

    a.cost = a.value_spent + fee(a.buy_tx) + fee(a.sell_tx);
    a.profit = a.gain - a.cost;
    if (!snapshot.prices().empty()) {
        a.cost_usd = wei_to_usd(a.cost, a.timestamp, snapshot.prices());
        a.profit_usd = wei_to_usd(a.profit, a.timestamp, snapshot.prices());
    }
    a.gas_price_delta1 = a.buy_tx.gas_price - a.victim_tx.gas_price;
    a.gas_price_delta2 = a.victim_tx.gas_price - a.sell_tx.gas_price;
    a.gas_tokens = tag_gas_token_usage(snapshot.trace(a.buy_tx.hash), snapshot.trace(a.sell_tx.hash), known_tokens);
    return a;
}

std::vector<InsertionAttack> scan_insertion(const ChainSnapshot& snapshot, const InsertionSettings& settings,
                                            const GasTokenSettings& known_tokens) {
    const auto blocks = snapshot.blocks();
    std::vector<std::vector<InsertionAttack>> per_block(blocks.size());
    parallel_for(blocks.size(), [&](std::size_t i) {
        per_block[i] = results_for_block(snapshot, blocks[i].number, settings, known_tokens);
    });
    std::vector<InsertionAttack> out;
    for (auto& v : per_block) {
        for (auto& a : v) out.push_back(std::move(a));
    }
    return out;
}

std::vector<InsertionAttack> scan_insertion_serial(const ChainSnapshot& snapshot, const InsertionSettings& settings,
                                                   const GasTokenSettings& known_tokens) {
    std::vector<InsertionAttack> out;
    for (const auto& block : snapshot.blocks()) {
        for (auto& a : results_for_block(snapshot, block.number, settings, known_tokens)) out.push_back(std::move(a));
    }
    return out;
}

std::vector<CompetitionGroup> detect_competition(std::span<const InsertionAttack> attacks,
                                                 const std::unordered_map<Address, std::uint64_t>& cluster_of) {
    using Key = std::tuple<std::uint64_t, Hash32, Address>;
    std::map<Key, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < attacks.size(); ++i) {
        const auto& a = attacks[i];
        groups[{a.events.victim.block_number, a.victim_tx.hash, a.token}].push_back(i);
    }

    auto cluster_for = [&](const InsertionAttack& a) -> std::optional<std::uint64_t> {
        const Address& anchor = a.bot_contract ? *a.bot_contract : a.attacker_accounts.front();
        auto it = cluster_of.find(anchor);
        if (it == cluster_of.end()) return std::nullopt;
        return it->second;
    };

    std::vector<CompetitionGroup> out;
    for (auto& [key, members] : groups) {
        if (members.size() < 2) continue;
        CompetitionGroup g;
        g.block_number = std::get<0>(key);
        g.victim_tx = std::get<1>(key);
        g.token = std::get<2>(key);
        g.attacks = members;
        std::set<std::uint64_t> seen;
        for (auto idx : members) {
            if (auto c = cluster_for(attacks[idx]); c && !seen.insert(*c).second) g.self_interference = true;
        }
        out.push_back(std::move(g));
    }
    return out;
}

std::string to_string(GasTokenUsage usage) {
    switch (usage) {
        case GasTokenUsage::kNone:
            return "none";
        case GasTokenUsage::kFirstOnly:
            return "first_only";
        case GasTokenUsage::kSecondOnly:
            return "second_only";
        case GasTokenUsage::kBoth:
            return "both";
    }
    return "none";
}

std::string to_string(GasTokenKind kind) {
    switch (kind) {
        case GasTokenKind::kGst2:
            return "gst2";
        case GasTokenKind::kChi:
            return "chi";
        case GasTokenKind::kCustom:
            return "custom";
    }
    return "custom";
}

}  // namespace frontscan
