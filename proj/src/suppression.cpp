// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <frontscan/suppression.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <set>

#include <frontscan/parallel.hpp>

namespace frontscan {

namespace {

    constexpr std::array<std::string_view, 4> kControlledLoop{"GAS", "GT", "ISZERO", "JUMPI"};
    constexpr std::array<std::string_view, 4> kUncontrolledLoop{"SLOAD", "TIMESTAMP", "ADD", "SSTORE"};

    bool qualifies(const Transaction& tx, const SuppressionSettings& settings) {
        return tx.receiver && tx.gas_used > settings.min_gas && tx.gas_limit > 0 &&
               settings.gas_ratio.exceeded_by(tx.gas_used, tx.gas_limit);
    }

    bool has_cluster(std::span<const StuffingCluster> clusters, const Address& receiver) {
        return std::any_of(clusters.begin(), clusters.end(),
                           [&](const StuffingCluster& c) { return c.receiver == receiver; });
    }

}  // namespace

std::vector<StuffingCluster> find_stuffing_clusters(const Block& block, const SuppressionSettings& settings) {
    std::map<Address, std::vector<const Transaction*>> by_receiver;
    for (const auto& tx : block.transactions) {
        if (tx.receiver) by_receiver[*tx.receiver].push_back(&tx);
    }
    std::vector<StuffingCluster> out;
    for (const auto& [receiver, txs] : by_receiver) {
        if (txs.size() < 2) continue;
        if (!std::all_of(txs.begin(), txs.end(), [&](const Transaction* t) { return qualifies(*t, settings); })) continue;
        StuffingCluster c{block.number, receiver, {}};
        for (const auto* t : txs) c.txs.push_back(*t);
        out.push_back(std::move(c));
    }
    return out;
}

bool confirm_neighbors(const ChainSnapshot& snapshot, const StuffingCluster& cluster,
                       const SuppressionSettings& settings) {
    for (const std::int64_t offset : {-1, 1}) {
        if (offset < 0 && cluster.block_number == 0) continue;
        const auto* neighbor = snapshot.block(cluster.block_number + offset);
        if (neighbor == nullptr) continue;
        if (has_cluster(find_stuffing_clusters(*neighbor, settings), cluster.receiver)) return true;
    }
    return false;
}

std::size_t count_sequence(std::span<const std::string> opcodes, std::span<const std::string_view> pattern) {
    if (pattern.empty() || opcodes.size() < pattern.size()) return 0;
    std::size_t n{0};
    for (std::size_t i = 0; i + pattern.size() <= opcodes.size();) {
        if (std::equal(pattern.begin(), pattern.end(), opcodes.begin() + static_cast<std::ptrdiff_t>(i))) {
            ++n;
            i += pattern.size();
        } else {
            ++i;
        }
    }
    return n;
}

SuppressionStrategy classify_strategy(const ExecutionTrace& trace, std::size_t loop_count) {
    switch (trace.terminal) {
        case TraceTerminal::kNormal:
            if (count_sequence(trace.opcodes, kControlledLoop) > loop_count) return SuppressionStrategy::kControlledGasLoop;
            break;
        case TraceTerminal::kRevert:
            if (count_sequence(trace.opcodes, kUncontrolledLoop) > loop_count) {
                return SuppressionStrategy::kUncontrolledGasLoop;
            }
            break;
        case TraceTerminal::kAssert:
            return SuppressionStrategy::kAssert;
        case TraceTerminal::kOutOfGas:
            break;
    }
    return SuppressionStrategy::kUnknown;
}

std::vector<SuppressionRound> segment_rounds(const ChainSnapshot& snapshot, const Address& victim_contract,
                                             std::span<const Transaction> stuffing_txs,
                                             std::span<const Address> attacker_accounts, std::uint64_t from_block,
                                             std::uint64_t to_block) {
    const std::set<Address> attackers(attacker_accounts.begin(), attacker_accounts.end());
    std::set<Hash32> stuffing;
    for (const auto& t : stuffing_txs) stuffing.insert(t.hash);

    std::vector<SuppressionRound> rounds;
    std::optional<SuppressionRound> current;
    std::vector<Transaction> pending;  // stuffing seen before the first investment

    auto close = [&](AttackStatus status) {
        current->status = status;
        rounds.push_back(std::move(*current));
        current.reset();
    };

    from_block = std::max(from_block, snapshot.first_block());
    to_block = std::min(to_block, snapshot.last_block());
    for (auto number = from_block; number <= to_block; ++number) {
        const auto* block = snapshot.block(number);
        for (const auto& tx : block->transactions) {
            if (stuffing.contains(tx.hash)) {
                if (current) {
                    current->stuffing_txs.push_back(tx);
                } else if (!rounds.empty()) {
                    rounds.back().stuffing_txs.push_back(tx);
                } else {
                    pending.push_back(tx);
                }
                continue;
            }
            if (tx.receiver == victim_contract && tx.value > 0) {
                if (attackers.contains(tx.sender)) {
                    // A fresh attacker investment starts a new round; an unfinished one is lost.
                    if (current) close(AttackStatus::kFailure);
                    current = SuppressionRound{tx, std::move(pending), AttackStatus::kFailure, 0, {}, {}};
                    pending.clear();
                } else if (current) {
                    current->interrupted_by = tx.hash;
                    close(AttackStatus::kFailure);
                }
                continue;
            }
            if (!current) continue;
            for (const auto& t : snapshot.internal_transfers(tx.hash)) {
                if (t.from == victim_contract && attackers.contains(t.to)) {
                    current->prize_claimed += t.value;
                    current->claim_tx = tx.hash;
                }
            }
            if (current->claim_tx) close(AttackStatus::kSuccess);
        }
    }
    if (current) close(AttackStatus::kFailure);
    return rounds;
}

void compute_suppression_result(SuppressionAttack& attack, const ChainSnapshot& snapshot) {
    attack.investments = 0;
    attack.fees = 0;
    attack.tx_count = 0;
    std::set<std::uint64_t> stuffed_blocks;
    for (const auto& round : attack.rounds) {
        attack.investments += round.investment_tx.value;
        attack.fees += fee(round.investment_tx);
        ++attack.tx_count;
        for (const auto& tx : round.stuffing_txs) {
            attack.fees += fee(tx);
            stuffed_blocks.insert(tx.block_number);
            ++attack.tx_count;
        }
    }
    attack.blocks_stuffed = stuffed_blocks.size();
    attack.cost = attack.investments + attack.fees;
    attack.status = attack.rounds.empty() ? AttackStatus::kFailure : attack.rounds.back().status;
    attack.prize = attack.status == AttackStatus::kSuccess ? attack.rounds.back().prize_claimed : Wei{0};
    attack.profit = attack.prize - attack.cost;
    if (!snapshot.prices().empty()) {
        attack.cost_usd = wei_to_usd(attack.cost, attack.timestamp, snapshot.prices());
        attack.profit_usd = wei_to_usd(attack.profit, attack.timestamp, snapshot.prices());
    }
}

namespace {

    std::optional<SuppressionAttack> assemble(const ChainSnapshot& snapshot,
                                              const std::vector<const StuffingCluster*>& chain,
                                              const SuppressionSettings& settings) {
        SuppressionAttack attack;
        const Address bot = chain.front()->receiver;
        attack.bot_contracts = {bot};
        attack.first_block = chain.front()->block_number;
        attack.last_block = chain.back()->block_number;
        attack.timestamp = snapshot.block(attack.first_block)->timestamp;

        std::vector<Transaction> stuffing;
        std::set<Address> accounts;
        for (const auto* c : chain) {
            for (const auto& tx : c->txs) {
                stuffing.push_back(tx);
                accounts.insert(tx.sender);
            }
        }
        attack.attacker_accounts.assign(accounts.begin(), accounts.end());
        for (const auto& a : accounts) attack.account_bot_pairs.emplace_back(a, bot);

        // Victim: the contract most often paid by the attacker accounts around the stuffing sequence.
        std::map<Address, std::size_t> paid;
        const std::uint64_t search_from = attack.first_block > 0 ? attack.first_block - 1 : 0;
        for (auto n = std::max(search_from, snapshot.first_block()); n <= attack.last_block; ++n) {
            for (const auto& tx : snapshot.block(n)->transactions) {
                if (tx.receiver && *tx.receiver != bot && tx.value > 0 && accounts.contains(tx.sender) &&
                    snapshot.is_contract(*tx.receiver)) {
                    ++paid[*tx.receiver];
                }
            }
        }
        if (paid.empty()) return std::nullopt;
        attack.victim_contract =
            std::max_element(paid.begin(), paid.end(), [](const auto& a, const auto& b) { return a.second < b.second; })
                ->first;

        attack.rounds = segment_rounds(snapshot, attack.victim_contract, stuffing, attack.attacker_accounts,
                                       search_from, attack.last_block + settings.max_gap + 1);
        if (attack.rounds.empty()) return std::nullopt;

        const auto* first_trace = snapshot.trace(chain.front()->txs.front().hash);
        attack.strategy =
            first_trace != nullptr ? classify_strategy(*first_trace, settings.loop_count) : SuppressionStrategy::kUnknown;
        compute_suppression_result(attack, snapshot);
        return attack;
    }

    SuppressionScan assemble_all(const ChainSnapshot& snapshot,
                                 const std::vector<std::vector<StuffingCluster>>& per_block,
                                 const SuppressionSettings& settings) {
        const auto first = snapshot.first_block();
        auto clusters_at = [&](std::uint64_t number) -> std::span<const StuffingCluster> {
            if (number < first || number - first >= per_block.size()) return {};
            return per_block[number - first];
        };

        std::map<Address, std::vector<const StuffingCluster*>> confirmed;
        for (const auto& clusters : per_block) {
            for (const auto& c : clusters) {
                const bool prev = c.block_number > 0 && has_cluster(clusters_at(c.block_number - 1), c.receiver);
                const bool next = has_cluster(clusters_at(c.block_number + 1), c.receiver);
                if (prev || next) confirmed[c.receiver].push_back(&c);
            }
        }

        SuppressionScan scan;
        for (const auto& [receiver, list] : confirmed) {
            std::vector<const StuffingCluster*> chain;
            auto flush = [&] {
                if (chain.empty()) return;
                if (auto attack = assemble(snapshot, chain, settings)) {
                    if (attack->strategy == SuppressionStrategy::kUnknown) ++scan.unclassified;
                    scan.attacks.push_back(std::move(*attack));
                } else {
                    ++scan.rejected_no_investment;
                }
                chain.clear();
            };
            for (const auto* c : list) {
                if (!chain.empty() && c->block_number - chain.back()->block_number > settings.max_gap + 1) flush();
                chain.push_back(c);
            }
            flush();
        }
        std::sort(scan.attacks.begin(), scan.attacks.end(), [](const SuppressionAttack& a, const SuppressionAttack& b) {
            return std::tie(a.first_block, a.bot_contracts.front()) < std::tie(b.first_block, b.bot_contracts.front());
        });
        return scan;
    }

}  // namespace

SuppressionScan scan_suppression(const ChainSnapshot& snapshot, const SuppressionSettings& settings) {
    const auto blocks = snapshot.blocks();
    std::vector<std::vector<StuffingCluster>> per_block(blocks.size());
    parallel_for(blocks.size(), [&](std::size_t i) { per_block[i] = find_stuffing_clusters(blocks[i], settings); });
    return assemble_all(snapshot, per_block, settings);
}

SuppressionScan scan_suppression_serial(const ChainSnapshot& snapshot, const SuppressionSettings& settings) {
    std::vector<std::vector<StuffingCluster>> per_block;
    per_block.reserve(snapshot.blocks().size());
    for (const auto& block : snapshot.blocks()) per_block.push_back(find_stuffing_clusters(block, settings));
    return assemble_all(snapshot, per_block, settings);
}

std::string to_string(SuppressionStrategy strategy) {
    switch (strategy) {
        case SuppressionStrategy::kControlledGasLoop:
            return "controlled_gas_loop";
        case SuppressionStrategy::kUncontrolledGasLoop:
            return "uncontrolled_gas_loop";
        case SuppressionStrategy::kAssert:
            return "assert";
        case SuppressionStrategy::kUnknown:
            return "unknown";
    }
    return "unknown";
}

SuppressionStrategy suppression_strategy_from_string(std::string_view text) {
    if (text == "controlled_gas_loop") return SuppressionStrategy::kControlledGasLoop;
    if (text == "uncontrolled_gas_loop") return SuppressionStrategy::kUncontrolledGasLoop;
    if (text == "assert") return SuppressionStrategy::kAssert;
    if (text == "unknown") return SuppressionStrategy::kUnknown;
    throw_data_error("unknown suppression strategy '" + std::string{text} + "'");
}

std::string to_string(AttackStatus status) { return status == AttackStatus::kSuccess ? "success" : "failure"; }

AttackStatus attack_status_from_string(std::string_view text) {
    if (text == "success") return AttackStatus::kSuccess;
    if (text == "failure") return AttackStatus::kFailure;
    throw_data_error("unknown attack status '" + std::string{text} + "'");
}

}  // namespace frontscan
