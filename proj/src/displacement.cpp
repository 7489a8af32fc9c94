// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <frontscan/displacement.hpp>

#include <algorithm>

#include <frontscan/bloom_ngram.hpp>
#include <frontscan/parallel.hpp>

namespace frontscan {

DisplacementDiagnostics& DisplacementDiagnostics::operator+=(const DisplacementDiagnostics& o) noexcept {
    windows += o.windows;
    prescreen_hits += o.prescreen_hits;
    input_matches += o.input_matches;
    heuristic_passes += o.heuristic_passes;
    simulation_rejects += o.simulation_rejects;
    oracle_failures += o.oracle_failures;
    return *this;
}

std::vector<BlockWindow> displacement_windows(std::uint64_t first_block, std::uint64_t last_block,
                                              std::uint64_t length, std::uint64_t stride) {
    if (length == 0 || stride == 0) throw_usage_error("window length and stride must be positive");
    std::vector<BlockWindow> windows;
    if (first_block > last_block) return windows;
    for (std::uint64_t start = first_block;; start += stride) {
        const std::uint64_t end = std::min(last_block, start + length - 1);
        windows.push_back({start, end});
        if (end == last_block) break;
    }
    return windows;
}

bool check_displacement_heuristics(const Transaction& attacker, const Transaction& victim, const Fraction& size_ratio) {
    if (!attacker.receiver || !victim.receiver) return false;
    if (attacker.sender == victim.sender || *attacker.receiver == *victim.receiver) return false;
    if (attacker.gas_price <= victim.gas_price) return false;
    const auto attacker_chunks = count_chunks(attacker.input);
    if (attacker_chunks == 0) return false;
    return size_ratio.reached_by(count_chunks(victim.input), attacker_chunks);
}

bool validate_by_simulation(const Transaction& attacker, const Transaction& victim, ExecutionOracle& oracle,
                            const OracleContext& context) {
    if (attacker.hash == victim.hash) throw OracleError{"cannot simulate a transaction against itself"};
    if (context.miner.is_zero()) throw OracleError{"simulation context requires a nonzero miner address"};
    const Transaction forward[] = {attacker, victim};
    const Transaction backward[] = {victim, attacker};
    const auto first = oracle.run(forward, context);
    const auto second = oracle.run(backward, context);
    if (first.size() != 2 || second.size() != 2) throw OracleError{"oracle returned wrong number of counts"};
    return first[0] != second[1] || first[1] != second[0];
}

DisplacementAttack compute_displacement_result(const Transaction& attacker, const Transaction& victim,
                                               const ChainSnapshot& snapshot) {
    DisplacementAttack out;
    out.attacker_tx = attacker;
    out.victim_tx = victim;
    out.attacker_account = attacker.sender;
    out.bot_contract = attacker.receiver.value_or(Address{});
    const auto* block = snapshot.block(attacker.block_number);
    out.timestamp = block != nullptr ? block->timestamp : 0;

    for (const auto& t : snapshot.internal_transfers(attacker.hash)) {
        if (t.to == attacker.sender) out.gain += t.value;
    }
    out.cost = fee(attacker);
    out.profit = out.gain - out.cost;
    if (!snapshot.prices().empty()) {
        out.cost_usd = wei_to_usd(out.cost, out.timestamp, snapshot.prices());
        out.profit_usd = wei_to_usd(out.profit, out.timestamp, snapshot.prices());
    }
    out.gas_price_delta = attacker.gas_price - victim.gas_price;
    out.block_delta = victim.block_number - attacker.block_number;
    return out;
}

namespace {

    struct WindowResult {
        std::vector<DisplacementAttack> attacks;
        DisplacementDiagnostics diagnostics;
    };

    std::vector<std::uint64_t> distinct_gram_keys(ByteView input, std::size_t gram_size) {
        std::vector<std::uint64_t> keys;
        if (input.size() < gram_size) return keys;
        keys.reserve(input.size() - gram_size + 1);
        for (const auto& g : ngrams(input, gram_size)) keys.push_back(g.key);
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        return keys;
    }

    std::size_t intersection_size(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
        std::size_t n{0};
        auto ia = a.begin();
        auto ib = b.begin();
        while (ia != a.end() && ib != b.end()) {
            if (*ia < *ib) {
                ++ia;
            } else if (*ib < *ia) {
                ++ib;
            } else {
                ++n;
                ++ia;
                ++ib;
            }
        }
        return n;
    }

    WindowResult scan_window(const ChainSnapshot& snapshot, const BlockWindow& window,
                             const DisplacementSettings& settings, ExecutionOracle& oracle) {
        struct Seen {
            const Transaction* tx;
            std::vector<std::uint64_t> grams;
        };

        WindowResult result;
        result.diagnostics.windows = 1;
        BloomFilter filter{settings.bloom_capacity, settings.bloom_rate};
        std::vector<Seen> seen;

        for (auto number = window.first; number <= window.last; ++number) {
            const auto* block = snapshot.block(number);
            if (block == nullptr) continue;
            for (const auto& tx : block->transactions) {
                auto grams = distinct_gram_keys(tx.input, settings.gram_size);
                if (grams.empty()) continue;

                std::size_t hits{0};
                for (auto key : grams) hits += filter.contains(NGram{key, static_cast<std::uint8_t>(settings.gram_size)});

                if (settings.match_threshold.reached_by(hits, grams.size())) {
                    ++result.diagnostics.prescreen_hits;
                    for (const auto& earlier : seen) {
                        const auto common = intersection_size(grams, earlier.grams);
                        if (!settings.match_threshold.reached_by(common, grams.size())) continue;
                        ++result.diagnostics.input_matches;
                        const Transaction& attacker = *earlier.tx;
                        if (!precedes(attacker, tx)) continue;
                        if (!check_displacement_heuristics(attacker, tx, settings.size_ratio)) continue;
                        ++result.diagnostics.heuristic_passes;

                        const auto* attacker_block = snapshot.block(attacker.block_number);
                        const OracleContext context{attacker.block_number, attacker_block->miner};
                        try {
                            if (!validate_by_simulation(attacker, tx, oracle, context)) {
                                ++result.diagnostics.simulation_rejects;
                                continue;
                            }
                        } catch (const OracleError&) {
                            ++result.diagnostics.oracle_failures;
                            continue;
                        }
                        result.attacks.push_back(compute_displacement_result(attacker, tx, snapshot));
                    }
                }

                for (auto key : grams) filter.insert(NGram{key, static_cast<std::uint8_t>(settings.gram_size)});
                seen.push_back({&tx, std::move(grams)});
            }
        }
        return result;
    }

    DisplacementScan merge(std::vector<WindowResult>& results) {
        DisplacementScan scan;
        for (auto& r : results) {
            scan.diagnostics += r.diagnostics;
            for (auto& a : r.attacks) scan.attacks.push_back(std::move(a));
        }
        auto key = [](const DisplacementAttack& a) {
            return std::tuple{a.attacker_tx.block_number, a.attacker_tx.tx_index, a.victim_tx.block_number,
                              a.victim_tx.tx_index};
        };
        std::stable_sort(scan.attacks.begin(), scan.attacks.end(),
                         [&](const DisplacementAttack& a, const DisplacementAttack& b) { return key(a) < key(b); });
        scan.attacks.erase(std::unique(scan.attacks.begin(), scan.attacks.end(),
                                       [&](const DisplacementAttack& a, const DisplacementAttack& b) {
                                           return a.attacker_tx.hash == b.attacker_tx.hash &&
                                                  a.victim_tx.hash == b.victim_tx.hash;
                                       }),
                           scan.attacks.end());
        return scan;
    }

}  // namespace

DisplacementScan scan_displacement(const ChainSnapshot& snapshot, const DisplacementSettings& settings,
                                   ExecutionOracle& oracle) {
    const auto windows =
        displacement_windows(snapshot.first_block(), snapshot.last_block(), settings.window, settings.stride);
    std::vector<WindowResult> results(windows.size());
    parallel_for(windows.size(), [&](std::size_t i) { results[i] = scan_window(snapshot, windows[i], settings, oracle); });
    return merge(results);
}

DisplacementScan scan_displacement_serial(const ChainSnapshot& snapshot, const DisplacementSettings& settings,
                                          ExecutionOracle& oracle) {
    const auto windows =
        displacement_windows(snapshot.first_block(), snapshot.last_block(), settings.window, settings.stride);
    std::vector<WindowResult> results;
    results.reserve(windows.size());
    for (const auto& w : windows) results.push_back(scan_window(snapshot, w, settings, oracle));
    return merge(results);
}

}  // namespace frontscan
