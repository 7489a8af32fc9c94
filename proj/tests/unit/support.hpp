// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <frontscan/chain_model.hpp>
#include <frontscan/hex.hpp>
#include <frontscan/snapshot.hpp>

namespace frontscan::testing {

inline Address addr(std::uint64_t n) {
    Address a;
    for (int i = 0; i < 8; ++i) a.bytes[19 - i] = static_cast<std::uint8_t>(n >> (8 * i));
    a.bytes[0] = 0xaa;
    return a;
}

inline Hash32 hash(std::uint64_t n) {
    Hash32 h;
    for (int i = 0; i < 8; ++i) h.bytes[31 - i] = static_cast<std::uint8_t>(n >> (8 * i));
    h.bytes[0] = 0xbb;
    return h;
}

inline Wei eth(std::uint64_t n) { return Wei{n} * kWeiPerEther; }
inline Wei gwei(std::uint64_t n) { return Wei{n} * kWeiPerGwei; }

inline Transaction tx(std::uint64_t id, std::uint64_t block, std::uint32_t index, const Address& from,
                      std::optional<Address> to, const Wei& gas_price = gwei(20), std::uint64_t gas_used = 50'000,
                      std::uint64_t gas_limit = 100'000, Bytes input = {}) {
    Transaction t;
    t.hash = hash(id);
    t.block_number = block;
    t.tx_index = index;
    t.sender = from;
    t.receiver = to;
    t.gas_used = gas_used;
    t.gas_limit = gas_limit;
    t.gas_price = gas_price;
    t.input = std::move(input);
    return t;
}

// Blocks numbered from `first` holding the given transactions; indices and gas totals are filled in.
inline std::vector<Block> blocks_of(std::uint64_t first, std::vector<std::vector<Transaction>> txs) {
    std::vector<Block> out;
    for (std::size_t i = 0; i < txs.size(); ++i) {
        Block b;
        b.number = first + i;
        b.timestamp = 1'600'000'000 + 13 * i;
        b.miner = addr(999'999);
        b.gas_limit = 12'500'000;
        for (std::size_t k = 0; k < txs[i].size(); ++k) {
            auto t = txs[i][k];
            t.block_number = b.number;
            t.tx_index = static_cast<std::uint32_t>(k);
            b.gas_used += t.gas_used;
            b.transactions.push_back(std::move(t));
        }
        out.push_back(std::move(b));
    }
    return out;
}

}  // namespace frontscan::testing
