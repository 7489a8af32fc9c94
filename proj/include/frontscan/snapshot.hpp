// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include <frontscan/chain_model.hpp>

namespace frontscan {

using TraceLoader = std::function<std::optional<ExecutionTrace>(const Hash32&)>;
using InternalLoader = std::function<std::vector<InternalTransfer>(const Hash32&)>;

// Immutable, indexed view of a contiguous block range. Traces and internal transfers may be
// backed by a loader; they are fetched on first access and cached, so callers see them as preloaded.
class ChainSnapshot {
  public:
    struct Parts {
        std::vector<Block> blocks;  // contiguous, ascending
        std::unordered_map<Address, Bytes> code;
        std::unordered_map<Hash32, std::vector<InternalTransfer>> internal_transfers;
        std::unordered_map<Hash32, ExecutionTrace> traces;
        std::map<std::uint64_t, std::vector<TransferEvent>> transfer_events;
        PriceTable prices;
        TraceLoader trace_loader;        // consulted for hashes absent from `traces`
        InternalLoader internal_loader;  // consulted for hashes absent from `internal_transfers`
    };

    // Validates block contiguity, per-block ordering and gas invariants, and cross-references.
    static ChainSnapshot build(Parts parts);

    ChainSnapshot(ChainSnapshot&&) noexcept = default;
    ChainSnapshot& operator=(ChainSnapshot&&) noexcept = default;

    [[nodiscard]] std::uint64_t first_block() const noexcept { return first_; }
    [[nodiscard]] std::uint64_t last_block() const noexcept { return first_ + blocks_.size() - 1; }
    [[nodiscard]] std::span<const Block> blocks() const noexcept { return blocks_; }
    [[nodiscard]] const Block* block(std::uint64_t number) const noexcept;
    [[nodiscard]] std::size_t transaction_count() const noexcept { return tx_index_.size(); }

    [[nodiscard]] const Transaction* transaction(const Hash32& hash) const noexcept;
    [[nodiscard]] const Bytes* code_at(const Address& address) const noexcept;
    [[nodiscard]] bool is_contract(const Address& address) const noexcept;
    [[nodiscard]] const std::unordered_map<Address, Bytes>& code() const noexcept { return *code_; }

    [[nodiscard]] std::span<const TransferEvent> transfer_events(std::uint64_t block_number) const noexcept;
    [[nodiscard]] const std::vector<InternalTransfer>& internal_transfers(const Hash32& tx_hash) const;
    [[nodiscard]] const ExecutionTrace* trace(const Hash32& tx_hash) const;

    [[nodiscard]] const PriceTable& prices() const noexcept { return prices_; }

    // Structural equality over all eagerly held data.
    [[nodiscard]] bool same_content(const ChainSnapshot& other) const;

  private:
    ChainSnapshot() = default;

    struct TxLocation {
        std::uint32_t block_pos;
        std::uint32_t tx_pos;
    };

    struct LazyCache {
        std::mutex mutex;
        std::unordered_map<Hash32, std::optional<ExecutionTrace>> traces;
        std::unordered_map<Hash32, std::vector<InternalTransfer>> internal;
    };

    std::uint64_t first_{0};
    std::vector<Block> blocks_;
    std::unordered_map<Hash32, TxLocation> tx_index_;
    std::shared_ptr<const std::unordered_map<Address, Bytes>> code_;
    std::unordered_map<Hash32, std::vector<InternalTransfer>> internal_;
    std::unordered_map<Hash32, ExecutionTrace> traces_;
    std::vector<std::vector<TransferEvent>> events_;  // by block position
    PriceTable prices_;
    TraceLoader trace_loader_;
    InternalLoader internal_loader_;
    std::unique_ptr<LazyCache> lazy_;
};

}  // namespace frontscan
