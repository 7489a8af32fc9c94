// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <frontscan/snapshot.hpp>

#include <string>

namespace frontscan {

ChainSnapshot ChainSnapshot::build(Parts parts) {
    if (parts.blocks.empty()) throw_data_error("snapshot must contain at least one block");

    ChainSnapshot snap;
    snap.first_ = parts.blocks.front().number;
    snap.blocks_ = std::move(parts.blocks);

    for (std::size_t bp = 0; bp < snap.blocks_.size(); ++bp) {
        auto& block = snap.blocks_[bp];
        if (block.number != snap.first_ + bp) throw_data_error("missing block " + std::to_string(snap.first_ + bp));
        std::uint64_t gas_sum{0};
        for (std::size_t tp = 0; tp < block.transactions.size(); ++tp) {
            auto& tx = block.transactions[tp];
            const std::string where = "block " + std::to_string(block.number) + " tx " + std::to_string(tp);
            if (tx.tx_index != tp) throw_data_error(where + ": transaction indices must be contiguous from 0");
            if (tx.block_number != block.number) throw_data_error(where + ": block number mismatch");
            if (tx.gas_used > tx.gas_limit) throw_data_error(where + ": gas_used exceeds gas_limit");
            if (tx.value < 0 || tx.gas_price < 0) throw_data_error(where + ": negative amount");
            gas_sum += tx.gas_used;
            auto [it, inserted] = snap.tx_index_.emplace(
                tx.hash, TxLocation{static_cast<std::uint32_t>(bp), static_cast<std::uint32_t>(tp)});
            if (!inserted) throw_data_error(where + ": duplicate transaction hash " + tx.hash.hex());
        }
        if (gas_sum > block.gas_limit) {
            throw_data_error("block " + std::to_string(block.number) + ": transactions exceed block gas limit");
        }
    }

    snap.events_.resize(snap.blocks_.size());
    for (auto& [number, events] : parts.transfer_events) {
        const auto* block = snap.block(number);
        if (block == nullptr) throw_data_error("transfer events for block " + std::to_string(number) + " outside range");
        for (const auto& e : events) {
            const auto* tx = snap.transaction(e.tx_hash);
            if (tx == nullptr || tx->block_number != number) {
                throw_data_error("transfer event references unknown transaction " + e.tx_hash.hex());
            }
            if (tx->tx_index != e.tx_index || tx->gas_price != e.gas_price) {
                throw_data_error("transfer event disagrees with transaction " + e.tx_hash.hex());
            }
        }
        snap.events_[number - snap.first_] = std::move(events);
    }

    for (const auto& [hash, transfers] : parts.internal_transfers) {
        for (const auto& t : transfers) {
            if (t.value <= 0) throw_data_error("internal transfer in " + hash.hex() + " must carry positive value");
            if (t.parent_tx != hash) throw_data_error("internal transfer parent mismatch for " + hash.hex());
        }
    }

    snap.code_ = std::make_shared<const std::unordered_map<Address, Bytes>>(std::move(parts.code));
    snap.internal_ = std::move(parts.internal_transfers);
    snap.traces_ = std::move(parts.traces);
    snap.prices_ = std::move(parts.prices);
    snap.trace_loader_ = std::move(parts.trace_loader);
    snap.internal_loader_ = std::move(parts.internal_loader);
    snap.lazy_ = std::make_unique<LazyCache>();
    return snap;
}

const Block* ChainSnapshot::block(std::uint64_t number) const noexcept {
    if (number < first_ || number - first_ >= blocks_.size()) return nullptr;
    return &blocks_[number - first_];
}

const Transaction* ChainSnapshot::transaction(const Hash32& hash) const noexcept {
    auto it = tx_index_.find(hash);
    if (it == tx_index_.end()) return nullptr;
    return &blocks_[it->second.block_pos].transactions[it->second.tx_pos];
}

const Bytes* ChainSnapshot::code_at(const Address& address) const noexcept {
    auto it = code_->find(address);
    return it == code_->end() ? nullptr : &it->second;
}

bool ChainSnapshot::is_contract(const Address& address) const noexcept {
    const auto* code = code_at(address);
    return code != nullptr && !code->empty();
}

std::span<const TransferEvent> ChainSnapshot::transfer_events(std::uint64_t block_number) const noexcept {
    if (block_number < first_ || block_number - first_ >= events_.size()) return {};
    return events_[block_number - first_];
}

const std::vector<InternalTransfer>& ChainSnapshot::internal_transfers(const Hash32& tx_hash) const {
    static const std::vector<InternalTransfer> kNone;
    if (auto it = internal_.find(tx_hash); it != internal_.end()) return it->second;
    if (!internal_loader_) return kNone;
    std::lock_guard lock{lazy_->mutex};
    auto it = lazy_->internal.find(tx_hash);
    if (it == lazy_->internal.end()) it = lazy_->internal.emplace(tx_hash, internal_loader_(tx_hash)).first;
    return it->second;
}

const ExecutionTrace* ChainSnapshot::trace(const Hash32& tx_hash) const {
    if (auto it = traces_.find(tx_hash); it != traces_.end()) return &it->second;
    if (!trace_loader_) return nullptr;
    std::lock_guard lock{lazy_->mutex};
    auto it = lazy_->traces.find(tx_hash);
    if (it == lazy_->traces.end()) it = lazy_->traces.emplace(tx_hash, trace_loader_(tx_hash)).first;
    return it->second ? &*it->second : nullptr;
}

bool ChainSnapshot::same_content(const ChainSnapshot& other) const {
    return first_ == other.first_ && blocks_ == other.blocks_ && *code_ == *other.code_ &&
           internal_ == other.internal_ && traces_ == other.traces_ && events_ == other.events_ &&
           prices_ == other.prices_;
}

}  // namespace frontscan
