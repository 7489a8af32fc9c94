// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <frontscan/chain_model.hpp>
#include <frontscan/snapshot.hpp>

namespace frontscan {

struct RawLog {
    std::uint64_t block_number{0};
    Hash32 tx_hash;
    std::uint32_t log_index{0};
    Address address;
    std::vector<Hash32> topics;  // at most 4
    Bytes data;

    friend bool operator==(const RawLog&, const RawLog&) = default;
};

// Keccak-256 of "Transfer(address,address,uint256)".
[[nodiscard]] const Hash32& transfer_event_signature();

// Canonical ERC-20 Transfer: three topics (signature, from, to) and a single 32-byte amount word.
// Returns nothing for other events and for non-canonical layouts; throws on a matching log with bad data.
// The returned event has tx_index, gas_price and block_number unset; load_snapshot fills them.
[[nodiscard]] std::optional<TransferEvent> decode_transfer_event(const RawLog& log);

[[nodiscard]] RawLog encode_transfer_log(const TransferEvent& event);

// Read side of a chain. Repeated calls with equal arguments must return equal results.
class DataSource {
  public:
    virtual ~DataSource() = default;

    virtual std::optional<Block> get_block(std::uint64_t number) = 0;
    virtual std::vector<RawLog> get_logs(std::uint64_t from_block, std::uint64_t to_block) = 0;
    virtual std::optional<Bytes> get_code(const Address& address) = 0;
    virtual std::optional<ExecutionTrace> get_trace(const Hash32& tx_hash) = 0;
    virtual std::vector<InternalTransfer> get_internal_transfers(const Hash32& tx_hash) = 0;

    // When false, load_snapshot serializes all calls.
    [[nodiscard]] virtual bool concurrent_calls_supported() const noexcept { return false; }
};

// In-memory source over an NDJSON fixture (see docs/fixture-format.md).
class FixtureDataSource final : public DataSource {
  public:
    static FixtureDataSource from_file(const std::filesystem::path& path);
    static FixtureDataSource from_string(std::string_view text, std::string_view origin = "<memory>");

    std::optional<Block> get_block(std::uint64_t number) override;
    std::vector<RawLog> get_logs(std::uint64_t from_block, std::uint64_t to_block) override;
    std::optional<Bytes> get_code(const Address& address) override;
    std::optional<ExecutionTrace> get_trace(const Hash32& tx_hash) override;
    std::vector<InternalTransfer> get_internal_transfers(const Hash32& tx_hash) override;
    [[nodiscard]] bool concurrent_calls_supported() const noexcept override { return true; }

    [[nodiscard]] std::optional<std::uint64_t> min_block() const noexcept;
    [[nodiscard]] std::optional<std::uint64_t> max_block() const noexcept;
    [[nodiscard]] const std::unordered_map<Address, Bytes>& code() const noexcept { return code_; }

  private:
    std::map<std::uint64_t, Block> blocks_;
    std::map<std::uint64_t, std::vector<RawLog>> logs_;
    std::unordered_map<Address, Bytes> code_;
    std::unordered_map<Hash32, ExecutionTrace> traces_;
    std::unordered_map<Hash32, std::vector<InternalTransfer>> internal_;
};

struct LoadOptions {
    // Fetch traces and internal transfers on first access instead of during load.
    bool lazy = false;
};

// Builds a snapshot over [from_block, to_block]. Code is fetched for every transaction receiver
// and every log-emitting address; missing code means an externally owned account.
[[nodiscard]] ChainSnapshot load_snapshot(DataSource& source, std::uint64_t from_block, std::uint64_t to_block,
                                          PriceTable prices = {}, LoadOptions options = {});

}  // namespace frontscan
