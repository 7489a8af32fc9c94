// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string>

#include <json.hpp>

#include <frontscan/ingestion.hpp>

namespace frontscan {

struct RpcSettings {
    std::string url;  // http://host:port/path
    std::size_t batch_size = 50;
    unsigned retries = 3;
};

// Sends one JSON-RPC request body (single object or batch array) and returns the raw response body.
using RpcTransport = std::function<std::string(const std::string& body)>;

[[nodiscard]] RpcTransport make_http_transport(const RpcSettings& settings);

// DataSource over a node's JSON-RPC surface:
//   eth_getBlockByNumber + eth_getTransactionReceipt, eth_getLogs, eth_getCode,
//   debug_traceTransaction (opcode trace) and trace_transaction (internal value transfers).
// Calls are serialized by the loader.
class RpcDataSource final : public DataSource {
  public:
    RpcDataSource(RpcSettings settings, RpcTransport transport);
    explicit RpcDataSource(RpcSettings settings);

    std::optional<Block> get_block(std::uint64_t number) override;
    std::vector<RawLog> get_logs(std::uint64_t from_block, std::uint64_t to_block) override;
    std::optional<Bytes> get_code(const Address& address) override;
    std::optional<ExecutionTrace> get_trace(const Hash32& tx_hash) override;
    std::vector<InternalTransfer> get_internal_transfers(const Hash32& tx_hash) override;

  private:
    nlohmann::json call(const std::string& method, nlohmann::json params);
    std::vector<nlohmann::json> call_batch(const std::string& method, const std::vector<nlohmann::json>& params);
    nlohmann::json send(const nlohmann::json& request);

    RpcSettings settings_;
    RpcTransport transport_;
    std::uint64_t next_id_{1};
};

}  // namespace frontscan
