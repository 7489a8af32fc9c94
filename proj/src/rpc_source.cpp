// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <frontscan/rpc_source.hpp>

#include <map>

#include <httplib.h>

#include <frontscan/fixture_io.hpp>
#include <frontscan/hex.hpp>

namespace frontscan {

using nlohmann::json;

namespace {

    struct ParsedUrl {
        std::string scheme_host_port;
        std::string path;
    };

    ParsedUrl split_url(const std::string& url) {
        const auto scheme = url.find("://");
        if (scheme == std::string::npos) throw_usage_error("rpc url must include a scheme: '" + url + "'");
        const auto slash = url.find('/', scheme + 3);
        if (slash == std::string::npos) return {url, "/"};
        return {url.substr(0, slash), url.substr(slash)};
    }

    std::string str(const json& j, const char* name) { return fixture::string_field(j, name); }

}  // namespace

RpcTransport make_http_transport(const RpcSettings& settings) {
    const auto parsed = split_url(settings.url);
    auto client = std::make_shared<httplib::Client>(parsed.scheme_host_port);
    client->set_connection_timeout(10);
    client->set_read_timeout(60);
    return [client, path = parsed.path](const std::string& body) -> std::string {
        auto res = client->Post(path, body, "application/json");
        if (!res) throw_data_error("rpc request failed: " + httplib::to_string(res.error()));
        if (res->status != 200) throw_data_error("rpc request failed with HTTP " + std::to_string(res->status));
        return res->body;
    };
}

RpcDataSource::RpcDataSource(RpcSettings settings, RpcTransport transport)
    : settings_{std::move(settings)}, transport_{std::move(transport)} {
    if (settings_.batch_size == 0) throw_usage_error("rpc batch size must be positive");
}

RpcDataSource::RpcDataSource(RpcSettings settings) : RpcDataSource(settings, make_http_transport(settings)) {}

json RpcDataSource::send(const json& request) {
    const auto body = request.dump();
    for (unsigned attempt = 0;; ++attempt) {
        try {
            return json::parse(transport_(body));
        } catch (const std::exception& e) {
            if (attempt >= settings_.retries) throw_data_error(std::string{"rpc transport: "} + e.what());
        }
    }
}

json RpcDataSource::call(const std::string& method, json params) {
    auto results = call_batch(method, {std::move(params)});
    return std::move(results.front());
}

std::vector<json> RpcDataSource::call_batch(const std::string& method, const std::vector<json>& params) {
    std::vector<json> results(params.size());
    for (std::size_t start = 0; start < params.size(); start += settings_.batch_size) {
        const std::size_t end = std::min(params.size(), start + settings_.batch_size);
        json batch = json::array();
        std::map<std::uint64_t, std::size_t> slot_of;
        for (std::size_t i = start; i < end; ++i) {
            const auto id = next_id_++;
            slot_of[id] = i;
            batch.push_back({{"jsonrpc", "2.0"}, {"id", id}, {"method", method}, {"params", params[i]}});
        }
        auto response = send(batch);
        if (response.is_object()) response = json::array({response});
        if (!response.is_array()) throw_data_error("rpc " + method + ": malformed response");
        for (const auto& item : response) {
            if (item.contains("error")) {
                throw_data_error("rpc " + method + ": " + item["error"].value("message", std::string{"error"}));
            }
            const auto it = slot_of.find(item.value("id", std::uint64_t{0}));
            if (it == slot_of.end()) throw_data_error("rpc " + method + ": response with unknown id");
            results[it->second] = item.contains("result") ? item["result"] : json(nullptr);
            slot_of.erase(it);
        }
        if (!slot_of.empty()) throw_data_error("rpc " + method + ": missing responses in batch");
    }
    return results;
}

std::optional<Block> RpcDataSource::get_block(std::uint64_t number) {
    const auto raw = call("eth_getBlockByNumber", json::array({quantity_to_hex(number), true}));
    if (raw.is_null()) return std::nullopt;
    try {
        Block block;
        block.number = u64_from_hex(str(raw, "number"));
        block.timestamp = u64_from_hex(str(raw, "timestamp"));
        block.miner = Address::from_hex(str(raw, "miner"));
        block.gas_limit = u64_from_hex(str(raw, "gasLimit"));
        block.gas_used = u64_from_hex(str(raw, "gasUsed"));

        const auto& txs = fixture::field(raw, "transactions");
        std::vector<json> receipt_params;
        for (const auto& t : txs) receipt_params.push_back(json::array({str(t, "hash")}));
        const auto receipts = call_batch("eth_getTransactionReceipt", receipt_params);

        for (std::size_t i = 0; i < txs.size(); ++i) {
            const auto& t = txs[i];
            const auto& r = receipts[i];
            if (r.is_null()) throw_data_error("missing receipt for " + str(t, "hash"));
            Transaction tx;
            tx.hash = Hash32::from_hex(str(t, "hash"));
            tx.block_number = block.number;
            tx.tx_index = static_cast<std::uint32_t>(u64_from_hex(str(t, "transactionIndex")));
            tx.sender = Address::from_hex(str(t, "from"));
            if (t.contains("to") && !t["to"].is_null()) tx.receiver = Address::from_hex(t["to"].get<std::string>());
            tx.value = quantity_from_hex(str(t, "value"));
            tx.gas_limit = u64_from_hex(str(t, "gas"));
            tx.gas_price = quantity_from_hex(str(t, "gasPrice"));
            tx.input = from_hex(str(t, "input"));
            tx.gas_used = u64_from_hex(str(r, "gasUsed"));
            tx.status = str(r, "status") == "0x1" ? TxStatus::kSuccess : TxStatus::kReverted;
            block.transactions.push_back(std::move(tx));
        }
        std::sort(block.transactions.begin(), block.transactions.end(),
                  [](const Transaction& a, const Transaction& b) { return a.tx_index < b.tx_index; });
        return block;
    } catch (const Error& e) {
        throw_data_error("rpc block " + std::to_string(number) + ": " + e.what());
    }
}

std::vector<RawLog> RpcDataSource::get_logs(std::uint64_t from_block, std::uint64_t to_block) {
    const auto raw = call("eth_getLogs", json::array({{{"fromBlock", quantity_to_hex(from_block)},
                                                      {"toBlock", quantity_to_hex(to_block)}}}));
    std::vector<RawLog> logs;
    for (const auto& l : raw) {
        RawLog log;
        log.block_number = u64_from_hex(str(l, "blockNumber"));
        log.tx_hash = Hash32::from_hex(str(l, "transactionHash"));
        log.log_index = static_cast<std::uint32_t>(u64_from_hex(str(l, "logIndex")));
        log.address = Address::from_hex(str(l, "address"));
        for (const auto& topic : fixture::field(l, "topics")) log.topics.push_back(Hash32::from_hex(topic.get<std::string>()));
        log.data = from_hex(str(l, "data"));
        logs.push_back(std::move(log));
    }
    return logs;
}

std::optional<Bytes> RpcDataSource::get_code(const Address& address) {
    const auto raw = call("eth_getCode", json::array({address.hex(), "latest"}));
    if (!raw.is_string()) return std::nullopt;
    auto code = from_hex(raw.get<std::string>());
    if (code.empty()) return std::nullopt;
    return code;
}

std::optional<ExecutionTrace> RpcDataSource::get_trace(const Hash32& tx_hash) {
    const auto raw = call("debug_traceTransaction",
                          json::array({tx_hash.hex(), {{"disableStorage", true}, {"disableMemory", true}}}));
    if (raw.is_null()) return std::nullopt;
    ExecutionTrace trace;
    trace.tx_hash = tx_hash;
    for (const auto& step : fixture::field(raw, "structLogs")) trace.opcodes.push_back(str(step, "op"));
    if (!raw.value("failed", false)) {
        trace.terminal = TraceTerminal::kNormal;
    } else if (!trace.opcodes.empty() && trace.opcodes.back() == "REVERT") {
        trace.terminal = TraceTerminal::kRevert;
    } else if (!trace.opcodes.empty() && trace.opcodes.back() == "INVALID") {
        trace.terminal = TraceTerminal::kAssert;
    } else {
        trace.terminal = TraceTerminal::kOutOfGas;
    }
    return trace;
}

std::vector<InternalTransfer> RpcDataSource::get_internal_transfers(const Hash32& tx_hash) {
    const auto raw = call("trace_transaction", json::array({tx_hash.hex()}));
    std::vector<InternalTransfer> out;
    if (!raw.is_array()) return out;
    for (const auto& t : raw) {
        // The root call is the external transaction itself.
        if (t.value("traceAddress", json::array()).empty()) continue;
        if (t.contains("error")) continue;
        const auto& action = fixture::field(t, "action");
        if (!action.contains("value") || !action.contains("to")) continue;
        const auto value = quantity_from_hex(str(action, "value"));
        if (value <= 0) continue;
        out.push_back({tx_hash, Address::from_hex(str(action, "from")), Address::from_hex(str(action, "to")), value});
    }
    return out;
}

}  // namespace frontscan
