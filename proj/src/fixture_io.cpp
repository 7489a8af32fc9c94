// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <frontscan/fixture_io.hpp>

#include <frontscan/hex.hpp>

namespace frontscan::fixture {

const nlohmann::json& field(const nlohmann::json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) throw_data_error(std::string{"missing field '"} + name + "'");
    return *it;
}

std::string string_field(const nlohmann::json& j, const char* name) {
    const auto& v = field(j, name);
    if (!v.is_string()) throw_data_error(std::string{"field '"} + name + "' must be a string");
    return v.get<std::string>();
}

namespace {

    std::uint64_t u64_field(const nlohmann::json& j, const char* name) { return u64_from_hex(string_field(j, name)); }

    boost::multiprecision::cpp_int quantity_field(const nlohmann::json& j, const char* name) {
        return quantity_from_hex(string_field(j, name));
    }

    Json tx_to_json(const Transaction& tx) {
        Json j;
        j["hash"] = tx.hash.hex();
        j["index"] = quantity_to_hex(tx.tx_index);
        j["from"] = tx.sender.hex();
        j["to"] = tx.receiver ? Json(tx.receiver->hex()) : Json(nullptr);
        j["value"] = quantity_to_hex(tx.value);
        j["gas_limit"] = quantity_to_hex(tx.gas_limit);
        j["gas_used"] = quantity_to_hex(tx.gas_used);
        j["gas_price"] = quantity_to_hex(tx.gas_price);
        j["input"] = to_hex(tx.input);
        j["status"] = to_string(tx.status);
        return j;
    }

    Transaction tx_from_json(const nlohmann::json& j, std::uint64_t block_number) {
        Transaction tx;
        tx.hash = Hash32::from_hex(string_field(j, "hash"));
        tx.block_number = block_number;
        tx.tx_index = static_cast<std::uint32_t>(u64_field(j, "index"));
        tx.sender = Address::from_hex(string_field(j, "from"));
        const auto& to = field(j, "to");
        if (!to.is_null()) tx.receiver = Address::from_hex(to.get<std::string>());
        tx.value = quantity_field(j, "value");
        tx.gas_limit = u64_field(j, "gas_limit");
        tx.gas_used = u64_field(j, "gas_used");
        tx.gas_price = quantity_field(j, "gas_price");
        tx.input = from_hex(string_field(j, "input"));
        tx.status = tx_status_from_string(string_field(j, "status"));
        return tx;
    }

}  // namespace

Json to_json(const Block& block) {
    Json j;
    j["kind"] = "block";
    j["number"] = quantity_to_hex(block.number);
    j["timestamp"] = quantity_to_hex(block.timestamp);
    j["miner"] = block.miner.hex();
    j["gas_limit"] = quantity_to_hex(block.gas_limit);
    j["gas_used"] = quantity_to_hex(block.gas_used);
    Json txs = Json::array();
    for (const auto& tx : block.transactions) txs.push_back(tx_to_json(tx));
    j["transactions"] = std::move(txs);
    return j;
}

Json to_json(const RawLog& log) {
    Json j;
    j["kind"] = "log";
    j["block_number"] = quantity_to_hex(log.block_number);
    j["tx_hash"] = log.tx_hash.hex();
    j["log_index"] = quantity_to_hex(log.log_index);
    j["address"] = log.address.hex();
    Json topics = Json::array();
    for (const auto& t : log.topics) topics.push_back(t.hex());
    j["topics"] = std::move(topics);
    j["data"] = to_hex(log.data);
    return j;
}

Json code_to_json(const Address& address, ByteView code) {
    Json j;
    j["kind"] = "code";
    j["address"] = address.hex();
    j["code"] = to_hex(code);
    return j;
}

Json to_json(const ExecutionTrace& trace) {
    Json j;
    j["kind"] = "trace";
    j["tx_hash"] = trace.tx_hash.hex();
    j["terminal"] = to_string(trace.terminal);
    j["opcodes"] = trace.opcodes;
    Json calls = Json::array();
    for (const auto& c : trace.calls) calls.push_back(c.hex());
    j["calls"] = std::move(calls);
    return j;
}

Json to_json(const InternalTransfer& transfer) {
    Json j;
    j["kind"] = "internal";
    j["parent_tx"] = transfer.parent_tx.hex();
    j["from"] = transfer.from.hex();
    j["to"] = transfer.to.hex();
    j["value"] = quantity_to_hex(transfer.value);
    return j;
}

Block block_from_json(const nlohmann::json& j) {
    Block block;
    block.number = u64_field(j, "number");
    block.timestamp = u64_field(j, "timestamp");
    block.miner = Address::from_hex(string_field(j, "miner"));
    block.gas_limit = u64_field(j, "gas_limit");
    block.gas_used = u64_field(j, "gas_used");
    const auto& txs = field(j, "transactions");
    if (!txs.is_array()) throw_data_error("field 'transactions' must be an array");
    for (const auto& t : txs) block.transactions.push_back(tx_from_json(t, block.number));
    return block;
}

RawLog log_from_json(const nlohmann::json& j) {
    RawLog log;
    log.block_number = u64_field(j, "block_number");
    log.tx_hash = Hash32::from_hex(string_field(j, "tx_hash"));
    log.log_index = static_cast<std::uint32_t>(u64_field(j, "log_index"));
    log.address = Address::from_hex(string_field(j, "address"));
    const auto& topics = field(j, "topics");
    if (!topics.is_array() || topics.size() > 4) throw_data_error("field 'topics' must be an array of at most 4 words");
    for (const auto& t : topics) log.topics.push_back(Hash32::from_hex(t.get<std::string>()));
    log.data = from_hex(string_field(j, "data"));
    return log;
}

std::pair<Address, Bytes> code_from_json(const nlohmann::json& j) {
    return {Address::from_hex(string_field(j, "address")), from_hex(string_field(j, "code"))};
}

ExecutionTrace trace_from_json(const nlohmann::json& j) {
    ExecutionTrace trace;
    trace.tx_hash = Hash32::from_hex(string_field(j, "tx_hash"));
    trace.terminal = trace_terminal_from_string(string_field(j, "terminal"));
    const auto& ops = field(j, "opcodes");
    if (!ops.is_array()) throw_data_error("field 'opcodes' must be an array");
    trace.opcodes = ops.get<std::vector<std::string>>();
    if (auto it = j.find("calls"); it != j.end()) {
        for (const auto& c : *it) trace.calls.push_back(Address::from_hex(c.get<std::string>()));
    }
    return trace;
}

InternalTransfer internal_from_json(const nlohmann::json& j) {
    InternalTransfer t;
    t.parent_tx = Hash32::from_hex(string_field(j, "parent_tx"));
    t.from = Address::from_hex(string_field(j, "from"));
    t.to = Address::from_hex(string_field(j, "to"));
    t.value = quantity_field(j, "value");
    return t;
}

void write_line(std::ostream& out, const Json& record) { out << record.dump() << '\n'; }

}  // namespace frontscan::fixture
