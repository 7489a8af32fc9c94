// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>

#include <json.hpp>

#include <frontscan/chain_model.hpp>
#include <frontscan/ingestion.hpp>

namespace frontscan::fixture {

using Json = nlohmann::ordered_json;

// One NDJSON line per record, tagged by "kind".
[[nodiscard]] Json to_json(const Block& block);
[[nodiscard]] Json to_json(const RawLog& log);
[[nodiscard]] Json code_to_json(const Address& address, ByteView code);
[[nodiscard]] Json to_json(const ExecutionTrace& trace);
[[nodiscard]] Json to_json(const InternalTransfer& transfer);

[[nodiscard]] Block block_from_json(const nlohmann::json& j);
[[nodiscard]] RawLog log_from_json(const nlohmann::json& j);
[[nodiscard]] std::pair<Address, Bytes> code_from_json(const nlohmann::json& j);
[[nodiscard]] ExecutionTrace trace_from_json(const nlohmann::json& j);
[[nodiscard]] InternalTransfer internal_from_json(const nlohmann::json& j);

// Throws a data error naming the missing or mistyped field.
[[nodiscard]] const nlohmann::json& field(const nlohmann::json& j, const char* name);
[[nodiscard]] std::string string_field(const nlohmann::json& j, const char* name);

void write_line(std::ostream& out, const Json& record);

}  // namespace frontscan::fixture
