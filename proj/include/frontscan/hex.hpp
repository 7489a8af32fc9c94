// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <frontscan/chain_model.hpp>

namespace frontscan {

[[nodiscard]] std::string to_hex(ByteView bytes, bool prefix = true);

// Accepts an optional "0x" prefix; odd-length or non-hex input throws a data error.
[[nodiscard]] Bytes from_hex(std::string_view hex);

// Quantities are 0x-prefixed big-endian hex with no leading zeros ("0x0" for zero).
[[nodiscard]] std::string quantity_to_hex(const boost::multiprecision::cpp_int& value);
[[nodiscard]] std::string quantity_to_hex(std::uint64_t value);
[[nodiscard]] boost::multiprecision::cpp_int quantity_from_hex(std::string_view hex);
[[nodiscard]] std::uint64_t u64_from_hex(std::string_view hex);

// 32-byte big-endian word.
[[nodiscard]] Hash32 to_word(const boost::multiprecision::cpp_int& value);
[[nodiscard]] boost::multiprecision::cpp_int from_word(ByteView word);

}  // namespace frontscan
