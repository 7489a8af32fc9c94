// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>

#include <frontscan/chain_model.hpp>

namespace frontscan {

// Original Keccak-256 (0x01 domain padding), as used for event signatures and hashes on Ethereum.
[[nodiscard]] Hash32 keccak256(ByteView data);
[[nodiscard]] Hash32 keccak256(std::string_view text);

}  // namespace frontscan
