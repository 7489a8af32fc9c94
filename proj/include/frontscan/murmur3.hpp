// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include <frontscan/chain_model.hpp>

namespace frontscan {

// MurmurHash3 x86_32.
[[nodiscard]] std::uint32_t murmur3_32(ByteView data, std::uint32_t seed) noexcept;

}  // namespace frontscan
