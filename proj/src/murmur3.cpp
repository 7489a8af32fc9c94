// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <frontscan/murmur3.hpp>

namespace frontscan {

namespace {

    constexpr std::uint32_t rotl32(std::uint32_t x, int r) { return (x << r) | (x >> (32 - r)); }

    constexpr std::uint32_t fmix32(std::uint32_t h) {
        h ^= h >> 16;
        h *= 0x85ebca6b;
        h ^= h >> 13;
        h *= 0xc2b2ae35;
        h ^= h >> 16;
        return h;
    }

}  // namespace

std::uint32_t murmur3_32(ByteView data, std::uint32_t seed) noexcept {
    constexpr std::uint32_t c1 = 0xcc9e2d51;
    constexpr std::uint32_t c2 = 0x1b873593;

    std::uint32_t h = seed;
    const std::size_t nblocks = data.size() / 4;
    for (std::size_t i = 0; i < nblocks; ++i) {
        const std::uint8_t* p = data.data() + i * 4;
        std::uint32_t k = static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
                          (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
        k *= c1;
        k = rotl32(k, 15);
        k *= c2;
        h ^= k;
        h = rotl32(h, 13);
        h = h * 5 + 0xe6546b64;
    }

    const std::uint8_t* tail = data.data() + nblocks * 4;
    std::uint32_t k{0};
    switch (data.size() & 3) {
        case 3:
            k ^= static_cast<std::uint32_t>(tail[2]) << 16;
            [[fallthrough]];
        case 2:
            k ^= static_cast<std::uint32_t>(tail[1]) << 8;
            [[fallthrough]];
        case 1:
            k ^= tail[0];
            k *= c1;
            k = rotl32(k, 15);
            k *= c2;
            h ^= k;
    }

    h ^= static_cast<std::uint32_t>(data.size());
    return fmix32(h);
}

}  // namespace frontscan
