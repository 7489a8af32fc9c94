// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include <frontscan/chain_model.hpp>

namespace frontscan {

inline constexpr std::size_t kDefaultGramSize = 4;
inline constexpr std::size_t kMaxGramSize = 8;

// A fixed-width byte window packed big-endian into a 64-bit key.
struct NGram {
    std::uint64_t key{0};
    std::uint8_t size{0};

    static NGram from_bytes(ByteView bytes);
    void write_bytes(std::uint8_t* out) const noexcept;
    [[nodiscard]] Bytes bytes() const;

    friend auto operator<=>(const NGram&, const NGram&) = default;
};

// Overlapping windows of `size` bytes advancing by `stride`. Empty when the input is shorter than `size`.
[[nodiscard]] std::vector<NGram> ngrams(ByteView input, std::size_t size = kDefaultGramSize, std::size_t stride = 1);

// Number of non-overlapping `size`-byte sequences in the input.
[[nodiscard]] std::size_t count_chunks(ByteView input, std::size_t size = kDefaultGramSize) noexcept;

struct BloomParams {
    std::uint64_t bits{0};
    std::uint32_t hashes{0};

    friend bool operator==(const BloomParams&, const BloomParams&) = default;
};

// m = ceil(-n ln p / (ln 2)^2) and k = round(m/n ln 2), with k pinned to 6 at n = 1e6, p = 0.01.
[[nodiscard]] BloomParams bloom_params(std::uint64_t capacity, double false_positive_rate);

class BloomFilter {
  public:
    BloomFilter(std::uint64_t capacity, double false_positive_rate);

    void insert(const NGram& gram) noexcept;
    [[nodiscard]] bool contains(const NGram& gram) const noexcept;
    void clear() noexcept;

    [[nodiscard]] std::uint64_t bit_count() const noexcept { return params_.bits; }
    [[nodiscard]] std::uint32_t hash_count() const noexcept { return params_.hashes; }
    [[nodiscard]] std::uint64_t capacity() const noexcept { return capacity_; }
    [[nodiscard]] double target_rate() const noexcept { return rate_; }

    // Index of hash function `j` for `gram`, in [0, bit_count()).
    [[nodiscard]] std::uint64_t index_of(const NGram& gram, std::uint32_t j) const noexcept;

  private:
    struct Digests {
        std::uint64_t h1;
        std::uint64_t h2;
    };
    [[nodiscard]] static Digests digests(const NGram& gram) noexcept;

    BloomParams params_;
    std::uint64_t capacity_;
    double rate_;
    std::vector<std::uint64_t> words_;
};

}  // namespace frontscan
