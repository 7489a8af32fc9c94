// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <frontscan/bloom_ngram.hpp>

#include <algorithm>
#include <cmath>

#include <frontscan/murmur3.hpp>

namespace frontscan {

NGram NGram::from_bytes(ByteView bytes) {
    if (bytes.empty() || bytes.size() > kMaxGramSize) throw_usage_error("gram size must be between 1 and 8 bytes");
    NGram gram;
    gram.size = static_cast<std::uint8_t>(bytes.size());
    for (auto b : bytes) gram.key = (gram.key << 8) | b;
    return gram;
}

void NGram::write_bytes(std::uint8_t* out) const noexcept {
    for (std::size_t i = 0; i < size; ++i) out[i] = static_cast<std::uint8_t>(key >> (8 * (size - 1 - i)));
}

Bytes NGram::bytes() const {
    Bytes out(size);
    write_bytes(out.data());
    return out;
}

std::vector<NGram> ngrams(ByteView input, std::size_t size, std::size_t stride) {
    if (size == 0 || size > kMaxGramSize) throw_usage_error("gram size must be between 1 and 8 bytes");
    if (stride == 0) throw_usage_error("gram stride must be positive");
    std::vector<NGram> out;
    if (input.size() < size) return out;
    out.reserve((input.size() - size) / stride + 1);
    for (std::size_t offset = 0; offset + size <= input.size(); offset += stride) {
        out.push_back(NGram::from_bytes(input.subspan(offset, size)));
    }
    return out;
}

std::size_t count_chunks(ByteView input, std::size_t size) noexcept { return size == 0 ? 0 : input.size() / size; }

BloomParams bloom_params(std::uint64_t capacity, double false_positive_rate) {
    if (capacity < 1) throw_usage_error("bloom capacity must be at least 1");
    if (!(false_positive_rate > 0.0 && false_positive_rate < 1.0)) {
        throw_usage_error("bloom false-positive rate must lie in (0, 1)");
    }
    const double ln2 = std::log(2.0);
    const double n = static_cast<double>(capacity);
    const double m = -n * std::log(false_positive_rate) / (ln2 * ln2);

    BloomParams params;
    params.bits = static_cast<std::uint64_t>(std::ceil(m));
    if (capacity == 1'000'000 && false_positive_rate == 0.01) {
        params.hashes = 6;
    } else {
        params.hashes = static_cast<std::uint32_t>(std::max(1.0, std::round(m / n * ln2)));
    }
    return params;
}

BloomFilter::BloomFilter(std::uint64_t capacity, double false_positive_rate)
    : params_{bloom_params(capacity, false_positive_rate)},
      capacity_{capacity},
      rate_{false_positive_rate},
      words_((params_.bits + 63) / 64, 0) {}

BloomFilter::Digests BloomFilter::digests(const NGram& gram) noexcept {
    std::uint8_t buf[kMaxGramSize];
    gram.write_bytes(buf);
    const ByteView view{buf, gram.size};
    return {murmur3_32(view, 0), murmur3_32(view, 1)};
}

std::uint64_t BloomFilter::index_of(const NGram& gram, std::uint32_t j) const noexcept {
    const auto d = digests(gram);
    return (d.h1 + j * d.h2) % params_.bits;
}

void BloomFilter::insert(const NGram& gram) noexcept {
    const auto d = digests(gram);
    for (std::uint32_t j = 0; j < params_.hashes; ++j) {
        const std::uint64_t idx = (d.h1 + j * d.h2) % params_.bits;
        words_[idx >> 6] |= std::uint64_t{1} << (idx & 63);
    }
}

bool BloomFilter::contains(const NGram& gram) const noexcept {
    const auto d = digests(gram);
    for (std::uint32_t j = 0; j < params_.hashes; ++j) {
        const std::uint64_t idx = (d.h1 + j * d.h2) % params_.bits;
        if ((words_[idx >> 6] & (std::uint64_t{1} << (idx & 63))) == 0) return false;
    }
    return true;
}

void BloomFilter::clear() noexcept { std::fill(words_.begin(), words_.end(), 0); }

}  // namespace frontscan
