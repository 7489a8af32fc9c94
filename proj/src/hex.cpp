// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <frontscan/hex.hpp>

#include <limits>

namespace frontscan {

namespace {

    constexpr char kDigits[] = "0123456789abcdef";

    int nibble(char c) {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    }

    std::string_view strip_prefix(std::string_view hex) {
        if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) hex.remove_prefix(2);
        return hex;
    }

}  // namespace

std::string to_hex(ByteView bytes, bool prefix) {
    std::string out;
    out.reserve(bytes.size() * 2 + 2);
    if (prefix) out += "0x";
    for (auto b : bytes) {
        out += kDigits[b >> 4];
        out += kDigits[b & 0x0f];
    }
    return out;
}

Bytes from_hex(std::string_view hex) {
    hex = strip_prefix(hex);
    if (hex.size() % 2 != 0) throw_data_error("odd-length hex string");
    Bytes out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const int hi = nibble(hex[2 * i]);
        const int lo = nibble(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) throw_data_error("invalid hex digit");
        out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return out;
}

std::string quantity_to_hex(const boost::multiprecision::cpp_int& value) {
    if (value < 0) throw Error{ErrorKind::kInternal, "negative quantity cannot be hex encoded"};
    if (value == 0) return "0x0";
    std::string digits;
    auto v = value;
    while (v > 0) {
        digits += kDigits[static_cast<unsigned>(v & 0xf)];
        v >>= 4;
    }
    return "0x" + std::string(digits.rbegin(), digits.rend());
}

std::string quantity_to_hex(std::uint64_t value) { return quantity_to_hex(boost::multiprecision::cpp_int{value}); }

boost::multiprecision::cpp_int quantity_from_hex(std::string_view hex) {
    if (hex.size() < 3 || hex[0] != '0' || (hex[1] != 'x' && hex[1] != 'X')) {
        throw_data_error("quantity must be 0x-prefixed hex: '" + std::string{hex} + "'");
    }
    boost::multiprecision::cpp_int value{0};
    for (char c : hex.substr(2)) {
        const int n = nibble(c);
        if (n < 0) throw_data_error("invalid hex quantity: '" + std::string{hex} + "'");
        value = (value << 4) | n;
    }
    return value;
}

std::uint64_t u64_from_hex(std::string_view hex) {
    const auto v = quantity_from_hex(hex);
    if (v > std::numeric_limits<std::uint64_t>::max()) throw_data_error("quantity exceeds 64 bits");
    return static_cast<std::uint64_t>(v);
}

Hash32 to_word(const boost::multiprecision::cpp_int& value) {
    if (value < 0 || boost::multiprecision::msb(value == 0 ? boost::multiprecision::cpp_int{1} : value) >= 256) {
        throw Error{ErrorKind::kInternal, "value does not fit a 256-bit word"};
    }
    Hash32 word;
    auto v = value;
    for (std::size_t i = 0; i < 32; ++i) {
        word.bytes[31 - i] = static_cast<std::uint8_t>(v & 0xff);
        v >>= 8;
    }
    return word;
}

boost::multiprecision::cpp_int from_word(ByteView word) {
    boost::multiprecision::cpp_int value{0};
    for (auto b : word) value = (value << 8) | b;
    return value;
}

template <std::size_t N>
FixedBytes<N> FixedBytes<N>::from_hex(std::string_view hex) {
    const auto raw = frontscan::from_hex(hex);
    if (raw.size() != N) {
        throw_data_error("expected " + std::to_string(N) + " bytes, got " + std::to_string(raw.size()) + " in '" +
                         std::string{hex} + "'");
    }
    return from_span(raw);
}

template <std::size_t N>
FixedBytes<N> FixedBytes<N>::from_span(ByteView view) {
    if (view.size() != N) throw_data_error("expected " + std::to_string(N) + " bytes");
    FixedBytes out;
    std::copy(view.begin(), view.end(), out.bytes.begin());
    return out;
}

template <std::size_t N>
std::string FixedBytes<N>::hex() const {
    return to_hex(bytes);
}

template struct FixedBytes<20>;
template struct FixedBytes<32>;

}  // namespace frontscan
