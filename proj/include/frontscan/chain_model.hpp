// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <cstring>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace frontscan {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

// Monetary amounts and token quantities. Signed so that profit can go negative.
using Wei = boost::multiprecision::cpp_int;
using TokenAmount = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr std::uint64_t kBaseTxGas = 21'000;
inline const Wei kWeiPerEther{"1000000000000000000"};
inline const Wei kWeiPerGwei{1'000'000'000};

enum class ErrorKind {
    kUsage,
    kData,
    kInternal,
};

// Exceptions carry a kind so the CLI can map them onto exit codes.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_{kind} {}
    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void throw_data_error(const std::string& what) { throw Error{ErrorKind::kData, what}; }
[[noreturn]] inline void throw_usage_error(const std::string& what) { throw Error{ErrorKind::kUsage, what}; }

template <std::size_t N>
struct FixedBytes {
    std::array<std::uint8_t, N> bytes{};

    static constexpr std::size_t size() noexcept { return N; }

    // Accepts "0x"-prefixed or bare hex of exactly 2*N digits.
    static FixedBytes from_hex(std::string_view hex);
    static FixedBytes from_span(ByteView view);

    [[nodiscard]] std::string hex() const;
    [[nodiscard]] bool is_zero() const noexcept {
        for (auto b : bytes) {
            if (b != 0) return false;
        }
        return true;
    }

    friend auto operator<=>(const FixedBytes&, const FixedBytes&) = default;
};

using Address = FixedBytes<20>;
using Hash32 = FixedBytes<32>;

enum class TxStatus {
    kSuccess,
    kReverted,
    kAssertFailed,
    kOutOfGas,
};

struct Transaction {
    Hash32 hash;
    std::uint64_t block_number{0};
    std::uint32_t tx_index{0};
    Address sender;
    std::optional<Address> receiver;  // absent for contract creation
    Wei value{0};
    std::uint64_t gas_limit{0};
    std::uint64_t gas_used{0};
    Wei gas_price{0};
    Bytes input;
    TxStatus status{TxStatus::kSuccess};

    friend bool operator==(const Transaction&, const Transaction&) = default;
};

// Strict total order over all transactions of a chain.
inline bool precedes(const Transaction& a, const Transaction& b) noexcept {
    return std::tie(a.block_number, a.tx_index) < std::tie(b.block_number, b.tx_index);
}

struct Block {
    std::uint64_t number{0};
    std::uint64_t timestamp{0};  // UTC seconds
    Address miner;
    std::uint64_t gas_limit{0};
    std::uint64_t gas_used{0};
    std::vector<Transaction> transactions;

    friend bool operator==(const Block&, const Block&) = default;
};

struct TransferEvent {
    Address sender;    // s
    Address receiver;  // r
    TokenAmount amount{0};
    Address token;  // c
    Hash32 tx_hash;
    std::uint32_t tx_index{0};
    Wei gas_price{0};
    std::uint64_t block_number{0};
    std::uint32_t log_index{0};

    friend bool operator==(const TransferEvent&, const TransferEvent&) = default;
};

struct InternalTransfer {
    Hash32 parent_tx;
    Address from;
    Address to;
    Wei value{0};

    friend bool operator==(const InternalTransfer&, const InternalTransfer&) = default;
};

enum class TraceTerminal {
    kNormal,
    kRevert,
    kAssert,
    kOutOfGas,
};

struct ExecutionTrace {
    Hash32 tx_hash;
    std::vector<std::string> opcodes;
    TraceTerminal terminal{TraceTerminal::kNormal};
    // Call targets reached during execution, in order. Used for gas-token tagging.
    std::vector<Address> calls;

    friend bool operator==(const ExecutionTrace&, const ExecutionTrace&) = default;
};

// Civil date as days since 1970-01-01.
using DayNumber = std::int64_t;

DayNumber day_from_civil(int year, unsigned month, unsigned day);
DayNumber day_of_timestamp(std::uint64_t timestamp) noexcept;
std::string civil_from_day(DayNumber day);  // "YYYY-MM-DD"

struct PriceEntry {
    DayNumber date{0};
    Rational eth_usd;

    friend bool operator==(const PriceEntry&, const PriceEntry&) = default;
};

class PriceTable {
  public:
    PriceTable() = default;
    explicit PriceTable(std::vector<PriceEntry> entries);

    // Parses "YYYY-MM-DD,price" lines; an optional header line starting with "date" is skipped.
    static PriceTable parse_csv(std::string_view text);

    [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }
    [[nodiscard]] const std::vector<PriceEntry>& entries() const noexcept { return entries_; }

    // Latest entry whose date is at or before the timestamp's UTC date.
    [[nodiscard]] const Rational& rate_at(std::uint64_t timestamp) const;

    [[nodiscard]] std::string to_csv() const;

    friend bool operator==(const PriceTable&, const PriceTable&) = default;

  private:
    std::vector<PriceEntry> entries_;
};

[[nodiscard]] Wei fee(const Transaction& tx);

// Exact USD value; round only when rendering.
[[nodiscard]] Rational wei_to_usd(const Wei& amount, std::uint64_t timestamp, const PriceTable& prices);

// Decimal rendering rounded half away from zero to `digits` fractional digits.
[[nodiscard]] std::string format_decimal(const Rational& value, unsigned digits = 2);
[[nodiscard]] Rational parse_decimal(std::string_view text);

[[nodiscard]] std::string to_string(TxStatus status);
[[nodiscard]] TxStatus tx_status_from_string(std::string_view text);
[[nodiscard]] std::string to_string(TraceTerminal terminal);
[[nodiscard]] TraceTerminal trace_terminal_from_string(std::string_view text);

}  // namespace frontscan

template <std::size_t N>
struct std::hash<frontscan::FixedBytes<N>> {
    std::size_t operator()(const frontscan::FixedBytes<N>& value) const noexcept {
        std::uint64_t h{0};
        std::memcpy(&h, value.bytes.data() + N - 8, 8);
        return static_cast<std::size_t>(h * 0x9E3779B97F4A7C15ull);
    }
};
