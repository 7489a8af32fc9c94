// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <frontscan/chain_model.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>

namespace frontscan {

namespace {

    std::string_view trim(std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
        return s;
    }

    DayNumber parse_date(std::string_view text) {
        int y{0};
        unsigned m{0};
        unsigned d{0};
        if (text.size() != 10 || text[4] != '-' || text[7] != '-') throw_data_error("bad date '" + std::string{text} + "'");
        auto parse = [&](std::string_view part, auto& out) {
            auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
            if (ec != std::errc{} || ptr != part.data() + part.size()) {
                throw_data_error("bad date '" + std::string{text} + "'");
            }
        };
        parse(text.substr(0, 4), y);
        parse(text.substr(5, 2), m);
        parse(text.substr(8, 2), d);
        const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
        if (!ymd.ok()) throw_data_error("bad date '" + std::string{text} + "'");
        return std::chrono::sys_days{ymd}.time_since_epoch().count();
    }

}  // namespace

DayNumber day_from_civil(int year, unsigned month, unsigned day) {
    const std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}};
    return std::chrono::sys_days{ymd}.time_since_epoch().count();
}

DayNumber day_of_timestamp(std::uint64_t timestamp) noexcept {
    return static_cast<DayNumber>(timestamp / 86'400);
}

std::string civil_from_day(DayNumber day) {
    const std::chrono::year_month_day ymd{std::chrono::sys_days{std::chrono::days{day}}};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                  static_cast<unsigned>(ymd.day()));
    return buf;
}

PriceTable::PriceTable(std::vector<PriceEntry> entries) : entries_{std::move(entries)} {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].eth_usd <= 0) throw_data_error("price on " + civil_from_day(entries_[i].date) + " must be positive");
        if (i > 0 && entries_[i].date <= entries_[i - 1].date) {
            throw_data_error("price dates must be strictly increasing at " + civil_from_day(entries_[i].date));
        }
    }
}

PriceTable PriceTable::parse_csv(std::string_view text) {
    std::vector<PriceEntry> entries;
    std::size_t line_no{0};
    while (!text.empty()) {
        const auto eol = text.find('\n');
        auto line = trim(text.substr(0, eol));
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        if (line_no == 1 && line.starts_with("date")) continue;
        const auto comma = line.find(',');
        if (comma == std::string_view::npos) throw_data_error("price table line " + std::to_string(line_no) + ": missing comma");
        try {
            entries.push_back({parse_date(trim(line.substr(0, comma))), parse_decimal(trim(line.substr(comma + 1)))});
        } catch (const Error& e) {
            throw_data_error("price table line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return PriceTable{std::move(entries)};
}

const Rational& PriceTable::rate_at(std::uint64_t timestamp) const {
    if (entries_.empty()) throw_data_error("no price available: price table is empty");
    const auto day = day_of_timestamp(timestamp);
    auto it = std::upper_bound(entries_.begin(), entries_.end(), day,
                               [](DayNumber d, const PriceEntry& e) { return d < e.date; });
    if (it == entries_.begin()) throw_data_error("no price available for " + civil_from_day(day));
    return std::prev(it)->eth_usd;
}

std::string PriceTable::to_csv() const {
    std::string out = "date,eth_usd\n";
    for (const auto& e : entries_) out += civil_from_day(e.date) + "," + format_decimal(e.eth_usd, 2) + "\n";
    return out;
}

Wei fee(const Transaction& tx) { return Wei{tx.gas_used} * tx.gas_price; }

Rational wei_to_usd(const Wei& amount, std::uint64_t timestamp, const PriceTable& prices) {
    return Rational{amount, kWeiPerEther} * prices.rate_at(timestamp);
}

std::string format_decimal(const Rational& value, unsigned digits) {
    using boost::multiprecision::cpp_int;
    cpp_int scale{1};
    for (unsigned i = 0; i < digits; ++i) scale *= 10;
    const bool negative = value < 0;
    const Rational magnitude = negative ? Rational{-value} : value;
    const cpp_int num = boost::multiprecision::numerator(magnitude) * scale;
    const cpp_int den = boost::multiprecision::denominator(magnitude);
    cpp_int scaled = num / den;
    if ((num % den) * 2 >= den) ++scaled;
    const cpp_int whole = scaled / scale;
    std::string frac = cpp_int{scaled % scale}.str();
    if (frac.size() < digits) frac.insert(0, digits - frac.size(), '0');
    std::string out = (negative && scaled != 0) ? "-" : "";
    out += whole.str();
    if (digits > 0) out += "." + frac;
    return out;
}

Rational parse_decimal(std::string_view text) {
    using boost::multiprecision::cpp_int;
    text = trim(text);
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    if (text.empty()) throw_data_error("empty decimal");
    cpp_int num{0};
    cpp_int den{1};
    bool seen_point = false;
    bool seen_digit = false;
    for (char c : text) {
        if (c == '.' && !seen_point) {
            seen_point = true;
            continue;
        }
        if (c < '0' || c > '9') throw_data_error("bad decimal '" + std::string{text} + "'");
        seen_digit = true;
        num = num * 10 + (c - '0');
        if (seen_point) den *= 10;
    }
    if (!seen_digit) throw_data_error("bad decimal '" + std::string{text} + "'");
    Rational r{num, den};
    return negative ? Rational{-r} : r;
}

std::string to_string(TxStatus status) {
    switch (status) {
        case TxStatus::kSuccess:
            return "success";
        case TxStatus::kReverted:
            return "reverted";
        case TxStatus::kAssertFailed:
            return "assert_failed";
        case TxStatus::kOutOfGas:
            return "out_of_gas";
    }
    return "success";
}

TxStatus tx_status_from_string(std::string_view text) {
    if (text == "success") return TxStatus::kSuccess;
    if (text == "reverted") return TxStatus::kReverted;
    if (text == "assert_failed") return TxStatus::kAssertFailed;
    if (text == "out_of_gas") return TxStatus::kOutOfGas;
    throw_data_error("unknown transaction status '" + std::string{text} + "'");
}

std::string to_string(TraceTerminal terminal) {
    switch (terminal) {
        case TraceTerminal::kNormal:
            return "normal";
        case TraceTerminal::kRevert:
            return "revert";
        case TraceTerminal::kAssert:
            return "assert";
        case TraceTerminal::kOutOfGas:
            return "out_of_gas";
    }
    return "normal";
}

TraceTerminal trace_terminal_from_string(std::string_view text) {
    if (text == "normal") return TraceTerminal::kNormal;
    if (text == "revert") return TraceTerminal::kRevert;
    if (text == "assert") return TraceTerminal::kAssert;
    if (text == "out_of_gas") return TraceTerminal::kOutOfGas;
    throw_data_error("unknown trace terminal '" + std::string{text} + "'");
}

}  // namespace frontscan
