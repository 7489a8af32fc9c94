// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <frontscan/chain_model.hpp>

namespace frontscan {

// Exact non-negative ratio parsed from a decimal literal, so threshold comparisons never round.
struct Fraction {
    std::uint64_t num{0};
    std::uint64_t den{1};

    static Fraction parse(std::string_view decimal);
    [[nodiscard]] double to_double() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
    [[nodiscard]] std::string str() const;

    // part / whole >= *this
    [[nodiscard]] bool reached_by(std::uint64_t part, std::uint64_t whole) const noexcept {
        return static_cast<unsigned __int128>(part) * den >= static_cast<unsigned __int128>(num) * whole;
    }
    // part / whole > *this
    [[nodiscard]] bool exceeded_by(std::uint64_t part, std::uint64_t whole) const noexcept {
        return static_cast<unsigned __int128>(part) * den > static_cast<unsigned __int128>(num) * whole;
    }

    friend bool operator==(const Fraction&, const Fraction&) = default;
};

struct DisplacementSettings {
    std::uint64_t window = 100;
    std::uint64_t stride = 20;
    Fraction match_threshold{95, 100};
    Fraction size_ratio{25, 100};
    std::uint64_t bloom_capacity = 1'000'000;
    double bloom_rate = 0.01;
    std::size_t gram_size = 4;
};

struct InsertionSettings {
    Fraction amount_tolerance{1, 100};
};

struct SuppressionSettings {
    std::uint64_t min_gas = kBaseTxGas;
    Fraction gas_ratio{99, 100};
    std::size_t loop_count = 10;
    std::uint64_t max_gap = 1;
};

struct GasTokenSettings {
    std::optional<Address> gst2;
    std::optional<Address> chi;
    // A trace with at least this many SELFDESTRUCT steps counts as a custom gas token.
    std::size_t selfdestruct_min = 1;
};

struct DataSettings {
    std::string source = "fixture";  // fixture | rpc
    std::filesystem::path fixture;
    std::string rpc_url;
    std::size_t batch_size = 50;
    unsigned retries = 3;
};

struct Config {
    DataSettings data;
    std::filesystem::path prices;
    int threads = 0;
    DisplacementSettings displacement;
    InsertionSettings insertion;
    SuppressionSettings suppression;
    GasTokenSettings gas_tokens;

    // "[section]" headers and "key = value" lines; '#' starts a comment. Unknown keys are errors.
    static Config parse(std::string_view text, std::string_view origin = "<config>");
    static Config load(const std::filesystem::path& path);
};

// Mainnet deployments of the two public gas tokens.
inline constexpr std::string_view kGst2Address = "0x0000000000b3f879cb30fe243b4dfee438691c04";
inline constexpr std::string_view kChiAddress = "0x0000000000004946c0e9f43f4dee607b0ef1fa1c";

}  // namespace frontscan
