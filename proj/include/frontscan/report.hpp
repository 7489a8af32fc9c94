// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <frontscan/attacker_graph.hpp>
#include <frontscan/records.hpp>
#include <frontscan/synthetic_chain.hpp>

namespace frontscan {

struct DistributionSummary {
    std::size_t count{0};
    double mean{0};
    double std{0};  // population
    double min{0};
    double q25{0};
    double q50{0};
    double q75{0};
    double max{0};
};

// Throws a usage error on empty input. Quartiles interpolate linearly between order statistics.
[[nodiscard]] DistributionSummary summarize(std::span<const double> values);

// Two decimals with thousands separators, e.g. "-1,234.50".
[[nodiscard]] std::string format_amount(double value, unsigned digits = 2);

using SummaryRow = std::pair<std::string, DistributionSummary>;

// metric,count,mean,std,min,25%,50%,75%,max with plain decimals.
[[nodiscard]] std::string distribution_csv(std::span<const SummaryRow> rows);
// Aligned text table in the same column order, amounts with thousands separators.
[[nodiscard]] std::string render_table(std::span<const SummaryRow> rows);

// Rows for every attack kind present: cost and profit in ether, and in USD when every attack of
// the kind carries USD values. With clusters: attacks, cost and profit per cluster.
[[nodiscard]] std::vector<SummaryRow> attack_distributions(std::span<const AttackRecord> attacks,
                                                           std::span<const AttackerCluster> clusters = {});

// [weekday][hour] in UTC, Monday first.
using WeekHourMatrix = std::array<std::array<std::uint64_t, 24>, 7>;

[[nodiscard]] WeekHourMatrix weekday_hour_matrix(std::span<const std::uint64_t> timestamps);
[[nodiscard]] std::string to_csv(const WeekHourMatrix& matrix);

struct YearShare {
    int year{0};
    std::uint64_t count{0};
    Rational percent;
};

[[nodiscard]] std::vector<YearShare> yearly_shares(std::span<const std::uint64_t> timestamps);
[[nodiscard]] std::string to_csv(std::span<const YearShare> shares);

struct KindScore {
    AttackKind kind{AttackKind::kInsertion};
    std::size_t planted{0};
    std::size_t detected{0};
    std::size_t matched{0};
    double precision{1.0};  // 1 when nothing was detected
    double recall{1.0};     // 1 when nothing was planted
    Wei max_profit_error{0};       // wei, over matched attacks
    double max_relative_error{0};  // relative to |expected profit|
    std::vector<std::string> missed;      // first key transaction of each missed plant
    std::vector<std::string> unexpected;  // ids of detections without a plant
};

struct ScoreReport {
    std::vector<KindScore> kinds;
    std::vector<std::string> unmatched_kinds;  // detected kinds the manifest does not plant

    [[nodiscard]] bool perfect() const noexcept;
};

// Matches detections to plants by kind and key transactions.
[[nodiscard]] ScoreReport score_against_manifest(std::span<const AttackRecord> attacks, const Manifest& manifest);
[[nodiscard]] RecordJson to_json(const ScoreReport& report);

}  // namespace frontscan
