// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <frontscan/report.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace frontscan {

namespace {

    double quantile(const std::vector<double>& sorted, double q) {
        const double pos = q * static_cast<double>(sorted.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const auto hi = std::min(lo + 1, sorted.size() - 1);
        return sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - static_cast<double>(lo));
    }

    std::string fixed(double value, unsigned digits) {
        if (value == 0) value = 0;  // no "-0.00"
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*f", static_cast<int>(digits), value);
        std::string s{buf};
        if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
        return s;
    }

    double to_ether(const Wei& wei) { return static_cast<double>(Rational{wei, kWeiPerEther}); }

    constexpr std::array<const char*, 7> kWeekdays{"Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun"};

}  // namespace

DistributionSummary summarize(std::span<const double> values) {
    if (values.empty()) throw_usage_error("cannot summarize an empty list");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    DistributionSummary s;
    s.count = sorted.size();
    const double n = static_cast<double>(sorted.size());
    s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / n;
    double ss{0};
    for (double v : sorted) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / n);
    s.min = sorted.front();
    s.max = sorted.back();
    s.q25 = quantile(sorted, 0.25);
    s.q50 = quantile(sorted, 0.50);
    s.q75 = quantile(sorted, 0.75);
    return s;
}

std::string format_amount(double value, unsigned digits) {
    std::string s = fixed(value, digits);
    const bool negative = !s.empty() && s.front() == '-';
    if (negative) s.erase(0, 1);
    const auto dot = s.find('.');
    std::string whole = s.substr(0, dot);
    const std::string frac = dot == std::string::npos ? "" : s.substr(dot);
    for (auto i = static_cast<std::ptrdiff_t>(whole.size()) - 3; i > 0; i -= 3) whole.insert(static_cast<std::size_t>(i), ",");
    return (negative ? "-" : "") + whole + frac;
}

std::string distribution_csv(std::span<const SummaryRow> rows) {
    std::ostringstream out;
    out << "metric,count,mean,std,min,25%,50%,75%,max\n";
    for (const auto& [name, s] : rows) {
        out << name << ',' << s.count;
        for (double v : {s.mean, s.std, s.min, s.q25, s.q50, s.q75, s.max}) out << ',' << fixed(v, 2);
        out << '\n';
    }
    return out.str();
}

std::string render_table(std::span<const SummaryRow> rows) {
    const std::vector<std::string> header{"metric", "count", "mean", "std", "min", "25%", "50%", "75%", "max"};
    std::vector<std::vector<std::string>> cells{header};
    for (const auto& [name, s] : rows) {
        std::vector<std::string> line{name, std::to_string(s.count)};
        for (double v : {s.mean, s.std, s.min, s.q25, s.q50, s.q75, s.max}) line.push_back(format_amount(v));
        cells.push_back(std::move(line));
    }
    std::vector<std::size_t> width(header.size(), 0);
    for (const auto& line : cells) {
        for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
    }
    std::ostringstream out;
    for (const auto& line : cells) {
        for (std::size_t c = 0; c < line.size(); ++c) {
            const auto pad = std::string(width[c] - line[c].size(), ' ');
            if (c == 0) {
                out << line[c] << pad;
            } else {
                out << "  " << pad << line[c];
            }
        }
        out << '\n';
    }
    return out.str();
}

std::vector<SummaryRow> attack_distributions(std::span<const AttackRecord> attacks,
                                             std::span<const AttackerCluster> clusters) {
    std::vector<SummaryRow> rows;
    for (auto kind : {AttackKind::kDisplacement, AttackKind::kInsertion, AttackKind::kSuppression}) {
        std::vector<double> cost;
        std::vector<double> profit;
        std::vector<double> cost_usd;
        std::vector<double> profit_usd;
        bool usd = true;
        for (const auto& a : attacks) {
            if (a.kind != kind) continue;
            cost.push_back(to_ether(a.cost));
            profit.push_back(to_ether(a.profit));
            if (a.cost_usd && a.profit_usd) {
                cost_usd.push_back(static_cast<double>(*a.cost_usd));
                profit_usd.push_back(static_cast<double>(*a.profit_usd));
            } else {
                usd = false;
            }
        }
        if (cost.empty()) continue;
        const auto name = to_string(kind);
        rows.emplace_back(name + ".cost_eth", summarize(cost));
        rows.emplace_back(name + ".profit_eth", summarize(profit));
        if (usd) {
            rows.emplace_back(name + ".cost_usd", summarize(cost_usd));
            rows.emplace_back(name + ".profit_usd", summarize(profit_usd));
        }
    }
    if (!clusters.empty()) {
        std::vector<double> count;
        std::vector<double> cost;
        std::vector<double> profit;
        for (const auto& c : clusters) {
            count.push_back(static_cast<double>(c.attacks.size()));
            cost.push_back(to_ether(c.cost));
            profit.push_back(to_ether(c.profit));
        }
        rows.emplace_back("cluster.attacks", summarize(count));
        rows.emplace_back("cluster.cost_eth", summarize(cost));
        rows.emplace_back("cluster.profit_eth", summarize(profit));
    }
    return rows;
}

WeekHourMatrix weekday_hour_matrix(std::span<const std::uint64_t> timestamps) {
    WeekHourMatrix m{};
    for (auto t : timestamps) {
        const auto day = day_of_timestamp(t);
        const auto weekday = static_cast<std::size_t>(((day % 7) + 7 + 3) % 7);  // 1970-01-01 was a Thursday
        m[weekday][(t % 86'400) / 3'600] += 1;
    }
    return m;
}

std::string to_csv(const WeekHourMatrix& matrix) {
    std::ostringstream out;
    out << "weekday";
    for (int h = 0; h < 24; ++h) out << ',' << h;
    out << '\n';
    for (std::size_t d = 0; d < 7; ++d) {
        out << kWeekdays[d];
        for (auto v : matrix[d]) out << ',' << v;
        out << '\n';
    }
    return out.str();
}

std::vector<YearShare> yearly_shares(std::span<const std::uint64_t> timestamps) {
    std::map<int, std::uint64_t> counts;
    for (auto t : timestamps) counts[std::stoi(civil_from_day(day_of_timestamp(t)).substr(0, 4))] += 1;
    std::vector<YearShare> out;
    for (const auto& [year, n] : counts) {
        out.push_back({year, n, Rational{static_cast<std::int64_t>(n) * 100, static_cast<std::int64_t>(timestamps.size())}});
    }
    return out;
}

std::string to_csv(std::span<const YearShare> shares) {
    std::ostringstream out;
    out << "year,count,percent\n";
    for (const auto& s : shares) out << s.year << ',' << s.count << ',' << format_decimal(s.percent, 2) << '\n';
    return out.str();
}

bool ScoreReport::perfect() const noexcept {
    if (!unmatched_kinds.empty()) return false;
    return std::all_of(kinds.begin(), kinds.end(), [](const KindScore& k) {
        return k.matched == k.planted && k.matched == k.detected && k.max_profit_error == 0;
    });
}

ScoreReport score_against_manifest(std::span<const AttackRecord> attacks, const Manifest& manifest) {
    using Key = std::pair<AttackKind, std::vector<Hash32>>;
    std::map<Key, const PlantedAttack*> planted;
    std::set<AttackKind> planted_kinds;
    for (const auto& p : manifest.planted) {
        planted[{p.kind, p.key_txs}] = &p;
        planted_kinds.insert(p.kind);
    }

    ScoreReport report;
    std::map<AttackKind, KindScore> by_kind;
    for (auto kind : planted_kinds) by_kind[kind].kind = kind;
    for (const auto& p : manifest.planted) ++by_kind[p.kind].planted;

    std::set<Key> seen;
    std::set<std::string> unmatched;
    for (const auto& a : attacks) {
        if (!planted_kinds.contains(a.kind)) unmatched.insert(to_string(a.kind));
        auto& score = by_kind[a.kind];
        score.kind = a.kind;
        ++score.detected;
        const Key key{a.kind, a.key_txs};
        const auto it = planted.find(key);
        if (it == planted.end() || !seen.insert(key).second) {
            score.unexpected.push_back(a.id);
            continue;
        }
        ++score.matched;
        const Wei diff = abs(a.profit - it->second->expected_profit);
        score.max_profit_error = std::max(score.max_profit_error, diff);
        const Wei scale = std::max(Wei{abs(it->second->expected_profit)}, Wei{1});
        score.max_relative_error = std::max(score.max_relative_error, static_cast<double>(Rational{diff, scale}));
    }
    for (const auto& p : manifest.planted) {
        if (!seen.contains({p.kind, p.key_txs})) by_kind[p.kind].missed.push_back(p.key_txs.front().hex());
    }
    for (auto& [kind, s] : by_kind) {
        if (s.detected > 0) s.precision = static_cast<double>(s.matched) / static_cast<double>(s.detected);
        if (s.planted > 0) s.recall = static_cast<double>(s.matched) / static_cast<double>(s.planted);
        report.kinds.push_back(std::move(s));
    }
    report.unmatched_kinds.assign(unmatched.begin(), unmatched.end());
    return report;
}

RecordJson to_json(const ScoreReport& report) {
    RecordJson kinds = RecordJson::array();
    for (const auto& k : report.kinds) {
        RecordJson j;
        j["kind"] = to_string(k.kind);
        j["planted"] = k.planted;
        j["detected"] = k.detected;
        j["matched"] = k.matched;
        j["precision"] = k.precision;
        j["recall"] = k.recall;
        j["max_profit_error_wei"] = k.max_profit_error.str();
        j["max_relative_profit_error"] = k.max_relative_error;
        j["missed"] = k.missed;
        j["unexpected"] = k.unexpected;
        kinds.push_back(std::move(j));
    }
    RecordJson out;
    out["perfect"] = report.perfect();
    out["kinds"] = std::move(kinds);
    out["unmatched_kinds"] = report.unmatched_kinds;
    return out;
}

}  // namespace frontscan
