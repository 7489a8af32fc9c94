// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <frontscan/config.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

namespace frontscan {

namespace {

    std::string_view trim(std::string_view s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string_view::npos) return {};
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    }

    std::string_view strip_comment(std::string_view line) {
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') quoted = !quoted;
            if (line[i] == '#' && !quoted) return line.substr(0, i);
        }
        return line;
    }

    std::string unquote(std::string_view v) {
        if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return std::string{v.substr(1, v.size() - 2)};
        return std::string{v};
    }

    std::uint64_t to_u64(std::string_view v) {
        std::uint64_t out{0};
        auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        if (ec != std::errc{} || ptr != v.data() + v.size()) throw_usage_error("expected an unsigned integer, got '" + std::string{v} + "'");
        return out;
    }

    double to_double(std::string_view v) {
        try {
            std::size_t used{0};
            const std::string s{v};
            const double d = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument{"trailing"};
            return d;
        } catch (const std::exception&) {
            throw_usage_error("expected a number, got '" + std::string{v} + "'");
        }
    }

}  // namespace

Fraction Fraction::parse(std::string_view decimal) {
    decimal = trim(decimal);
    Fraction f{0, 1};
    bool point = false;
    bool digit = false;
    for (char c : decimal) {
        if (c == '.' && !point) {
            point = true;
            continue;
        }
        if (c < '0' || c > '9') throw_usage_error("expected a non-negative decimal, got '" + std::string{decimal} + "'");
        digit = true;
        if (f.num > (UINT64_MAX - 9) / 10 || (point && f.den > UINT64_MAX / 10)) {
            throw_usage_error("decimal has too many digits: '" + std::string{decimal} + "'");
        }
        f.num = f.num * 10 + static_cast<std::uint64_t>(c - '0');
        if (point) f.den *= 10;
    }
    if (!digit) throw_usage_error("expected a non-negative decimal, got '" + std::string{decimal} + "'");
    return f;
}

std::string Fraction::str() const {
    std::ostringstream os;
    os << num << "/" << den;
    return os.str();
}

Config Config::parse(std::string_view text, std::string_view origin) {
    Config cfg;
    cfg.gas_tokens.gst2 = Address::from_hex(kGst2Address);
    cfg.gas_tokens.chi = Address::from_hex(kChiAddress);
    std::string section;
    std::size_t line_no{0};
    while (!text.empty()) {
        const auto eol = text.find('\n');
        const auto raw = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        const auto line = trim(strip_comment(raw));
        if (line.empty()) continue;
        const std::string where = std::string{origin} + ":" + std::to_string(line_no) + ": ";
        if (line.front() == '[') {
            if (line.back() != ']') throw_usage_error(where + "unterminated section header");
            section = std::string{trim(line.substr(1, line.size() - 2))};
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw_usage_error(where + "expected key = value");
        const std::string key = section + "." + std::string{trim(line.substr(0, eq))};
        const auto value = trim(line.substr(eq + 1));
        const std::string str = unquote(value);

        try {
            if (key == "data.source") {
                if (str != "fixture" && str != "rpc") throw_usage_error("data.source must be fixture or rpc");
                cfg.data.source = str;
            } else if (key == "data.fixture") {
                cfg.data.fixture = str;
            } else if (key == "data.rpc_url") {
                cfg.data.rpc_url = str;
            } else if (key == "data.batch_size") {
                cfg.data.batch_size = to_u64(str);
            } else if (key == "data.retries") {
                cfg.data.retries = static_cast<unsigned>(to_u64(str));
            } else if (key == "prices.path") {
                cfg.prices = str;
            } else if (key == "run.threads") {
                cfg.threads = static_cast<int>(to_u64(str));
            } else if (key == "displacement.window") {
                cfg.displacement.window = to_u64(str);
            } else if (key == "displacement.stride") {
                cfg.displacement.stride = to_u64(str);
            } else if (key == "displacement.threshold") {
                cfg.displacement.match_threshold = Fraction::parse(str);
            } else if (key == "displacement.size_ratio") {
                cfg.displacement.size_ratio = Fraction::parse(str);
            } else if (key == "displacement.bloom_capacity") {
                cfg.displacement.bloom_capacity = to_u64(str);
            } else if (key == "displacement.bloom_rate") {
                cfg.displacement.bloom_rate = to_double(str);
            } else if (key == "displacement.gram_size") {
                cfg.displacement.gram_size = to_u64(str);
            } else if (key == "insertion.amount_tolerance") {
                cfg.insertion.amount_tolerance = Fraction::parse(str);
            } else if (key == "suppression.min_gas") {
                cfg.suppression.min_gas = to_u64(str);
            } else if (key == "suppression.gas_ratio") {
                cfg.suppression.gas_ratio = Fraction::parse(str);
            } else if (key == "suppression.loop_count") {
                cfg.suppression.loop_count = to_u64(str);
            } else if (key == "suppression.max_gap") {
                cfg.suppression.max_gap = to_u64(str);
            } else if (key == "gas_tokens.gst2") {
                cfg.gas_tokens.gst2 = str == "none" ? std::nullopt : std::optional{Address::from_hex(str)};
            } else if (key == "gas_tokens.chi") {
                cfg.gas_tokens.chi = str == "none" ? std::nullopt : std::optional{Address::from_hex(str)};
            } else if (key == "gas_tokens.selfdestruct_min") {
                cfg.gas_tokens.selfdestruct_min = to_u64(str);
            } else {
                throw_usage_error("unknown key '" + key + "'");
            }
        } catch (const Error& e) {
            throw_usage_error(where + e.what());
        }
    }
    if (cfg.displacement.window == 0 || cfg.displacement.stride == 0) throw_usage_error(std::string{origin} + ": window and stride must be positive");
    if (cfg.displacement.match_threshold.num > cfg.displacement.match_threshold.den) {
        throw_usage_error(std::string{origin} + ": displacement.threshold must not exceed 1");
    }
    return cfg;
}

Config Config::load(const std::filesystem::path& path) {
    std::ifstream in{path};
    if (!in) throw_usage_error("cannot open config " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    auto cfg = parse(buf.str(), path.string());
    // Relative paths resolve against the config file's directory.
    const auto base = path.parent_path();
    if (!cfg.data.fixture.empty() && cfg.data.fixture.is_relative()) cfg.data.fixture = base / cfg.data.fixture;
    if (!cfg.prices.empty() && cfg.prices.is_relative()) cfg.prices = base / cfg.prices;
    return cfg;
}

}  // namespace frontscan
