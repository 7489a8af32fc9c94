// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <frontscan/ingestion.hpp>

#include <fstream>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>

#include <frontscan/fixture_io.hpp>
#include <frontscan/hex.hpp>
#include <frontscan/keccak.hpp>
#include <frontscan/parallel.hpp>

namespace frontscan {

const Hash32& transfer_event_signature() {
    static const Hash32 kSignature = keccak256(std::string_view{"Transfer(address,address,uint256)"});
    return kSignature;
}

std::optional<TransferEvent> decode_transfer_event(const RawLog& log) {
    if (log.topics.empty() || log.topics[0] != transfer_event_signature()) return std::nullopt;
    // ERC-721 and other variants index the amount; only the canonical ERC-20 layout is accepted.
    if (log.topics.size() != 3) return std::nullopt;
    if (log.data.size() != 32) throw_data_error("malformed Transfer log " + log.tx_hash.hex() + "#" + std::to_string(log.log_index));

    TransferEvent e;
    e.sender = Address::from_span(ByteView{log.topics[1].bytes}.subspan(12));
    e.receiver = Address::from_span(ByteView{log.topics[2].bytes}.subspan(12));
    e.amount = from_word(log.data);
    e.token = log.address;
    e.tx_hash = log.tx_hash;
    e.block_number = log.block_number;
    e.log_index = log.log_index;
    return e;
}

RawLog encode_transfer_log(const TransferEvent& event) {
    RawLog log;
    log.block_number = event.block_number;
    log.tx_hash = event.tx_hash;
    log.log_index = event.log_index;
    log.address = event.token;
    Hash32 from;
    Hash32 to;
    std::copy(event.sender.bytes.begin(), event.sender.bytes.end(), from.bytes.begin() + 12);
    std::copy(event.receiver.bytes.begin(), event.receiver.bytes.end(), to.bytes.begin() + 12);
    log.topics = {transfer_event_signature(), from, to};
    const auto word = to_word(event.amount);
    log.data.assign(word.bytes.begin(), word.bytes.end());
    return log;
}

FixtureDataSource FixtureDataSource::from_file(const std::filesystem::path& path) {
    std::ifstream in{path};
    if (!in) throw_data_error("cannot open fixture " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return from_string(buf.str(), path.string());
}

FixtureDataSource FixtureDataSource::from_string(std::string_view text, std::string_view origin) {
    FixtureDataSource src;
    std::size_t line_no{0};
    while (!text.empty()) {
        const auto eol = text.find('\n');
        const auto line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            const auto kind = fixture::string_field(j, "kind");
            if (kind == "block") {
                auto block = fixture::block_from_json(j);
                const auto number = block.number;
                if (!src.blocks_.emplace(number, std::move(block)).second) {
                    throw_data_error("duplicate block " + std::to_string(number));
                }
            } else if (kind == "log") {
                auto log = fixture::log_from_json(j);
                src.logs_[log.block_number].push_back(std::move(log));
            } else if (kind == "code") {
                auto [address, code] = fixture::code_from_json(j);
                src.code_[address] = std::move(code);
            } else if (kind == "trace") {
                auto trace = fixture::trace_from_json(j);
                const auto hash = trace.tx_hash;
                src.traces_[hash] = std::move(trace);
            } else if (kind == "internal") {
                auto t = fixture::internal_from_json(j);
                src.internal_[t.parent_tx].push_back(std::move(t));
            } else {
                throw_data_error("unknown record kind '" + kind + "'");
            }
        } catch (const nlohmann::json::exception& e) {
            throw_data_error(std::string{origin} + ":" + std::to_string(line_no) + ": " + e.what());
        } catch (const Error& e) {
            throw_data_error(std::string{origin} + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    for (auto& [number, logs] : src.logs_) {
        std::sort(logs.begin(), logs.end(), [](const RawLog& a, const RawLog& b) { return a.log_index < b.log_index; });
    }
    return src;
}

std::optional<Block> FixtureDataSource::get_block(std::uint64_t number) {
    auto it = blocks_.find(number);
    if (it == blocks_.end()) return std::nullopt;
    return it->second;
}

std::vector<RawLog> FixtureDataSource::get_logs(std::uint64_t from_block, std::uint64_t to_block) {
    std::vector<RawLog> out;
    for (auto it = logs_.lower_bound(from_block); it != logs_.end() && it->first <= to_block; ++it) {
        out.insert(out.end(), it->second.begin(), it->second.end());
    }
    return out;
}

std::optional<Bytes> FixtureDataSource::get_code(const Address& address) {
    auto it = code_.find(address);
    if (it == code_.end()) return std::nullopt;
    return it->second;
}

std::optional<ExecutionTrace> FixtureDataSource::get_trace(const Hash32& tx_hash) {
    auto it = traces_.find(tx_hash);
    if (it == traces_.end()) return std::nullopt;
    return it->second;
}

std::vector<InternalTransfer> FixtureDataSource::get_internal_transfers(const Hash32& tx_hash) {
    auto it = internal_.find(tx_hash);
    if (it == internal_.end()) return {};
    return it->second;
}

std::optional<std::uint64_t> FixtureDataSource::min_block() const noexcept {
    if (blocks_.empty()) return std::nullopt;
    return blocks_.begin()->first;
}

std::optional<std::uint64_t> FixtureDataSource::max_block() const noexcept {
    if (blocks_.empty()) return std::nullopt;
    return blocks_.rbegin()->first;
}

namespace {

    // Serializes calls into sources that cannot take concurrent requests.
    class SourceGate {
      public:
        explicit SourceGate(DataSource& source) : source_{source}, mutex_{std::make_shared<std::mutex>()} {}

        template <typename Fn>
        auto call(Fn&& fn) const {
            if (source_.concurrent_calls_supported()) return fn(source_);
            std::lock_guard lock{*mutex_};
            return fn(source_);
        }

        template <typename Body>
        void for_each(std::size_t n, Body&& body) const {
            if (source_.concurrent_calls_supported()) {
                parallel_for(n, body);
            } else {
                for (std::size_t i = 0; i < n; ++i) body(i);
            }
        }

      private:
        DataSource& source_;
        std::shared_ptr<std::mutex> mutex_;
    };

}  // namespace

ChainSnapshot load_snapshot(DataSource& source, std::uint64_t from_block, std::uint64_t to_block, PriceTable prices,
                            LoadOptions options) {
    if (from_block > to_block) throw_usage_error("from_block must not exceed to_block");
    const SourceGate gate{source};

    ChainSnapshot::Parts parts;
    const std::size_t count = to_block - from_block + 1;
    std::vector<std::optional<Block>> fetched(count);
    gate.for_each(count, [&](std::size_t i) {
        fetched[i] = gate.call([&](DataSource& s) { return s.get_block(from_block + i); });
    });
    parts.blocks.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (!fetched[i]) throw_data_error("missing block " + std::to_string(from_block + i));
        if (fetched[i]->number != from_block + i) {
            throw_data_error("source returned block " + std::to_string(fetched[i]->number) + " for request " +
                             std::to_string(from_block + i));
        }
        parts.blocks.push_back(std::move(*fetched[i]));
    }

    std::unordered_map<Hash32, const Transaction*> by_hash;
    std::set<Address> code_addresses;
    std::vector<Hash32> tx_hashes;
    for (const auto& block : parts.blocks) {
        for (const auto& tx : block.transactions) {
            by_hash.emplace(tx.hash, &tx);
            tx_hashes.push_back(tx.hash);
            if (tx.receiver) code_addresses.insert(*tx.receiver);
        }
    }

    const auto logs = gate.call([&](DataSource& s) { return s.get_logs(from_block, to_block); });
    for (const auto& log : logs) {
        code_addresses.insert(log.address);
        auto event = decode_transfer_event(log);
        if (!event) continue;
        auto it = by_hash.find(log.tx_hash);
        if (it == by_hash.end()) throw_data_error("log " + log.tx_hash.hex() + " references unknown transaction");
        const auto& tx = *it->second;
        if (tx.block_number != log.block_number) throw_data_error("log block mismatch for " + log.tx_hash.hex());
        event->tx_index = tx.tx_index;
        event->gas_price = tx.gas_price;
        parts.transfer_events[log.block_number].push_back(std::move(*event));
    }
    for (auto& [number, events] : parts.transfer_events) {
        std::sort(events.begin(), events.end(),
                  [](const TransferEvent& a, const TransferEvent& b) { return a.log_index < b.log_index; });
        for (std::size_t i = 1; i < events.size(); ++i) {
            if (events[i].log_index == events[i - 1].log_index) {
                throw_data_error("duplicate log index " + std::to_string(events[i].log_index) + " in block " +
                                 std::to_string(number));
            }
        }
    }

    const std::vector<Address> addresses(code_addresses.begin(), code_addresses.end());
    std::vector<std::optional<Bytes>> codes(addresses.size());
    gate.for_each(addresses.size(), [&](std::size_t i) {
        codes[i] = gate.call([&](DataSource& s) { return s.get_code(addresses[i]); });
    });
    for (std::size_t i = 0; i < addresses.size(); ++i) {
        if (codes[i] && !codes[i]->empty()) parts.code.emplace(addresses[i], std::move(*codes[i]));
    }

    if (options.lazy) {
        parts.trace_loader = [gate](const Hash32& h) { return gate.call([&](DataSource& s) { return s.get_trace(h); }); };
        parts.internal_loader = [gate](const Hash32& h) {
            return gate.call([&](DataSource& s) { return s.get_internal_transfers(h); });
        };
    } else {
        std::vector<std::optional<ExecutionTrace>> traces(tx_hashes.size());
        std::vector<std::vector<InternalTransfer>> internal(tx_hashes.size());
        gate.for_each(tx_hashes.size(), [&](std::size_t i) {
            traces[i] = gate.call([&](DataSource& s) { return s.get_trace(tx_hashes[i]); });
            internal[i] = gate.call([&](DataSource& s) { return s.get_internal_transfers(tx_hashes[i]); });
        });
        for (std::size_t i = 0; i < tx_hashes.size(); ++i) {
            if (traces[i]) parts.traces.emplace(tx_hashes[i], std::move(*traces[i]));
            if (!internal[i].empty()) parts.internal_transfers.emplace(tx_hashes[i], std::move(internal[i]));
        }
    }

    parts.prices = std::move(prices);
    return ChainSnapshot::build(std::move(parts));
}

}  // namespace frontscan
