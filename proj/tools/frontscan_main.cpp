// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <frontscan/attacker_graph.hpp>
#include <frontscan/config.hpp>
#include <frontscan/displacement.hpp>
#include <frontscan/ingestion.hpp>
#include <frontscan/insertion.hpp>
#include <frontscan/parallel.hpp>
#include <frontscan/records.hpp>
#include <frontscan/replay_oracle.hpp>
#include <frontscan/report.hpp>
#include <frontscan/rpc_source.hpp>
#include <frontscan/suppression.hpp>
#include <frontscan/synthetic_chain.hpp>

namespace fs = std::filesystem;
using namespace frontscan;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

void report_error(std::string_view kind, std::string_view message) {
    nlohmann::ordered_json j;
    j["error"] = {{"kind", kind}, {"message", message}};
    std::cerr << j.dump() << '\n';
}

// Ordered sink: the whole output is assembled in memory and written once.
void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    if (const auto parent = fs::path{path}.parent_path(); !parent.empty()) fs::create_directories(parent);
    std::ofstream out{path, std::ios::binary};
    if (!out) throw_data_error("cannot write " + path);
    out << text;
}

std::string ndjson(const std::vector<RecordJson>& records) {
    std::string out;
    for (const auto& r : records) out += r.dump() + "\n";
    return out;
}

std::vector<AttackRecord> read_all(const std::vector<std::string>& paths) {
    std::vector<AttackRecord> out;
    for (const auto& p : paths) {
        auto more = read_attack_records(fs::path{p});
        out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
    }
    return out;
}

std::vector<std::uint64_t> timestamps_of(const std::vector<AttackRecord>& attacks) {
    std::vector<std::uint64_t> t;
    for (const auto& a : attacks) t.push_back(a.timestamp);
    return t;
}

struct Common {
    std::string config_path;
    int threads{-1};
};

Config load_config(const Common& common) {
    auto cfg = common.config_path.empty() ? Config::parse("") : Config::load(common.config_path);
    if (common.threads >= 0) cfg.threads = common.threads;
    if (cfg.threads > 0) set_worker_count(cfg.threads);
    return cfg;
}

struct ScanOptions {
    std::string kind;
    std::string fixture;
    std::string prices;
    std::string out;
    std::optional<std::uint64_t> from;
    std::optional<std::uint64_t> to;
    bool serial{false};
    bool lazy{false};
};

ChainSnapshot open_snapshot(const Config& cfg, const ScanOptions& o) {
    PriceTable prices;
    const fs::path price_path = !o.prices.empty() ? fs::path{o.prices} : cfg.prices;
    if (!price_path.empty()) {
        std::ifstream in{price_path};
        if (!in) throw_data_error("cannot open price table " + price_path.string());
        std::stringstream buf;
        buf << in.rdbuf();
        prices = PriceTable::parse_csv(buf.str());
    }
    const LoadOptions load{o.lazy};
    const fs::path fixture = !o.fixture.empty() ? fs::path{o.fixture} : cfg.data.fixture;
    if (!o.fixture.empty() || cfg.data.source == "fixture") {
        if (fixture.empty()) throw_usage_error("no fixture given; pass --fixture or set data.fixture");
        auto source = FixtureDataSource::from_file(fixture);
        const auto from = o.from ? *o.from : source.min_block().value_or(0);
        const auto to = o.to ? *o.to : source.max_block().value_or(0);
        if (!source.min_block()) throw_data_error("fixture holds no blocks");
        return load_snapshot(source, from, to, std::move(prices), load);
    }
    if (!o.from || !o.to) throw_usage_error("--from and --to are required with an RPC source");
    if (cfg.data.rpc_url.empty()) throw_usage_error("data.rpc_url is not set");
    RpcDataSource source{RpcSettings{cfg.data.rpc_url, cfg.data.batch_size, cfg.data.retries}};
    return load_snapshot(source, *o.from, *o.to, std::move(prices), load);
}

int run_scan(const Common& common, const ScanOptions& o) {
    const auto cfg = load_config(common);
    const auto snapshot = open_snapshot(cfg, o);
    std::vector<RecordJson> records;
    nlohmann::ordered_json summary;
    summary["kind"] = o.kind;
    summary["blocks"] = snapshot.blocks().size();
    if (o.kind == "displacement") {
        ReplayOracle oracle{snapshot.code()};
        const auto scan = o.serial ? scan_displacement_serial(snapshot, cfg.displacement, oracle)
                                   : scan_displacement(snapshot, cfg.displacement, oracle);
        for (const auto& a : scan.attacks) records.push_back(to_record(a));
        const auto& d = scan.diagnostics;
        summary["windows"] = d.windows;
        summary["prescreen_hits"] = d.prescreen_hits;
        summary["input_matches"] = d.input_matches;
        summary["heuristic_passes"] = d.heuristic_passes;
        summary["simulation_rejects"] = d.simulation_rejects;
        summary["oracle_failures"] = d.oracle_failures;
    } else if (o.kind == "insertion") {
        const auto attacks = o.serial ? scan_insertion_serial(snapshot, cfg.insertion, cfg.gas_tokens)
                                      : scan_insertion(snapshot, cfg.insertion, cfg.gas_tokens);
        for (const auto& a : attacks) records.push_back(to_record(a));
    } else {
        const auto scan = o.serial ? scan_suppression_serial(snapshot, cfg.suppression)
                                   : scan_suppression(snapshot, cfg.suppression);
        for (const auto& a : scan.attacks) records.push_back(to_record(a));
        summary["unclassified"] = scan.unclassified;
        summary["rejected_no_investment"] = scan.rejected_no_investment;
    }
    summary["attacks"] = records.size();
    emit(o.out, ndjson(records));
    std::cerr << summary.dump() << '\n';
    return kExitOk;
}

std::vector<AttackerCluster> clusters_for(const std::vector<AttackRecord>& attacks, const std::string& code_path) {
    const auto code = code_path.empty() ? std::unordered_map<Address, Bytes>{} : read_code_map(code_path);
    const auto graph = build_graph(attacks, code);
    for (const auto& w : graph.warnings) std::cerr << "warning: " << w << '\n';
    return connected_components(graph, attacks);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Offline frontrunning detection over Ethereum block ranges"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--config", common.config_path, "Key/value configuration file")->check(CLI::ExistingFile);
    app.add_option("--threads", common.threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);

    // synth
    auto* synth = app.add_subcommand("synth", "Generate a seeded fixture with planted attacks");
    SynthOptions synth_options;
    std::string plant;
    std::string synth_out;
    bool no_controls{false};
    synth->add_option("--seed", synth_options.seed, "Generator seed");
    synth->add_option("--blocks", synth_options.blocks, "Number of blocks")->check(CLI::PositiveNumber);
    synth->add_option("--first-block", synth_options.first_block, "Number of the first block");
    synth->add_option("--plant", plant, "Counts, e.g. insertion=5,displacement=3,suppression=1");
    synth->add_option("--background", synth_options.background_per_block, "Mean background transactions per block");
    synth->add_flag("--no-controls", no_controls, "Omit negative controls");
    synth->add_option("--out", synth_out, "Output directory")->required();

    // scan
    auto* scan = app.add_subcommand("scan", "Run one detector over a block range");
    ScanOptions scan_options;
    scan->add_option("kind", scan_options.kind, "displacement | insertion | suppression")
        ->required()
        ->check(CLI::IsMember({"displacement", "insertion", "suppression"}));
    scan->add_option("--fixture", scan_options.fixture, "NDJSON fixture (overrides data.fixture)");
    scan->add_option("--prices", scan_options.prices, "ETH/USD price CSV (overrides prices.path)");
    scan->add_option("--from", scan_options.from, "First block");
    scan->add_option("--to", scan_options.to, "Last block");
    scan->add_option("--out", scan_options.out, "Attack NDJSON output (default stdout)");
    scan->add_flag("--serial", scan_options.serial, "Use the single-threaded reference driver");
    scan->add_flag("--lazy", scan_options.lazy, "Fetch traces and internal transfers on demand");

    // cluster
    auto* cluster = app.add_subcommand("cluster", "Group attacker accounts and bots into clusters");
    std::vector<std::string> cluster_attacks;
    std::string cluster_code;
    std::string cluster_out;
    cluster->add_option("--attacks", cluster_attacks, "Attack NDJSON files")->required();
    cluster->add_option("--code", cluster_code, "NDJSON with code records");
    cluster->add_option("--out", cluster_out, "Cluster NDJSON output (default stdout)");

    // compete
    auto* compete = app.add_subcommand("compete", "Find insertion attacks competing for one victim");
    std::vector<std::string> compete_attacks;
    std::string compete_code;
    std::string compete_out;
    compete->add_option("--attacks", compete_attacks, "Attack NDJSON files")->required();
    compete->add_option("--code", compete_code, "NDJSON with code records");
    compete->add_option("--out", compete_out, "Competition NDJSON output (default stdout)");

    // report
    auto* report = app.add_subcommand("report", "Distribution tables and time matrices");
    std::vector<std::string> report_attacks;
    std::string report_code;
    std::string report_out;
    report->add_option("--attacks", report_attacks, "Attack NDJSON files")->required();
    report->add_option("--code", report_code, "NDJSON with code records; adds per-cluster rows");
    report->add_option("--out", report_out, "Directory for the CSV files")->required();

    // score
    auto* score = app.add_subcommand("score", "Compare detections against a generator manifest");
    std::vector<std::string> score_attacks;
    std::string manifest_path;
    std::string score_out;
    score->add_option("--attacks", score_attacks, "Attack NDJSON files")->required();
    score->add_option("--manifest", manifest_path, "manifest.json")->required();
    score->add_option("--out", score_out, "Score JSON output (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        report_error("usage", e.what());
        return kExitUsage;
    }

    try {
        if (synth->parsed()) {
            load_config(common);
            synth_options.controls = !no_controls;
            if (!plant.empty()) {
                synth_options.insertions = synth_options.displacements = synth_options.suppressions = 0;
                std::stringstream list{plant};
                std::string item;
                while (std::getline(list, item, ',')) {
                    const auto eq = item.find('=');
                    if (eq == std::string::npos) throw_usage_error("--plant expects kind=count, got '" + item + "'");
                    const auto kind = attack_kind_from_string(item.substr(0, eq));
                    std::size_t count{0};
                    try {
                        count = std::stoul(item.substr(eq + 1));
                    } catch (const std::exception&) {
                        throw_usage_error("bad count in '" + item + "'");
                    }
                    (kind == AttackKind::kInsertion      ? synth_options.insertions
                     : kind == AttackKind::kDisplacement ? synth_options.displacements
                                                         : synth_options.suppressions) = count;
                }
            }
            const auto chain = generate_chain(synth_options);
            chain.write(synth_out);
            std::cerr << nlohmann::ordered_json{{"blocks", chain.blocks.size()},
                                                {"planted", chain.manifest.planted.size()},
                                                {"controls", chain.manifest.controls.size()}}
                             .dump()
                      << '\n';
            return kExitOk;
        }
        if (scan->parsed()) return run_scan(common, scan_options);
        if (cluster->parsed()) {
            load_config(common);
            const auto attacks = read_all(cluster_attacks);
            std::vector<RecordJson> records;
            for (const auto& c : clusters_for(attacks, cluster_code)) records.push_back(to_record(c, attacks));
            emit(cluster_out, ndjson(records));
            return kExitOk;
        }
        if (compete->parsed()) {
            load_config(common);
            const auto attacks = read_all(compete_attacks);
            const auto index = cluster_index(clusters_for(attacks, compete_code));
            std::vector<InsertionAttack> views;
            std::vector<const AttackRecord*> source;
            for (const auto& a : attacks) {
                if (a.kind != AttackKind::kInsertion) continue;
                views.push_back(competition_view(a));
                source.push_back(&a);
            }
            std::vector<RecordJson> records;
            for (const auto& g : detect_competition(views, index)) {
                RecordJson j;
                j["block_number"] = g.block_number;
                j["victim_tx"] = g.victim_tx.hex();
                j["token"] = g.token.hex();
                RecordJson ids = RecordJson::array();
                for (auto i : g.attacks) ids.push_back(source[i]->id);
                j["attacks"] = std::move(ids);
                j["self_interference"] = g.self_interference;
                records.push_back(std::move(j));
            }
            emit(compete_out, ndjson(records));
            return kExitOk;
        }
        if (report->parsed()) {
            load_config(common);
            const auto attacks = read_all(report_attacks);
            std::vector<AttackerCluster> clusters;
            if (!report_code.empty()) clusters = clusters_for(attacks, report_code);
            const auto rows = attack_distributions(attacks, clusters);
            const auto times = timestamps_of(attacks);
            const auto years = yearly_shares(times);
            const fs::path dir{report_out};
            emit((dir / "distributions.csv").string(), distribution_csv(rows));
            emit((dir / "weekday_hour.csv").string(), to_csv(weekday_hour_matrix(times)));
            emit((dir / "yearly.csv").string(), to_csv(years));
            std::cout << render_table(rows);
            return kExitOk;
        }
        if (score->parsed()) {
            load_config(common);
            const auto attacks = read_all(score_attacks);
            const auto result = score_against_manifest(attacks, Manifest::load(manifest_path));
            emit(score_out, to_json(result).dump(2) + "\n");
            return kExitOk;
        }
    } catch (const Error& e) {
        switch (e.kind()) {
            case ErrorKind::kUsage:
                report_error("usage", e.what());
                return kExitUsage;
            case ErrorKind::kData:
                report_error("data", e.what());
                return kExitData;
            case ErrorKind::kInternal:
                report_error("internal", e.what());
                return kExitInternal;
        }
    } catch (const std::exception& e) {
        report_error("internal", e.what());
        return kExitInternal;
    }
    return kExitInternal;
}
