// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

// Regression snapshots of the detector output on a small seeded chain.
// Set FRONTSCAN_UPDATE_GOLDEN=1 to rewrite them after an intended change.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <frontscan/attacker_graph.hpp>
#include <frontscan/records.hpp>
#include <frontscan/replay_oracle.hpp>
#include <frontscan/report.hpp>
#include <frontscan/synthetic_chain.hpp>

using namespace frontscan;

namespace {

void check_golden(const std::string& name, const std::string& actual) {
    const std::filesystem::path path = std::filesystem::path{FRONTSCAN_GOLDEN_DIR} / name;
    const char* update = std::getenv("FRONTSCAN_UPDATE_GOLDEN");
    if (update != nullptr && std::string{update} == "1") {
        std::filesystem::create_directories(path.parent_path());
        std::ofstream{path, std::ios::binary} << actual;
        MESSAGE("rewrote " << path.string());
        return;
    }
    std::ifstream in{path, std::ios::binary};
    REQUIRE_MESSAGE(in.good(), "missing golden file " << path.string());
    std::stringstream expected;
    expected << in.rdbuf();
    CHECK_MESSAGE(expected.str() == actual, "output differs from " << path.string());
}

template <typename Range>
std::string ndjson(const Range& attacks) {
    std::string out;
    for (const auto& a : attacks) out += to_record(a).dump() + "\n";
    return out;
}

SyntheticChain golden_chain() {
    SynthOptions opt;
    opt.seed = 42;
    opt.blocks = 240;
    opt.insertions = 4;
    opt.displacements = 3;
    opt.suppressions = 2;
    opt.background_per_block = 2.0;
    return generate_chain(opt);
}

}  // namespace

TEST_CASE("golden detector output") {
    const auto chain = golden_chain();
    const auto snap = chain.snapshot();
    ReplayOracle oracle{snap.code()};

    const auto insertion = scan_insertion(snap, InsertionSettings{});
    const auto displacement = scan_displacement(snap, DisplacementSettings{}, oracle);
    const auto suppression = scan_suppression(snap);
    check_golden("insertion.ndjson", ndjson(insertion));
    check_golden("displacement.ndjson", ndjson(displacement.attacks));
    check_golden("suppression.ndjson", ndjson(suppression.attacks));

    std::string all = ndjson(insertion) + ndjson(displacement.attacks) + ndjson(suppression.attacks);
    std::istringstream in{all};
    const auto records = read_attack_records(in, "<golden>");
    const auto graph = build_graph(records, snap.code());
    const auto clusters = connected_components(graph, records);
    std::string cluster_lines;
    for (const auto& c : clusters) cluster_lines += to_record(c, records).dump() + "\n";
    check_golden("clusters.ndjson", cluster_lines);
    check_golden("distributions.csv", distribution_csv(attack_distributions(records, clusters)));
}
