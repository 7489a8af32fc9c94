// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <frontscan/chain_model.hpp>
#include <frontscan/records.hpp>

namespace frontscan {

enum class NodeKind {
    kAttackerAccount,
    kBotContract,
};

enum class EdgeLabel {
    kSharedAttackTx,
    kSameBytecode,
};

struct GraphNode {
    NodeKind kind{NodeKind::kAttackerAccount};
    Address address;

    friend auto operator<=>(const GraphNode&, const GraphNode&) = default;
};

// Undirected; stored with a <= b.
struct GraphEdge {
    GraphNode a;
    GraphNode b;
    EdgeLabel label{EdgeLabel::kSharedAttackTx};

    friend auto operator<=>(const GraphEdge&, const GraphEdge&) = default;
};

struct AttackerGraph {
    std::set<GraphNode> nodes;
    std::set<GraphEdge> edges;
    std::vector<std::vector<GraphNode>> attack_nodes;  // nodes touched by each input attack
    std::vector<std::string> warnings;

    void add_edge(const GraphNode& x, const GraphNode& y, EdgeLabel label);
};

struct AttackerCluster {
    std::uint64_t id{0};
    std::vector<Address> accounts;  // sorted
    std::vector<Address> bots;      // sorted
    std::vector<std::size_t> attacks;  // indices into the input attack list
    Wei cost{0};
    Wei profit{0};
    std::optional<Rational> cost_usd;    // present when every attack carries a USD value
    std::optional<Rational> profit_usd;
};

[[nodiscard]] AttackerGraph build_graph(std::span<const AttackRecord> attacks,
                                        const std::unordered_map<Address, Bytes>& code);

// Union-find with path compression. Ids follow the order of each cluster's smallest member
// address. Attack totals are filled from `attacks` when given.
[[nodiscard]] std::vector<AttackerCluster> connected_components(const AttackerGraph& graph,
                                                                std::span<const AttackRecord> attacks = {});

// Address to cluster id, for every node.
[[nodiscard]] std::unordered_map<Address, std::uint64_t> cluster_index(std::span<const AttackerCluster> clusters);

[[nodiscard]] RecordJson to_record(const AttackerCluster& cluster, std::span<const AttackRecord> attacks);

}  // namespace frontscan
