// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <frontscan/attacker_graph.hpp>

#include <algorithm>
#include <map>
#include <numeric>

namespace frontscan {

void AttackerGraph::add_edge(const GraphNode& x, const GraphNode& y, EdgeLabel label) {
    nodes.insert(x);
    nodes.insert(y);
    edges.insert(x <= y ? GraphEdge{x, y, label} : GraphEdge{y, x, label});
}

AttackerGraph build_graph(std::span<const AttackRecord> attacks, const std::unordered_map<Address, Bytes>& code) {
    AttackerGraph g;
    for (const auto& attack : attacks) {
        std::vector<GraphNode> touched;
        for (const auto& [account, bot] : attack.pairs) {
            const GraphNode a{NodeKind::kAttackerAccount, account};
            g.nodes.insert(a);
            touched.push_back(a);
            if (bot) {
                const GraphNode b{NodeKind::kBotContract, *bot};
                g.add_edge(a, b, EdgeLabel::kSharedAttackTx);
                touched.push_back(b);
            }
        }
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        g.attack_nodes.push_back(std::move(touched));
    }

    // Bots with byte-identical code, grouped so each group costs one pass.
    std::map<Bytes, std::vector<GraphNode>> by_code;
    for (const auto& node : g.nodes) {
        if (node.kind != NodeKind::kBotContract) continue;
        const auto it = code.find(node.address);
        if (it == code.end() || it->second.empty()) {
            g.warnings.push_back("no bytecode for bot contract " + node.address.hex());
            continue;
        }
        by_code[it->second].push_back(node);
    }
    for (const auto& [bytes, group] : by_code) {
        for (std::size_t i = 0; i < group.size(); ++i) {
            for (std::size_t k = i + 1; k < group.size(); ++k) g.add_edge(group[i], group[k], EdgeLabel::kSameBytecode);
        }
    }
    return g;
}

namespace {

    class UnionFind {
      public:
        explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

        std::size_t find(std::size_t x) {
            std::size_t root = x;
            while (parent_[root] != root) root = parent_[root];
            while (parent_[x] != root) x = std::exchange(parent_[x], root);
            return root;
        }

        void unite(std::size_t a, std::size_t b) {
            a = find(a);
            b = find(b);
            if (a != b) parent_[std::max(a, b)] = std::min(a, b);
        }

      private:
        std::vector<std::size_t> parent_;
    };

}  // namespace

std::vector<AttackerCluster> connected_components(const AttackerGraph& graph, std::span<const AttackRecord> attacks) {
    const std::vector<GraphNode> nodes(graph.nodes.begin(), graph.nodes.end());
    auto index_of = [&](const GraphNode& n) {
        return static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), n) - nodes.begin());
    };
    UnionFind uf{nodes.size()};
    for (const auto& e : graph.edges) uf.unite(index_of(e.a), index_of(e.b));

    std::map<std::size_t, AttackerCluster> by_root;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        auto& c = by_root[uf.find(i)];
        (nodes[i].kind == NodeKind::kAttackerAccount ? c.accounts : c.bots).push_back(nodes[i].address);
    }
    for (std::size_t a = 0; a < graph.attack_nodes.size(); ++a) {
        if (graph.attack_nodes[a].empty()) continue;
        by_root[uf.find(index_of(graph.attack_nodes[a].front()))].attacks.push_back(a);
    }

    std::vector<AttackerCluster> out;
    for (auto& [root, c] : by_root) {
        std::sort(c.accounts.begin(), c.accounts.end());
        c.accounts.erase(std::unique(c.accounts.begin(), c.accounts.end()), c.accounts.end());
        std::sort(c.bots.begin(), c.bots.end());
        c.bots.erase(std::unique(c.bots.begin(), c.bots.end()), c.bots.end());
        bool all_usd = !c.attacks.empty();
        Rational cost_usd{0};
        Rational profit_usd{0};
        for (auto a : c.attacks) {
            if (a >= attacks.size()) {
                all_usd = false;
                continue;
            }
            c.cost += attacks[a].cost;
            c.profit += attacks[a].profit;
            if (attacks[a].cost_usd && attacks[a].profit_usd) {
                cost_usd += *attacks[a].cost_usd;
                profit_usd += *attacks[a].profit_usd;
            } else {
                all_usd = false;
            }
        }
        if (all_usd) {
            c.cost_usd = cost_usd;
            c.profit_usd = profit_usd;
        }
        out.push_back(std::move(c));
    }

    auto smallest = [](const AttackerCluster& c) {
        Address m = !c.accounts.empty() ? c.accounts.front() : c.bots.front();
        if (!c.bots.empty()) m = std::min(m, c.bots.front());
        return m;
    };
    std::sort(out.begin(), out.end(),
              [&](const AttackerCluster& a, const AttackerCluster& b) { return smallest(a) < smallest(b); });
    for (std::size_t i = 0; i < out.size(); ++i) out[i].id = i;
    return out;
}

std::unordered_map<Address, std::uint64_t> cluster_index(std::span<const AttackerCluster> clusters) {
    std::unordered_map<Address, std::uint64_t> out;
    for (const auto& c : clusters) {
        for (const auto& a : c.accounts) out[a] = c.id;
        for (const auto& b : c.bots) out[b] = c.id;
    }
    return out;
}

RecordJson to_record(const AttackerCluster& c, std::span<const AttackRecord> attacks) {
    RecordJson j;
    j["id"] = c.id;
    RecordJson accounts = RecordJson::array();
    for (const auto& a : c.accounts) accounts.push_back(a.hex());
    RecordJson bots = RecordJson::array();
    for (const auto& b : c.bots) bots.push_back(b.hex());
    RecordJson ids = RecordJson::array();
    for (auto a : c.attacks) {
        if (a < attacks.size()) ids.push_back(attacks[a].id);
    }
    j["accounts"] = std::move(accounts);
    j["bots"] = std::move(bots);
    j["attack_count"] = c.attacks.size();
    j["attacks"] = std::move(ids);
    j["cost_wei"] = c.cost.str();
    j["profit_wei"] = c.profit.str();
    j["cost_usd"] = c.cost_usd ? RecordJson(format_decimal(*c.cost_usd, 2)) : RecordJson(nullptr);
    j["profit_usd"] = c.profit_usd ? RecordJson(format_decimal(*c.profit_usd, 2)) : RecordJson(nullptr);
    return j;
}

}  // namespace frontscan
