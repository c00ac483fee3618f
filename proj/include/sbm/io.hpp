#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sbm/graphs.hpp"

namespace sbm::io {

// Edge-list text format: an `n` header line, one `u v` pair per line,
// then one label line per vertex.
inline void write_edge_list(std::ostream& os, const LabeledGraph& g) {
    os << g.n << '\n';
    for (const auto& [u, v] : g.edges) os << u << ' ' << v << '\n';
    for (std::uint32_t v = 0; v < g.n; ++v) os << static_cast<int>(g.labels[v]) << '\n';
}

inline LabeledGraph read_edge_list(std::istream& is) {
    std::vector<std::uint64_t> tokens;
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line[0] == '#') continue;
        std::istringstream ls(line);
        std::uint64_t t;
        while (ls >> t) tokens.push_back(t);
    }
    if (tokens.empty()) throw std::invalid_argument("edge list: empty input");
    const std::uint64_t n = tokens[0];
    if (tokens.size() < 1 + n) throw std::invalid_argument("edge list: missing label lines");
    const std::size_t edge_tokens = tokens.size() - 1 - n;
    if (edge_tokens % 2 != 0) throw std::invalid_argument("edge list: odd edge token count");

    LabeledGraph g;
    g.n = static_cast<std::uint32_t>(n);
    g.adj.resize(g.n);
    for (std::size_t i = 1; i + 1 < 1 + edge_tokens; i += 2) {
        const auto u = static_cast<std::uint32_t>(tokens[i]);
        const auto v = static_cast<std::uint32_t>(tokens[i + 1]);
        if (u >= n || v >= n || u == v) throw std::invalid_argument("edge list: bad edge");
        g.edges.emplace_back(u, v);
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    g.labels.resize(g.n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t l = tokens[1 + edge_tokens + i];
        if (l != 1 && l != 2) throw std::invalid_argument("edge list: label must be 1 or 2");
        g.labels[i] = static_cast<std::uint8_t>(l);
    }
    return g;
}

// Parent-array JSON for trees; -1 marks the root.
inline nlohmann::json tree_to_json(const LabeledTree& t) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["max_depth"] = t.max_depth;
    std::vector<std::int64_t> parents(t.size());
    for (std::uint32_t v = 0; v < t.size(); ++v)
        parents[v] = t.parent[v] == kNoVertex ? -1 : static_cast<std::int64_t>(t.parent[v]);
    j["parents"] = parents;
    j["labels"] = t.labels;
    return j;
}

inline LabeledTree tree_from_json(const nlohmann::json& j) {
    LabeledTree t;
    t.max_depth = j.at("max_depth").get<std::uint32_t>();
    const auto parents = j.at("parents").get<std::vector<std::int64_t>>();
    const auto labels = j.at("labels").get<std::vector<std::uint8_t>>();
    if (parents.size() != labels.size()) throw std::invalid_argument("tree json: size mismatch");
    t.parent.resize(parents.size());
    t.labels = labels;
    t.depth.assign(parents.size(), 0);
    for (std::size_t v = 0; v < parents.size(); ++v) {
        if (parents[v] < 0) {
            if (v != 0) throw std::invalid_argument("tree json: root must be vertex 0");
            t.parent[v] = kNoVertex;
        } else {
            const auto pv = static_cast<std::uint64_t>(parents[v]);
            if (pv >= v) throw std::invalid_argument("tree json: parents must precede children");
            t.parent[v] = static_cast<std::uint32_t>(pv);
            t.depth[v] = t.depth[pv] + 1;
        }
        if (t.labels[v] != 1 && t.labels[v] != 2) throw std::invalid_argument("tree json: label must be 1 or 2");
    }
    return t;
}

} // namespace sbm::io
