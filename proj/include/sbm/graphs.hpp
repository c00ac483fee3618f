#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sbm/errors.hpp"
#include "sbm/model.hpp"
#include "sbm/random.hpp"

namespace sbm {

inline constexpr std::uint32_t kNoVertex = std::numeric_limits<std::uint32_t>::max();

// Sparse undirected graph with ground-truth labels in {1, 2}.
struct LabeledGraph {
    std::uint32_t n = 0;
    std::vector<std::uint8_t> labels;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges; // u < v
    std::vector<std::vector<std::uint32_t>> adj;

    double label1_fraction() const {
        std::uint64_t c = 0;
        for (auto l : labels) c += (l == 1);
        return n ? static_cast<double>(c) / n : 0.0;
    }
    double mean_degree() const { return n ? 2.0 * static_cast<double>(edges.size()) / n : 0.0; }
};

// Rooted labeled tree stored in generation order: vertex 0 is the root and
// every child has a larger index than its parent, so a reverse index scan
// is a valid bottom-up traversal.
struct LabeledTree {
    std::vector<std::uint32_t> parent; // kNoVertex for the root
    std::vector<std::uint32_t> depth;
    std::vector<std::uint8_t> labels;
    std::uint32_t max_depth = 0;

    std::uint32_t size() const { return static_cast<std::uint32_t>(parent.size()); }
    std::uint32_t root() const { return 0; }

    std::vector<std::vector<std::uint32_t>> children() const {
        std::vector<std::vector<std::uint32_t>> ch(parent.size());
        for (std::uint32_t v = 1; v < parent.size(); ++v) ch[parent[v]].push_back(v);
        return ch;
    }
};

// Vertices whose true label is observed.
struct RevealedSet {
    double q = 0.0;
    std::vector<std::uint32_t> members; // sorted

    bool contains(std::uint32_t v) const { return std::binary_search(members.begin(), members.end(), v); }
    std::size_t size() const { return members.size(); }
};

// Induced ball of radius r around a center, with its BFS spanning tree.
// Local vertex ids are BFS discovery order (center = 0), so the same
// reverse-scan bottom-up traversal as LabeledTree applies.
struct Ball {
    std::uint32_t center = 0; // original id
    std::uint32_t radius = 0;
    std::vector<std::uint32_t> vertices; // local -> original id
    std::vector<std::uint32_t> parent;   // BFS parent, local ids
    std::vector<std::uint32_t> depth;
    std::vector<std::uint8_t> labels;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges; // induced, local ids
    std::vector<std::uint32_t> boundary;                        // local ids at depth == radius
    bool is_tree = false;

    std::uint32_t size() const { return static_cast<std::uint32_t>(vertices.size()); }
};

// Labels i.i.d. Bernoulli(p on 1), then each pair linked with probability
// M_{x_u,x_v} = (d/n) * {a,b,c}. Edges are drawn blockwise: a Binomial
// count per label-pair block, then uniform placement with duplicate
// rejection, which is equivalent in law to the pairwise Bernoulli scan
// but runs in O(n + m).
inline LabeledGraph sample_sbm(const ModelParams& m, std::uint32_t n, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("sample_sbm: n must be >= 2");
    const double scale = m.d / static_cast<double>(n);
    const double maa = scale * m.a, mab = scale * m.b, mcc = scale * m.c;
    if (maa > 1.0 || mab > 1.0 || mcc > 1.0)
        throw std::invalid_argument("sample_sbm: connectivity entry exceeds 1; increase n");

    LabeledGraph g;
    g.n = n;
    g.labels.resize(n);

    std::vector<std::uint32_t> class1, class2;
    {
        auto eng = rng::make_engine(seed, rng::kLabelStream);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        for (std::uint32_t v = 0; v < n; ++v) {
            const bool one = u01(eng) < m.p;
            g.labels[v] = one ? 1 : 2;
            (one ? class1 : class2).push_back(v);
        }
    }

    auto eng = rng::make_engine(seed, rng::kEdgeStream);
    std::unordered_set<std::uint64_t> seen;
    const auto key = [n](std::uint32_t u, std::uint32_t v) {
        return static_cast<std::uint64_t>(u) * n + v;
    };
    const auto draw_count = [&eng](double npairs, double prob) -> std::int64_t {
        if (npairs <= 0.0 || prob <= 0.0) return 0;
        std::binomial_distribution<std::int64_t> bin(static_cast<std::int64_t>(npairs), prob);
        return bin(eng);
    };
    const auto place_within = [&](const std::vector<std::uint32_t>& cls, std::int64_t count) {
        if (cls.size() < 2) return;
        std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(cls.size() - 1));
        for (std::int64_t e = 0; e < count;) {
            std::uint32_t i = pick(eng), j = pick(eng);
            if (i == j) continue;
            std::uint32_t u = cls[i], v = cls[j];
            if (u > v) std::swap(u, v);
            if (seen.insert(key(u, v)).second) {
                g.edges.emplace_back(u, v);
                ++e;
            }
        }
    };
    const auto place_between = [&](std::int64_t count) {
        if (class1.empty() || class2.empty()) return;
        std::uniform_int_distribution<std::uint32_t> p1(0, static_cast<std::uint32_t>(class1.size() - 1));
        std::uniform_int_distribution<std::uint32_t> p2(0, static_cast<std::uint32_t>(class2.size() - 1));
        for (std::int64_t e = 0; e < count;) {
            std::uint32_t u = class1[p1(eng)], v = class2[p2(eng)];
            if (u > v) std::swap(u, v);
            if (seen.insert(key(u, v)).second) {
                g.edges.emplace_back(u, v);
                ++e;
            }
        }
    };

    const double n1 = static_cast<double>(class1.size()), n2 = static_cast<double>(class2.size());
    seen.reserve(static_cast<std::size_t>(m.d * n / 2 * 1.3) + 64);
    place_within(class1, draw_count(n1 * (n1 - 1.0) / 2.0, maa));
    place_between(draw_count(n1 * n2, mab));
    place_within(class2, draw_count(n2 * (n2 - 1.0) / 2.0, mcc));

    g.adj.resize(n);
    for (const auto& [u, v] : g.edges) {
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    return g;
}

inline constexpr std::uint64_t kDefaultTreeBudget = 20'000'000;

// Poisson(d) Galton-Watson tree with Markov labels along edges: root label
// Bernoulli(p on 1), child labels drawn from row X_parent of R.
inline LabeledTree sample_gw(const ModelParams& m, std::uint32_t max_depth, std::uint64_t seed,
                             std::uint64_t vertex_budget = kDefaultTreeBudget) {
    auto eng = rng::make_engine(seed, rng::kTreeStream);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::poisson_distribution<std::uint32_t> offspring(m.d);
    const TransitionMatrix r = transition_matrix(m);

    LabeledTree t;
    t.max_depth = max_depth;
    t.parent.push_back(kNoVertex);
    t.depth.push_back(0);
    t.labels.push_back(u01(eng) < m.p ? 1 : 2);

    std::uint32_t level_begin = 0, level_end = 1;
    for (std::uint32_t gen = 0; gen < max_depth; ++gen) {
        for (std::uint32_t v = level_begin; v < level_end; ++v) {
            const std::uint32_t kids = offspring(eng);
            const double p_child1 = r(t.labels[v] == 1 ? 0 : 1, 0);
            for (std::uint32_t k = 0; k < kids; ++k) {
                t.parent.push_back(v);
                t.depth.push_back(gen + 1);
                t.labels.push_back(u01(eng) < p_child1 ? 1 : 2);
            }
            if (t.parent.size() > vertex_budget)
                throw budget_error("sample_gw: tree exceeded vertex budget of " + std::to_string(vertex_budget));
        }
        level_begin = level_end;
        level_end = static_cast<std::uint32_t>(t.parent.size());
        if (level_begin == level_end) break; // extinct
    }
    return t;
}

// Each eligible vertex is included independently with probability q.
inline RevealedSet sample_reveal(const std::vector<std::uint32_t>& eligible, double q, std::uint64_t seed) {
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("sample_reveal: q must lie in [0, 1]");
    RevealedSet r;
    r.q = q;
    auto eng = rng::make_engine(seed, rng::kRevealStream);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (std::uint32_t v : eligible)
        if (u01(eng) < q) r.members.push_back(v);
    std::sort(r.members.begin(), r.members.end());
    return r;
}

inline constexpr std::uint32_t kDefaultBallBudget = 2'000'000;

// Reusable BFS workspace; one instance per thread when extracting many
// balls from the same graph.
class BallExtractor {
  public:
    Ball extract(const LabeledGraph& g, std::uint32_t center, std::uint32_t radius,
                 std::uint32_t vertex_budget = kDefaultBallBudget) {
        if (center >= g.n) throw std::invalid_argument("extract_ball: center out of range");
        if (stamp_.size() < g.n) {
            stamp_.assign(g.n, 0);
            local_.assign(g.n, 0);
            epoch_ = 0;
        }
        ++epoch_;

        Ball b;
        b.center = center;
        b.radius = radius;
        b.vertices.push_back(center);
        b.parent.push_back(kNoVertex);
        b.depth.push_back(0);
        stamp_[center] = epoch_;
        local_[center] = 0;

        std::uint32_t level_begin = 0, level_end = 1;
        for (std::uint32_t dist = 0; dist < radius && level_begin < level_end; ++dist) {
            for (std::uint32_t lu = level_begin; lu < level_end; ++lu) {
                for (std::uint32_t w : g.adj[b.vertices[lu]]) {
                    if (stamp_[w] == epoch_) continue;
                    stamp_[w] = epoch_;
                    local_[w] = static_cast<std::uint32_t>(b.vertices.size());
                    b.vertices.push_back(w);
                    b.parent.push_back(lu);
                    b.depth.push_back(dist + 1);
                    if (b.vertices.size() > vertex_budget)
                        throw budget_error("extract_ball: ball exceeded vertex budget of " +
                                           std::to_string(vertex_budget));
                }
            }
            level_begin = level_end;
            level_end = static_cast<std::uint32_t>(b.vertices.size());
        }

        b.labels.resize(b.vertices.size());
        for (std::uint32_t lv = 0; lv < b.vertices.size(); ++lv) {
            b.labels[lv] = g.labels[b.vertices[lv]];
            if (b.depth[lv] == radius) b.boundary.push_back(lv);
            for (std::uint32_t w : g.adj[b.vertices[lv]]) {
                if (stamp_[w] != epoch_) continue;
                const std::uint32_t lw = local_[w];
                if (lw > lv) b.edges.emplace_back(lv, lw);
            }
        }
        b.is_tree = b.edges.size() == b.vertices.size() - 1;
        return b;
    }

  private:
    std::vector<std::uint32_t> stamp_;
    std::vector<std::uint32_t> local_;
    std::uint32_t epoch_ = 0;
};

inline Ball extract_ball(const LabeledGraph& g, std::uint32_t center, std::uint32_t radius,
                         std::uint32_t vertex_budget = kDefaultBallBudget) {
    BallExtractor ex;
    return ex.extract(g, center, radius, vertex_budget);
}

} // namespace sbm
