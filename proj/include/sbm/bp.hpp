#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "sbm/errors.hpp"
#include "sbm/graphs.hpp"
#include "sbm/model.hpp"

namespace sbm::bp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct PosteriorPair {
    double prob1;
    double prob2;
};

// f(x) = log((a e^x + b) / (b e^x + c)), the message update of the log
// likelihood ratio. Revealed labels travel as exact +-inf and map to the
// limits log(a/b), log(b/c). f(h) = 0 exactly: the balance constraint
// gives a e^h + b = b e^h + c = 1/(1-p), so the prior message is a fixed
// neutral element and is returned as an exact zero.
inline double f_update(double x, const ModelParams& m) {
    if (x == m.h) return 0.0;
    if (x == kInf) return std::log(m.a / m.b);
    if (x == -kInf) return std::log(m.b / m.c);
    if (x > 0.0) {
        const double e = std::exp(-x);
        return std::log(m.a + m.b * e) - std::log(m.b + m.c * e);
    }
    const double e = std::exp(x);
    return std::log(m.a * e + m.b) - std::log(m.b * e + m.c);
}

// Bottom-up message pass over a rooted structure given by parent/depth
// arrays in discovery order (parent index < child index). Vertices at
// depth r form the frontier: revealed ones carry +-inf by their true
// label, unrevealed ones carry h. Internal vertices accumulate
// h + sum f(xi_child); a childless internal vertex keeps the bare prior
// message h (empty product in the recursive definition).
template <typename RevealedAt>
double root_log_ratio(const std::vector<std::uint32_t>& parent, const std::vector<std::uint32_t>& depth,
                      const std::vector<std::uint8_t>& labels, std::uint32_t r, RevealedAt&& revealed,
                      const ModelParams& m) {
    const std::size_t n = parent.size();
    std::vector<double> acc(n, 0.0);
    double xi_root = m.h;
    for (std::size_t i = n; i-- > 0;) {
        const auto v = static_cast<std::uint32_t>(i);
        if (depth[i] > r) continue;
        double xi;
        if (depth[i] == r && revealed(v))
            xi = labels[i] == 1 ? kInf : -kInf;
        else
            xi = m.h + acc[i];
        if (parent[i] == kNoVertex) {
            xi_root = xi;
        } else {
            acc[parent[i]] += f_update(xi, m);
        }
    }
    return xi_root;
}

// Root log likelihood ratio of a labeled tree given the labels revealed
// at depth exactly r.
inline double tree_messages(const LabeledTree& t, std::uint32_t r, const RevealedSet& revealed,
                            const ModelParams& m) {
    for (std::uint32_t v : revealed.members) {
        if (v >= t.size() || t.depth[v] != r)
            throw std::invalid_argument("tree_messages: revealed vertex " + std::to_string(v) +
                                        " is not at depth " + std::to_string(r));
    }
    return root_log_ratio(t.parent, t.depth, t.labels, r, [&](std::uint32_t v) { return revealed.contains(v); }, m);
}

inline PosteriorPair ratio_to_posterior(double xi) {
    if (xi == kInf) return {1.0, 0.0};
    if (xi == -kInf) return {0.0, 1.0};
    if (xi >= 0.0) {
        const double e = std::exp(-xi);
        return {1.0 / (1.0 + e), e / (1.0 + e)};
    }
    const double e = std::exp(xi);
    return {e / (1.0 + e), 1.0 / (1.0 + e)};
}

inline constexpr std::uint32_t kDefaultEnumBudget = 22;

// Small pairwise model for brute-force enumeration: vertex priors p(x),
// edge factors psi(x,y) = {a,b,b,c}, optional clamped labels.
struct EnumProblem {
    std::uint32_t n = 0;
    std::uint32_t root = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::vector<std::uint8_t> clamped; // 0 = free, else fixed label
};

inline EnumProblem enum_problem_from_tree(const LabeledTree& t, std::uint32_t r, const RevealedSet& revealed) {
    EnumProblem pb;
    std::vector<std::uint32_t> local(t.size(), kNoVertex);
    for (std::uint32_t v = 0; v < t.size(); ++v) {
        if (t.depth[v] > r) continue;
        local[v] = pb.n++;
        pb.clamped.push_back(revealed.contains(v) && t.depth[v] == r ? t.labels[v] : 0);
        if (t.parent[v] != kNoVertex) pb.edges.emplace_back(local[t.parent[v]], local[v]);
    }
    pb.root = 0;
    return pb;
}

inline EnumProblem enum_problem_from_ball(const Ball& b, const RevealedSet& revealed) {
    EnumProblem pb;
    pb.n = b.size();
    pb.root = 0;
    pb.edges = b.edges;
    pb.clamped.assign(pb.n, 0);
    for (std::uint32_t lv : b.boundary)
        if (revealed.contains(b.vertices[lv])) pb.clamped[lv] = b.labels[lv];
    return pb;
}

// P(X_root | structure, revealed labels) by summation over all label
// assignments of the unclamped vertices. Exact on trees and on cyclic
// structures alike; the oracle side of the BP exactness checks.
inline PosteriorPair exact_posterior(const EnumProblem& pb, const ModelParams& m,
                                     std::uint32_t budget = kDefaultEnumBudget) {
    if (pb.n > budget)
        throw budget_error("exact_posterior: " + std::to_string(pb.n) + " vertices exceed enumeration budget " +
                           std::to_string(budget));
    std::vector<std::uint32_t> free_vs;
    for (std::uint32_t v = 0; v < pb.n; ++v)
        if (pb.clamped[v] == 0) free_vs.push_back(v);

    const double prior[2] = {m.p, 1.0 - m.p};
    const double psi[2][2] = {{m.a, m.b}, {m.b, m.c}};
    std::vector<std::uint8_t> x(pb.n);
    for (std::uint32_t v = 0; v < pb.n; ++v) x[v] = pb.clamped[v] ? pb.clamped[v] : 1;

    double z[2] = {0.0, 0.0};
    const std::uint64_t combos = 1ULL << free_vs.size();
    for (std::uint64_t mask = 0; mask < combos; ++mask) {
        for (std::size_t i = 0; i < free_vs.size(); ++i) x[free_vs[i]] = ((mask >> i) & 1) ? 2 : 1;
        double w = 1.0;
        for (std::uint32_t v = 0; v < pb.n; ++v) w *= prior[x[v] - 1];
        for (const auto& [u, v] : pb.edges) w *= psi[x[u] - 1][x[v] - 1];
        z[x[pb.root] - 1] += w;
    }
    const double total = z[0] + z[1];
    return {z[0] / total, z[1] / total};
}

inline PosteriorPair exact_posterior(const LabeledTree& t, std::uint32_t r, const RevealedSet& revealed,
                                     const ModelParams& m, std::uint32_t budget = kDefaultEnumBudget) {
    return exact_posterior(enum_problem_from_tree(t, r, revealed), m, budget);
}

inline PosteriorPair exact_posterior(const Ball& b, const RevealedSet& revealed, const ModelParams& m,
                                     std::uint32_t budget = kDefaultEnumBudget) {
    return exact_posterior(enum_problem_from_ball(b, revealed), m, budget);
}

// Threshold test against the prior log-ratio; ties go to label 1.
inline int tree_test(double xi, const ModelParams& m) { return xi >= m.h ? 1 : 2; }

struct LocalStatistic {
    double xi;
    bool approximate; // true when the statistic came from the BFS spanning tree of a cyclic ball
};

struct LocalDecision {
    int label;
    bool approximate;
};

// Log likelihood ratio of the center label given a radius-r ball and its
// boundary reveals. Tree balls get the exact message recursion; cyclic
// balls within the enumeration budget get the exact posterior; larger
// cyclic balls fall back to the message recursion on the BFS spanning
// tree and are flagged as approximate.
inline LocalStatistic local_statistic(const Ball& b, const RevealedSet& revealed, const ModelParams& m,
                                      std::uint32_t enum_budget = kDefaultEnumBudget) {
    if (!b.is_tree && b.size() <= enum_budget) {
        const PosteriorPair post = exact_posterior(enum_problem_from_ball(b, revealed), m, enum_budget);
        return {std::log(post.prob1) - std::log(post.prob2), false};
    }
    const double xi = root_log_ratio(
        b.parent, b.depth, b.labels, b.radius,
        [&](std::uint32_t lv) { return b.depth[lv] == b.radius && revealed.contains(b.vertices[lv]); }, m);
    return {xi, !b.is_tree};
}

// Local test: threshold the ball statistic against the prior log-ratio.
inline LocalDecision local_test(const Ball& b, const RevealedSet& revealed, const ModelParams& m,
                                std::uint32_t enum_budget = kDefaultEnumBudget) {
    const LocalStatistic s = local_statistic(b, revealed, m, enum_budget);
    return {tree_test(s.xi, m), s.approximate};
}

} // namespace sbm::bp
