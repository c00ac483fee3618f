#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "sbm/bp.hpp"
#include "sbm/errors.hpp"
#include "sbm/graphs.hpp"
#include "sbm/model.hpp"
#include "sbm/parallel.hpp"
#include "sbm/random.hpp"
#include "sbm/stats.hpp"

namespace sbm::mc {

inline constexpr std::uint32_t kDefaultIslands = 10;

// Class-conditional message pools after r cavity generations. The pools
// are split into independent islands: resampling couples every sample
// within an island to the same empirical pool, so honest error bars for
// pool functionals come from the spread across islands, not from the
// within-pool standard deviation.
struct MessageSamplePair {
    std::vector<double> xi1; // law of xi_r conditioned on root label 1
    std::vector<double> xi2; // conditioned on root label 2
    std::uint32_t r = 0;
    double q = 0.0;
    std::uint32_t islands = 1;
    ModelParams params;

    std::size_t pool_size() const { return xi1.size(); }
    std::pair<std::size_t, std::size_t> island_range(std::uint32_t k) const {
        const std::size_t n = xi1.size();
        return {n * k / islands, n * (k + 1) / islands};
    }
};

struct IslandEstimate {
    double value;  // grand estimate
    double stderr; // spread of per-island estimates / sqrt(islands)
};

// Per-island means of an arbitrary per-sample functional.
template <typename F>
IslandEstimate island_functional(const MessageSamplePair& pair, const std::vector<double>& pool, F&& g) {
    std::vector<double> per_island(pair.islands);
    for (std::uint32_t k = 0; k < pair.islands; ++k) {
        auto [b, e] = pair.island_range(k);
        double acc = 0.0;
        for (std::size_t i = b; i < e; ++i) acc += g(pool[i]);
        per_island[k] = acc / static_cast<double>(e - b);
    }
    return {stats::mean(per_island), pair.islands > 1 ? stats::stderr_of_mean(per_island) : 0.0};
}

inline IslandEstimate island_mean(const MessageSamplePair& pair, const std::vector<double>& pool) {
    return island_functional(pair, pool, [](double x) { return x; });
}

// Average within-island variance: immune to the between-island spread of
// pool means, which is resampling noise rather than message variance.
inline IslandEstimate island_variance(const MessageSamplePair& pair, const std::vector<double>& pool) {
    std::vector<double> per_island(pair.islands);
    for (std::uint32_t k = 0; k < pair.islands; ++k) {
        auto [b, e] = pair.island_range(k);
        per_island[k] = stats::variance(std::span<const double>(pool).subspan(b, e - b));
    }
    return {stats::mean(per_island), pair.islands > 1 ? stats::stderr_of_mean(per_island) : 0.0};
}

// Cavity population dynamics: generation-0 pools are the
// exact two-atom laws (+inf/h and -inf/h with weight q), so generation 1
// is sampled exactly: unrevealed children contribute f(h) = 0 by the
// balance constraint and revealed ones contribute the thinned Poisson
// counts of f(+-inf). Generations >= 2 resample the previous pools.
inline MessageSamplePair population_dynamics(const ModelParams& m, double q, std::uint32_t r,
                                             std::size_t pool, std::uint64_t seed,
                                             std::uint32_t islands = kDefaultIslands, unsigned workers = 0) {
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("population_dynamics: q must lie in [0, 1]");
    if (pool < 1000) throw std::invalid_argument("population_dynamics: pool must be >= 1000");
    if (islands < 1 || islands > pool / 100)
        throw std::invalid_argument("population_dynamics: island count must be in [1, pool/100]");

    MessageSamplePair out;
    out.r = r;
    out.q = q;
    out.islands = islands;
    out.params = m;
    out.xi1.resize(pool);
    out.xi2.resize(pool);

    const double la = std::log(m.a / m.b), lb = std::log(m.b / m.c);
    const double pad = m.p * m.a * m.d, pbd = m.p * m.b * m.d;
    const double qbd = (1.0 - m.p) * m.b * m.d, qcd = (1.0 - m.p) * m.c * m.d;

    std::vector<std::size_t> bounds(islands + 1);
    for (std::uint32_t k = 0; k <= islands; ++k) bounds[k] = pool * k / islands;

    par::parallel_for(islands, workers, [&](std::size_t kb, std::size_t ke) {
        for (std::size_t k = kb; k < ke; ++k) {
            auto eng = rng::Engine(rng::child_seed(rng::child_seed(seed, rng::kPoolStream), k));
            const std::size_t b = bounds[k], e = bounds[k + 1], sz = e - b;
            std::vector<double> x1(sz), x2(sz), f1(sz), f2(sz);

            if (r == 0) {
                std::uniform_real_distribution<double> u01(0.0, 1.0);
                for (std::size_t i = 0; i < sz; ++i) x1[i] = u01(eng) < q ? bp::kInf : m.h;
                for (std::size_t i = 0; i < sz; ++i) x2[i] = u01(eng) < q ? -bp::kInf : m.h;
            } else {
                std::poisson_distribution<std::uint32_t> r11(q * pad), r12(q * qbd);
                std::poisson_distribution<std::uint32_t> r21(q * pbd), r22(q * qcd);
                for (std::size_t i = 0; i < sz; ++i) x1[i] = m.h + r11(eng) * la + r12(eng) * lb;
                for (std::size_t i = 0; i < sz; ++i) x2[i] = m.h + r21(eng) * la + r22(eng) * lb;

                std::poisson_distribution<std::uint32_t> l11(pad), l12(qbd), l21(pbd), l22(qcd);
                std::uniform_int_distribution<std::size_t> pick(0, sz - 1);
                for (std::uint32_t gen = 2; gen <= r; ++gen) {
                    for (std::size_t i = 0; i < sz; ++i) f1[i] = bp::f_update(x1[i], m);
                    for (std::size_t i = 0; i < sz; ++i) f2[i] = bp::f_update(x2[i], m);
                    const auto resample = [&](auto& dist1, auto& dist2) {
                        double acc = m.h;
                        const std::uint32_t n1 = dist1(eng), n2 = dist2(eng);
                        for (std::uint32_t j = 0; j < n1; ++j) acc += f1[pick(eng)];
                        for (std::uint32_t j = 0; j < n2; ++j) acc += f2[pick(eng)];
                        return acc;
                    };
                    std::vector<double> n1(sz), n2(sz);
                    for (std::size_t i = 0; i < sz; ++i) n1[i] = resample(l11, l12);
                    for (std::size_t i = 0; i < sz; ++i) n2[i] = resample(l21, l22);
                    x1.swap(n1);
                    x2.swap(n2);
                }
            }
            std::copy(x1.begin(), x1.end(), out.xi1.begin() + static_cast<std::ptrdiff_t>(b));
            std::copy(x2.begin(), x2.end(), out.xi2.begin() + static_cast<std::ptrdiff_t>(b));
        }
    });
    return out;
}

struct NishimoriRow {
    std::string name;
    double lhs;     // E g(xi2)
    double rhs;     // p/(1-p) E g(xi1) e^{-xi1}
    double stderr;  // island stderr of lhs - rhs
    double z;       // (lhs - rhs) / stderr
};

struct NishimoriReport {
    std::vector<NishimoriRow> rows;
    double max_abs_z = 0.0;
};

// E g(xi^(2)) = p/(1-p) E g(xi^(1)) e^{-xi^(1)} for bounded g (Bayes
// consistency of the two conditional message laws). The product
// p/(1-p) e^{-xi} is evaluated jointly with exact atom conventions: a
// +inf atom contributes 0, the prior atom h contributes exactly 1, and a
// -inf atom in pool 1 would have posterior probability zero and is
// rejected as a sampler bug.
inline NishimoriReport nishimori_check(const MessageSamplePair& pair) {
    const double p = pair.params.p;
    for (double x : pair.xi1)
        if (x == -bp::kInf)
            throw std::logic_error("nishimori_check: -inf atom in the label-1 pool");
    const double ratio = p / (1.0 - p);
    const auto weight = [&](double x) {
        if (x == bp::kInf) return 0.0;
        if (x == pair.params.h) return 1.0;
        return ratio * std::exp(-x);
    };

    struct TestFn {
        const char* name;
        std::function<double(double)> g;
    };
    const double h = pair.params.h;
    const std::vector<TestFn> battery = {
        {"one", [](double) { return 1.0; }},
        {"sigmoid", [](double x) { return bp::ratio_to_posterior(x).prob1; }},
        {"indicator_gt_h", [h](double x) { return x > h ? 1.0 : 0.0; }},
    };

    NishimoriReport rep;
    for (const auto& fn : battery) {
        std::vector<double> diff(pair.islands);
        for (std::uint32_t k = 0; k < pair.islands; ++k) {
            auto [b, e] = pair.island_range(k);
            double lhs = 0.0, rhs = 0.0;
            for (std::size_t i = b; i < e; ++i) {
                lhs += fn.g(pair.xi2[i]);
                rhs += fn.g(pair.xi1[i]) * weight(pair.xi1[i]);
            }
            const double inv = 1.0 / static_cast<double>(e - b);
            diff[k] = (lhs - rhs) * inv;
        }
        const double d = stats::mean(diff);
        const double se = pair.islands > 1 ? stats::stderr_of_mean(diff) : 0.0;
        const double z = se > 0.0 ? d / se : (d == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
        // recover displayed lhs/rhs on the full pools for the report
        double lhs_all = 0.0, rhs_all = 0.0;
        for (std::size_t i = 0; i < pair.pool_size(); ++i) {
            lhs_all += fn.g(pair.xi2[i]);
            rhs_all += fn.g(pair.xi1[i]) * weight(pair.xi1[i]);
        }
        lhs_all /= static_cast<double>(pair.pool_size());
        rhs_all /= static_cast<double>(pair.pool_size());
        rep.rows.push_back({fn.name, lhs_all, rhs_all, se, z});
        rep.max_abs_z = std::max(rep.max_abs_z, std::abs(z));
    }
    return rep;
}

struct EstimateReport {
    double estimate = 0.0;
    double stderr = 0.0;
    std::uint64_t n_samples = 0;
    double flagged_fraction = 0.0;
    unsigned workers = 1;
    bool class_empty_warning = false;
};

namespace detail {

struct Outcome {
    std::uint8_t truth;
    std::uint8_t decision;
    std::uint8_t flagged;
};

// Rescaled success from class-conditional empirical frequencies:
//   estimate = #(T=1, X=1)/#(X=1) + #(T=2, X=2)/#(X=2) - 1.
// A classifier that ignores the observation scores exactly zero. The
// stderr comes from the influence function of this ratio estimator.
inline EstimateReport reduce_outcomes(const std::vector<Outcome>& outcomes, unsigned workers) {
    EstimateReport rep;
    rep.n_samples = outcomes.size();
    rep.workers = workers;
    const double n = static_cast<double>(outcomes.size());
    double n1 = 0, n2 = 0, a = 0, b = 0, flagged = 0;
    for (const auto& o : outcomes) {
        if (o.truth == 1) {
            n1 += 1;
            a += o.decision == 1;
        } else {
            n2 += 1;
            b += o.decision == 2;
        }
        flagged += o.flagged;
    }
    rep.flagged_fraction = flagged / n;
    if (n1 == 0 || n2 == 0) {
        rep.class_empty_warning = true;
        rep.estimate = (n1 > 0 ? a / n1 : 0.0) + (n2 > 0 ? b / n2 : 0.0) - 1.0;
        return rep;
    }
    const double r1 = a / n1, r2 = b / n2;
    rep.estimate = r1 + r2 - 1.0;
    std::vector<double> infl(outcomes.size());
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const auto& o = outcomes[i];
        if (o.truth == 1)
            infl[i] = ((o.decision == 1 ? 1.0 : 0.0) - r1) * (n / n1);
        else
            infl[i] = ((o.decision == 2 ? 1.0 : 0.0) - r2) * (n / n2);
    }
    rep.stderr = std::sqrt(stats::variance(infl) / n);
    return rep;
}

} // namespace detail

// One labeled Galton-Watson observation: the root log likelihood ratio
// given depth-r reveals, computed by a depth-first streaming recursion so
// the tree is never materialized.
struct TreeXiSample {
    double xi;
    std::uint8_t root_label;
};

inline TreeXiSample sample_tree_xi(const ModelParams& m, double q, std::uint32_t depth, rng::Engine& eng,
                                   std::uint64_t vertex_budget = kDefaultTreeBudget) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::poisson_distribution<std::uint32_t> offspring(m.d);
    const TransitionMatrix rmat = transition_matrix(m);

    struct Frame {
        std::uint8_t label;
        std::uint32_t remaining;
        double acc;
    };
    std::uint64_t budget = vertex_budget;
    const std::uint8_t root_label = u01(eng) < m.p ? 1 : 2;
    std::vector<Frame> stack;

    const auto leaf_xi = [&](std::uint8_t label) {
        if (u01(eng) < q) return label == 1 ? bp::kInf : -bp::kInf;
        return m.h;
    };
    if (depth == 0) return {leaf_xi(root_label), root_label};

    stack.push_back({root_label, offspring(eng), m.h});
    double result = m.h;
    while (!stack.empty()) {
        Frame& top = stack.back();
        if (top.remaining == 0) {
            const double xi = top.acc;
            stack.pop_back();
            if (stack.empty()) {
                result = xi;
            } else {
                stack.back().acc += bp::f_update(xi, m);
            }
            continue;
        }
        --top.remaining;
        if (--budget == 0) throw budget_error("sample_tree_xi: tree exceeded vertex budget");
        const std::uint8_t child = u01(eng) < rmat(top.label == 1 ? 0 : 1, 0) ? 1 : 2;
        if (stack.size() == depth) {
            top.acc += bp::f_update(leaf_xi(child), m);
        } else {
            stack.push_back({child, offspring(eng), m.h});
        }
    }
    return {result, root_label};
}

// xi samples with their true root labels over independent trees;
// per-replica seed streams keep any worker count byte-reproducible.
inline std::vector<TreeXiSample> sample_tree_xis(const ModelParams& m, double q, std::uint32_t depth,
                                                 std::size_t reps, std::uint64_t seed, unsigned workers = 0,
                                                 std::uint64_t vertex_budget = kDefaultTreeBudget) {
    std::vector<TreeXiSample> xs(reps);
    const std::uint64_t base = rng::child_seed(seed, rng::kTreeStream);
    par::parallel_for(reps, workers, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            auto eng = rng::Engine(rng::child_seed(base, i));
            xs[i] = sample_tree_xi(m, q, depth, eng, vertex_budget);
        }
    });
    return xs;
}

using TreeClassifier = std::function<int(double xi)>;

inline EstimateReport estimate_psucc_tree_with(const ModelParams& m, double q, std::uint32_t depth,
                                               std::size_t reps, std::uint64_t seed, const TreeClassifier& cls,
                                               unsigned workers = 0,
                                               std::uint64_t vertex_budget = kDefaultTreeBudget) {
    if (reps < 100) throw std::invalid_argument("estimate_psucc_tree: reps must be >= 100");
    workers = par::resolve_workers(workers);
    const auto xs = sample_tree_xis(m, q, depth, reps, seed, workers, vertex_budget);
    std::vector<detail::Outcome> outcomes(reps);
    for (std::size_t i = 0; i < reps; ++i)
        outcomes[i] = {xs[i].root_label, static_cast<std::uint8_t>(cls(xs[i].xi)), 0};
    return detail::reduce_outcomes(outcomes, workers);
}

// Success of the optimal depth-r tree test with q-revealed labels.
inline EstimateReport estimate_psucc_tree(const ModelParams& m, double q, std::uint32_t depth, std::size_t reps,
                                          std::uint64_t seed, unsigned workers = 0,
                                          std::uint64_t vertex_budget = kDefaultTreeBudget) {
    return estimate_psucc_tree_with(
        m, q, depth, reps, seed, [&m](double xi) { return bp::tree_test(xi, m); }, workers, vertex_budget);
}

using BallClassifier = std::function<int(const bp::LocalStatistic&)>;

inline EstimateReport estimate_psucc_sbm_with(const ModelParams& m, std::uint32_t n, double q, std::uint32_t r,
                                              std::size_t reps, std::uint64_t seed, const BallClassifier& cls,
                                              unsigned workers = 0,
                                              std::uint32_t enum_budget = bp::kDefaultEnumBudget,
                                              std::uint32_t ball_budget = kDefaultBallBudget) {
    if (n < 1000) throw std::invalid_argument("estimate_psucc_sbm: n must be >= 1000");
    workers = par::resolve_workers(workers);

    const LabeledGraph g = sample_sbm(m, n, seed);
    std::vector<std::uint32_t> all(n);
    for (std::uint32_t v = 0; v < n; ++v) all[v] = v;
    const RevealedSet revealed = sample_reveal(all, q, seed);

    std::vector<std::uint32_t> centers(reps);
    {
        auto eng = rng::make_engine(seed, rng::kCenterStream);
        std::uniform_int_distribution<std::uint32_t> pick(0, n - 1);
        for (auto& c : centers) c = pick(eng);
    }

    std::vector<detail::Outcome> outcomes(reps);
    par::parallel_for(reps, workers, [&](std::size_t b, std::size_t e) {
        BallExtractor ex;
        for (std::size_t i = b; i < e; ++i) {
            const Ball ball = ex.extract(g, centers[i], r, ball_budget);
            const bp::LocalStatistic s = bp::local_statistic(ball, revealed, m, enum_budget);
            outcomes[i] = {g.labels[centers[i]], static_cast<std::uint8_t>(cls(s)),
                           static_cast<std::uint8_t>(s.approximate ? 1 : 0)};
        }
    });
    return detail::reduce_outcomes(outcomes, workers);
}

// Success of the radius-r local test on one sampled SBM graph with
// q-revealed labels, over uniformly chosen test centers.
inline EstimateReport estimate_psucc_sbm(const ModelParams& m, std::uint32_t n, double q, std::uint32_t r,
                                         std::size_t reps, std::uint64_t seed, unsigned workers = 0,
                                         std::uint32_t enum_budget = bp::kDefaultEnumBudget,
                                         std::uint32_t ball_budget = kDefaultBallBudget) {
    return estimate_psucc_sbm_with(
        m, n, q, r, reps, seed, [&m](const bp::LocalStatistic& s) { return bp::tree_test(s.xi, m); }, workers,
        enum_budget, ball_budget);
}

} // namespace sbm::mc
