// Acceptance suite: one line per criterion, exit code = number of
// failures. Each criterion pins its parameters, tolerances, and runtime
// budget; shared heavy state (the population-dynamics pools) is computed
// once.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "sbm/bp.hpp"
#include "sbm/density_evolution.hpp"
#include "sbm/experiments.hpp"
#include "sbm/graphs.hpp"
#include "sbm/model.hpp"

using namespace sbm;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    template <typename T>
    Outcome& operator<<(const T& v) {
        detail << v;
        return *this;
    }
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " FAILED{" << what << "}";
        }
    }
};

std::string fmtg(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", x);
    return buf;
}

// ---- criterion 1: BP exactness against enumeration -------------------
void criterion_bp_exactness(Outcome& out) {
    std::uint64_t seed = 20260811;
    int trees = 0;
    double worst = 0.0;
    for (double d : {1.0, 2.0, 3.0}) {
        for (std::uint32_t r : {1u, 2u, 3u}) {
            for (double q : {0.0, 0.3, 1.0}) {
                for (double p : {0.1, 0.3, 0.5}) {
                    const auto m = derive_params(p, d, 0.6 * d);
                    for (int rep = 0; rep < 3; ++rep) {
                        LabeledTree t;
                        for (;; ++seed) {
                            t = sample_gw(m, r, seed);
                            if (t.size() <= 20) {
                                ++seed;
                                break;
                            }
                        }
                        std::vector<std::uint32_t> frontier;
                        for (std::uint32_t v = 0; v < t.size(); ++v)
                            if (t.depth[v] == r) frontier.push_back(v);
                        const auto revealed = sample_reveal(frontier, q, seed++);
                        const auto mp = bp::ratio_to_posterior(bp::tree_messages(t, r, revealed, m));
                        const auto ep = bp::exact_posterior(t, r, revealed, m);
                        worst = std::max(worst, std::abs(mp.prob1 - ep.prob1));
                        ++trees;
                    }
                }
            }
        }
    }
    out << trees << " trees, worst |dPosterior| = " << fmtg(worst);
    out.require(trees >= 200, "need >= 200 trees");
    out.require(worst <= 1e-9, "posterior gap above 1e-9");
}

// ---- criterion 2: quadrature vs Monte Carlo oracle --------------------
void criterion_g_vs_mc(Outcome& out) {
    double worst_ratio = 0.0;
    int combo = 0;
    for (double mu : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
        for (double p : {0.05, 0.25, 0.45}) {
            const auto mc = testutil::g_map_mc(mu, p, 1.0, 10'000'000, 777 + combo++);
            const double quad = de::g_map(mu, p, 1.0);
            const double tol = 3.0 * mc.stderr + 1e-4;
            const double gap = std::abs(quad - mc.value);
            worst_ratio = std::max(worst_ratio, gap / tol);
            if (gap > tol) out.require(false, "mu=" + fmtg(mu) + " p=" + fmtg(p) + " gap " + fmtg(gap));
        }
    }
    out << "18 combos, worst |gap|/tol = " << fmtg(worst_ratio);
}

// ---- criterion 3: threshold constants ----------------------------------
void criterion_constants(Outcome& out) {
    const double ps = de::p_star();
    out << "p*=" << fmtg(ps);
    out.require(std::abs(ps - 0.211324865405187) <= 1e-9, "p*");
    const double s25 = de::spinodal(0.25), s45 = de::spinodal(0.45), s05 = de::spinodal(0.05);
    out << " sp(0.25)=" << fmtg(s25) << " sp(0.45)=" << fmtg(s45) << " sp(0.05)=" << fmtg(s05);
    out.require(std::abs(s25 - 1.0) <= 1e-3, "spinodal(0.25)");
    out.require(std::abs(s45 - 1.0) <= 1e-3, "spinodal(0.45)");
    out.require(std::abs(s05 - 0.58) <= 0.02, "spinodal(0.05)");
}

// ---- criterion 4: small-mu expansion ----------------------------------
void criterion_small_mu(Outcome& out) {
    double worst = 0.0;
    for (double p : {0.05, 0.25, 0.5}) {
        for (double lam : {0.5, 1.0, 2.0}) {
            const double target = lam / 2.0 * (1.0 - 6.0 * p * (1.0 - p));
            const auto c = [&](double mu) { return (de::g_map(mu, p, lam) - lam * mu) / (mu * mu); };
            const double mu0 = 0.005;
            const double r1 = 2.0 * c(mu0 / 2) - c(mu0);
            const double r2 = 2.0 * c(mu0 / 4) - c(mu0 / 2);
            const double rich = (4.0 * r2 - r1) / 3.0;
            const double rel = std::abs(rich - target) / std::abs(target);
            worst = std::max(worst, rel);
            if (rel > 1e-3) out.require(false, "p=" + fmtg(p) + " lam=" + fmtg(lam) + " rel=" + fmtg(rel));
        }
    }
    out << "9 combos, worst rel err = " << fmtg(worst);
}

// ---- criterion 5: fixed point structure -------------------------------
void criterion_fixed_points(Outcome& out) {
    const auto ks = de::fixed_points(0.25, 2.0);
    out.require(!ks.zero_stable, "0 must be unstable at (0.25,2)");
    out.require(!ks.beta.has_value(), "no beta at (0.25,2)");
    out.require(ks.alpha.has_value(), "alpha exists at (0.25,2)");
    if (ks.alpha) {
        out.require(std::abs(ks.gprime_alpha) < 1.0, "alpha stable");
        out.require(std::abs(de::g_map(*ks.alpha, 0.25, 2.0) - *ks.alpha) <= 1e-9, "alpha residual");
        out << "alpha(0.25,2)=" << fmtg(*ks.alpha);
    }
    const auto tri = de::fixed_points(0.05, 0.8);
    out.require(tri.zero_stable, "0 stable at (0.05,0.8)");
    out.require(tri.beta.has_value() && tri.alpha.has_value(), "beta and alpha exist at (0.05,0.8)");
    if (tri.beta && tri.alpha) {
        out.require(0.0 < *tri.beta && *tri.beta < *tri.alpha, "0 < beta < alpha");
        out.require(std::abs(tri.gprime_beta) > 1.0, "beta unstable");
        out.require(std::abs(tri.gprime_alpha) < 1.0, "alpha stable");
        out.require(std::abs(de::g_map(*tri.beta, 0.05, 0.8) - *tri.beta) <= 1e-9, "beta residual");
        out.require(std::abs(de::g_map(*tri.alpha, 0.05, 0.8) - *tri.alpha) <= 1e-9, "alpha residual");
        out << " beta(0.05,0.8)=" << fmtg(*tri.beta) << " alpha=" << fmtg(*tri.alpha);
    }
}

// ---- criterion 6: q-threshold bracketing ------------------------------
void criterion_q_threshold(Outcome& out) {
    const double qth = de::q_threshold(0.05, 0.8);
    const auto fp = de::fixed_points(0.05, 0.8);
    const auto hi = de::iterate_mu(1.05 * qth, 0.05, 0.8);
    const auto lo = de::iterate_mu(0.95 * qth, 0.05, 0.8);
    out << "q*=" << fmtg(qth) << " up->" << fmtg(hi.converged_to) << " down->" << fmtg(lo.converged_to);
    out.require(hi.converged, "upper branch converged");
    out.require(std::abs(hi.converged_to - *fp.alpha) <= 1e-6, "1.05 q* converges to alpha");
    out.require(lo.converged, "lower branch converged");
    out.require(lo.converged_to < *fp.beta, "0.95 q* stays below beta");
}

// ---- criteria 7/8: population dynamics + Nishimori --------------------
struct PoolState {
    mc::MessageSamplePair pair;
    double mu3 = 0.0;
};
std::optional<PoolState> g_pools;

const PoolState& pools() {
    if (!g_pools) {
        const auto m = derive_params(0.25, 200.0, 2.0);
        PoolState st;
        st.pair = mc::population_dynamics(m, 0.1, 3, 100000, 424242, 10, 0);
        st.mu3 = de::iterate_mu(0.1, 0.25, 2.0).mus[2];
        g_pools = std::move(st);
    }
    return *g_pools;
}

void criterion_gaussian_limit(Outcome& out) {
    const auto& st = pools();
    const auto m = st.pair.params;
    const auto mean1 = mc::island_mean(st.pair, st.pair.xi1);
    const auto var1 = mc::island_variance(st.pair, st.pair.xi1);
    const double mean_target = m.h + st.mu3 / 2.0;
    const double mean_tol = std::max(5.0 * mean1.stderr, 0.05 * st.mu3);
    out << "mean=" << fmtg(mean1.value) << " target=" << fmtg(mean_target) << " tol=" << fmtg(mean_tol)
        << " var=" << fmtg(var1.value) << " mu3=" << fmtg(st.mu3);
    out.require(std::abs(mean1.value - mean_target) <= mean_tol, "mean of xi1");
    out.require(std::abs(var1.value - st.mu3) <= 0.10 * st.mu3, "variance of xi1");
}

void criterion_nishimori(Outcome& out) {
    const auto rep = mc::nishimori_check(pools().pair);
    const auto& g1 = rep.rows.front(); // g == 1 row
    out << "p/(1-p) E[e^-xi1] = " << fmtg(g1.rhs) << " z=" << fmtg(g1.z);
    out.require(std::abs(g1.z) <= 5.0, "g=1 discrepancy above 5 stderr");
}

// ---- criterion 9: SBM above KS ----------------------------------------
void criterion_sbm_above_ks(Outcome& out) {
    const auto m = derive_params(0.25, 50.0, 2.0);
    const auto fp = de::fixed_points(0.25, 2.0);
    const double target = de::success_from_mu(*fp.alpha);
    const auto rep = mc::estimate_psucc_sbm(m, 100000, 0.1, 2, 20000, 99001, 0);
    out << "est=" << fmtg(rep.estimate) << "+-" << fmtg(rep.stderr) << " success(alpha)=" << fmtg(target)
        << " flagged=" << fmtg(rep.flagged_fraction);
    out.require(rep.estimate >= 5.0 * rep.stderr, "positive by >= 5 stderr");
    out.require(std::abs(rep.estimate - target) <= 0.1, "within 0.1 of success(alpha)");
}

// ---- criterion 10: SBM below the spinodal ------------------------------
void criterion_sbm_below_spinodal(Outcome& out) {
    const auto m = derive_params(0.3, 50.0, 0.4);
    double prev = 1e9, prev_se = 0.0;
    for (std::uint32_t r : {1u, 2u, 3u}) {
        const std::size_t reps = r == 3 ? 4000 : 20000;
        const auto rep = mc::estimate_psucc_sbm(m, 100000, 0.1, r, reps, 99002, 0);
        out << " r" << r << "=" << fmtg(rep.estimate) << "+-" << fmtg(rep.stderr);
        out.require(rep.estimate <= 0.05, "estimate above 0.05 at r=" + std::to_string(r));
        if (r > 1) {
            const double se = std::sqrt(rep.stderr * rep.stderr + prev_se * prev_se);
            out.require(rep.estimate <= prev + 5.0 * se, "not non-increasing at r=" + std::to_string(r));
        }
        prev = rep.estimate;
        prev_se = rep.stderr;
    }
}

// ---- criterion 11: local convergence diagnostics -----------------------
void criterion_local_convergence(Outcome& out) {
    const auto m = derive_params(0.3, 5.0, 1.0);
    const auto tree_fraction = [&](std::uint32_t n, std::uint64_t seed, int reps, double* out_frac) {
        const auto g = sample_sbm(m, n, seed);
        BallExtractor ex;
        auto eng = rng::make_engine(seed, rng::kCenterStream);
        std::uniform_int_distribution<std::uint32_t> pick(0, g.n - 1);
        int trees = 0;
        for (int i = 0; i < reps; ++i) trees += ex.extract(g, pick(eng), 2).is_tree;
        *out_frac = static_cast<double>(trees) / reps;
        return g;
    };
    double f3 = 0, f4 = 0;
    tree_fraction(1000, 555, 2000, &f3);
    tree_fraction(10000, 556, 2000, &f4);
    const double se = std::sqrt(2.0 * 0.25 / 2000.0);
    out << "tree-ball frac: n=1e3 " << fmtg(f3) << ", n=1e4 " << fmtg(f4);
    out.require(f4 >= f3 - 2.0 * se, "fraction not nondecreasing in n");

    // root-degree law inside tree balls, checked at n = 1e5 where the
    // tree-ball conditioning bias is negligible
    const auto g = sample_sbm(m, 100000, 557);
    BallExtractor ex;
    auto eng = rng::make_engine(558, rng::kCenterStream);
    std::uniform_int_distribution<std::uint32_t> pick(0, g.n - 1);
    std::vector<std::uint64_t> counts(64, 0);
    int used = 0;
    for (int i = 0; i < 2000; ++i) {
        const auto b = ex.extract(g, pick(eng), 2);
        if (!b.is_tree) continue;
        counts[std::min<std::size_t>(g.adj[b.center].size(), counts.size() - 1)] += 1;
        ++used;
    }
    const double pval = testutil::poisson_chi_square_pvalue(counts, 5.0);
    out << ", chi^2 p-value=" << fmtg(pval) << " (" << used << " tree balls)";
    out.require(pval > 0.01, "root degrees fail Poisson(5) chi-square at 0.01");
}

// ---- criterion 12: dummy estimators score zero --------------------------
void criterion_dummy_zero(Outcome& out) {
    const auto m = derive_params(0.3, 3.0, 1.0);
    const auto t = mc::estimate_psucc_tree_with(m, 0.3, 2, 500, 4242, [](double) { return 2; }, 0);
    const auto s = mc::estimate_psucc_sbm_with(
        m, 2000, 0.3, 1, 1000, 4243, [](const bp::LocalStatistic&) { return 2; }, 0);
    out << "tree=" << fmtg(t.estimate) << " sbm=" << fmtg(s.estimate);
    out.require(std::abs(t.estimate) <= 1e-12, "tree dummy not zero");
    out.require(std::abs(s.estimate) <= 1e-12, "sbm dummy not zero");
}

struct Criterion {
    int id;
    const char* title;
    double runtime_limit_s;
    std::function<void(Outcome&)> fn;
};

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);
    }
    const std::vector<Criterion> criteria = {
        {1, "BP exactness oracle", 10.0, criterion_bp_exactness},
        {2, "G quadrature vs MC oracle", 60.0, criterion_g_vs_mc},
        {3, "threshold constants (p*, spinodal)", 30.0, criterion_constants},
        {4, "small-mu expansion of G", 10.0, criterion_small_mu},
        {5, "fixed-point structure", 10.0, criterion_fixed_points},
        {6, "q-threshold bracketing", 10.0, criterion_q_threshold},
        {7, "Gaussian limit of cavity messages", 120.0, criterion_gaussian_limit},
        {8, "Nishimori identity (g = 1)", 120.0, criterion_nishimori},
        {9, "end-to-end above KS", 300.0, criterion_sbm_above_ks},
        {10, "end-to-end below spinodal", 300.0, criterion_sbm_below_spinodal},
        {11, "local convergence diagnostics", 60.0, criterion_local_convergence},
        {12, "dummy-estimator zero", 1.0, criterion_dummy_zero},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        if (only != 0 && c.id != only) continue;
        Outcome out;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.fn(out);
        } catch (const std::exception& ex) {
            out.require(false, std::string("exception: ") + ex.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.require(secs <= c.runtime_limit_s, "runtime " + fmtg(secs) + "s over limit");
        std::printf("[%s] criterion %2d: %s (%s) [%.1fs]\n", out.pass ? "PASS" : "FAIL", c.id, c.title,
                    out.detail.str().c_str(), secs);
        std::fflush(stdout);
        if (!out.pass) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
