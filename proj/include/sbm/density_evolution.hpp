#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sbm/model.hpp"
#include "sbm/quadrature.hpp"

namespace sbm::de {

inline constexpr int kDefaultQuadNodes = 201;

// h_map(mu) = G(mu)/lambda = (1/(1-p)^2) E[1/(p + (1-p) exp(sqrt(mu) Z - mu/2)) - 1],
// the lambda = 1 Gaussian density-evolution map. G is linear in lambda, so
// every threshold computation reduces to this one function.
inline double h_map(double mu, double p, int quad_nodes = kDefaultQuadNodes) {
    if (mu < 0.0) throw std::invalid_argument("h_map: mu must be nonnegative");
    if (mu == 0.0) return 0.0;
    const auto& gh = quad::cached_gauss_hermite(quad::effective_nodes(mu, quad_nodes));
    const double sq = std::sqrt(mu), half = mu / 2.0, q1 = 1.0 - p;
    const double e = quad::normal_expectation(
        [&](double z) { return 1.0 / (p + q1 * std::exp(sq * z - half)) - 1.0; }, gh);
    const double v = e / (q1 * q1);
    return v > 0.0 ? v : 0.0;
}

inline double g_map(double mu, double p, double lambda, int quad_nodes = kDefaultQuadNodes) {
    return lambda * h_map(mu, p, quad_nodes);
}

inline double g_map(double mu, const ModelParams& m, int quad_nodes = kDefaultQuadNodes) {
    return g_map(mu, m.p, m.lambda, quad_nodes);
}

inline double h_map(double mu, const ModelParams& m, int quad_nodes = kDefaultQuadNodes) {
    return h_map(mu, m.p, quad_nodes);
}

// p* = 1/2 - 1/(2 sqrt(3)): the proportion below which the quadratic term
// of G at 0 turns positive and a spinodal gap opens.
inline double p_star() { return 0.5 - 0.5 / std::sqrt(3.0); }

// 2 P(N(mu/2, mu) > 0) - 1 = 2 Phi(sqrt(mu)/2) - 1, the asymptotic
// rescaled success probability carried by a Gaussian message of
// parameter mu.
inline double success_from_mu(double mu) {
    if (mu < 0.0) throw std::invalid_argument("success_from_mu: mu must be nonnegative");
    if (mu == 0.0) return 0.0;
    return std::erf(std::sqrt(mu) / (2.0 * std::sqrt(2.0)));
}

enum class FixedPointClass { Unset, Zero, Alpha, BetaUnstableHit };

inline const char* to_string(FixedPointClass c) {
    switch (c) {
        case FixedPointClass::Zero: return "zero";
        case FixedPointClass::Alpha: return "alpha";
        case FixedPointClass::BetaUnstableHit: return "beta-unstable-hit";
        default: return "unset";
    }
}

struct DensityEvolutionTrace {
    double q = 0.0;
    std::vector<double> mus; // mu_1, mu_2, ...
    bool converged = false;
    double converged_to = 0.0;
    std::uint32_t iterations = 0;
    FixedPointClass classification = FixedPointClass::Unset;
};

struct FixedPointReport {
    double p = 0.0;
    double lambda = 0.0;
    bool zero_stable = false;
    std::optional<double> beta;  // smaller positive fixed point (unstable)
    std::optional<double> alpha; // larger positive fixed point (stable)
    double gprime_zero = 0.0;
    double gprime_beta = 0.0;
    double gprime_alpha = 0.0;
    bool grid_warning = false; // two sign changes inside one grid cell
};

namespace detail {

// |G'| at a root via central differences (one-sided second order at 0).
inline double g_derivative(double mu, double p, double lambda, int quad_nodes) {
    const double step = 1e-5 * std::max(1.0, mu);
    if (mu < step)
        return (4.0 * g_map(mu + step, p, lambda, quad_nodes) - g_map(mu + 2.0 * step, p, lambda, quad_nodes) -
                3.0 * g_map(mu, p, lambda, quad_nodes)) /
               (2.0 * step);
    return (g_map(mu + step, p, lambda, quad_nodes) - g_map(mu - step, p, lambda, quad_nodes)) / (2.0 * step);
}

} // namespace detail

// Locates the fixed points of G on (0, lambda/(p(1-p))] by a log-spaced
// sign scan refined with bisection, and classifies stability through
// |G'(mu*)| < 1. Zero is always a fixed point; the observed structures
// are {0}, {0, alpha} or {0, beta, alpha}.
inline FixedPointReport fixed_points(double p, double lambda, int quad_nodes = kDefaultQuadNodes,
                                     int grid_points = 2000) {
    validate_p(p);
    if (!(lambda > 0.0)) throw std::invalid_argument("fixed_points: lambda must be positive");
    FixedPointReport rep;
    rep.p = p;
    rep.lambda = lambda;
    rep.gprime_zero = detail::g_derivative(0.0, p, lambda, quad_nodes);
    rep.zero_stable = std::abs(rep.gprime_zero) < 1.0;

    const double mu_max = lambda / (p * (1.0 - p));
    const double lo = mu_max * 1e-9;
    const auto resid = [&](double mu) { return g_map(mu, p, lambda, quad_nodes) - mu; };

    std::vector<double> roots;
    double prev_mu = lo, prev_r = resid(lo);
    for (int i = 1; i < grid_points; ++i) {
        const double t = static_cast<double>(i) / (grid_points - 1);
        const double mu = lo * std::pow(mu_max / lo, t);
        const double r = resid(mu);
        if (r == 0.0) {
            roots.push_back(mu);
        } else if (prev_r * r < 0.0) {
            double a = prev_mu, b = mu, ra = prev_r;
            while (b - a > 1e-12 * std::max(1.0, a)) {
                const double mid = 0.5 * (a + b);
                const double rm = resid(mid);
                if (ra * rm <= 0.0) {
                    b = mid;
                } else {
                    a = mid;
                    ra = rm;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        prev_mu = mu;
        prev_r = r;
    }

    if (roots.size() > 2) rep.grid_warning = true;
    if (roots.size() == 1) {
        rep.alpha = roots[0];
        rep.gprime_alpha = detail::g_derivative(roots[0], p, lambda, quad_nodes);
    } else if (roots.size() >= 2) {
        rep.beta = roots.front();
        rep.alpha = roots.back();
        rep.gprime_beta = detail::g_derivative(roots.front(), p, lambda, quad_nodes);
        rep.gprime_alpha = detail::g_derivative(roots.back(), p, lambda, quad_nodes);
    }
    return rep;
}

inline FixedPointReport fixed_points(const ModelParams& m, int quad_nodes = kDefaultQuadNodes,
                                     int grid_points = 2000) {
    return fixed_points(m.p, m.lambda, quad_nodes, grid_points);
}

// mu_1 = q lambda / (p(1-p)), mu_{k+1} = G(mu_k), iterated to the fixed
// tolerance. Classification names the nearest fixed point of the limit.
inline DensityEvolutionTrace iterate_mu(double q, double p, double lambda, double tol = 1e-10,
                                        std::uint32_t max_iter = 10000, int quad_nodes = kDefaultQuadNodes) {
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("iterate_mu: q must lie in [0, 1]");
    validate_p(p);
    DensityEvolutionTrace tr;
    tr.q = q;
    double mu = q * lambda / (p * (1.0 - p));
    tr.mus.push_back(mu);
    for (std::uint32_t k = 0; k < max_iter; ++k) {
        const double next = g_map(mu, p, lambda, quad_nodes);
        tr.mus.push_back(next);
        ++tr.iterations;
        if (std::abs(next - mu) < tol) {
            tr.converged = true;
            mu = next;
            break;
        }
        mu = next;
    }
    tr.converged_to = mu;
    if (tr.converged) {
        const FixedPointReport fp = fixed_points(p, lambda, quad_nodes);
        double best = std::abs(mu - 0.0);
        tr.classification = FixedPointClass::Zero;
        if (fp.beta && std::abs(mu - *fp.beta) < best) {
            best = std::abs(mu - *fp.beta);
            tr.classification = FixedPointClass::BetaUnstableHit;
        }
        if (fp.alpha && std::abs(mu - *fp.alpha) < best) {
            tr.classification = FixedPointClass::Alpha;
        }
    }
    return tr;
}

inline DensityEvolutionTrace iterate_mu(double q, const ModelParams& m, double tol = 1e-10,
                                        std::uint32_t max_iter = 10000, int quad_nodes = kDefaultQuadNodes) {
    return iterate_mu(q, m.p, m.lambda, tol, max_iter, quad_nodes);
}

// lambda_sp(p) = inf_{mu > 0} mu / h(mu), capped at the mu -> 0 limit 1.
// G is linear in lambda, so lambda h(mu) = mu has a positive root exactly
// when lambda >= mu/h(mu) for some mu, turning the spinodal definition
// into a one-dimensional minimization.
inline double spinodal(double p, double tol = 1e-10, int quad_nodes = kDefaultQuadNodes,
                       int grid_points = 2000) {
    validate_p(p);
    const double mu_max = 10.0 / (p * (1.0 - p));
    const double lo = 1e-6;
    const auto phi = [&](double mu) {
        const double h = h_map(mu, p, quad_nodes);
        return h > 0.0 ? mu / h : std::numeric_limits<double>::infinity();
    };

    int best = 0;
    double best_val = std::numeric_limits<double>::infinity();
    std::vector<double> grid(static_cast<std::size_t>(grid_points));
    for (int i = 0; i < grid_points; ++i) {
        const double t = static_cast<double>(i) / (grid_points - 1);
        grid[static_cast<std::size_t>(i)] = lo * std::pow(mu_max / lo, t);
        const double v = phi(grid[static_cast<std::size_t>(i)]);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }

    // golden-section refinement inside the bracketing cells
    double a = grid[static_cast<std::size_t>(std::max(0, best - 1))];
    double b = grid[static_cast<std::size_t>(std::min(grid_points - 1, best + 1))];
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c1 = b - gr * (b - a), d1 = a + gr * (b - a);
    double fc = phi(c1), fd = phi(d1);
    while (b - a > tol * std::max(1.0, b)) {
        if (fc < fd) {
            b = d1;
            d1 = c1;
            fd = fc;
            c1 = b - gr * (b - a);
            fc = phi(c1);
        } else {
            a = c1;
            c1 = d1;
            fc = fd;
            d1 = a + gr * (b - a);
            fd = phi(d1);
        }
    }
    return std::min(1.0, phi(0.5 * (a + b)));
}

// q threshold beta p(1-p) / lambda in the three-fixed-point regime.
inline double q_threshold(double p, double lambda, int quad_nodes = kDefaultQuadNodes) {
    const FixedPointReport fp = fixed_points(p, lambda, quad_nodes);
    if (!fp.beta)
        throw std::domain_error("q_threshold: no unstable fixed point beta at (p=" + std::to_string(p) +
                                ", lambda=" + std::to_string(lambda) +
                                "); requires lambda_sp(p) < lambda < 1");
    return *fp.beta * p * (1.0 - p) / lambda;
}

inline double q_threshold(const ModelParams& m, int quad_nodes = kDefaultQuadNodes) {
    return q_threshold(m.p, m.lambda, quad_nodes);
}

struct PhaseRow {
    double p;
    double lambda_sp;
    double lambda_ks;
};

// One row per p: the spinodal curve against the constant Kesten-Stigum
// line lambda = 1.
inline std::vector<PhaseRow> phase_diagram(const std::vector<double>& p_grid, double tol = 1e-10,
                                           int quad_nodes = kDefaultQuadNodes) {
    std::vector<PhaseRow> rows;
    rows.reserve(p_grid.size());
    for (double p : p_grid) rows.push_back({p, spinodal(p, tol, quad_nodes), 1.0});
    return rows;
}

} // namespace sbm::de
