#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

namespace sbm::quad {

// Gauss-Hermite nodes and weights for weight function exp(-t^2).
struct GaussHermite {
    std::vector<double> nodes;   // ascending
    std::vector<double> weights;
};

namespace detail {

// Eigenvalues of a symmetric tridiagonal matrix by the implicit QL
// algorithm (diagonal d, subdiagonal e; both modified in place).
inline void tridiagonal_eigenvalues(std::vector<double>& d, std::vector<double>& e) {
    const std::size_t n = d.size();
    if (n == 0) return;
    e.push_back(0.0);
    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-16 * dd) break;
            }
            if (m != l) {
                if (iter++ == 60) throw std::runtime_error("tridiagonal_eigenvalues: no convergence");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                std::size_t i = m;
                bool underflow = false;
                while (i-- > l) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
}

// Orthonormal Hermite recurrence at z: returns {h_n(z), h_{n-1}(z)}.
inline std::pair<double, double> hermite_pair(int n, double z) {
    constexpr double kPiQuarter = 0.7511255444649425; // pi^(-1/4)
    double p1 = kPiQuarter, p2 = 0.0;
    for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 - std::sqrt(j / (j + 1.0)) * p3;
    }
    return {p1, p2};
}

} // namespace detail

// Nodes are eigenvalues of the Jacobi matrix (off-diagonal sqrt(j/2)),
// polished with two Newton steps on the orthonormal recurrence; weights
// are 2 / h_{n-1}'(node)^2-style from the same recurrence. Weights of the
// extreme nodes underflow in double precision and are set to zero; their
// true magnitude is far below any tolerance used here.
inline GaussHermite gauss_hermite(int n) {
    if (n < 1) throw std::invalid_argument("gauss_hermite: n must be >= 1");
    std::vector<double> d(static_cast<std::size_t>(n), 0.0);
    std::vector<double> e(static_cast<std::size_t>(n) - 1);
    for (int j = 1; j < n; ++j) e[static_cast<std::size_t>(j) - 1] = std::sqrt(j / 2.0);
    detail::tridiagonal_eigenvalues(d, e);

    GaussHermite gh;
    gh.nodes.resize(static_cast<std::size_t>(n));
    gh.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // polish the nonnegative half of the spectrum and mirror it
        double z = d[static_cast<std::size_t>((n + 1) / 2 + i - (n % 2))];
        if (n % 2 == 1 && i == 0) z = 0.0;
        for (int it = 0; it < 3 && z != 0.0; ++it) {
            const auto [p1, p2] = detail::hermite_pair(n, z);
            const double deriv = std::sqrt(2.0 * n) * p2;
            const double step = p1 / deriv;
            if (!std::isfinite(step)) break;
            z -= step;
            if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(z))) break;
        }
        const auto [p1, p2] = detail::hermite_pair(n, z);
        (void)p1;
        const double pp = std::sqrt(2.0 * n) * p2;
        double w = 2.0 / (pp * pp);
        if (!std::isfinite(w)) w = 0.0;
        const auto hi = static_cast<std::size_t>((n + 1) / 2 + i - (n % 2));
        const auto lo_mirror = static_cast<std::size_t>(n - 1) - hi;
        gh.nodes[hi] = z;
        gh.nodes[lo_mirror] = -z;
        gh.weights[hi] = w;
        gh.weights[lo_mirror] = w;
    }
    return gh;
}

// Cached per-thread tables. Sweeps over mu touch a handful of distinct
// sizes because requests are quantized to multiples of 64.
inline const GaussHermite& cached_gauss_hermite(int n) {
    thread_local std::map<int, std::unique_ptr<GaussHermite>> cache;
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, std::make_unique<GaussHermite>(gauss_hermite(n))).first;
    return *it->second;
}

// The integrands in the density-evolution map steepen as mu grows (the
// transition width is ~1/sqrt(mu) while the analyticity strip shrinks as
// pi/sqrt(mu)), so a fixed node count loses accuracy past mu ~ 20. The
// requested count acts as a floor and the effective count scales with mu,
// keeping the result near machine precision for mu up to a few hundred.
inline int effective_nodes(double mu, int requested) {
    const double scaled = 12.0 * mu + 60.0;
    int n = requested;
    if (scaled > n) n = static_cast<int>(scaled);
    return ((n + 63) / 64) * 64 + 1; // odd count keeps a node at the origin
}

// E[g(Z)] for Z ~ N(0,1): sum w_i g(sqrt(2) t_i) / sqrt(pi).
template <typename F>
double normal_expectation(F&& g, const GaussHermite& gh) {
    constexpr double kInvSqrtPi = 0.5641895835477563;
    double acc = 0.0;
    for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
        const double w = gh.weights[i];
        if (w == 0.0) continue;
        acc += w * g(std::sqrt(2.0) * gh.nodes[i]);
    }
    return acc * kInvSqrtPi;
}

} // namespace sbm::quad
