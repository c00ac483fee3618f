#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sbm {

// Parameters of the two-community block model with uninformative degrees.
// Primary coordinates are (p, d, lambda); the affinity coefficients
// (a, b, c) and the prior log-ratio h are derived and kept in sync so the
// balance constraint p*a + (1-p)*b = p*b + (1-p)*c = 1 holds by
// construction.
struct ModelParams {
    double p;       // fraction of community-1 vertices, in (0, 1/2]
    double d;       // mean degree
    double lambda;  // signal-to-noise ratio d*(1-b)^2
    double epsilon; // 1 - b = sqrt(lambda/d)
    double a;       // same-community affinity, community 1
    double b;       // cross-community affinity
    double c;       // same-community affinity, community 2
    double h;       // log(p / (1-p))
};

// Row-stochastic child-label transition matrix
//   R = [ p*a  (1-p)*b ]
//       [ p*b  (1-p)*c ]
struct TransitionMatrix {
    std::array<std::array<double, 2>, 2> rows;

    double operator()(int i, int j) const { return rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
    double row_sum(int i) const { return rows[static_cast<std::size_t>(i)][0] + rows[static_cast<std::size_t>(i)][1]; }

    // Eigenvalues from the 2x2 characteristic polynomial, largest first.
    std::array<double, 2> eigenvalues() const {
        const double tr = rows[0][0] + rows[1][1];
        const double det = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0];
        const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
        return {(tr + disc) / 2.0, (tr - disc) / 2.0};
    }
};

inline void validate_p(double p) {
    if (!(p > 0.0 && p <= 0.5))
        throw std::invalid_argument("p must lie in (0, 1/2], got " + std::to_string(p));
}

// Build ModelParams from the primary (p, d, lambda) coordinates.
inline ModelParams derive_params(double p, double d, double lambda) {
    validate_p(p);
    if (!(d > 0.0)) throw std::invalid_argument("d must be positive");
    if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be nonnegative");
    if (lambda > d) throw std::invalid_argument("lambda must not exceed d (b would be negative)");
    ModelParams m;
    m.p = p;
    m.d = d;
    m.lambda = lambda;
    m.epsilon = std::sqrt(lambda / d);
    m.a = 1.0 + (1.0 - p) / p * m.epsilon;
    m.b = 1.0 - m.epsilon;
    m.c = 1.0 + p / (1.0 - p) * m.epsilon;
    m.h = std::log(p / (1.0 - p));
    return m;
}

// Secondary entry point: validates user-supplied affinities against the
// balance constraint (tolerance 1e-9) and recovers lambda = d*(1-b)^2.
inline ModelParams params_from_abc(double p, double d, double a, double b, double c) {
    validate_p(p);
    if (!(d > 0.0)) throw std::invalid_argument("d must be positive");
    if (a < 0.0 || b < 0.0 || c < 0.0) throw std::invalid_argument("a, b, c must be nonnegative");
    const double bal1 = p * a + (1.0 - p) * b;
    const double bal2 = p * b + (1.0 - p) * c;
    if (std::abs(bal1 - 1.0) > 1e-9 || std::abs(bal2 - 1.0) > 1e-9)
        throw std::invalid_argument("balance constraint violated: p*a+(1-p)*b = " + std::to_string(bal1) +
                                    ", p*b+(1-p)*c = " + std::to_string(bal2) +
                                    " (degrees would be informative)");
    if (b > 1.0) throw std::invalid_argument("b must lie in [0, 1] (epsilon = 1-b would be negative)");
    ModelParams m;
    m.p = p;
    m.d = d;
    m.epsilon = 1.0 - b;
    m.lambda = d * m.epsilon * m.epsilon;
    m.a = a;
    m.b = b;
    m.c = c;
    m.h = std::log(p / (1.0 - p));
    return m;
}

inline TransitionMatrix transition_matrix(const ModelParams& m) {
    TransitionMatrix r;
    r.rows[0] = {m.p * m.a, (1.0 - m.p) * m.b};
    r.rows[1] = {m.p * m.b, (1.0 - m.p) * m.c};
    return r;
}

// Total-variation distance between Poi(mean1) and Poi(mean2) by direct
// summation, truncated once the remaining tail mass of both laws is
// below 1e-12.
inline double poisson_tv(double mean1, double mean2) {
    if (!(mean1 > 0.0) || !(mean2 > 0.0)) throw std::invalid_argument("poisson means must be positive");
    if (mean1 == mean2) return 0.0;
    const double tail = 1e-12;
    double sum = 0.0, cdf1 = 0.0, cdf2 = 0.0;
    for (std::uint64_t k = 0;; ++k) {
        const double kk = static_cast<double>(k);
        const double p1 = std::exp(kk * std::log(mean1) - mean1 - std::lgamma(kk + 1.0));
        const double p2 = std::exp(kk * std::log(mean2) - mean2 - std::lgamma(kk + 1.0));
        sum += std::abs(p1 - p2);
        cdf1 += p1;
        cdf2 += p2;
        if (cdf1 > 1.0 - tail && cdf2 > 1.0 - tail) break;
    }
    return 0.5 * sum;
}

// overlap(T^opt, X) = p(1-p) * P_succ(T^opt)
inline double overlap_from_psucc(double p, double psucc) {
    if (psucc < 0.0 || psucc > 1.0) throw std::invalid_argument("psucc must lie in [0, 1]");
    return p * (1.0 - p) * psucc;
}

} // namespace sbm
