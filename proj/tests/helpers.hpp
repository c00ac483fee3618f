#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "sbm/random.hpp"
#include "sbm/stats.hpp"

namespace testutil {

// Monte Carlo oracle for the Gaussian density-evolution map: straight
// sample average over standard-normal draws, independent of the
// quadrature path it checks.
struct McValue {
    double value;
    double stderr;
};

inline McValue g_map_mc(double mu, double p, double lambda, std::size_t draws, std::uint64_t seed) {
    auto eng = sbm::rng::make_engine(seed, sbm::rng::kOracleStream);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double sq = std::sqrt(mu), half = mu / 2.0, q1 = 1.0 - p;
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t i = 0; i < draws; ++i) {
        const double z = gauss(eng);
        const double v = 1.0 / (p + q1 * std::exp(sq * z - half)) - 1.0;
        sum += v;
        sum2 += v * v;
    }
    const double n = static_cast<double>(draws);
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    const double scale = lambda / (q1 * q1);
    return {scale * mean, scale * std::sqrt(var / n)};
}

// Regularized upper incomplete gamma Q(a, x) (series + continued
// fraction); chi-square p-value = Q(df/2, chi2/2).
inline double gammq(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gammq domain");
    const double gln = std::lgamma(a);
    if (x < a + 1.0) {
        double ap = a, del = 1.0 / a, sum = del;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-14) break;
        }
        return 1.0 - sum * std::exp(-x + a * std::log(x) - gln);
    }
    double b = x + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-30) d = 1e-30;
        c = b + an / c;
        if (std::abs(c) < 1e-30) c = 1e-30;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-14) break;
    }
    return std::exp(-x + a * std::log(x) - gln) * h;
}

// Chi-square p-value of observed counts against Poisson(mean) with a
// pooled upper tail; bins with expected count below 5 are merged upward.
inline double poisson_chi_square_pvalue(const std::vector<std::uint64_t>& degree_counts, double mean) {
    std::uint64_t n = 0;
    for (auto c : degree_counts) n += c;
    if (n == 0) throw std::invalid_argument("no samples");
    std::vector<double> expected;
    std::vector<double> observed;
    double pmf = std::exp(-mean);
    double cum = 0.0;
    for (std::size_t k = 0;; ++k) {
        const double e = static_cast<double>(n) * pmf;
        const double o = k < degree_counts.size() ? static_cast<double>(degree_counts[k]) : 0.0;
        if (e < 5.0 && !expected.empty() && k > mean) {
            // pool the remaining tail into the last bin
            double otail = o;
            for (std::size_t j = k + 1; j < degree_counts.size(); ++j)
                otail += static_cast<double>(degree_counts[j]);
            expected.back() += static_cast<double>(n) * (1.0 - cum);
            observed.back() += otail;
            break;
        }
        expected.push_back(e);
        observed.push_back(o);
        cum += pmf;
        pmf *= mean / static_cast<double>(k + 1);
    }
    double chi2 = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        const double diff = observed[i] - expected[i];
        chi2 += diff * diff / expected[i];
    }
    const double df = static_cast<double>(expected.size()) - 1.0;
    return gammq(df / 2.0, chi2 / 2.0);
}

// One-sample Kolmogorov-Smirnov distance against a normal CDF.
inline double ks_distance_normal(std::vector<double> xs, double mean, double var) {
    std::sort(xs.begin(), xs.end());
    const double sd = std::sqrt(var);
    double worst = 0.0;
    const double n = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = sbm::stats::normal_cdf((xs[i] - mean) / sd);
        worst = std::max(worst, std::abs(static_cast<double>(i + 1) / n - f));
        worst = std::max(worst, std::abs(static_cast<double>(i) / n - f));
    }
    return worst;
}

} // namespace testutil
