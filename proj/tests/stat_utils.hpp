// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace fluor::testing {

/// Chi-square critical value via the Wilson-Hilferty cube approximation.
inline double chi_square_critical(int dof, double z_alpha) {
    double k = static_cast<double>(dof);
    double term = 1.0 - 2.0 / (9.0 * k) + z_alpha * std::sqrt(2.0 / (9.0 * k));
    return k * term * term * term;
}

/// z for significance 0.001 (one-sided).
inline constexpr double kZ999 = 3.090232;

struct ChiSquareResult {
    double statistic = 0.0;
    double critical = 0.0;
    int dof = 0;
    bool pass = false;
};

/// Pearson chi-square of observed counts against expected counts, pooling
/// bins with fewer than 5 expected samples into their neighbor.
inline ChiSquareResult chi_square_test(const std::vector<double>& observed,
                                       const std::vector<double>& expected,
                                       double z_alpha = kZ999) {
    double stat = 0.0;
    int used = 0;
    double pool_obs = 0.0, pool_exp = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        pool_obs += observed[i];
        pool_exp += expected[i];
        if (pool_exp >= 5.0) {
            double d = pool_obs - pool_exp;
            stat += d * d / pool_exp;
            ++used;
            pool_obs = pool_exp = 0.0;
        }
    }
    if (pool_exp > 0.0) {
        double d = pool_obs - pool_exp;
        stat += d * d / pool_exp;
        ++used;
    }
    ChiSquareResult r;
    r.statistic = stat;
    r.dof = std::max(1, used - 1);
    r.critical = chi_square_critical(r.dof, z_alpha);
    r.pass = stat < r.critical;
    return r;
}

/// Kolmogorov-Smirnov distance between sorted samples and an analytic CDF.
inline double ks_distance(std::vector<double> samples,
                          const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    double d = 0.0;
    double n = static_cast<double>(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double c = cdf(samples[i]);
        d = std::max(d, std::abs(c - static_cast<double>(i) / n));
        d = std::max(d, std::abs(c - static_cast<double>(i + 1) / n));
    }
    return d;
}

/// Composite Simpson rule, n even.
template <typename F>
double simpson(double a, double b, int n, F&& f) {
    double h = (b - a) / n;
    double sum = f(a) + f(b);
    for (int i = 1; i < n; ++i) sum += f(a + h * i) * (i % 2 == 1 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

struct RunningStats {
    long n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }
    double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
    double stderr_mean() const {
        return n > 1 ? std::sqrt(variance() / static_cast<double>(n)) : 0.0;
    }
};

} // namespace fluor::testing
