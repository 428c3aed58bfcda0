// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The trendlet Authors

// Reference computations used only by tests. Each one takes a different
// route from the library code it checks.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "trendlet/filterbank.hpp"
#include "trendlet/matrix.hpp"
#include "trendlet/rng.hpp"

namespace trendlet::oracle {

/// One analysis level: pad M-1 zeros on both sides, 'valid' convolution,
/// then keep odd-indexed outputs.
inline std::pair<std::vector<double>, std::vector<double>> conv_downsample(
    const std::vector<double>& x, const WaveletFilter& w) {
    const std::size_t m = w.filter_length();
    std::vector<double> padded(m - 1, 0.0);
    padded.insert(padded.end(), x.begin(), x.end());
    padded.insert(padded.end(), m - 1, 0.0);
    const std::size_t full = padded.size() - m + 1;  // = n + M - 1
    std::vector<double> lo_full(full), hi_full(full);
    for (std::size_t s = 0; s < full; ++s) {
        double a = 0.0, d = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            a += w.dec_lo[j] * padded[s + m - 1 - j];
            d += w.dec_hi[j] * padded[s + m - 1 - j];
        }
        lo_full[s] = a;
        hi_full[s] = d;
    }
    std::vector<double> lo, hi;
    for (std::size_t s = 1; s < full; s += 2) {
        lo.push_back(lo_full[s]);
        hi.push_back(hi_full[s]);
    }
    return {lo, hi};
}

/// ARI from explicit enumeration of all unordered pairs.
inline double pair_count_ari(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    double n11 = 0, n10 = 0, n01 = 0, n00 = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            const bool sa = a[i] == a[j];
            const bool sb = b[i] == b[j];
            if (sa && sb) ++n11;
            else if (sa) ++n10;
            else if (sb) ++n01;
            else ++n00;
        }
    }
    const double denom = (n00 + n01) * (n01 + n11) + (n00 + n10) * (n10 + n11);
    if (denom == 0.0) return 1.0;
    return 2.0 * (n00 * n11 - n01 * n10) / denom;
}

/// Minimum within-cluster sum of squares over every assignment of n points
/// to k non-empty clusters (k^n enumeration; tiny n only).
inline double exhaustive_kmeans_optimum(const Matrix& pts, std::size_t k) {
    const std::size_t n = pts.rows();
    const std::size_t p = pts.cols();
    std::vector<std::size_t> assign(n, 0);
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        std::vector<std::size_t> count(k, 0);
        Matrix sums(k, p);
        for (std::size_t i = 0; i < n; ++i) {
            ++count[assign[i]];
            for (std::size_t j = 0; j < p; ++j) sums(assign[i], j) += pts(i, j);
        }
        bool nonempty = true;
        for (auto c : count) nonempty = nonempty && c > 0;
        if (nonempty) {
            double cost = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < p; ++j) {
                    const double mu = sums(assign[i], j) / static_cast<double>(count[assign[i]]);
                    cost += (pts(i, j) - mu) * (pts(i, j) - mu);
                }
            }
            best = std::min(best, cost);
        }
        std::size_t pos = 0;
        while (pos < n && ++assign[pos] == k) assign[pos++] = 0;
        if (pos == n) break;
    }
    return best;
}

inline std::vector<double> random_signal(Rng& rng, std::size_t n) {
    std::vector<double> x(n);
    for (double& v : x) v = rng.normal();
    return x;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace trendlet::oracle
