// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The trendlet Authors

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "trendlet/error.hpp"
#include "trendlet/matrix.hpp"
#include "trendlet/rng.hpp"

namespace trendlet {

using Label = std::size_t;

struct KMeansOptions {
    std::size_t k = 3;
    std::uint64_t seed = 42;
    std::size_t n_restarts = 10;
    std::size_t max_iter = 300;
    double tol = 1e-4;  // max centroid displacement
};

/// Result of kmeans_fit: the lowest-inertia restart.
struct ClusterModel {
    std::size_t k = 0;
    Matrix centroids;  // k x p
    std::vector<Label> labels;
    double inertia = 0.0;
    std::uint64_t seed = 0;
    std::size_t n_iter = 0;
    std::size_t n_restarts = 0;
    std::size_t best_restart = 0;
    /// Inertia after seeding, then after every Lloyd iteration of the best restart.
    std::vector<double> inertia_history;
};

namespace detail {

/// Index drawn with probability weights[i] / sum(weights). Zero weights are
/// never selected.
inline std::size_t sample_proportional(std::span<const double> weights, Rng& rng) {
    double total = 0.0;
    for (double w : weights) total += w;
    const double target = rng.uniform() * total;
    double cumulative = 0.0;
    std::size_t last_positive = weights.size();
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] <= 0.0) continue;
        cumulative += weights[i];
        last_positive = i;
        if (cumulative > target) return i;
    }
    return last_positive;  // rounding left target at the very top
}

inline std::size_t nearest_centroid(std::span<const double> point, const Matrix& centroids,
                                    double* distance = nullptr) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centroids.rows(); ++c) {
        const double d = squared_distance(point, centroids.row(c));
        if (d < best_d) {  // strict: lowest index wins ties
            best_d = d;
            best = c;
        }
    }
    if (distance) *distance = best_d;
    return best;
}

inline std::size_t count_distinct_rows(const Matrix& points) {
    std::vector<std::size_t> order(points.rows());
    std::iota(order.begin(), order.end(), 0);
    const auto less = [&](std::size_t a, std::size_t b) {
        const auto ra = points.row(a);
        const auto rb = points.row(b);
        return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
    };
    std::sort(order.begin(), order.end(), less);
    std::size_t distinct = order.empty() ? 0 : 1;
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (less(order[i - 1], order[i])) ++distinct;
    }
    return distinct;
}

inline void validate_points(const Matrix& points, std::size_t k) {
    if (points.rows() == 0 || points.cols() == 0) fail(ErrorKind::InvalidInput, "empty data");
    if (k < 2 || k > points.rows()) {
        fail(ErrorKind::InvalidInput, "k=" + std::to_string(k) + " outside [2, " +
                                          std::to_string(points.rows()) + "]");
    }
    for (double v : points.data()) {
        if (!std::isfinite(v)) fail(ErrorKind::InvalidInput, "non-finite feature value");
    }
    const std::size_t distinct = count_distinct_rows(points);
    if (distinct < k) {
        fail(ErrorKind::Degenerate, "only " + std::to_string(distinct) +
                                        " distinct points for k=" + std::to_string(k));
    }
}

}  // namespace detail

/// Next k-means++ center given those already chosen: index drawn with
/// probability proportional to the squared distance to the nearest chosen center.
inline std::size_t kmeanspp_next(const Matrix& points, std::span<const std::size_t> chosen,
                                 Rng& rng) {
    std::vector<double> d2(points.rows(), std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < points.rows(); ++i) {
        for (std::size_t c : chosen) d2[i] = std::min(d2[i], squared_distance(points.row(i), points.row(c)));
    }
    return detail::sample_proportional(d2, rng);
}

/// k-means++ seeding: indices of k distinct data points.
inline std::vector<std::size_t> kmeanspp_seed(const Matrix& points, std::size_t k, Rng& rng) {
    detail::validate_points(points, k);
    const std::size_t n = points.rows();
    std::vector<std::size_t> chosen;
    chosen.reserve(k);
    chosen.push_back(static_cast<std::size_t>(rng.below(n)));
    std::vector<double> d2(n);
    for (std::size_t i = 0; i < n; ++i) d2[i] = squared_distance(points.row(i), points.row(chosen[0]));
    while (chosen.size() < k) {
        const std::size_t next = detail::sample_proportional(d2, rng);
        chosen.push_back(next);
        for (std::size_t i = 0; i < n; ++i) {
            d2[i] = std::min(d2[i], squared_distance(points.row(i), points.row(next)));
        }
    }
    return chosen;
}

/// Within-cluster sum of squared distances for the given assignment.
inline double inertia_of(const Matrix& points, const Matrix& centroids,
                         std::span<const Label> labels) {
    double s = 0.0;
    for (std::size_t i = 0; i < points.rows(); ++i) {
        s += squared_distance(points.row(i), centroids.row(labels[i]));
    }
    return s;
}

namespace detail {

struct LloydRun {
    Matrix centroids;
    std::vector<Label> labels;
    double inertia = 0.0;
    std::size_t n_iter = 0;
    std::vector<double> history;
};

inline bool assign(const Matrix& points, const Matrix& centroids, std::vector<Label>& labels) {
    bool changed = false;
    for (std::size_t i = 0; i < points.rows(); ++i) {
        const Label l = nearest_centroid(points.row(i), centroids);
        if (l != labels[i]) {
            labels[i] = l;
            changed = true;
        }
    }
    return changed;
}

// Empty clusters take the point farthest from its own centroid, drawn from
// clusters that keep at least one member.
inline void fill_empty_clusters(const Matrix& points, Matrix& centroids,
                                std::vector<Label>& labels) {
    const std::size_t k = centroids.rows();
    while (true) {
        std::vector<std::size_t> sizes(k, 0);
        for (Label l : labels) ++sizes[l];
        const auto empty = std::find(sizes.begin(), sizes.end(), std::size_t{0});
        if (empty == sizes.end()) return;
        std::size_t far = points.rows();
        double far_d = -1.0;
        for (std::size_t i = 0; i < points.rows(); ++i) {
            if (sizes[labels[i]] < 2) continue;
            const double d = squared_distance(points.row(i), centroids.row(labels[i]));
            if (d > far_d) {
                far_d = d;
                far = i;
            }
        }
        const auto target = static_cast<Label>(empty - sizes.begin());
        std::copy(points.row(far).begin(), points.row(far).end(), centroids.row(target).begin());
        labels[far] = target;
    }
}

inline double update_means(const Matrix& points, const std::vector<Label>& labels,
                           Matrix& centroids) {
    const std::size_t k = centroids.rows();
    const std::size_t p = points.cols();
    Matrix sums(k, p);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < points.rows(); ++i) {
        const auto row = points.row(i);
        auto acc = sums.row(labels[i]);
        for (std::size_t j = 0; j < p; ++j) acc[j] += row[j];
        ++counts[labels[i]];
    }
    double max_shift = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
        auto mean = sums.row(c);
        for (std::size_t j = 0; j < p; ++j) mean[j] /= static_cast<double>(counts[c]);
        max_shift = std::max(max_shift, std::sqrt(squared_distance(mean, centroids.row(c))));
        std::copy(mean.begin(), mean.end(), centroids.row(c).begin());
    }
    return max_shift;
}

inline LloydRun lloyd(const Matrix& points, std::size_t k, Rng& rng, std::size_t max_iter,
                      double tol) {
    LloydRun run;
    const auto seeds = kmeanspp_seed(points, k, rng);
    run.centroids = Matrix(k, points.cols());
    for (std::size_t c = 0; c < k; ++c) {
        std::copy(points.row(seeds[c]).begin(), points.row(seeds[c]).end(),
                  run.centroids.row(c).begin());
    }
    run.labels.assign(points.rows(), 0);
    assign(points, run.centroids, run.labels);
    run.history.push_back(inertia_of(points, run.centroids, run.labels));

    for (std::size_t iter = 1; iter <= max_iter; ++iter) {
        fill_empty_clusters(points, run.centroids, run.labels);
        const double shift = update_means(points, run.labels, run.centroids);
        const bool changed = assign(points, run.centroids, run.labels);
        run.history.push_back(inertia_of(points, run.centroids, run.labels));
        run.n_iter = iter;
        // A small shift alone is not enough: labels must also agree with
        // the final centroids so that every centroid is its members' mean.
        if (shift <= tol && !changed) break;
    }
    fill_empty_clusters(points, run.centroids, run.labels);
    update_means(points, run.labels, run.centroids);
    run.inertia = inertia_of(points, run.centroids, run.labels);
    return run;
}

}  // namespace detail

/// Lloyd's algorithm with k-means++ seeding, best of `n_restarts` runs.
/// Restart r draws from derive_seed(seed, r); equal inertia keeps the
/// lower restart index.
inline ClusterModel kmeans_fit(const Matrix& points, const KMeansOptions& opts) {
    detail::validate_points(points, opts.k);
    if (opts.n_restarts == 0) fail(ErrorKind::InvalidInput, "n_restarts must be >= 1");
    if (opts.max_iter == 0) fail(ErrorKind::InvalidInput, "max_iter must be >= 1");
    if (!(opts.tol >= 0.0)) fail(ErrorKind::InvalidInput, "tol must be >= 0");

    ClusterModel best;
    bool have_best = false;
    for (std::size_t r = 0; r < opts.n_restarts; ++r) {
        Rng rng(derive_seed(opts.seed, r));
        auto run = detail::lloyd(points, opts.k, rng, opts.max_iter, opts.tol);
        if (!have_best || run.inertia < best.inertia) {
            best.centroids = std::move(run.centroids);
            best.labels = std::move(run.labels);
            best.inertia = run.inertia;
            best.n_iter = run.n_iter;
            best.inertia_history = std::move(run.history);
            best.best_restart = r;
            have_best = true;
        }
    }
    best.k = opts.k;
    best.seed = opts.seed;
    best.n_restarts = opts.n_restarts;
    return best;
}

/// Adjusted Rand index from the pair-counting contingency table.
inline double adjusted_rand_index(std::span<const Label> a, std::span<const Label> b) {
    if (a.size() != b.size()) {
        fail(ErrorKind::InvalidInput, "label sequences differ in length");
    }
    const auto pairs = [](double x) { return x * (x - 1.0) / 2.0; };
    std::map<std::pair<Label, Label>, double> joint;
    std::map<Label, double> rows;
    std::map<Label, double> cols;
    for (std::size_t i = 0; i < a.size(); ++i) {
        joint[{a[i], b[i]}] += 1.0;
        rows[a[i]] += 1.0;
        cols[b[i]] += 1.0;
    }
    double index = 0.0;
    for (const auto& [key, count] : joint) index += pairs(count);
    double sum_a = 0.0;
    double sum_b = 0.0;
    for (const auto& [key, count] : rows) sum_a += pairs(count);
    for (const auto& [key, count] : cols) sum_b += pairs(count);
    const double total = pairs(static_cast<double>(a.size()));
    const double expected = total > 0.0 ? sum_a * sum_b / total : 0.0;
    const double max_index = 0.5 * (sum_a + sum_b);
    // both all-singletons or both one cluster
    if (max_index == expected) return 1.0;
    return (index - expected) / (max_index - expected);
}

}  // namespace trendlet
