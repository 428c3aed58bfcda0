// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The trendlet Authors

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "oracles.hpp"
#include "trendlet/kmeans.hpp"

using namespace trendlet;

namespace {

Matrix random_points(Rng& rng, std::size_t n, std::size_t p) {
    Matrix m(n, p);
    for (double& v : m.data()) v = rng.normal();
    return m;
}

// Checks the three ClusterModel invariants.
void check_model(const Matrix& pts, const ClusterModel& model) {
    const std::size_t k = model.k;
    std::vector<std::size_t> count(k, 0);
    Matrix sums(k, pts.cols());
    for (std::size_t i = 0; i < pts.rows(); ++i) {
        const Label l = model.labels[i];
        REQUIRE(l < k);
        ++count[l];
        for (std::size_t j = 0; j < pts.cols(); ++j) sums(l, j) += pts(i, j);
        const double own = squared_distance(pts.row(i), model.centroids.row(l));
        for (std::size_t c = 0; c < k; ++c) {
            CHECK(own <= squared_distance(pts.row(i), model.centroids.row(c)) + 1e-9);
        }
    }
    double inertia = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
        REQUIRE(count[c] > 0);
        for (std::size_t j = 0; j < pts.cols(); ++j) {
            CHECK(std::abs(sums(c, j) / count[c] - model.centroids(c, j)) <= 1e-9);
        }
    }
    for (std::size_t i = 0; i < pts.rows(); ++i) {
        inertia += squared_distance(pts.row(i), model.centroids.row(model.labels[i]));
    }
    CHECK(std::abs(inertia - model.inertia) <= 1e-9);
}

template <typename F>
ErrorKind kind_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected trendlet::Error");
    return ErrorKind::IoError;
}

}  // namespace

TEST_CASE("four-point example reaches the exhaustive optimum", "[kmeans]") {
    const Matrix pts = Matrix::from_rows({{0, 0}, {0, 1}, {10, 0}, {10, 1}});
    const double optimum = oracle::exhaustive_kmeans_optimum(pts, 2);
    CHECK(optimum == 1.0);
    const auto model = kmeans_fit(pts, {.k = 2, .seed = 1});
    CHECK(model.inertia == optimum);
    std::vector<std::vector<double>> cents;
    for (std::size_t c = 0; c < 2; ++c) cents.push_back({model.centroids(c, 0), model.centroids(c, 1)});
    std::sort(cents.begin(), cents.end());
    CHECK(cents == std::vector<std::vector<double>>{{0, 0.5}, {10, 0.5}});
    check_model(pts, model);
}

TEST_CASE("k = n puts every point in its own cluster", "[kmeans]") {
    Rng rng(3);
    const Matrix pts = random_points(rng, 6, 3);
    const auto model = kmeans_fit(pts, {.k = 6, .seed = 9});
    CHECK(model.inertia == 0.0);
    CHECK(std::set<Label>(model.labels.begin(), model.labels.end()).size() == 6);
}

TEST_CASE("small instances match exhaustive search", "[kmeans][oracle]") {
    Rng rng(44);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 4 + rng.below(5);
        const std::size_t k = 2 + rng.below(2);
        const Matrix pts = random_points(rng, n, 2);
        const auto model = kmeans_fit(pts, {.k = k, .seed = static_cast<std::uint64_t>(trial), .n_restarts = 20});
        const double optimum = oracle::exhaustive_kmeans_optimum(pts, k);
        CHECK(model.inertia >= optimum - 1e-12);
        // Lloyd is a local method; with 20 restarts on <= 8 points it finds the optimum
        CHECK(model.inertia == Catch::Approx(optimum).epsilon(1e-9));
    }
}

TEST_CASE("model invariants and monotone inertia on random data", "[kmeans][property]") {
    Rng rng(1234);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 5 + rng.below(60);
        const std::size_t p = 1 + rng.below(6);
        const std::size_t k = 2 + rng.below(std::min<std::size_t>(n - 1, 6));
        const Matrix pts = random_points(rng, n, p);
        const auto model = kmeans_fit(pts, {.k = k, .seed = rng.next_u64(), .n_restarts = 3});
        check_model(pts, model);
        const auto& h = model.inertia_history;
        REQUIRE(h.size() >= 2);
        for (std::size_t i = 1; i < h.size(); ++i) CHECK(h[i] <= h[i - 1] * (1 + 1e-12) + 1e-12);
        CHECK(model.inertia <= h.front() + 1e-12);
    }
}

TEST_CASE("kmeans_fit errors", "[kmeans]") {
    const Matrix pts = Matrix::from_rows({{0}, {1}, {2}});
    CHECK(kind_of([&] { kmeans_fit(pts, {.k = 1}); }) == ErrorKind::InvalidInput);
    CHECK(kind_of([&] { kmeans_fit(pts, {.k = 4}); }) == ErrorKind::InvalidInput);
    const Matrix nan_pts = Matrix::from_rows({{0}, {std::numeric_limits<double>::infinity()}, {2}});
    CHECK(kind_of([&] { kmeans_fit(nan_pts, {.k = 2}); }) == ErrorKind::InvalidInput);
    const Matrix dup = Matrix::from_rows({{1, 1}, {1, 1}, {1, 1}, {2, 2}});
    CHECK(kind_of([&] { kmeans_fit(dup, {.k = 3}); }) == ErrorKind::Degenerate);
    CHECK_NOTHROW(kmeans_fit(dup, {.k = 2}));
}

TEST_CASE("kmeans_fit is deterministic for a fixed seed", "[kmeans]") {
    Rng rng(5);
    const Matrix pts = random_points(rng, 40, 4);
    const auto a = kmeans_fit(pts, {.k = 3, .seed = 77});
    const auto b = kmeans_fit(pts, {.k = 3, .seed = 77});
    CHECK(a.labels == b.labels);
    CHECK(a.centroids == b.centroids);
    CHECK(a.inertia == b.inertia);
}

TEST_CASE("row permutation permutes labels and keeps inertia", "[kmeans][property]") {
    Rng rng(19);
    Matrix pts(45, 3);
    for (std::size_t i = 0; i < 45; ++i) {
        for (std::size_t j = 0; j < 3; ++j) pts(i, j) = rng.normal() * 0.3 + (j == i % 3 ? 10.0 : 0.0);
    }
    std::vector<std::size_t> perm(45);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    Matrix shuffled(45, 3);
    for (std::size_t i = 0; i < 45; ++i) {
        std::copy(pts.row(perm[i]).begin(), pts.row(perm[i]).end(), shuffled.row(i).begin());
    }
    const auto a = kmeans_fit(pts, {.k = 3, .seed = 1});
    const auto b = kmeans_fit(shuffled, {.k = 3, .seed = 2});
    CHECK(std::abs(a.inertia - b.inertia) <= 1e-9);
    std::vector<Label> mapped(45);
    for (std::size_t i = 0; i < 45; ++i) mapped[perm[i]] = b.labels[i];
    CHECK(adjusted_rand_index(a.labels, mapped) == 1.0);
}

TEST_CASE("empty clusters are refilled", "[kmeans]") {
    const Matrix pts = Matrix::from_rows({{0}, {1}, {2}, {10}});
    Matrix centroids = Matrix::from_rows({{0}, {100}, {200}});
    std::vector<Label> labels{0, 0, 0, 0};
    detail::fill_empty_clusters(pts, centroids, labels);
    std::set<Label> used(labels.begin(), labels.end());
    CHECK(used.size() == 3);
    CHECK(labels[3] != 0);  // the farthest point moves first
}

TEST_CASE("kmeans++ seeding", "[kmeans]") {
    SECTION("distinct data points") {
        Rng rng(8);
        const Matrix pts = random_points(rng, 30, 2);
        for (int t = 0; t < 50; ++t) {
            const auto idx = kmeanspp_seed(pts, 5, rng);
            CHECK(std::set<std::size_t>(idx.begin(), idx.end()).size() == 5);
        }
    }
    SECTION("k = n chooses every point once") {
        Rng rng(9);
        const Matrix pts = random_points(rng, 7, 2);
        auto idx = kmeanspp_seed(pts, 7, rng);
        std::sort(idx.begin(), idx.end());
        std::vector<std::size_t> all(7);
        std::iota(all.begin(), all.end(), 0);
        CHECK(idx == all);
    }
    SECTION("equidistant candidates are uniform") {
        const Matrix pts = Matrix::from_rows({{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}});
        Rng rng(10);
        std::vector<std::size_t> counts(5, 0);
        const std::vector<std::size_t> chosen{0};
        const int draws = 100000;
        for (int i = 0; i < draws; ++i) ++counts[kmeanspp_next(pts, chosen, rng)];
        CHECK(counts[0] == 0);
        for (std::size_t i = 1; i < 5; ++i) CHECK(std::abs(counts[i] / double(draws) - 0.25) < 0.01);
    }
    SECTION("squared-distance weighting") {
        const Matrix pts = Matrix::from_rows({{0}, {3}, {-1}});
        Rng rng(11);
        std::vector<std::size_t> counts(3, 0);
        const std::vector<std::size_t> chosen{0};
        const int draws = 100000;
        for (int i = 0; i < draws; ++i) ++counts[kmeanspp_next(pts, chosen, rng)];
        CHECK(std::abs(counts[1] / double(draws) - 0.9) < 0.01);
        CHECK(std::abs(counts[2] / double(draws) - 0.1) < 0.01);
    }
}

TEST_CASE("adjusted Rand index", "[kmeans]") {
    const std::vector<Label> a{0, 0, 1, 1, 2, 2};
    const std::vector<Label> renamed{2, 2, 0, 0, 1, 1};
    CHECK(adjusted_rand_index(a, a) == 1.0);
    CHECK(adjusted_rand_index(a, renamed) == 1.0);
    const std::vector<Label> x{0, 0, 1, 1}, y{0, 1, 0, 1};
    CHECK(oracle::pair_count_ari(x, y) == Catch::Approx(-0.5));
    CHECK(adjusted_rand_index(x, y) == Catch::Approx(-0.5).margin(1e-15));
    const std::vector<Label> shorter{0, 1};
    CHECK(kind_of([&] { adjusted_rand_index(a, shorter); }) == ErrorKind::InvalidInput);
}

TEST_CASE("ARI agrees with pair enumeration", "[kmeans][oracle]") {
    Rng rng(123);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + rng.below(40);
        std::vector<Label> a(n), b(n);
        const std::size_t ka = 1 + rng.below(5), kb = 1 + rng.below(5);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = rng.below(ka);
            b[i] = rng.below(kb);
        }
        CHECK(adjusted_rand_index(a, b) == Catch::Approx(oracle::pair_count_ari(a, b)).margin(1e-12));
    }
}
