// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The trendlet Authors

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "trendlet/dwt.hpp"
#include "trendlet/filterbank.hpp"

using namespace trendlet;

namespace {

double sum_of(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return s;
}

}  // namespace

TEST_CASE("registry holds the fifteen wavelets", "[filterbank]") {
    const auto names = filter_names();
    REQUIRE(names.size() == 15);
    for (const char* n : {"haar", "db1", "bior1.1", "rbio1.1", "db2", "sym2", "bior3.1", "rbio3.1",
                          "bior1.3", "db3", "sym3", "coif1", "bior2.2", "rbio1.3", "rbio2.2"}) {
        CHECK(std::find(names.begin(), names.end(), n) != names.end());
        CHECK(get_filter(n).name == n);
    }
}

TEST_CASE("get_filter is case-insensitive and rejects unknown names", "[filterbank]") {
    CHECK(get_filter("SYM2").name == "sym2");
    CHECK(get_filter("Haar").name == "haar");
    try {
        get_filter("foo");
        FAIL("expected UnknownWavelet");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnknownWavelet);
    }
}

TEST_CASE("haar taps are 1/sqrt2 with a zero-sum high-pass", "[filterbank]") {
    const auto& h = get_filter("haar");
    REQUIRE(h.filter_length() == 2);
    CHECK(h.dec_lo[0] == Catch::Approx(0.70710678118654752).epsilon(1e-15));
    CHECK(h.dec_lo[1] == Catch::Approx(0.70710678118654752).epsilon(1e-15));
    CHECK(std::abs(sum_of(h.dec_lo) - std::numbers::sqrt2) < 1e-15);
    CHECK(std::abs(sum_of(h.dec_hi)) < 1e-15);
    for (const char* twin : {"db1", "bior1.1", "rbio1.1"}) {
        const auto& t = get_filter(twin);
        CHECK(t.dec_lo == h.dec_lo);
        CHECK(t.dec_hi == h.dec_hi);
        CHECK(t.rec_lo == h.rec_lo);
        CHECK(t.rec_hi == h.rec_hi);
    }
}

TEST_CASE("db2 matches the Daubechies closed form", "[filterbank]") {
    const double s3 = std::sqrt(3.0);
    const double d = 4.0 * std::numbers::sqrt2;
    const std::vector<double> closed{(1 + s3) / d, (3 + s3) / d, (3 - s3) / d, (1 - s3) / d};
    const auto& w = get_filter("db2");
    // synthesis low-pass is the scaling sequence; analysis is its reversal
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(w.rec_lo[i] - closed[i]) < 1e-15);
        CHECK(std::abs(w.dec_lo[3 - i] - closed[i]) < 1e-15);
    }
    double sq = 0, m0 = 0, m1 = 0;
    for (std::size_t n = 0; n < 4; ++n) {
        sq += w.dec_lo[n] * w.dec_lo[n];
        m0 += w.dec_hi[n];
        m1 += static_cast<double>(n) * w.dec_hi[n];
    }
    CHECK(std::abs(sq - 1.0) < 1e-15);
    CHECK(std::abs(m0) < 1e-15);
    CHECK(std::abs(m1) < 1e-14);  // db2 has two vanishing moments
}

TEST_CASE("sym2 coincides with db2 and sym3 with db3", "[filterbank]") {
    const auto sorted = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    CHECK(sorted(get_filter("sym2").dec_lo) == sorted(get_filter("db2").dec_lo));
    CHECK(sorted(get_filter("sym3").dec_lo) == sorted(get_filter("db3").dec_lo));
}

TEST_CASE("orthogonal filters: unit energy, DC gains and mirror relation", "[filterbank]") {
    for (const auto& w : all_filters()) {
        if (w.kind != WaveletFamilyKind::Orthogonal) continue;
        INFO(w.name);
        const std::size_t m = w.filter_length();
        double sq = 0;
        for (double c : w.dec_lo) sq += c * c;
        CHECK(std::abs(sq - 1.0) <= 1e-10);
        CHECK(std::abs(sum_of(w.dec_lo) - std::numbers::sqrt2) <= 1e-10);
        CHECK(std::abs(sum_of(w.dec_hi)) <= 1e-10);
        // dec_hi[n] = ±(-1)^n dec_lo[M-1-n] with one global sign
        const double sign = w.dec_hi[0] / w.dec_lo[m - 1];
        CHECK(std::abs(std::abs(sign) - 1.0) < 1e-12);
        for (std::size_t n = 0; n < m; ++n) {
            const double alt = n % 2 == 0 ? 1.0 : -1.0;
            CHECK(std::abs(w.dec_hi[n] - sign * alt * w.dec_lo[m - 1 - n]) < 1e-12);
        }
    }
}

TEST_CASE("every filter has equal-length quadruples and valid DC gains", "[filterbank]") {
    for (const auto& w : all_filters()) {
        INFO(w.name);
        const std::size_t m = w.filter_length();
        CHECK((m == 2 || m == 4 || m == 6));
        CHECK(w.dec_hi.size() == m);
        CHECK(w.rec_lo.size() == m);
        CHECK(w.rec_hi.size() == m);
        CHECK(std::abs(sum_of(w.dec_lo) - std::numbers::sqrt2) <= 1e-10);
        CHECK(std::abs(sum_of(w.dec_hi)) <= 1e-10);
    }
}

TEST_CASE("one-level perfect reconstruction on random signals", "[filterbank][property]") {
    Rng rng(2024);
    for (const auto& w : all_filters()) {
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t n = 2 + rng.below(63);
            const auto x = oracle::random_signal(rng, n);
            const auto [lo, hi] = analysis_step(x, w);
            const auto back = synthesis_step(lo, hi, w, n);
            worst = std::max(worst, oracle::max_abs_diff(back, x));
        }
        INFO(w.name);
        CHECK(worst <= 1e-8);
    }
}

TEST_CASE("get_filter is pure", "[filterbank]") {
    const WaveletFilter a = get_filter("coif1");
    const WaveletFilter b = get_filter("coif1");
    CHECK(a.dec_lo == b.dec_lo);
    CHECK(a.rec_hi == b.rec_hi);
    CHECK(&get_filter("coif1") == &get_filter("COIF1"));
}

TEST_CASE("list_filters reports selected counts at N = 846", "[filterbank]") {
    const auto table = list_filters();
    REQUIRE(table.size() == 15);
    CHECK(std::is_sorted(table.begin(), table.end(), [](const auto& a, const auto& b) {
        return a.filter_length < b.filter_length;
    }));
    // length-2 value from the recurrence by hand: 846 -> 423 -> 212 -> 106 ->
    // 53 -> 27 -> 14 -> 7 -> 4 -> 2 gives c0 = d0 = 2, d1 = 4
    std::size_t len = 846;
    std::vector<std::size_t> chain;
    for (int i = 0; i < 9; ++i) {
        len = (len + 1) / 2;
        chain.push_back(len);
    }
    const std::size_t expected_len2 = chain[8] + chain[8] + chain[7];
    CHECK(expected_len2 == 8);
    std::size_t n2 = 0, n4 = 0, n6 = 0;
    for (const auto& row : table) {
        INFO(row.name);
        if (row.filter_length == 2) {
            CHECK(row.selected_count == expected_len2);
            ++n2;
        } else if (row.filter_length == 4) {
            CHECK(row.selected_count == 21);
            ++n4;
        } else {
            CHECK(row.filter_length == 6);
            CHECK(row.selected_count == 40);
            ++n6;
        }
    }
    CHECK(n2 == 4);
    CHECK(n4 == 4);
    CHECK(n6 == 7);
}
