// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The trendlet Authors

#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "trendlet/band_lengths.hpp"
#include "trendlet/error.hpp"

namespace trendlet {

enum class WaveletFamilyKind { Orthogonal, Biorthogonal };

/// Analysis/synthesis filter quadruple. Taps follow the convolution
/// convention: analysis convolves with dec_* and keeps odd-indexed samples,
/// synthesis upsamples and convolves with rec_*.
struct WaveletFilter {
    std::string name;
    WaveletFamilyKind kind = WaveletFamilyKind::Orthogonal;
    std::vector<double> dec_lo;
    std::vector<double> dec_hi;
    std::vector<double> rec_lo;
    std::vector<double> rec_hi;

    std::size_t filter_length() const noexcept { return dec_lo.size(); }
};

struct FilterSummary {
    std::string name;
    std::size_t filter_length;
    std::size_t selected_count;  // (c0, d0, d1) size at N = 846
};

inline constexpr std::size_t kReferenceLength = 846;

namespace detail {

inline constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

inline std::vector<double> scaled(std::initializer_list<double> taps, double factor) {
    std::vector<double> out;
    out.reserve(taps.size());
    for (double t : taps) out.push_back(t * factor);
    return out;
}

// Orthogonal filter from its scaling sequence h (= rec_lo). The other three
// follow from time reversal and the alternating-sign mirror.
inline WaveletFilter orthogonal(std::string name, std::vector<double> h) {
    WaveletFilter f;
    f.name = std::move(name);
    f.kind = WaveletFamilyKind::Orthogonal;
    const std::size_t m = h.size();
    f.rec_lo = h;
    f.dec_lo.assign(h.rbegin(), h.rend());
    f.rec_hi.resize(m);
    for (std::size_t n = 0; n < m; ++n) {
        f.rec_hi[n] = (n % 2 == 0 ? 1.0 : -1.0) * h[m - 1 - n];
    }
    f.dec_hi.assign(f.rec_hi.rbegin(), f.rec_hi.rend());
    return f;
}

inline WaveletFilter biorthogonal(std::string name, std::initializer_list<double> dec_lo,
                                  std::initializer_list<double> dec_hi,
                                  std::initializer_list<double> rec_lo,
                                  std::initializer_list<double> rec_hi) {
    WaveletFilter f;
    f.name = std::move(name);
    f.kind = WaveletFamilyKind::Biorthogonal;
    f.dec_lo = scaled(dec_lo, kInvSqrt2);
    f.dec_hi = scaled(dec_hi, kInvSqrt2);
    f.rec_lo = scaled(rec_lo, kInvSqrt2);
    f.rec_hi = scaled(rec_hi, kInvSqrt2);
    return f;
}

inline std::vector<double> haar_taps() { return {kInvSqrt2, kInvSqrt2}; }

// Daubechies closed forms: (1±√3)/(4√2), (3±√3)/(4√2) and the √10 family.
inline std::vector<double> db2_taps() {
    return {0.48296291314453414337, 0.83651630373780790558, 0.22414386804201338103,
            -0.12940952255126038117};
}

inline std::vector<double> db3_taps() {
    return {0.33267055295008261600,  0.80689150931109257649,  0.45987750211849157010,
            -0.13501102001025458870, -0.085441273882026661693, 0.035226291885709536603};
}

// Coiflet-1 closed form with √7.
inline std::vector<double> coif1_taps() {
    return {-0.072732619512526448024, 0.33789766245748176967, 0.85257202021160042045,
            0.38486484686485774725,   -0.072732619512526448024, -0.015655728135791992526};
}

inline std::vector<WaveletFilter> build_registry() {
    std::vector<WaveletFilter> r;
    // filter length 2
    r.push_back(orthogonal("haar", haar_taps()));
    r.push_back(orthogonal("db1", haar_taps()));
    {
        auto b = orthogonal("bior1.1", haar_taps());
        b.kind = WaveletFamilyKind::Biorthogonal;
        r.push_back(b);
        b.name = "rbio1.1";
        r.push_back(b);
    }
    // filter length 4
    r.push_back(biorthogonal("bior3.1", {-0.5, 1.5, 1.5, -0.5}, {-0.25, 0.75, -0.75, 0.25},
                             {0.25, 0.75, 0.75, 0.25}, {-0.5, -1.5, 1.5, 0.5}));
    r.push_back(orthogonal("db2", db2_taps()));
    r.push_back(biorthogonal("rbio3.1", {0.25, 0.75, 0.75, 0.25}, {0.5, 1.5, -1.5, -0.5},
                             {-0.5, 1.5, 1.5, -0.5}, {0.25, -0.75, 0.75, -0.25}));
    r.push_back(orthogonal("sym2", db2_taps()));
    // filter length 6 (biorthogonal pairs zero-padded to a common length)
    r.push_back(biorthogonal("bior1.3", {-0.125, 0.125, 1.0, 1.0, 0.125, -0.125},
                             {0.0, 0.0, -1.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 1.0, 1.0, 0.0, 0.0},
                             {-0.125, -0.125, 1.0, -1.0, 0.125, 0.125}));
    r.push_back(biorthogonal("bior2.2", {0.0, -0.25, 0.5, 1.5, 0.5, -0.25},
                             {0.0, 0.5, -1.0, 0.5, 0.0, 0.0}, {0.0, 0.5, 1.0, 0.5, 0.0, 0.0},
                             {0.0, 0.25, 0.5, -1.5, 0.5, 0.25}));
    r.push_back(orthogonal("coif1", coif1_taps()));
    r.push_back(orthogonal("db3", db3_taps()));
    r.push_back(biorthogonal("rbio1.3", {0.0, 0.0, 1.0, 1.0, 0.0, 0.0},
                             {0.125, 0.125, -1.0, 1.0, -0.125, -0.125},
                             {-0.125, 0.125, 1.0, 1.0, 0.125, -0.125},
                             {0.0, 0.0, 1.0, -1.0, 0.0, 0.0}));
    r.push_back(biorthogonal("rbio2.2", {0.0, 0.0, 0.5, 1.0, 0.5, 0.0},
                             {0.25, 0.5, -1.5, 0.5, 0.25, 0.0},
                             {-0.25, 0.5, 1.5, 0.5, -0.25, 0.0}, {0.0, 0.0, 0.5, -1.0, 0.5, 0.0}));
    r.push_back(orthogonal("sym3", db3_taps()));
    return r;
}

inline double sum(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

inline double sum_squares(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

// Structural checks run once when the registry is first touched.
inline void validate(const WaveletFilter& f) {
    const std::size_t m = f.filter_length();
    const bool same_len = f.dec_hi.size() == m && f.rec_lo.size() == m && f.rec_hi.size() == m;
    if (!same_len || m < 2 || m % 2 != 0) {
        throw std::logic_error("filter " + f.name + ": inconsistent tap counts");
    }
    constexpr double tol = 1e-10;
    if (std::abs(sum(f.dec_lo) - std::numbers::sqrt2) > tol || std::abs(sum(f.dec_hi)) > tol) {
        throw std::logic_error("filter " + f.name + ": bad DC gains");
    }
    if (f.kind == WaveletFamilyKind::Orthogonal && std::abs(sum_squares(f.dec_lo) - 1.0) > tol) {
        throw std::logic_error("filter " + f.name + ": not orthonormal");
    }
}

inline std::string lowercase(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace detail

/// The fifteen supported wavelets, in registry order. The position of a
/// wavelet in this list is stable and is used to derive per-wavelet seeds.
inline const std::vector<WaveletFilter>& all_filters() {
    static const std::vector<WaveletFilter> registry = [] {
        auto r = detail::build_registry();
        for (const auto& f : r) detail::validate(f);
        return r;
    }();
    return registry;
}

inline std::vector<std::string> filter_names() {
    std::vector<std::string> names;
    for (const auto& f : all_filters()) names.push_back(f.name);
    return names;
}

/// Registry position of `name`; throws UnknownWavelet.
inline std::size_t filter_index(std::string_view name) {
    const std::string key = detail::lowercase(name);
    const auto& reg = all_filters();
    for (std::size_t i = 0; i < reg.size(); ++i) {
        if (reg[i].name == key) return i;
    }
    fail(ErrorKind::UnknownWavelet, "unknown wavelet '" + std::string(name) + "'");
}

inline const WaveletFilter& get_filter(std::string_view name) {
    return all_filters()[filter_index(name)];
}

/// Table of (name, filter length, selected coefficient count at N = 846),
/// grouped by ascending filter length.
inline std::vector<FilterSummary> list_filters() {
    std::vector<FilterSummary> out;
    for (const auto& f : all_filters()) {
        out.push_back({f.name, f.filter_length(),
                       selected_length(kReferenceLength, f.filter_length())});
    }
    std::stable_sort(out.begin(), out.end(), [](const FilterSummary& a, const FilterSummary& b) {
        return a.filter_length < b.filter_length;
    });
    return out;
}

}  // namespace trendlet
