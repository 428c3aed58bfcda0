// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The trendlet Authors

#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "trendlet/band_lengths.hpp"
#include "trendlet/error.hpp"
#include "trendlet/filterbank.hpp"

namespace trendlet {

/// Full pyramid (c0, d0, ..., d_{J-1}) of one series. d0 is the coarsest
/// detail band, d_{J-1} the finest.
struct CoefficientSet {
    std::string wavelet_name;
    std::size_t original_length = 0;
    std::size_t levels = 0;
    std::vector<double> approx;
    std::vector<std::vector<double>> details;

    /// Lengths in pyramid order [c0, d0, ..., d_{J-1}].
    std::vector<std::size_t> band_lengths() const {
        std::vector<std::size_t> out{approx.size()};
        for (const auto& d : details) out.push_back(d.size());
        return out;
    }

    std::size_t coefficient_count() const {
        std::size_t n = approx.size();
        for (const auto& d : details) n += d.size();
        return n;
    }
};

enum class Band { Approx, Detail };

/// Addresses one coefficient: c_{0,position} or d_{level,position}.
struct CoefficientIndex {
    Band band = Band::Approx;
    std::size_t level = 0;
    std::size_t position = 0;

    bool operator==(const CoefficientIndex&) const = default;
};

/// "c0,2" / "d1,7" style label.
inline std::string coefficient_name(const CoefficientIndex& idx) {
    return std::string(idx.band == Band::Approx ? "c" : "d") + std::to_string(idx.level) + "," +
           std::to_string(idx.position);
}

/// One analysis step: zero-extended full convolution with dec_lo / dec_hi,
/// keeping odd-indexed samples. Output length floor((n + M - 1) / 2).
inline std::pair<std::vector<double>, std::vector<double>> analysis_step(
    std::span<const double> x, const WaveletFilter& w) {
    const std::size_t m = w.filter_length();
    const std::size_t n = x.size();
    const std::size_t out_len = coarser_length(n, m);
    std::vector<double> lo(out_len, 0.0);
    std::vector<double> hi(out_len, 0.0);
    for (std::size_t i = 0; i < out_len; ++i) {
        const std::size_t t = 2 * i + 1;
        double a = 0.0;
        double d = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            if (j > t) break;
            const std::size_t src = t - j;
            if (src >= n) continue;
            a += w.dec_lo[j] * x[src];
            d += w.dec_hi[j] * x[src];
        }
        lo[i] = a;
        hi[i] = d;
    }
    return {std::move(lo), std::move(hi)};
}

/// Inverse of analysis_step, trimmed to `out_len` samples.
inline std::vector<double> synthesis_step(std::span<const double> approx,
                                          std::span<const double> detail,
                                          const WaveletFilter& w, std::size_t out_len) {
    if (approx.size() != detail.size()) {
        fail(ErrorKind::InvalidInput, "approximation and detail bands differ in length");
    }
    const std::size_t m = w.filter_length();
    const std::size_t len = approx.size();
    if (out_len + m > 2 * len + 2) {
        fail(ErrorKind::InvalidInput, "requested synthesis length exceeds band support");
    }
    std::vector<double> out(out_len, 0.0);
    const std::size_t shift = m - 2;
    for (std::size_t i = 0; i < len; ++i) {
        const double a = approx[i];
        const double d = detail[i];
        if (a == 0.0 && d == 0.0) continue;
        for (std::size_t j = 0; j < m; ++j) {
            const std::size_t t = 2 * i + j;
            if (t < shift) continue;
            const std::size_t k = t - shift;
            if (k >= out_len) break;
            out[k] += a * w.rec_lo[j] + d * w.rec_hi[j];
        }
    }
    return out;
}

/// Pyramidal DWT with zero padding. `levels` defaults to max_level(N, M).
inline CoefficientSet decompose(std::span<const double> series, const WaveletFilter& w,
                                std::optional<std::size_t> levels = std::nullopt) {
    if (series.empty()) fail(ErrorKind::InvalidInput, "empty series");
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (!std::isfinite(series[i])) {
            fail(ErrorKind::InvalidInput, "non-finite value at index " + std::to_string(i));
        }
    }
    const std::size_t deepest = max_level(series.size(), w.filter_length());
    const std::size_t depth = levels.value_or(deepest);
    if (depth > deepest) {
        fail(ErrorKind::InvalidInput, "levels " + std::to_string(depth) + " exceeds maximum " +
                                          std::to_string(deepest));
    }
    if (depth == 0) fail(ErrorKind::InvalidInput, "decomposition depth must be at least 1");

    CoefficientSet out;
    out.wavelet_name = w.name;
    out.original_length = series.size();
    out.levels = depth;
    out.details.resize(depth);

    std::vector<double> current(series.begin(), series.end());
    // finest detail band first, stored at index J-1
    for (std::size_t step = 0; step < depth; ++step) {
        auto [lo, hi] = analysis_step(current, w);
        out.details[depth - 1 - step] = std::move(hi);
        current = std::move(lo);
    }
    out.approx = std::move(current);
    return out;
}

inline CoefficientSet decompose(std::span<const double> series, std::string_view wavelet,
                                std::optional<std::size_t> levels = std::nullopt) {
    return decompose(series, get_filter(wavelet), levels);
}

/// Inverse DWT; returns exactly original_length samples.
inline std::vector<double> reconstruct(const CoefficientSet& coeffs) {
    const WaveletFilter& w = get_filter(coeffs.wavelet_name);
    const std::size_t m = w.filter_length();
    if (coeffs.levels == 0 || coeffs.details.size() != coeffs.levels) {
        fail(ErrorKind::InvalidInput, "level count does not match detail bands");
    }
    const auto expected = band_lengths(coeffs.original_length, m, coeffs.levels);
    if (coeffs.band_lengths() != expected) {
        fail(ErrorKind::InvalidInput, "band lengths inconsistent with N=" +
                                          std::to_string(coeffs.original_length) + ", J=" +
                                          std::to_string(coeffs.levels));
    }
    std::vector<double> current = coeffs.approx;
    for (std::size_t j = 0; j < coeffs.levels; ++j) {
        const std::size_t target =
            j + 1 < coeffs.levels ? coeffs.details[j + 1].size() : coeffs.original_length;
        current = synthesis_step(current, coeffs.details[j], w, target);
    }
    return current;
}

/// Keeps c0, d0, ..., d_{keep_levels-1}; finer detail bands are zeroed.
inline CoefficientSet truncate_to_level(const CoefficientSet& coeffs, std::size_t keep_levels) {
    if (keep_levels > coeffs.levels) {
        fail(ErrorKind::InvalidInput, "keep_levels " + std::to_string(keep_levels) +
                                          " outside [0, " + std::to_string(coeffs.levels) + "]");
    }
    CoefficientSet out = coeffs;
    for (std::size_t j = keep_levels; j < out.levels; ++j) {
        std::fill(out.details[j].begin(), out.details[j].end(), 0.0);
    }
    return out;
}

/// Feature vector c0 ‖ d0 ‖ d1.
inline std::vector<double> select_coarse(const CoefficientSet& coeffs) {
    if (coeffs.levels < 2) {
        fail(ErrorKind::InsufficientDepth,
             "need at least 2 levels, have " + std::to_string(coeffs.levels));
    }
    std::vector<double> out;
    out.reserve(coeffs.approx.size() + coeffs.details[0].size() + coeffs.details[1].size());
    out.insert(out.end(), coeffs.approx.begin(), coeffs.approx.end());
    out.insert(out.end(), coeffs.details[0].begin(), coeffs.details[0].end());
    out.insert(out.end(), coeffs.details[1].begin(), coeffs.details[1].end());
    return out;
}

/// Indices of the select_coarse feature vector, in the same order.
inline std::vector<CoefficientIndex> coarse_indices(const CoefficientSet& coeffs) {
    if (coeffs.levels < 2) fail(ErrorKind::InsufficientDepth, "need at least 2 levels");
    std::vector<CoefficientIndex> out;
    for (std::size_t p = 0; p < coeffs.approx.size(); ++p) out.push_back({Band::Approx, 0, p});
    for (std::size_t lvl = 0; lvl < 2; ++lvl) {
        for (std::size_t p = 0; p < coeffs.details[lvl].size(); ++p) {
            out.push_back({Band::Detail, lvl, p});
        }
    }
    return out;
}

inline double coefficient_at(const CoefficientSet& coeffs, const CoefficientIndex& which) {
    const auto out_of_range = [&](std::size_t size) {
        fail(ErrorKind::IndexOutOfRange,
             coefficient_name(which) + " outside valid positions [0, " + std::to_string(size) +
                 ")");
    };
    if (which.band == Band::Approx) {
        if (which.level != 0) {
            fail(ErrorKind::IndexOutOfRange, "approximation band only exists at level 0");
        }
        if (which.position >= coeffs.approx.size()) out_of_range(coeffs.approx.size());
        return coeffs.approx[which.position];
    }
    if (which.level >= coeffs.levels) {
        fail(ErrorKind::IndexOutOfRange, "detail level " + std::to_string(which.level) +
                                             " outside [0, " + std::to_string(coeffs.levels) +
                                             ")");
    }
    const auto& band = coeffs.details[which.level];
    if (which.position >= band.size()) out_of_range(band.size());
    return band[which.position];
}

/// Inverse DWT of the set with every coefficient zeroed except `which`.
inline std::vector<double> reconstruct_single(const CoefficientSet& coeffs,
                                              const CoefficientIndex& which) {
    const double value = coefficient_at(coeffs, which);
    CoefficientSet only = coeffs;
    std::fill(only.approx.begin(), only.approx.end(), 0.0);
    for (auto& d : only.details) std::fill(d.begin(), d.end(), 0.0);
    if (which.band == Band::Approx) {
        only.approx[which.position] = value;
    } else {
        only.details[which.level][which.position] = value;
    }
    return reconstruct(only);
}

}  // namespace trendlet
