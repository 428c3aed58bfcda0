// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The trendlet Authors

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "trendlet/error.hpp"

namespace trendlet {

/// Deepest level at which at least one coefficient is untouched by the
/// zero padding: floor(log2(N / (M - 1))), in integer arithmetic.
inline std::size_t max_level(std::size_t n, std::size_t filter_length) {
    if (filter_length < 2) fail(ErrorKind::InvalidInput, "filter length must be >= 2");
    if (n < filter_length) {
        fail(ErrorKind::InvalidInput, "series length " + std::to_string(n) +
                                          " is shorter than filter length " +
                                          std::to_string(filter_length));
    }
    const std::size_t denom = filter_length - 1;
    std::size_t level = 0;
    // largest J with 2^J * (M - 1) <= N
    while ((denom << (level + 1)) <= n) ++level;
    return level;
}

/// Output length of one analysis step with zero padding.
constexpr std::size_t coarser_length(std::size_t n, std::size_t filter_length) noexcept {
    return (n + filter_length - 1) / 2;
}

/// Band lengths of a J-level decomposition in pyramid order [c0, d0, d1, ..., d_{J-1}].
inline std::vector<std::size_t> band_lengths(std::size_t n, std::size_t filter_length,
                                             std::size_t levels) {
    // level_len[j] is the length of approximation c_j; level_len[levels] = n.
    std::vector<std::size_t> level_len(levels + 1);
    level_len[levels] = n;
    for (std::size_t j = levels; j > 0; --j) {
        level_len[j - 1] = coarser_length(level_len[j], filter_length);
    }
    std::vector<std::size_t> bands;
    bands.reserve(levels + 1);
    bands.push_back(level_len[0]);
    for (std::size_t j = 0; j < levels; ++j) bands.push_back(level_len[j]);
    return bands;
}

/// Size of the (c0, d0, d1) feature vector at full depth.
inline std::size_t selected_length(std::size_t n, std::size_t filter_length) {
    const std::size_t levels = max_level(n, filter_length);
    if (levels < 2) {
        fail(ErrorKind::InsufficientDepth,
             "depth " + std::to_string(levels) + " < 2 for N=" + std::to_string(n));
    }
    const auto bands = band_lengths(n, filter_length, levels);
    return bands[0] + bands[1] + bands[2];
}

}  // namespace trendlet
