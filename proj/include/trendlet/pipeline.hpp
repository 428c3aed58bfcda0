// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The trendlet Authors

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "trendlet/dwt.hpp"
#include "trendlet/error.hpp"
#include "trendlet/filterbank.hpp"
#include "trendlet/kmeans.hpp"
#include "trendlet/matrix.hpp"
#include "trendlet/preprocess.hpp"
#include "trendlet/rng.hpp"

namespace trendlet {

/// Ordered (cluster name, anchor entity id) pairs.
using AnchorList = std::vector<std::pair<std::string, std::string>>;

struct TrendRunConfig {
    std::vector<std::string> wavelet_names = filter_names();
    KMeansOptions kmeans;
    AnchorList anchors;
    std::size_t levels_kept = 2;  // bands c0, d0, d1
};

inline void validate(const TrendRunConfig& config) {
    for (const auto& w : config.wavelet_names) filter_index(w);
    std::set<std::string> names;
    std::set<std::string> entities;
    for (const auto& [name, entity] : config.anchors) {
        if (!names.insert(name).second) {
            fail(ErrorKind::InvalidInput, "anchor name '" + name + "' given twice");
        }
        if (!entities.insert(entity).second) {
            fail(ErrorKind::InvalidInput, "anchor entity '" + entity + "' used twice");
        }
    }
    if (config.anchors.size() > config.kmeans.k) {
        fail(ErrorKind::InvalidInput, "more anchors than clusters");
    }
    if (config.levels_kept != 2) {
        fail(ErrorKind::InvalidInput, "only the (c0, d0, d1) selection is supported");
    }
}

// ---------------------------------------------------------------------------
// Single-wavelet run
// ---------------------------------------------------------------------------

struct SingleRun {
    std::string wavelet;
    std::size_t filter_length = 0;
    std::size_t levels = 0;
    std::vector<std::size_t> band_lengths;  // [c0, d0, ..., d_{J-1}]
    std::vector<std::string> feature_names;  // "c0,0", ..., "d1,8"
    Matrix features;                        // entities x selected coefficients
    ClusterModel model;
};

/// Per-wavelet k-means seed; depends only on the base seed and the
/// wavelet's registry position.
inline std::uint64_t wavelet_seed(std::uint64_t base_seed, std::string_view wavelet) {
    return derive_seed(base_seed, filter_index(wavelet));
}

/// Features = select_coarse(decompose(row)) per entity, clustered by k-means.
inline SingleRun run_single(const TimeSeriesPanel& panel, std::string_view wavelet,
                            const TrendRunConfig& config) {
    if (!panel.normalized) fail(ErrorKind::InvalidInput, "panel must be normalized first");
    if (panel.n_entities() == 0) fail(ErrorKind::InvalidInput, "panel has no entities");
    const WaveletFilter& w = get_filter(wavelet);

    SingleRun run;
    run.wavelet = w.name;
    run.filter_length = w.filter_length();
    for (std::size_t e = 0; e < panel.n_entities(); ++e) {
        const CoefficientSet coeffs = decompose(panel.values.row(e), w);
        const auto feats = select_coarse(coeffs);
        if (e == 0) {
            run.levels = coeffs.levels;
            run.band_lengths = coeffs.band_lengths();
            for (const auto& idx : coarse_indices(coeffs)) {
                run.feature_names.push_back(coefficient_name(idx));
            }
        }
        run.features.append_row(feats);
    }
    KMeansOptions opts = config.kmeans;
    opts.seed = wavelet_seed(config.kmeans.seed, w.name);
    run.model = kmeans_fit(run.features, opts);
    return run;
}

// ---------------------------------------------------------------------------
// Anchor naming
// ---------------------------------------------------------------------------

struct NamedLabels {
    std::vector<std::string> cluster_names;  // indexed by raw cluster id
    std::vector<std::string> entity_names;   // per entity
};

/// Names raw clusters after the anchors they contain. Clusters holding no
/// anchor are called "cluster<i>".
inline NamedLabels align_labels(std::span<const Label> labels,
                                const std::vector<std::string>& entity_ids, std::size_t k,
                                const AnchorList& anchors) {
    if (labels.size() != entity_ids.size()) {
        fail(ErrorKind::InvalidInput, "label count does not match entity count");
    }
    NamedLabels out;
    out.cluster_names.resize(k);
    std::vector<std::string> owner(k);
    for (const auto& [name, entity] : anchors) {
        const auto it = std::find(entity_ids.begin(), entity_ids.end(), entity);
        if (it == entity_ids.end()) {
            fail(ErrorKind::InvalidInput, "anchor entity '" + entity + "' not in panel");
        }
        const Label c = labels[static_cast<std::size_t>(it - entity_ids.begin())];
        if (c >= k) fail(ErrorKind::InvalidInput, "label outside [0, k)");
        if (!owner[c].empty()) {
            fail(ErrorKind::AnchorCollision, "anchors '" + owner[c] + "' and '" + entity +
                                                 "' fall in the same cluster " +
                                                 std::to_string(c));
        }
        owner[c] = entity;
        out.cluster_names[c] = name;
    }
    for (std::size_t c = 0; c < k; ++c) {
        if (out.cluster_names[c].empty()) out.cluster_names[c] = "cluster" + std::to_string(c);
    }
    for (Label l : labels) out.entity_names.push_back(out.cluster_names[l]);
    return out;
}

// ---------------------------------------------------------------------------
// Cross-wavelet co-occurrence
// ---------------------------------------------------------------------------

/// Fraction of wavelets placing entities i and j in the same cluster.
struct CoOccurrenceMatrix {
    std::vector<std::string> entity_ids;
    Matrix values;
    std::size_t n_wavelets = 0;
};

inline CoOccurrenceMatrix co_occurrence_from_labels(
    const std::vector<std::string>& entity_ids,
    const std::vector<std::vector<Label>>& labels_per_wavelet) {
    if (labels_per_wavelet.empty()) fail(ErrorKind::InvalidInput, "no labelings given");
    const std::size_t n = entity_ids.size();
    std::vector<std::size_t> counts(n * n, 0);
    for (const auto& labels : labels_per_wavelet) {
        if (labels.size() != n) fail(ErrorKind::InvalidInput, "labeling length mismatch");
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (labels[i] == labels[j]) ++counts[i * n + j];
            }
        }
    }
    CoOccurrenceMatrix out;
    out.entity_ids = entity_ids;
    out.n_wavelets = labels_per_wavelet.size();
    out.values = Matrix(n, n);
    const double w = static_cast<double>(out.n_wavelets);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out.values(i, j) = static_cast<double>(counts[i * n + j]) / w;
        }
    }
    return out;
}

struct WaveletOutcome {
    SingleRun run;
    std::optional<NamedLabels> named;  // empty when anchors collided or none were given
    std::string collision;             // AnchorCollision message, if any
};

struct StabilityResult {
    std::vector<WaveletOutcome> outcomes;  // in config.wavelet_names order
    CoOccurrenceMatrix matrix;
};

/// run_single for every configured wavelet, then the co-occurrence matrix.
/// Anchor collisions mark a wavelet unnamed but its labels still count.
inline StabilityResult co_occurrence(const TimeSeriesPanel& panel, const TrendRunConfig& config) {
    validate(config);
    if (config.wavelet_names.size() < 2) {
        fail(ErrorKind::InvalidInput, "co-occurrence needs at least 2 wavelets");
    }
    StabilityResult result;
    std::vector<std::vector<Label>> all_labels;
    for (const auto& name : config.wavelet_names) {
        WaveletOutcome outcome;
        outcome.run = run_single(panel, name, config);
        if (!config.anchors.empty()) {
            try {
                outcome.named = align_labels(outcome.run.model.labels, panel.entity_ids,
                                             config.kmeans.k, config.anchors);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::AnchorCollision) throw;
                outcome.collision = e.what();
            }
        }
        all_labels.push_back(outcome.run.model.labels);
        result.outcomes.push_back(std::move(outcome));
    }
    result.matrix = co_occurrence_from_labels(panel.entity_ids, all_labels);
    return result;
}

/// Mean co-occurrence over distinct pairs sharing a reference label.
inline double mean_within_cluster(const CoOccurrenceMatrix& m, std::span<const Label> reference) {
    double sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        for (std::size_t j = i + 1; j < reference.size(); ++j) {
            if (reference[i] != reference[j]) continue;
            sum += m.values(i, j);
            ++pairs;
        }
    }
    return pairs == 0 ? 0.0 : sum / static_cast<double>(pairs);
}

// ---------------------------------------------------------------------------
// Synthetic panels
// ---------------------------------------------------------------------------

enum class Archetype : Label { Increasing = 0, Stagnating = 1, Seasonal = 2 };

inline const char* archetype_name(Archetype a) {
    switch (a) {
        case Archetype::Increasing: return "increasing";
        case Archetype::Stagnating: return "stagnating";
        case Archetype::Seasonal: return "seasonal";
    }
    return "?";
}

/// Closed interval to draw a per-entity parameter from.
struct Range {
    double lo;
    double hi;
};

/// Planted-trend generator parameters. Trend, seasonal and weekly amplitudes
/// are in units of the noise scale before each entity's level/scale is applied.
struct SyntheticSpec {
    std::size_t n_days = 846;
    std::size_t n_increasing = 20;
    std::size_t n_stagnating = 20;
    std::size_t n_seasonal = 20;
    std::string start_date = "2017-03-03";
    Range increasing_rise{3.0, 6.0};    // total drift over the period
    Range stagnating_rise{-1.5, 0.0};
    Range seasonal_amplitude{1.5, 2.5};
    int summer_peak_day = 196;  // day of year of the annual maximum (mid-July)
    double weekly_amplitude = 0.8;
    double noise_sigma = 1.0;
    Range level{50.0, 500.0};  // per-entity additive base
    Range scale{0.5, 5.0};     // per-entity multiplier
    std::uint64_t seed = 42;
};

struct SyntheticPanel {
    TimeSeriesPanel panel;
    std::vector<Label> planted;  // Archetype values, per entity
};

inline void validate(const SyntheticSpec& s) {
    if (s.n_increasing < 1 || s.n_stagnating < 1 || s.n_seasonal < 1) {
        fail(ErrorKind::InvalidInput, "every archetype needs at least one entity");
    }
    if (s.n_days < 64) {
        fail(ErrorKind::InvalidInput, "n_days " + std::to_string(s.n_days) + " below minimum 64");
    }
    for (const Range& r : {s.increasing_rise, s.stagnating_rise, s.seasonal_amplitude, s.level,
                           s.scale}) {
        if (!(r.lo <= r.hi) || !std::isfinite(r.lo) || !std::isfinite(r.hi)) {
            fail(ErrorKind::InvalidInput, "parameter range with lo > hi or non-finite bound");
        }
    }
    if (s.increasing_rise.lo <= 0.0) fail(ErrorKind::InvalidInput, "increasing rise must be > 0");
    if (s.stagnating_rise.hi > 0.0) fail(ErrorKind::InvalidInput, "stagnating rise must be <= 0");
    if (s.scale.lo <= 0.0) fail(ErrorKind::InvalidInput, "scale must be > 0");
    if (!(s.noise_sigma >= 0.0) || !(s.weekly_amplitude >= 0.0)) {
        fail(ErrorKind::InvalidInput, "noise sigma and weekly amplitude must be >= 0");
    }
    if (s.summer_peak_day < 1 || s.summer_peak_day > 366) {
        fail(ErrorKind::InvalidInput, "summer_peak_day outside [1, 366]");
    }
    parse_date_or_throw(s.start_date);
}

inline int day_of_year(Date d) {
    const std::chrono::year_month_day ymd{d};
    const Date jan1{ymd.year() / std::chrono::January / 1};
    return static_cast<int>((d - jan1).count()) + 1;
}

/// Increasing: positive linear drift + weekly cycle + noise. Stagnating:
/// flat or falling drift + weekly cycle + noise. Seasonal: annual sinusoid
/// peaking at `summer_peak_day` + noise. Archetypes are assigned to entity
/// ids in a seeded shuffle.
inline SyntheticPanel generate_synthetic(const SyntheticSpec& spec) {
    validate(spec);
    Rng rng(spec.seed);

    std::vector<Archetype> kinds;
    kinds.insert(kinds.end(), spec.n_increasing, Archetype::Increasing);
    kinds.insert(kinds.end(), spec.n_stagnating, Archetype::Stagnating);
    kinds.insert(kinds.end(), spec.n_seasonal, Archetype::Seasonal);
    for (std::size_t i = kinds.size(); i > 1; --i) {
        std::swap(kinds[i - 1], kinds[rng.below(i)]);
    }

    const std::size_t n = spec.n_days;
    const std::size_t width = std::max<std::size_t>(2, std::to_string(kinds.size()).size());
    SyntheticPanel out;
    const Date start = parse_date_or_throw(spec.start_date);
    for (std::size_t t = 0; t < n; ++t) out.panel.dates.push_back(start + std::chrono::days{t});

    const double span = static_cast<double>(n - 1);
    std::vector<double> row(n);
    for (std::size_t e = 0; e < kinds.size(); ++e) {
        std::string id = std::to_string(e + 1);
        id.insert(0, width - id.size(), '0');
        out.panel.entity_ids.push_back("shop" + id);
        out.planted.push_back(static_cast<Label>(kinds[e]));

        const double level = rng.uniform(spec.level.lo, spec.level.hi);
        const double scale = rng.uniform(spec.scale.lo, spec.scale.hi);
        const double weekly_phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
        double rise = 0.0;
        double amplitude = 0.0;
        double weekly = spec.weekly_amplitude;
        switch (kinds[e]) {
            case Archetype::Increasing:
                rise = rng.uniform(spec.increasing_rise.lo, spec.increasing_rise.hi);
                break;
            case Archetype::Stagnating:
                rise = rng.uniform(spec.stagnating_rise.lo, spec.stagnating_rise.hi);
                break;
            case Archetype::Seasonal:
                amplitude = rng.uniform(spec.seasonal_amplitude.lo, spec.seasonal_amplitude.hi);
                weekly = 0.0;
                break;
        }
        for (std::size_t t = 0; t < n; ++t) {
            const double time = static_cast<double>(t);
            double v = rise * time / span;
            v += weekly * std::sin(2.0 * std::numbers::pi * time / 7.0 + weekly_phase);
            if (amplitude != 0.0) {
                const int doy = day_of_year(out.panel.dates[t]);
                v += amplitude *
                     std::cos(2.0 * std::numbers::pi * (doy - spec.summer_peak_day) / 365.25);
            }
            if (spec.noise_sigma > 0.0) v += spec.noise_sigma * rng.normal();
            row[t] = level + scale * v;
        }
        out.panel.values.append_row(row);
    }
    return out;
}

/// First entity of each archetype as the anchor, named as in the
/// increasing / stagnating / special convention.
inline AnchorList default_anchors(const SyntheticPanel& synth) {
    AnchorList anchors;
    const std::pair<Archetype, const char*> names[] = {{Archetype::Increasing, "increasing"},
                                                       {Archetype::Stagnating, "stagnating"},
                                                       {Archetype::Seasonal, "special"}};
    for (const auto& [kind, name] : names) {
        for (std::size_t e = 0; e < synth.planted.size(); ++e) {
            if (synth.planted[e] == static_cast<Label>(kind)) {
                anchors.emplace_back(name, synth.panel.entity_ids[e]);
                break;
            }
        }
    }
    return anchors;
}

}  // namespace trendlet
