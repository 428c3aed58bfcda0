// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The trendlet Authors

#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "svg.hpp"
#include "trendlet/trendlet.hpp"

namespace trendlet::cli {

/// Bad flag values or combinations (exit code 2).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum ExitCode : int { kOk = 0, kUsage = 2, kData = 3, kNumeric = 4 };

inline int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::UnknownWavelet:
            return kUsage;
        case ErrorKind::Degenerate:
        case ErrorKind::DegenerateSeries:
        case ErrorKind::InsufficientDepth:
        case ErrorKind::RequiresTwoComponents:
            return kNumeric;
        default:
            return kData;
    }
}

struct SynthOptions {
    std::string output_dir = ".";
    std::size_t days = 846;
    std::size_t increasing = 20;
    std::size_t stagnating = 20;
    std::size_t seasonal = 20;
    double noise = 1.0;
    std::string start_date = "2017-03-03";
    std::uint64_t seed = 42;
};

struct RunOptions {
    std::string input;
    std::string output_dir = ".";
    std::string wavelet = "sym2";
    std::vector<std::string> wavelets;  // stability; empty means all
    std::vector<std::string> exclude;
    std::size_t k = 3;
    std::uint64_t seed = 42;
    std::size_t restarts = 10;
    std::size_t max_iter = 300;
    double tol = 1e-4;
    std::string anchors;
    std::string labels;  // optional planted-labels CSV
    bool drop_degenerate = false;
    bool scale_features = false;
    std::string format = "svg";
    std::string entity;
    std::string mode = "levels:2";
};

// ---------------------------------------------------------------------------
// helpers
// ---------------------------------------------------------------------------

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::IoError, "cannot write '" + path.string() + "'");
    out << content;
    if (!out) fail(ErrorKind::IoError, "write failed for '" + path.string() + "'");
}

inline std::filesystem::path prepare_output_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) fail(ErrorKind::IoError, "cannot create '" + dir + "': " + ec.message());
    return dir;
}

inline AnchorList parse_anchors(const std::string& text) {
    AnchorList anchors;
    if (text.empty()) return anchors;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
            throw UsageError("anchor '" + item + "' is not name=entity");
        }
        anchors.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    }
    return anchors;
}

inline std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

/// entity_id -> label text, from a two-column CSV with a header row.
inline std::map<std::string, std::string> read_labels_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::IoError, "cannot open '" + path + "'");
    std::map<std::string, std::string> labels;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1 || line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            fail(ErrorKind::ParseError, path + " line " + std::to_string(line_no) + ": expected 2 cells");
        }
        labels[line.substr(0, comma)] = line.substr(comma + 1);
    }
    return labels;
}

inline TrendRunConfig make_config(const RunOptions& opts) {
    if (opts.k < 2) throw UsageError("--k must be at least 2");
    if (opts.restarts < 1) throw UsageError("--restarts must be at least 1");
    if (opts.max_iter < 1) throw UsageError("--max-iter must be at least 1");
    if (!(opts.tol >= 0.0)) throw UsageError("--tol must be non-negative");
    if (opts.format != "svg" && opts.format != "csv") throw UsageError("--format must be svg or csv");
    TrendRunConfig config;
    config.kmeans.k = opts.k;
    config.kmeans.seed = opts.seed;
    config.kmeans.n_restarts = opts.restarts;
    config.kmeans.max_iter = opts.max_iter;
    config.kmeans.tol = opts.tol;
    config.anchors = parse_anchors(opts.anchors);
    if (!opts.wavelets.empty()) {
        config.wavelet_names = opts.wavelets;
    }
    for (const auto& w : config.wavelet_names) filter_index(w);
    for (const auto& x : opts.exclude) {
        const auto& canonical = get_filter(x).name;
        std::erase_if(config.wavelet_names,
                      [&](const std::string& w) { return get_filter(w).name == canonical; });
    }
    try {
        validate(config);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::InvalidInput) throw UsageError(e.what());
        throw;
    }
    return config;
}

inline TimeSeriesPanel load_normalized(const RunOptions& opts, std::vector<std::string>& dropped) {
    if (opts.input.empty()) throw UsageError("--input is required");
    const TimeSeriesPanel raw = ingest_csv_file(opts.input);
    const auto policy = opts.drop_degenerate ? DegeneratePolicy::Drop : DegeneratePolicy::Abort;
    TimeSeriesPanel panel = normalize(raw, policy, &dropped);
    for (const auto& id : dropped) std::cerr << "dropped degenerate series: " << id << '\n';
    return panel;
}

inline nlohmann::ordered_json config_echo(const RunOptions& opts, const TrendRunConfig& config) {
    nlohmann::ordered_json j;
    j["input"] = opts.input;
    j["k"] = config.kmeans.k;
    j["seed"] = config.kmeans.seed;
    j["restarts"] = config.kmeans.n_restarts;
    j["max_iter"] = config.kmeans.max_iter;
    j["tol"] = config.kmeans.tol;
    j["drop_degenerate"] = opts.drop_degenerate;
    nlohmann::ordered_json anchors = nlohmann::ordered_json::object();
    for (const auto& [name, entity] : config.anchors) anchors[name] = entity;
    j["anchors"] = anchors;
    return j;
}

inline std::string matrix_csv(const std::vector<std::string>& row_ids,
                              const std::vector<std::string>& col_ids, const Matrix& m,
                              const std::string& corner) {
    std::ostringstream out;
    out << corner;
    for (const auto& c : col_ids) out << ',' << c;
    out << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out << row_ids[i];
        for (std::size_t j = 0; j < m.cols(); ++j) out << ',' << format_double(m(i, j));
        out << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// synth
// ---------------------------------------------------------------------------

inline void cmd_synth(const SynthOptions& opts) {
    SyntheticSpec spec;
    spec.n_days = opts.days;
    spec.n_increasing = opts.increasing;
    spec.n_stagnating = opts.stagnating;
    spec.n_seasonal = opts.seasonal;
    spec.noise_sigma = opts.noise;
    spec.start_date = opts.start_date;
    spec.seed = opts.seed;
    try {
        validate(spec);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    const SyntheticPanel synth = generate_synthetic(spec);
    const auto dir = prepare_output_dir(opts.output_dir);
    std::ostringstream panel_csv;
    emit_csv(synth.panel, panel_csv);
    write_file(dir / "panel.csv", panel_csv.str());
    std::ostringstream labels;
    labels << "entity_id,archetype\n";
    for (std::size_t e = 0; e < synth.planted.size(); ++e) {
        labels << synth.panel.entity_ids[e] << ','
               << archetype_name(static_cast<Archetype>(synth.planted[e])) << '\n';
    }
    write_file(dir / "planted_labels.csv", labels.str());
}

// ---------------------------------------------------------------------------
// cluster
// ---------------------------------------------------------------------------

inline void cmd_cluster(const RunOptions& opts) {
    const TrendRunConfig config = make_config(opts);
    std::vector<std::string> dropped;
    const TimeSeriesPanel panel = load_normalized(opts, dropped);
    const SingleRun run = run_single(panel, opts.wavelet, config);
    const NamedLabels named =
        align_labels(run.model.labels, panel.entity_ids, config.kmeans.k, config.anchors);

    const auto dir = prepare_output_dir(opts.output_dir);
    std::ostringstream labels;
    labels << "entity_id,cluster,name\n";
    for (std::size_t e = 0; e < panel.n_entities(); ++e) {
        labels << panel.entity_ids[e] << ',' << run.model.labels[e] << ','
               << named.entity_names[e] << '\n';
    }
    write_file(dir / "labels.csv", labels.str());

    std::vector<std::size_t> sizes(config.kmeans.k, 0);
    for (Label l : run.model.labels) ++sizes[l];
    nlohmann::ordered_json report;
    report["config"] = config_echo(opts, config);
    report["wavelet"] = run.wavelet;
    report["filter_length"] = run.filter_length;
    report["n_entities"] = panel.n_entities();
    report["n_days"] = panel.n_days();
    report["levels"] = run.levels;
    report["band_lengths"] = run.band_lengths;
    report["feature_length"] = run.features.cols();
    report["feature_names"] = run.feature_names;
    report["wavelet_seed"] = run.model.seed;
    report["inertia"] = run.model.inertia;
    report["n_iter"] = run.model.n_iter;
    report["best_restart"] = run.model.best_restart;
    report["cluster_names"] = named.cluster_names;
    report["cluster_sizes"] = sizes;
    nlohmann::ordered_json centroids = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < run.model.centroids.rows(); ++c) {
        const auto row = run.model.centroids.row(c);
        centroids.push_back(std::vector<double>(row.begin(), row.end()));
    }
    report["centroids"] = centroids;
    report["dropped_entities"] = dropped;
    write_file(dir / "report.json", report.dump(2) + "\n");

    if (opts.format == "svg") {
        // (c0, d0, d1) smooth of every entity, one panel per cluster
        std::vector<svg::LinePanel> panels(config.kmeans.k);
        for (std::size_t c = 0; c < panels.size(); ++c) {
            panels[c].title = named.cluster_names[c] + " (" + std::to_string(sizes[c]) + ")";
        }
        for (std::size_t e = 0; e < panel.n_entities(); ++e) {
            const auto coeffs = decompose(panel.values.row(e), run.wavelet);
            const Label c = run.model.labels[e];
            panels[c].series.push_back({panel.entity_ids[e],
                                        reconstruct(truncate_to_level(coeffs, 2)),
                                        svg::palette()[c % svg::palette().size()]});
        }
        write_file(dir / "clusters.svg",
                   svg::line_panels(panels, format_date(panel.dates.front()),
                                    format_date(panel.dates.back())));
    }
}

// ---------------------------------------------------------------------------
// stability
// ---------------------------------------------------------------------------

inline void cmd_stability(const RunOptions& opts) {
    const TrendRunConfig config = make_config(opts);
    std::vector<std::string> dropped;
    const TimeSeriesPanel panel = load_normalized(opts, dropped);
    const StabilityResult result = co_occurrence(panel, config);
    const std::size_t n = panel.n_entities();

    // heatmap order: planted label if given, else the first named wavelet's
    // cluster names, else the first wavelet's raw labels; then entity id
    std::vector<std::string> group(n);
    std::vector<Label> planted_ids;
    if (!opts.labels.empty()) {
        const auto planted = read_labels_csv(opts.labels);
        std::map<std::string, Label> codes;
        for (std::size_t e = 0; e < n; ++e) {
            const auto it = planted.find(panel.entity_ids[e]);
            if (it == planted.end()) {
                fail(ErrorKind::InvalidInput, "no planted label for '" + panel.entity_ids[e] + "'");
            }
            group[e] = it->second;
            planted_ids.push_back(codes.emplace(it->second, codes.size()).first->second);
        }
    } else {
        const auto named = std::find_if(result.outcomes.begin(), result.outcomes.end(),
                                        [](const WaveletOutcome& o) { return o.named.has_value(); });
        for (std::size_t e = 0; e < n; ++e) {
            group[e] = named != result.outcomes.end()
                           ? named->named->entity_names[e]
                           : "cluster" + std::to_string(result.outcomes.front().run.model.labels[e]);
        }
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (group[a] != group[b]) return group[a] < group[b];
        return panel.entity_ids[a] < panel.entity_ids[b];
    });

    const auto dir = prepare_output_dir(opts.output_dir);
    write_file(dir / "co_occurrence.csv",
               matrix_csv(panel.entity_ids, panel.entity_ids, result.matrix.values, "entity_id"));

    std::ostringstream table;
    table << "entity_id";
    for (const auto& o : result.outcomes) table << ',' << o.run.wavelet;
    table << '\n';
    for (std::size_t e = 0; e < n; ++e) {
        table << panel.entity_ids[e];
        for (const auto& o : result.outcomes) {
            table << ',';
            if (o.named) {
                table << o.named->entity_names[e];
            } else {
                table << o.run.model.labels[e];
            }
        }
        table << '\n';
    }
    write_file(dir / "wavelet_labels.csv", table.str());

    nlohmann::ordered_json report;
    report["config"] = config_echo(opts, config);
    report["entity_ids"] = panel.entity_ids;
    report["dropped_entities"] = dropped;
    nlohmann::ordered_json runs = nlohmann::ordered_json::array();
    for (const auto& o : result.outcomes) {
        nlohmann::ordered_json w;
        w["wavelet"] = o.run.wavelet;
        w["filter_length"] = o.run.filter_length;
        w["feature_length"] = o.run.features.cols();
        w["wavelet_seed"] = o.run.model.seed;
        w["inertia"] = o.run.model.inertia;
        w["n_iter"] = o.run.model.n_iter;
        w["labels"] = o.run.model.labels;
        w["named"] = o.named.has_value();
        if (o.named) w["names"] = o.named->entity_names;
        if (!o.collision.empty()) w["collision"] = o.collision;
        runs.push_back(w);
    }
    report["wavelets"] = runs;
    report["n_wavelets"] = result.matrix.n_wavelets;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = result.matrix.values.row(i);
        rows.push_back(std::vector<double>(r.begin(), r.end()));
    }
    report["co_occurrence"] = rows;
    if (!planted_ids.empty()) {
        report["mean_within_planted"] = mean_within_cluster(result.matrix, planted_ids);
    }
    write_file(dir / "stability.json", report.dump(2) + "\n");

    if (opts.format == "svg") {
        Matrix ordered(n, n);
        std::vector<std::string> ids;
        for (std::size_t i = 0; i < n; ++i) {
            ids.push_back(panel.entity_ids[order[i]] + " " + group[order[i]]);
            for (std::size_t j = 0; j < n; ++j) ordered(i, j) = result.matrix.values(order[i], order[j]);
        }
        write_file(dir / "co_occurrence.svg",
                   svg::heatmap(ordered, ids,
                                "Same-cluster fraction over " +
                                    std::to_string(result.matrix.n_wavelets) + " wavelets"));
    }
}

// ---------------------------------------------------------------------------
// reconstruct
// ---------------------------------------------------------------------------

struct ReconstructMode {
    bool single = false;
    std::size_t keep_levels = 0;
    CoefficientIndex index;
};

inline ReconstructMode parse_mode(const std::string& mode) {
    ReconstructMode out;
    const auto parse_size = [&](const std::string& s) -> std::size_t {
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
            throw UsageError("bad number '" + s + "' in --mode " + mode);
        }
        return v;
    };
    if (mode.rfind("levels:", 0) == 0) {
        out.keep_levels = parse_size(mode.substr(7));
        return out;
    }
    if (mode.rfind("single:", 0) == 0) {
        const auto parts = split_list(mode.substr(7));
        if (parts.size() != 3) throw UsageError("--mode single:<band>,<level>,<position>");
        out.single = true;
        if (parts[0] == "c" || parts[0] == "approx") {
            out.index.band = Band::Approx;
        } else if (parts[0] == "d" || parts[0] == "detail") {
            out.index.band = Band::Detail;
        } else {
            throw UsageError("band must be c|approx|d|detail, got '" + parts[0] + "'");
        }
        out.index.level = parse_size(parts[1]);
        out.index.position = parse_size(parts[2]);
        return out;
    }
    throw UsageError("--mode must be levels:<m> or single:<band>,<level>,<position>");
}

inline void cmd_reconstruct(const RunOptions& opts) {
    const ReconstructMode mode = parse_mode(opts.mode);
    if (opts.format != "svg" && opts.format != "csv") throw UsageError("--format must be svg or csv");
    if (opts.entity.empty()) throw UsageError("--entity is required");
    std::vector<std::string> dropped;
    const TimeSeriesPanel panel = load_normalized(opts, dropped);
    const std::size_t e = panel.entity_index(opts.entity);
    const auto original = panel.values.row(e);
    const CoefficientSet coeffs = decompose(original, opts.wavelet);

    std::vector<double> recon;
    std::string label;
    if (mode.single) {
        recon = reconstruct_single(coeffs, mode.index);
        label = "only " + coefficient_name(mode.index);
    } else {
        if (mode.keep_levels > coeffs.levels) {
            fail(ErrorKind::IndexOutOfRange, "levels:" + std::to_string(mode.keep_levels) +
                                                 " outside valid range [0, " +
                                                 std::to_string(coeffs.levels) + "]");
        }
        recon = reconstruct(truncate_to_level(coeffs, mode.keep_levels));
        label = "levels:" + std::to_string(mode.keep_levels);
    }

    const auto dir = prepare_output_dir(opts.output_dir);
    std::ostringstream csv;
    csv << "date,original,reconstruction\n";
    for (std::size_t t = 0; t < panel.n_days(); ++t) {
        csv << format_date(panel.dates[t]) << ',' << format_double(original[t]) << ','
            << format_double(recon[t]) << '\n';
    }
    write_file(dir / "reconstruction.csv", csv.str());
    if (opts.format == "svg") {
        svg::LinePanel p;
        p.title = opts.entity + " (" + coeffs.wavelet_name + ", " + label + ")";
        p.series.push_back({"original", std::vector<double>(original.begin(), original.end()), "#bbbbbb"});
        p.series.push_back({label, recon, "#d62728"});
        write_file(dir / "reconstruction.svg",
                   svg::line_panels({p}, format_date(panel.dates.front()),
                                    format_date(panel.dates.back())));
    }
}

// ---------------------------------------------------------------------------
// pca
// ---------------------------------------------------------------------------

/// Column-wise z-score across entities; zero-variance columns become 0.
inline Matrix zscore_columns(const Matrix& m) {
    Matrix out(m.rows(), m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < m.rows(); ++i) mean += m(i, j);
        mean /= static_cast<double>(m.rows());
        double var = 0.0;
        for (std::size_t i = 0; i < m.rows(); ++i) var += (m(i, j) - mean) * (m(i, j) - mean);
        const double sd = std::sqrt(var / static_cast<double>(m.rows()));
        for (std::size_t i = 0; i < m.rows(); ++i) out(i, j) = sd > 0.0 ? (m(i, j) - mean) / sd : 0.0;
    }
    return out;
}

inline void cmd_pca(const RunOptions& opts) {
    const TrendRunConfig config = make_config(opts);
    std::vector<std::string> dropped;
    const TimeSeriesPanel panel = load_normalized(opts, dropped);
    const SingleRun run = run_single(panel, opts.wavelet, config);
    if (run.features.cols() < 2 || run.features.rows() < 2) {
        fail(ErrorKind::RequiresTwoComponents,
             "feature matrix " + std::to_string(run.features.rows()) + "x" +
                 std::to_string(run.features.cols()) + " cannot give two components");
    }
    const PcaModel model = pca_fit(run.features, 2, opts.scale_features);
    const NamedLabels named =
        align_labels(run.model.labels, panel.entity_ids, config.kmeans.k, config.anchors);
    const BiplotTable table = biplot_data(model, panel.entity_ids, run.feature_names, run.model.labels);

    const auto dir = prepare_output_dir(opts.output_dir);
    std::ostringstream scores;
    scores << "entity_id,pc1,pc2,cluster,name\n";
    for (std::size_t i = 0; i < table.scores.size(); ++i) {
        const auto& s = table.scores[i];
        scores << s.entity << ',' << format_double(s.pc1) << ',' << format_double(s.pc2) << ','
               << s.cluster << ',' << named.entity_names[i] << '\n';
    }
    write_file(dir / "pca_scores.csv", scores.str());
    std::ostringstream loadings;
    loadings << "feature,pc1,pc2\n";
    for (const auto& l : table.loadings) {
        loadings << '"' << l.feature << "\"," << format_double(l.pc1) << ',' << format_double(l.pc2) << '\n';
    }
    write_file(dir / "pca_loadings.csv", loadings.str());

    const Matrix z = zscore_columns(run.features);
    std::vector<std::string> quoted;
    for (const auto& f : run.feature_names) quoted.push_back('"' + f + '"');
    write_file(dir / "coefficients.csv", matrix_csv(panel.entity_ids, quoted, z, "entity_id"));

    nlohmann::ordered_json report;
    report["config"] = config_echo(opts, config);
    report["wavelet"] = run.wavelet;
    report["feature_length"] = run.features.cols();
    report["scale_features"] = opts.scale_features;
    report["explained_variance"] = model.explained_variance;
    report["explained_variance_ratio"] = model.explained_variance_ratio;
    write_file(dir / "pca.json", report.dump(2) + "\n");

    if (opts.format == "svg") {
        std::vector<svg::BiplotPoint> pts;
        for (const auto& s : table.scores) pts.push_back({s.pc1, s.pc2, s.cluster});
        std::vector<svg::Arrow> arrows;
        for (const auto& l : table.loadings) arrows.push_back({l.feature, l.pc1, l.pc2});
        char ratios[96];
        std::snprintf(ratios, sizeof ratios, " (PC1 %.1f%%, PC2 %.1f%%)", 100 * table.ratio_pc1,
                      100 * table.ratio_pc2);
        write_file(dir / "biplot.svg",
                   svg::biplot(pts, arrows, named.cluster_names, run.wavelet + " biplot" + ratios));
        write_file(dir / "coefficients.svg",
                   svg::coefficient_map(z, panel.entity_ids, run.feature_names, named.entity_names,
                                        run.wavelet + " coefficients, z-scored per coefficient"));
    }
}

// ---------------------------------------------------------------------------
// filters dump
// ---------------------------------------------------------------------------

inline std::string filters_csv() {
    std::ostringstream out;
    out << "name,filter_length,selected_coefficients_n846\n";
    for (const auto& f : list_filters()) {
        out << f.name << ',' << f.filter_length << ',' << f.selected_count << '\n';
    }
    return out.str();
}

}  // namespace trendlet::cli
