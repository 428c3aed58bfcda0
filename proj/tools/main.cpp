// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The trendlet Authors

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

void add_run_flags(CLI::App* cmd, trendlet::cli::RunOptions& opts) {
    cmd->add_option("--input", opts.input, "Panel CSV (date,<entity>,...)")->required();
    cmd->add_option("--output-dir", opts.output_dir, "Directory for output files");
    cmd->add_option("--k", opts.k, "Number of clusters");
    cmd->add_option("--seed", opts.seed, "Base random seed")->envname("TRENDLET_SEED");
    cmd->add_option("--restarts", opts.restarts, "k-means++ restarts");
    cmd->add_option("--max-iter", opts.max_iter, "Lloyd iteration cap");
    cmd->add_option("--tol", opts.tol, "Centroid displacement tolerance");
    cmd->add_option("--format", opts.format, "Plot format: svg or csv");
    cmd->add_flag("--drop-degenerate", opts.drop_degenerate, "Drop constant series instead of failing");
}

}  // namespace

int main(int argc, char** argv) {
    using namespace trendlet::cli;

    CLI::App app{"trendlet: wavelet-based trend clustering of time series"};
    app.require_subcommand(1);

    SynthOptions synth;
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic panel with planted trends");
    synth_cmd->add_option("--output-dir", synth.output_dir, "Directory for panel.csv and planted_labels.csv");
    synth_cmd->add_option("--days", synth.days, "Series length (>= 64)");
    synth_cmd->add_option("--increasing", synth.increasing, "Entities with a rising trend");
    synth_cmd->add_option("--stagnating", synth.stagnating, "Entities with a flat or falling trend");
    synth_cmd->add_option("--seasonal", synth.seasonal, "Entities with a summer peak");
    synth_cmd->add_option("--noise", synth.noise, "Noise standard deviation");
    synth_cmd->add_option("--start-date", synth.start_date, "First date (YYYY-MM-DD)");
    synth_cmd->add_option("--seed", synth.seed, "Random seed")->envname("TRENDLET_SEED");

    RunOptions cluster;
    auto* cluster_cmd = app.add_subcommand("cluster", "Cluster entities on (c0, d0, d1) coefficients");
    add_run_flags(cluster_cmd, cluster);
    cluster_cmd->add_option("--wavelet", cluster.wavelet, "Mother wavelet");
    cluster_cmd->add_option("--anchors", cluster.anchors, "name=entity,... cluster naming anchors");

    RunOptions stability;
    std::string wavelets_flag;
    std::string exclude_flag;
    auto* stability_cmd = app.add_subcommand("stability", "Cross-wavelet co-occurrence matrix");
    add_run_flags(stability_cmd, stability);
    stability_cmd->add_option("--wavelets", wavelets_flag, "Comma-separated wavelets (default: all 15)");
    stability_cmd->add_option("--exclude", exclude_flag, "Comma-separated wavelets to leave out");
    stability_cmd->add_option("--anchors", stability.anchors, "name=entity,... cluster naming anchors");
    stability_cmd->add_option("--labels", stability.labels, "Planted labels CSV used to order the heatmap");

    RunOptions recon;
    auto* recon_cmd = app.add_subcommand("reconstruct", "Partial or single-coefficient reconstruction");
    recon_cmd->add_option("--input", recon.input, "Panel CSV")->required();
    recon_cmd->add_option("--output-dir", recon.output_dir, "Directory for output files");
    recon_cmd->add_option("--wavelet", recon.wavelet, "Mother wavelet");
    recon_cmd->add_option("--entity", recon.entity, "Entity id")->required();
    recon_cmd->add_option("--mode", recon.mode, "levels:<m> or single:<c|d>,<level>,<position>");
    recon_cmd->add_option("--format", recon.format, "Plot format: svg or csv");
    recon_cmd->add_flag("--drop-degenerate", recon.drop_degenerate, "Drop constant series instead of failing");

    RunOptions pca;
    auto* pca_cmd = app.add_subcommand("pca", "PCA biplot of the (c0, d0, d1) coefficients");
    add_run_flags(pca_cmd, pca);
    pca_cmd->add_option("--wavelet", pca.wavelet, "Mother wavelet");
    pca_cmd->add_option("--anchors", pca.anchors, "name=entity,... cluster naming anchors");
    pca_cmd->add_flag("--scale-features", pca.scale_features, "Scale coefficients to unit variance before PCA");

    std::string filters_output;
    auto* filters_cmd = app.add_subcommand("filters", "Wavelet filter registry");
    filters_cmd->require_subcommand(1);
    auto* dump_cmd = filters_cmd->add_subcommand("dump", "Print name, filter length, selected count as CSV");
    dump_cmd->add_option("--output", filters_output, "Write to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }

    try {
        if (*synth_cmd) {
            cmd_synth(synth);
        } else if (*cluster_cmd) {
            cmd_cluster(cluster);
        } else if (*stability_cmd) {
            stability.wavelets = split_list(wavelets_flag);
            stability.exclude = split_list(exclude_flag);
            cmd_stability(stability);
        } else if (*recon_cmd) {
            cmd_reconstruct(recon);
        } else if (*pca_cmd) {
            cmd_pca(pca);
        } else if (*dump_cmd) {
            if (filters_output.empty()) {
                std::cout << filters_csv();
            } else {
                write_file(filters_output, filters_csv());
            }
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const trendlet::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kData;
    }
    return kOk;
}
