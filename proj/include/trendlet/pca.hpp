// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The trendlet Authors

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "trendlet/error.hpp"
#include "trendlet/kmeans.hpp"
#include "trendlet/matrix.hpp"

namespace trendlet {

struct PcaModel {
    std::vector<double> mean;
    std::vector<double> scale;  // per-feature divisor; all ones unless features were scaled
    Matrix components;          // r x p, rows are principal axes
    std::vector<double> explained_variance;
    std::vector<double> explained_variance_ratio;
    Matrix scores;  // n x r
};

/// Centered PCA through a thin SVD. Variances use the n - 1 denominator.
/// Each axis is signed so that its largest-magnitude entry is positive.
inline PcaModel pca_fit(const Matrix& data, std::size_t r, bool scale_features = false) {
    const std::size_t n = data.rows();
    const std::size_t p = data.cols();
    if (n < 2 || p < 1) fail(ErrorKind::InvalidInput, "PCA needs at least 2 rows and 1 column");
    if (r < 1 || r > std::min(n, p)) {
        fail(ErrorKind::InvalidInput, "r=" + std::to_string(r) + " outside [1, " +
                                          std::to_string(std::min(n, p)) + "]");
    }
    for (double v : data.data()) {
        if (!std::isfinite(v)) fail(ErrorKind::InvalidInput, "non-finite value");
    }

    PcaModel model;
    model.mean.assign(p, 0.0);
    model.scale.assign(p, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < p; ++j) model.mean[j] += data(i, j);
    }
    for (double& m : model.mean) m /= static_cast<double>(n);

    Eigen::MatrixXd x(n, p);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < p; ++j) x(i, j) = data(i, j) - model.mean[j];
    }
    if (scale_features) {
        for (std::size_t j = 0; j < p; ++j) {
            const double sd = std::sqrt(x.col(j).squaredNorm() / static_cast<double>(n - 1));
            if (sd > 0.0) {
                model.scale[j] = sd;
                x.col(j) /= sd;
            }
        }
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const Eigen::MatrixXd& v = svd.matrixV();
    const double denom = static_cast<double>(n - 1);
    const double total = sv.squaredNorm() / denom;

    model.components = Matrix(r, p);
    for (std::size_t c = 0; c < r; ++c) {
        Eigen::VectorXd axis = v.col(static_cast<Eigen::Index>(c));
        Eigen::Index arg = 0;
        axis.cwiseAbs().maxCoeff(&arg);
        if (axis(arg) < 0.0) axis = -axis;
        for (std::size_t j = 0; j < p; ++j) model.components(c, j) = axis(static_cast<Eigen::Index>(j));
        const double var = sv(static_cast<Eigen::Index>(c)) * sv(static_cast<Eigen::Index>(c)) / denom;
        model.explained_variance.push_back(var);
        model.explained_variance_ratio.push_back(total > 0.0 ? var / total : 0.0);
    }

    model.scores = Matrix(n, r);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < r; ++c) {
            double s = 0.0;
            for (std::size_t j = 0; j < p; ++j) s += x(i, j) * model.components(c, j);
            model.scores(i, c) = s;
        }
    }
    return model;
}

/// Back-projection mean + scale * (scores . components).
inline Matrix pca_inverse(const PcaModel& model) {
    const std::size_t n = model.scores.rows();
    const std::size_t p = model.components.cols();
    Matrix out(n, p);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            double s = 0.0;
            for (std::size_t c = 0; c < model.components.rows(); ++c) {
                s += model.scores(i, c) * model.components(c, j);
            }
            out(i, j) = model.mean[j] + model.scale[j] * s;
        }
    }
    return out;
}

struct BiplotScore {
    std::string entity;
    double pc1;
    double pc2;
    Label cluster;
};

struct BiplotLoading {
    std::string feature;
    double pc1;
    double pc2;
};

struct BiplotTable {
    std::vector<BiplotScore> scores;
    std::vector<BiplotLoading> loadings;
    double ratio_pc1 = 0.0;
    double ratio_pc2 = 0.0;
};

inline BiplotTable biplot_data(const PcaModel& model, const std::vector<std::string>& entity_ids,
                               const std::vector<std::string>& feature_names,
                               std::span<const Label> labels) {
    if (model.components.rows() < 2) {
        fail(ErrorKind::RequiresTwoComponents, "biplot needs two principal components");
    }
    const std::size_t n = model.scores.rows();
    if (entity_ids.size() != n || labels.size() != n) {
        fail(ErrorKind::InvalidInput, "entity/label count does not match score rows");
    }
    if (feature_names.size() != model.components.cols()) {
        fail(ErrorKind::InvalidInput, "feature name count does not match component width");
    }
    BiplotTable table;
    for (std::size_t i = 0; i < n; ++i) {
        table.scores.push_back({entity_ids[i], model.scores(i, 0), model.scores(i, 1), labels[i]});
    }
    for (std::size_t j = 0; j < feature_names.size(); ++j) {
        table.loadings.push_back({feature_names[j], model.components(0, j), model.components(1, j)});
    }
    table.ratio_pc1 = model.explained_variance_ratio[0];
    table.ratio_pc2 = model.explained_variance_ratio[1];
    return table;
}

}  // namespace trendlet
