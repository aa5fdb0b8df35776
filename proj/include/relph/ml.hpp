#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "relph/geometry.hpp"

namespace relph {

/// Dense row-major matrix for feature data.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> v;

    static Matrix zeros(std::size_t r, std::size_t c) {
        Matrix m;
        m.rows = r;
        m.cols = c;
        m.v.assign(r * c, 0.0);
        return m;
    }

    double at(std::size_t i, std::size_t j) const { return v[i * cols + j]; }
    double& at(std::size_t i, std::size_t j) { return v[i * cols + j]; }
    const double* row(std::size_t i) const { return v.data() + i * cols; }
    double* row(std::size_t i) { return v.data() + i * cols; }
};

struct SmoteResult {
    Matrix X;
    std::vector<int> y;
};

/// Synthetic minority oversampling: each synthetic sample lies on the segment
/// between a minority point and one of its k nearest minority neighbors.
/// target_ratio is the desired minority/majority count ratio (1.0 balances);
/// already-balanced data is returned unchanged.
SmoteResult smote(const Matrix& X, const std::vector<int>& y, double target_ratio,
                  int k_neighbors, std::uint64_t seed);

struct SvmModel {
    std::vector<double> w;
    double bias = 0.0;
};

/// Linear soft-margin SVM trained by deterministic Pegasos-style subgradient
/// descent on the hinge objective (fixed epoch count, shuffling driven by the
/// seed). Labels are {0, 1}.
SvmModel svm_train(const Matrix& X, const std::vector<int>& y, double c_param,
                   std::uint64_t seed);
std::vector<int> svm_predict(const SvmModel& model, const Matrix& X);
double svm_decision(const SvmModel& model, const double* x, std::size_t d);

/// Stratified k-fold partition: per-class proportions in every fold are
/// within one sample of the global proportions.
std::vector<std::vector<int>> stratified_kfold(const std::vector<int>& y, int k,
                                               std::uint64_t seed);

/// Stratified train/test split; returns (train indices, test indices).
std::pair<std::vector<int>, std::vector<int>> stratified_split(const std::vector<int>& y,
                                                               double test_fraction,
                                                               std::uint64_t seed);

struct ClusterResult {
    std::vector<int> assignments;
    Matrix centroids;
    double inertia = 0.0;
};

/// k-means with k-means++ seeding and Lloyd iterations to 1e-6 relative
/// inertia change (or 300 iterations); best of n_init restarts by inertia.
ClusterResult kmeans(const Matrix& X, int k, std::uint64_t seed, int n_init = 10);

/// Fraction of each group's rows landing in the group's modal cluster.
std::map<std::string, double> cluster_purity(const std::vector<int>& assignments,
                                             const std::vector<std::string>& groups);

/// Relabel floor(fraction * count) points of each listed species (must be
/// among N, M1, M2), assigning one of the other two labels with probability
/// 1/2 each. Positions are unchanged; phenotypes are redrawn consistently
/// with the new label.
LabeledPointCloud relabel_noise(const LabeledPointCloud& cloud, double fraction,
                                const std::vector<Species>& species_set,
                                std::uint64_t seed);

struct Standardizer {
    std::vector<double> mean;
    std::vector<double> stddev;

    void fit(const Matrix& X);
    Matrix transform(const Matrix& X) const;
};

struct ClassifyConfig {
    std::vector<double> c_grid{0.01, 0.1, 1.0, 10.0, 100.0};
    int cv_folds = 5;
    int n_splits = 10;
    double test_fraction = 0.2;
    double smote_ratio = 1.0;
    int smote_neighbors = 5;
    std::uint64_t base_seed = 0;
};

struct SplitOutcome {
    double accuracy = 0.0;
    double chosen_c = 0.0;
};

struct ClassifyResult {
    std::vector<SplitOutcome> splits;
    double median_accuracy = 0.0;
};

/// Full supervised pipeline: per split, hyperparameter selection by
/// stratified cross-validation with per-fold standardization and SMOTE, then
/// a final model evaluated on the held-out test set.
ClassifyResult run_classification(const Matrix& X, const std::vector<int>& y,
                                  const ClassifyConfig& cfg);

double median(std::vector<double> xs);

}  // namespace relph
